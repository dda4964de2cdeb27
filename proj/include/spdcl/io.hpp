#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spdcl/data.hpp"
#include "spdcl/difficulty.hpp"
#include "spdcl/metrics.hpp"
#include "spdcl/nucnorm.hpp"
#include "spdcl/scheduler.hpp"
#include "spdcl/trainer.hpp"

namespace spdcl::io {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Raw files

std::string read_file(const fs::path& path);

/// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const fs::path& path, std::string_view bytes);

// ---------------------------------------------------------------------------
// Dataset files: JSON lines {"id", "text", "labels"}, labels either one
// string (multiclass) or an array of strings (multilabel). Blank lines are
// skipped.

std::vector<RawExample> parse_dataset(std::string_view text);
std::vector<RawExample> read_dataset(const fs::path& path);
std::string format_dataset(std::span<const RawExample> records, TaskKind task);

// ---------------------------------------------------------------------------
// Embedding dumps.
//
//   "SPDCLEMB" | u32 version | u64 count
//   per sample: u32 id_len | id bytes | u32 rows | u32 cols | rows*cols f32
//
// All integers and floats little-endian; matrices row-major.

inline constexpr std::string_view kDumpMagic = "SPDCLEMB";
inline constexpr std::uint32_t kDumpVersion = 1;

std::string encode_embedding_dump(std::span<const EmbeddingMatrix> dump);
/// Rejects bad magic, unknown version, truncation, trailing bytes, zero
/// dimensions, non-finite values and duplicate ids.
std::vector<EmbeddingMatrix> decode_embedding_dump(std::string_view bytes);
void write_embedding_dump(const fs::path& path, std::span<const EmbeddingMatrix> dump);
std::vector<EmbeddingMatrix> read_embedding_dump(const fs::path& path);

// ---------------------------------------------------------------------------
// Score files: one {"id", "epoch", "score", "rank", "norm"} line per sample,
// in rank order.

std::string format_scores(std::span<const DifficultyRecord> records);
/// Also checks that all lines share one epoch and ranks are a permutation.
std::vector<DifficultyRecord> parse_scores(std::string_view text);
void write_scores(const fs::path& path, std::span<const DifficultyRecord> records);
std::vector<DifficultyRecord> read_scores(const fs::path& path);

// ---------------------------------------------------------------------------
// Manifest files: one {"epoch", "order", "bin_of"} line.

std::string format_manifest(const EpochPlan& plan);
EpochPlan parse_manifest(std::string_view text);
void write_manifest(const fs::path& path, const EpochPlan& plan);
EpochPlan read_manifest(const fs::path& path);

// ---------------------------------------------------------------------------
// Run configuration: JSON object with keys bins_k, epochs_T, seed, lr, batch,
// hidden_d, max_len, task_kind, alignment_mode, delta_ordering,
// shuffle_within_epoch, plus optional threshold, n_groups and threads.
// Missing keys take defaults; unknown keys are rejected.

RunConfig parse_run_config(std::string_view text);
RunConfig read_run_config(const fs::path& path);
std::string format_run_config(const RunConfig& config);

// ---------------------------------------------------------------------------
// Flat parameter dump.
//
//   "SPDCLPRM" | u32 version | u32 task (0 multiclass, 1 multilabel)
//   | u64 vocab | u64 hidden | u64 labels
//   | embedding, head_weights, head_bias as f64

std::string encode_params(const ModelParams& params);
ModelParams decode_params(std::string_view bytes);

// ---------------------------------------------------------------------------
// Per-epoch report lines and run summary.

struct EpochReport {
  int epoch = 0;
  double train_loss = 0.0;
  std::size_t samples_seen = 0;
  std::size_t visible_bins = 0;
  EvalReport valid;

  bool operator==(const EpochReport&) const = default;
};

std::string format_epoch_report(const EpochReport& report);
EpochReport parse_epoch_report(std::string_view text);

struct RunSummary {
  int epochs = 0;
  bool baseline = false;
  EvalReport final_train;
  std::vector<std::string> label_names;
  std::vector<std::vector<std::size_t>> label_groups;
};

std::string format_run_summary(const RunSummary& summary);
RunSummary parse_run_summary(std::string_view text);

// ---------------------------------------------------------------------------
// Run directory layout.

std::string epoch_tag(int epoch);  // "001", "002", ...
fs::path dump_path(const fs::path& run_dir, int epoch);
fs::path scores_path(const fs::path& run_dir, int epoch);
fs::path manifest_path(const fs::path& run_dir, int epoch);
fs::path report_path(const fs::path& run_dir, int epoch);
fs::path config_path(const fs::path& run_dir);
fs::path summary_path(const fs::path& run_dir);
fs::path params_path(const fs::path& run_dir);

}  // namespace spdcl::io
