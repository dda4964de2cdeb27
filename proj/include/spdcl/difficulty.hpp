#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spdcl/nucnorm.hpp"

namespace spdcl {

/// How the epoch-over-epoch change is paired up.
enum class AlignmentMode {
  kRankAligned,      // subtract norms of the samples occupying the same sorted position
  kIdentityAligned,  // subtract each sample's own previous norm
};

/// How delta scores are turned into an easy-to-hard ordering.
enum class DeltaOrdering {
  kMagnitude,  // largest |delta| first
  kSigned,     // largest signed delta first
};

struct SampleNorm {
  std::string sample_id;
  double norm = 0.0;
};

/// Score and rank of one sample in one epoch. Rank 0 is the easiest sample.
/// `norm` is the raw nuclear norm observed in that epoch; for epoch 1 it
/// equals `score`.
struct DifficultyRecord {
  std::string sample_id;
  int epoch = 1;
  double score = 0.0;
  std::size_t rank = 0;
  double norm = 0.0;
};

/// Per-epoch raw nuclear norms, each epoch sorted ascending by norm (ties by
/// sample id), so position i of every table is the i-th smallest norm.
/// Epochs are consecutive; a fresh history starts at epoch 1.
class DifficultyHistory {
 public:
  DifficultyHistory() = default;

  /// History whose only entry is epoch `epoch`, for continuing a run from a
  /// saved score file.
  static DifficultyHistory resume_from(int epoch, std::vector<SampleNorm> norms);

  std::size_t size() const { return epochs_.size(); }
  bool empty() const { return epochs_.empty(); }
  int first_epoch() const { return first_epoch_; }
  /// Epoch the next append() records.
  int next_epoch() const { return first_epoch_ + static_cast<int>(epochs_.size()); }

  /// Sorted table of epoch `epoch`.
  const std::vector<SampleNorm>& table(int epoch) const;

  /// Records the next epoch. Every epoch must cover the same sample ids.
  void append(std::vector<SampleNorm> norms);

 private:
  int first_epoch_ = 1;
  std::vector<std::vector<SampleNorm>> epochs_;
};

/// Nuclear norm of every matrix in the dump, in dump order. Samples are split
/// across `threads` workers; the result does not depend on the thread count.
std::vector<SampleNorm> compute_norms(std::span<const EmbeddingMatrix> dump,
                                      unsigned threads = 1);

/// Epoch-1 records: score = nuclear norm, ranked ascending (small norm is
/// easy), ties by ascending id.
std::vector<DifficultyRecord> initial_scores(std::span<const SampleNorm> norms);
std::vector<DifficultyRecord> initial_scores(std::span<const EmbeddingMatrix> dump);

/// Records for epoch `history.next_epoch()`. The score is the change in
/// nuclear norm against the previous epoch (paired per `mode`); ranks follow
/// `ordering`, ties by ascending id. `current` is appended to `history`.
std::vector<DifficultyRecord> delta_scores(std::span<const SampleNorm> current,
                                           DifficultyHistory& history,
                                           AlignmentMode mode = AlignmentMode::kRankAligned,
                                           DeltaOrdering ordering = DeltaOrdering::kMagnitude);

/// Sample ids in ascending rank order. Rejects mixed epochs and rank
/// collisions or gaps.
std::vector<std::string> rank_samples(std::span<const DifficultyRecord> records);

/// Convenience driver holding the history: the first call produces
/// `initial_scores`, later calls `delta_scores`.
class DifficultyTracker {
 public:
  DifficultyTracker(AlignmentMode mode, DeltaOrdering ordering)
      : mode_(mode), ordering_(ordering) {}

  std::vector<DifficultyRecord> score_epoch(std::span<const SampleNorm> norms);

  const DifficultyHistory& history() const { return history_; }

 private:
  AlignmentMode mode_;
  DeltaOrdering ordering_;
  DifficultyHistory history_;
};

std::string to_string(AlignmentMode mode);
std::string to_string(DeltaOrdering ordering);
AlignmentMode parse_alignment_mode(const std::string& text);
DeltaOrdering parse_delta_ordering(const std::string& text);

}  // namespace spdcl
