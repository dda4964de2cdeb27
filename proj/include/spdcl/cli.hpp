#pragma once

#include <filesystem>

#include "spdcl/trainer.hpp"

namespace spdcl {

/// Loads both dataset files, runs the curriculum (or the full-data baseline)
/// and writes every artifact into `out_dir`:
///   config.json, summary.json, params.bin and, per epoch t,
///   embeddings_epoch_<t>.bin, scores_epoch_<t>.jsonl,
///   manifest_epoch_<t>.jsonl, report_epoch_<t>.jsonl.
/// The configuration is validated against the training set before any
/// training starts.
RunResult train_to_directory(const std::filesystem::path& train_path,
                             const std::filesystem::path& valid_path, const RunConfig& config,
                             const std::filesystem::path& out_dir, bool baseline);

/// Entry point of the `spdcl` command-line tool. Returns the process exit
/// code; failures print one `error: <category>: <message>` line to stderr.
int run_cli(int argc, char** argv);

}  // namespace spdcl
