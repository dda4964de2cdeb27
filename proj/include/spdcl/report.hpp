#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace spdcl::report {

/// Five-number summary plus mean of one epoch's nuclear norms (box-plot data).
struct NormStats {
  double mean = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

/// Linear-interpolation percentile on sorted data: position q * (n - 1)
/// between the two nearest order statistics. q in [0, 1].
double percentile(std::span<const double> sorted, double q);

NormStats norm_stats(std::vector<double> values);

/// Paths in `run_dir` that a complete run must contain but are absent.
std::vector<std::filesystem::path> missing_artifacts(const std::filesystem::path& run_dir);

/// Aggregated JSON document for a run directory: per-epoch metrics and norm
/// statistics, long-tail group Macro-F1 and, when `baseline_dir` is given, a
/// curriculum-minus-baseline delta table. Throws kMismatch listing every
/// missing artifact when a run directory is incomplete.
std::string build_report(const std::filesystem::path& run_dir,
                         const std::optional<std::filesystem::path>& baseline_dir);

/// One CSV row per epoch: metrics and norm statistics.
std::string build_report_csv(const std::filesystem::path& run_dir);

}  // namespace spdcl::report
