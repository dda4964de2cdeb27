#include "spdcl/report.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "spdcl/error.hpp"
#include "spdcl/io.hpp"

namespace spdcl::report {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct EpochRow {
  io::EpochReport report;
  NormStats norms;
};

struct LoadedRun {
  io::RunSummary summary;
  std::vector<EpochRow> rows;
};

LoadedRun load_run(const fs::path& run_dir) {
  const auto missing = missing_artifacts(run_dir);
  if (!missing.empty()) {
    std::string list;
    for (const auto& p : missing) list += (list.empty() ? "" : ", ") + p.filename().string();
    fail(ErrorCategory::kMismatch,
         "incomplete run directory '" + run_dir.string() + "': missing " + list);
  }
  LoadedRun run;
  run.summary = io::parse_run_summary(io::read_file(io::summary_path(run_dir)));
  for (int e = 1; e <= run.summary.epochs; ++e) {
    EpochRow row;
    row.report = io::parse_epoch_report(io::read_file(io::report_path(run_dir, e)));
    if (row.report.epoch != e)
      fail(ErrorCategory::kMismatch, "report file for epoch " + std::to_string(e) +
                                         " declares epoch " + std::to_string(row.report.epoch));
    std::vector<double> norms;
    for (const auto& r : io::read_scores(io::scores_path(run_dir, e))) norms.push_back(r.norm);
    row.norms = norm_stats(std::move(norms));
    run.rows.push_back(std::move(row));
  }
  return run;
}

json metrics_json(const EvalReport& r) {
  json j;
  j["micro_f1"] = r.micro_f1;
  j["macro_f1"] = r.macro_f1;
  j["hamming_loss"] = r.hamming_loss;
  j["subset_accuracy"] = r.subset_accuracy;
  if (r.matthews) j["matthews"] = *r.matthews;
  if (r.binary_f1) j["binary_f1"] = *r.binary_f1;
  return j;
}

json norms_json(const NormStats& n) {
  return json{{"mean", n.mean}, {"min", n.min},   {"q1", n.q1},
              {"median", n.median}, {"q3", n.q3}, {"max", n.max}};
}

json delta_json(const EvalReport& a, const EvalReport& b) {
  json j;
  j["micro_f1"] = a.micro_f1 - b.micro_f1;
  j["macro_f1"] = a.macro_f1 - b.macro_f1;
  j["hamming_loss"] = a.hamming_loss - b.hamming_loss;
  j["subset_accuracy"] = a.subset_accuracy - b.subset_accuracy;
  if (a.matthews && b.matthews) j["matthews"] = *a.matthews - *b.matthews;
  if (a.binary_f1 && b.binary_f1) j["binary_f1"] = *a.binary_f1 - *b.binary_f1;
  if (a.group_macro_f1.size() == b.group_macro_f1.size()) {
    std::vector<double> g(a.group_macro_f1.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = a.group_macro_f1[i] - b.group_macro_f1[i];
    j["group_macro_f1"] = g;
  }
  return j;
}

}  // namespace

double percentile(std::span<const double> sorted, double q) {
  require(!sorted.empty(), "percentile of an empty sample");
  require(q >= 0.0 && q <= 1.0, "percentile: q outside [0, 1]");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

NormStats norm_stats(std::vector<double> values) {
  require(!values.empty(), "norm_stats of an empty sample");
  std::sort(values.begin(), values.end());
  NormStats s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  s.min = values.front();
  s.q1 = percentile(values, 0.25);
  s.median = percentile(values, 0.5);
  s.q3 = percentile(values, 0.75);
  s.max = values.back();
  return s;
}

std::vector<fs::path> missing_artifacts(const fs::path& run_dir) {
  std::vector<fs::path> missing;
  for (const auto& p : {io::config_path(run_dir), io::summary_path(run_dir), io::params_path(run_dir)})
    if (!fs::exists(p)) missing.push_back(p);
  int epochs = 0;
  if (fs::exists(io::summary_path(run_dir))) {
    epochs = io::parse_run_summary(io::read_file(io::summary_path(run_dir))).epochs;
  } else if (fs::exists(io::config_path(run_dir))) {
    epochs = io::read_run_config(io::config_path(run_dir)).curriculum.total_epochs;
  }
  for (int e = 1; e <= epochs; ++e) {
    for (const auto& p : {io::dump_path(run_dir, e), io::scores_path(run_dir, e),
                          io::manifest_path(run_dir, e), io::report_path(run_dir, e)})
      if (!fs::exists(p)) missing.push_back(p);
  }
  return missing;
}

std::string build_report(const fs::path& run_dir, const std::optional<fs::path>& baseline_dir) {
  const auto run = load_run(run_dir);

  json doc;
  doc["epochs_T"] = run.summary.epochs;
  doc["baseline"] = run.summary.baseline;
  json epochs = json::array();
  for (const auto& row : run.rows) {
    json e;
    e["epoch"] = row.report.epoch;
    e["train_loss"] = row.report.train_loss;
    e["samples_seen"] = row.report.samples_seen;
    e["visible_bins"] = row.report.visible_bins;
    e["valid"] = metrics_json(row.report.valid);
    e["nuclear_norm"] = norms_json(row.norms);
    epochs.push_back(std::move(e));
  }
  doc["epochs"] = std::move(epochs);

  json groups = json::array();
  for (const auto& g : run.summary.label_groups) {
    json names = json::array();
    for (std::size_t l : g)
      names.push_back(l < run.summary.label_names.size() ? run.summary.label_names[l]
                                                         : std::to_string(l));
    groups.push_back(std::move(names));
  }
  doc["long_tail"] = json{{"groups", std::move(groups)},
                          {"final_group_macro_f1", run.rows.empty()
                                                       ? std::vector<double>{}
                                                       : run.rows.back().report.valid.group_macro_f1}};
  doc["final_valid"] = run.rows.empty() ? json() : metrics_json(run.rows.back().report.valid);
  doc["final_train"] = metrics_json(run.summary.final_train);

  if (baseline_dir) {
    const auto base = load_run(*baseline_dir);
    json cmp;
    if (!run.rows.empty() && !base.rows.empty())
      cmp["final_valid_delta"] = delta_json(run.rows.back().report.valid, base.rows.back().report.valid);
    cmp["final_train_delta"] = delta_json(run.summary.final_train, base.summary.final_train);
    json per_epoch = json::array();
    const std::size_t n = std::min(run.rows.size(), base.rows.size());
    for (std::size_t i = 0; i < n; ++i) {
      json e = delta_json(run.rows[i].report.valid, base.rows[i].report.valid);
      e["epoch"] = run.rows[i].report.epoch;
      e["train_loss"] = run.rows[i].report.train_loss - base.rows[i].report.train_loss;
      per_epoch.push_back(std::move(e));
    }
    cmp["per_epoch_delta"] = std::move(per_epoch);
    doc["comparison"] = std::move(cmp);
  }
  return doc.dump(2) + "\n";
}

std::string build_report_csv(const fs::path& run_dir) {
  const auto run = load_run(run_dir);
  std::ostringstream out;
  out.precision(17);
  out << "epoch,train_loss,micro_f1,macro_f1,hamming_loss,subset_accuracy,"
         "norm_mean,norm_min,norm_q1,norm_median,norm_q3,norm_max\n";
  for (const auto& row : run.rows) {
    const auto& v = row.report.valid;
    const auto& n = row.norms;
    out << row.report.epoch << ',' << row.report.train_loss << ',' << v.micro_f1 << ','
        << v.macro_f1 << ',' << v.hamming_loss << ',' << v.subset_accuracy << ',' << n.mean << ','
        << n.min << ',' << n.q1 << ',' << n.median << ',' << n.q3 << ',' << n.max << '\n';
  }
  return out.str();
}

}  // namespace spdcl::report
