#include "spdcl/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "spdcl/error.hpp"
#include "spdcl/io.hpp"
#include "spdcl/report.hpp"

namespace spdcl {

namespace fs = std::filesystem;

namespace {

// SPDCL_LOG selects the stderr verbosity: trace, debug, info (default),
// warn, error or off.
void setup_logging() {
  auto logger = spdlog::stderr_color_mt("spdcl");
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("SPDCL_LOG");
  logger->set_level(env ? spdlog::level::from_str(env) : spdlog::level::info);
  spdlog::set_default_logger(logger);
}

struct ScoreArgs {
  std::string embeddings, prev_scores, out;
  int epoch = 1;
  std::string alignment = "rank-aligned";
  std::string ordering = "magnitude";
  unsigned threads = 1;
};

struct ScheduleArgs {
  std::string scores, out;
  std::size_t bins = 1;
  int epoch = 1;
  std::uint64_t seed = 2;
  bool no_shuffle = false;
};

struct TrainArgs {
  std::string dataset, valid, config, out_dir;
  bool baseline = false;
};

struct ReportArgs {
  std::string run_dir, baseline_dir, out, csv;
};

void cmd_score(const ScoreArgs& a) {
  const auto mode = parse_alignment_mode(a.alignment);
  const auto ordering = parse_delta_ordering(a.ordering);
  if (a.epoch >= 2 && a.prev_scores.empty())
    fail(ErrorCategory::kUsage, "--prev-scores is required for epoch >= 2");
  if (a.epoch == 1 && !a.prev_scores.empty())
    fail(ErrorCategory::kUsage, "--prev-scores must not be given for epoch 1");

  const auto dump = io::read_embedding_dump(a.embeddings);
  if (dump.empty()) fail(ErrorCategory::kFormat, "embedding dump holds no samples");
  const auto norms = compute_norms(dump, a.threads);

  std::vector<DifficultyRecord> records;
  if (a.epoch == 1) {
    records = initial_scores(norms);
  } else {
    const auto prev = io::read_scores(a.prev_scores);
    if (prev.front().epoch != a.epoch - 1)
      fail(ErrorCategory::kMismatch, "previous scores are for epoch " +
                                         std::to_string(prev.front().epoch) + ", expected " +
                                         std::to_string(a.epoch - 1));
    std::vector<SampleNorm> prev_norms;
    for (const auto& r : prev) prev_norms.push_back({r.sample_id, r.norm});
    auto history = DifficultyHistory::resume_from(a.epoch - 1, std::move(prev_norms));
    records = delta_scores(norms, history, mode, ordering);
  }
  io::write_scores(a.out, records);
  spdlog::info("scored {} samples for epoch {}", records.size(), a.epoch);
}

void cmd_schedule(const ScheduleArgs& a) {
  const auto records = io::read_scores(a.scores);
  if (records.front().epoch != a.epoch)
    fail(ErrorCategory::kMismatch, "score file is for epoch " +
                                       std::to_string(records.front().epoch) + ", not " +
                                       std::to_string(a.epoch));
  CurriculumConfig config;
  config.bins_k = a.bins;
  config.total_epochs = a.epoch;
  config.shuffle_seed = a.seed;
  config.shuffle_within_epoch = !a.no_shuffle;
  config.validate(records.size());
  const auto plan = build_epoch_plan(records, config, a.epoch);
  io::write_manifest(a.out, plan);
  spdlog::info("epoch {}: {} of {} samples visible ({} of {} bins)", a.epoch,
               plan.ordered_ids.size(), records.size(), plan.visible_bins, a.bins);
}

void cmd_train(const TrainArgs& a) {
  const auto config = io::read_run_config(a.config);
  train_to_directory(a.dataset, a.valid, config, a.out_dir, a.baseline);
}

void cmd_report(const ReportArgs& a) {
  std::optional<fs::path> baseline;
  if (!a.baseline_dir.empty()) baseline = a.baseline_dir;
  io::atomic_write(a.out, report::build_report(a.run_dir, baseline));
  if (!a.csv.empty()) io::atomic_write(a.csv, report::build_report_csv(a.run_dir));
}

}  // namespace

RunResult train_to_directory(const fs::path& train_path, const fs::path& valid_path,
                             const RunConfig& config, const fs::path& out_dir, bool baseline) {
  const auto raw_train = io::read_dataset(train_path);
  const auto raw_valid = io::read_dataset(valid_path);
  if (raw_train.empty()) fail(ErrorCategory::kFormat, "training set is empty");

  for (const auto& w : config.curriculum.validate(raw_train.size())) spdlog::warn("{}", w);

  const auto vocab = Vocabulary::build(raw_train, config.hyper.max_len);
  const auto labels = LabelSpace::collect(raw_train, raw_valid);
  if (config.task == TaskKind::kMulticlass && labels.size() < 2)
    fail(ErrorCategory::kConfig, "multiclass training needs at least two labels");
  const auto train = prepare_dataset(raw_train, vocab, labels, config.task);
  const auto valid = prepare_dataset(raw_valid, vocab, labels, config.task);
  spdlog::info("{} train / {} valid samples, vocabulary {}, {} labels", train.samples.size(),
               valid.samples.size(), vocab.size(), labels.size());

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) fail(ErrorCategory::kIo, "cannot create output directory '" + out_dir.string() + "'");
  io::atomic_write(io::config_path(out_dir), io::format_run_config(config));

  auto observer = [&](const EpochArtifacts& art) {
    io::write_embedding_dump(io::dump_path(out_dir, art.epoch), art.dump);
    io::write_scores(io::scores_path(out_dir, art.epoch), art.records);
    io::write_manifest(io::manifest_path(out_dir, art.epoch), art.plan);
    io::atomic_write(io::report_path(out_dir, art.epoch),
                     io::format_epoch_report(io::EpochReport{art.epoch, art.stats.mean_loss,
                                                             art.stats.samples_seen,
                                                             art.plan.visible_bins,
                                                             art.valid_report}));
    spdlog::info("epoch {}: {} samples, loss {:.6f}, valid micro-F1 {:.4f} ({:.2f}s)", art.epoch,
                 art.stats.samples_seen, art.stats.mean_loss, art.valid_report.micro_f1,
                 art.stats.wall_time_s);
  };
  auto result = run_spdcl(train, valid, config, vocab.size(), baseline, observer);

  io::atomic_write(io::params_path(out_dir), io::encode_params(result.params));
  io::RunSummary summary;
  summary.epochs = config.curriculum.total_epochs;
  summary.baseline = baseline;
  summary.final_train = result.final_train_report;
  summary.label_names = labels.names();
  summary.label_groups = result.label_groups;
  io::atomic_write(io::summary_path(out_dir), io::format_run_summary(summary));
  return result;
}

int run_cli(int argc, char** argv) {
  if (!spdlog::get("spdcl")) setup_logging();

  CLI::App app{"Self-paced dynamic curriculum learning toolkit"};
  app.require_subcommand(1);

  ScoreArgs score;
  auto* sc = app.add_subcommand("score", "Score an embedding dump by nuclear norm (epoch 1) or "
                                         "by change in nuclear norm (later epochs)");
  sc->add_option("--embeddings", score.embeddings, "Embedding dump (.bin)")->required();
  sc->add_option("--prev-scores", score.prev_scores, "Score file of the previous epoch");
  sc->add_option("--epoch", score.epoch, "Epoch being scored (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  sc->add_option("--out", score.out, "Output score file (.jsonl)")->required();
  sc->add_option("--alignment", score.alignment, "rank-aligned | identity-aligned")
      ->capture_default_str();
  sc->add_option("--ordering", score.ordering, "magnitude | signed")->capture_default_str();
  sc->add_option("--threads", score.threads, "Worker threads for scoring")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  ScheduleArgs sched;
  auto* sd = app.add_subcommand("schedule", "Turn a score file into an epoch manifest");
  sd->add_option("--scores", sched.scores, "Score file (.jsonl)")->required();
  sd->add_option("--bins", sched.bins, "Number of bins k")->required()->check(CLI::PositiveNumber);
  sd->add_option("--epoch", sched.epoch, "Epoch to plan (>= 1)")
      ->required()
      ->check(CLI::PositiveNumber);
  sd->add_option("--seed", sched.seed, "Shuffle seed")->capture_default_str();
  sd->add_flag("--no-shuffle", sched.no_shuffle, "Keep the visible set in rank order");
  sd->add_option("--out", sched.out, "Output manifest (.jsonl)")->required();

  TrainArgs train;
  auto* tr = app.add_subcommand("train", "Run curriculum training and write all artifacts");
  tr->add_option("--dataset", train.dataset, "Training set (.jsonl)")->required();
  tr->add_option("--valid", train.valid, "Validation set (.jsonl)")->required();
  tr->add_option("--config", train.config, "Run configuration (.json)")->required();
  tr->add_option("--out-dir", train.out_dir, "Output directory")->required();
  tr->add_flag("--baseline", train.baseline, "Train on the full set every epoch (no curriculum)");

  ReportArgs rep;
  auto* rp = app.add_subcommand("report", "Aggregate a run directory into one JSON report");
  rp->add_option("--run-dir", rep.run_dir, "Run directory written by `train`")->required();
  rp->add_option("--baseline-dir", rep.baseline_dir, "Baseline run directory for a delta table");
  rp->add_option("--out", rep.out, "Output report (.json)")->required();
  rp->add_option("--csv", rep.csv, "Also write per-epoch rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: " << category_name(ErrorCategory::kUsage) << ": " << msg << "\n";
    return exit_code(ErrorCategory::kUsage);
  }

  try {
    if (sc->parsed()) cmd_score(score);
    else if (sd->parsed()) cmd_schedule(sched);
    else if (tr->parsed()) cmd_train(train);
    else if (rp->parsed()) cmd_report(rep);
  } catch (const Error& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    std::cerr << "error: " << category_name(e.category()) << ": " << msg << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace spdcl
