#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "spdcl/data.hpp"
#include "spdcl/difficulty.hpp"
#include "spdcl/metrics.hpp"
#include "spdcl/nucnorm.hpp"
#include "spdcl/scheduler.hpp"

namespace spdcl {

/// Embedding table -> mean pooling -> linear head.
struct ModelParams {
  TaskKind task = TaskKind::kMulticlass;
  std::size_t vocab_size = 0;
  std::size_t hidden = 0;
  std::size_t labels = 0;
  std::vector<double> embedding;     // vocab_size x hidden
  std::vector<double> head_weights;  // hidden x labels
  std::vector<double> head_bias;     // labels

  /// Embedding entries uniform in [-0.5, 0.5], head weights uniform in
  /// [-0.1, 0.1], zero bias; fully determined by `seed`.
  static ModelParams initialize(TaskKind task, std::size_t vocab_size, std::size_t hidden,
                                std::size_t labels, std::uint64_t seed);
  static ModelParams zeros(TaskKind task, std::size_t vocab_size, std::size_t hidden,
                           std::size_t labels);

  void validate() const;
  bool operator==(const ModelParams&) const = default;
};

/// Same layout as the three parameter groups of ModelParams.
struct Gradients {
  std::vector<double> embedding;
  std::vector<double> head_weights;
  std::vector<double> head_bias;

  static Gradients zeros_like(const ModelParams& params);
};

struct LossAndGrad {
  double loss = 0.0;
  Gradients grad;
};

struct TrainStats {
  int epoch = 0;
  double mean_loss = 0.0;
  std::size_t samples_seen = 0;
  double wall_time_s = 0.0;
};

struct TrainHyper {
  double lr = 0.1;
  std::size_t batch = 25;
  std::size_t hidden_d = 16;
  std::size_t max_len = 250;
  double threshold = 0.5;  // multilabel decision threshold on sigmoid outputs
  std::size_t n_groups = 4;
  unsigned threads = 1;
};

/// Everything a run needs besides the data.
struct RunConfig {
  CurriculumConfig curriculum;
  TrainHyper hyper;
  TaskKind task = TaskKind::kMulticlass;
};

/// Rows of the embedding table for each token id, in order.
EmbeddingMatrix embed_sample(const ModelParams& params, std::span<const std::size_t> ids,
                             std::string sample_id = {});

std::vector<double> forward(const ModelParams& params, std::span<const std::size_t> ids);

/// Numerically stable softmax.
std::vector<double> softmax(std::span<const double> logits);

/// Multiclass: softmax cross-entropy against the single class in `target`.
/// Multilabel: mean binary cross-entropy over all labels, `target` listing
/// the positive label indices (may be empty).
LossAndGrad loss_and_grad(const ModelParams& params, std::span<const std::size_t> ids,
                          std::span<const std::size_t> target);

struct EpochResult {
  ModelParams params;
  TrainStats stats;
};

/// One pass of mini-batch SGD over `plan.ordered_ids` in order. The batch
/// gradient is the mean over its samples; the last short batch is kept.
EpochResult train_epoch(ModelParams params, const EpochPlan& plan, const Dataset& dataset,
                        double lr, std::size_t batch);

/// Label predictions: argmax for multiclass, sigmoid >= threshold for
/// multilabel.
LabelMatrix predict(const ModelParams& params, const Dataset& dataset, double threshold = 0.5);

/// Embedding matrices of every sample, values rounded to single precision so
/// they score identically to a dump read back from disk.
std::vector<EmbeddingMatrix> dump_embeddings(const ModelParams& params, const Dataset& dataset);

/// Per-epoch artifacts, handed to the observer as soon as an epoch finishes.
struct EpochArtifacts {
  int epoch = 0;
  const std::vector<EmbeddingMatrix>& dump;  // parameters before this epoch's training
  const std::vector<DifficultyRecord>& records;
  const EpochPlan& plan;
  const TrainStats& stats;
  const EvalReport& valid_report;
};

using EpochObserver = std::function<void(const EpochArtifacts&)>;

struct EpochSummary {
  TrainStats stats;
  std::size_t visible_bins = 0;
  EvalReport valid_report;
};

struct RunResult {
  ModelParams params;
  std::vector<EpochSummary> epochs;
  EvalReport final_train_report;
  std::vector<std::vector<std::size_t>> label_groups;
};

/// The self-paced dynamic curriculum loop. Each epoch t dumps embeddings with
/// the current parameters, scores them (nuclear norm at t = 1, change in
/// nuclear norm after that), re-bins, trains on bins 1..min(t, k) and
/// evaluates on `valid`. With `baseline` set, every epoch trains on the full
/// set instead (scores are still computed for reporting).
RunResult run_spdcl(const Dataset& train, const Dataset& valid, const RunConfig& config,
                    std::size_t vocab_size, bool baseline = false,
                    const EpochObserver& observer = {});

}  // namespace spdcl
