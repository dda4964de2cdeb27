#include "spdcl/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>

#include "spdcl/error.hpp"

namespace spdcl {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_ids(const ModelParams& params, std::span<const std::size_t> ids) {
  require(!ids.empty(), "token sequence is empty");
  for (std::size_t id : ids) {
    if (id >= params.vocab_size)
      fail(ErrorCategory::kInvalidArgument,
           "token id " + std::to_string(id) + " out of range (vocab " +
               std::to_string(params.vocab_size) + ")");
  }
}

std::vector<double> mean_pool(const ModelParams& params, std::span<const std::size_t> ids) {
  const std::size_t d = params.hidden;
  std::vector<double> h(d, 0.0);
  for (std::size_t id : ids)
    for (std::size_t j = 0; j < d; ++j) h[j] += params.embedding[id * d + j];
  const double inv = 1.0 / static_cast<double>(ids.size());
  for (double& v : h) v *= inv;
  return h;
}

std::vector<double> head(const ModelParams& params, std::span<const double> h) {
  std::vector<double> z(params.head_bias);
  for (std::size_t j = 0; j < params.hidden; ++j) {
    if (h[j] == 0.0) continue;
    for (std::size_t l = 0; l < params.labels; ++l)
      z[l] += h[j] * params.head_weights[j * params.labels + l];
  }
  return z;
}

// Adds scale * d(loss)/d(params) into `acc` and returns the loss.
double accumulate(const ModelParams& params, std::span<const std::size_t> ids,
                  std::span<const std::size_t> target, double scale, Gradients& acc) {
  check_ids(params, ids);
  const std::size_t d = params.hidden, L = params.labels;
  const auto h = mean_pool(params, ids);
  const auto z = head(params, h);

  std::vector<double> dz(L);
  double loss = 0.0;
  if (params.task == TaskKind::kMulticlass) {
    if (target.size() != 1 || target[0] >= L)
      fail(ErrorCategory::kInvalidArgument, "multiclass target must be one class index < " +
                                                std::to_string(L));
    const double zmax = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - zmax);
    const double lse = zmax + std::log(sum);
    loss = lse - z[target[0]];
    for (std::size_t l = 0; l < L; ++l) dz[l] = std::exp(z[l] - lse);
    dz[target[0]] -= 1.0;
  } else {
    std::vector<double> y(L, 0.0);
    for (std::size_t l : target) {
      if (l >= L || y[l] != 0.0)
        fail(ErrorCategory::kInvalidArgument, "multilabel target has an invalid or repeated label");
      y[l] = 1.0;
    }
    const double inv_l = 1.0 / static_cast<double>(L);
    for (std::size_t l = 0; l < L; ++l) {
      loss += std::max(z[l], 0.0) - z[l] * y[l] + std::log1p(std::exp(-std::fabs(z[l])));
      dz[l] = (sigmoid(z[l]) - y[l]) * inv_l;
    }
    loss *= inv_l;
  }

  std::vector<double> dh(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t l = 0; l < L; ++l) {
      acc.head_weights[j * L + l] += scale * h[j] * dz[l];
      dh[j] += params.head_weights[j * L + l] * dz[l];
    }
  }
  for (std::size_t l = 0; l < L; ++l) acc.head_bias[l] += scale * dz[l];
  const double per_token = scale / static_cast<double>(ids.size());
  for (std::size_t id : ids)
    for (std::size_t j = 0; j < d; ++j) acc.embedding[id * d + j] += per_token * dh[j];
  return loss;
}

}  // namespace

ModelParams ModelParams::zeros(TaskKind task, std::size_t vocab_size, std::size_t hidden,
                               std::size_t labels) {
  require(vocab_size >= 1 && hidden >= 1 && labels >= 1, "model dimensions must be >= 1");
  ModelParams p;
  p.task = task;
  p.vocab_size = vocab_size;
  p.hidden = hidden;
  p.labels = labels;
  p.embedding.assign(vocab_size * hidden, 0.0);
  p.head_weights.assign(hidden * labels, 0.0);
  p.head_bias.assign(labels, 0.0);
  return p;
}

ModelParams ModelParams::initialize(TaskKind task, std::size_t vocab_size, std::size_t hidden,
                                    std::size_t labels, std::uint64_t seed) {
  auto p = zeros(task, vocab_size, hidden, labels);
  std::mt19937_64 rng(seed);
  for (double& v : p.embedding) v = uniform(rng, -0.5, 0.5);
  for (double& v : p.head_weights) v = uniform(rng, -0.1, 0.1);
  return p;
}

void ModelParams::validate() const {
  require(hidden >= 1 && labels >= 1, "model dimensions must be >= 1");
  require(embedding.size() == vocab_size * hidden && head_weights.size() == hidden * labels &&
              head_bias.size() == labels,
          "parameter buffers do not match the declared shape");
  for (const auto* group : {&embedding, &head_weights, &head_bias})
    for (double v : *group) require(std::isfinite(v), "non-finite model parameter");
}

Gradients Gradients::zeros_like(const ModelParams& params) {
  return Gradients{std::vector<double>(params.embedding.size(), 0.0),
                   std::vector<double>(params.head_weights.size(), 0.0),
                   std::vector<double>(params.head_bias.size(), 0.0)};
}

EmbeddingMatrix embed_sample(const ModelParams& params, std::span<const std::size_t> ids,
                             std::string sample_id) {
  check_ids(params, ids);
  EmbeddingMatrix e;
  e.sample_id = std::move(sample_id);
  e.rows = ids.size();
  e.cols = params.hidden;
  e.values.reserve(e.rows * e.cols);
  for (std::size_t id : ids) {
    const auto row = params.embedding.begin() + static_cast<std::ptrdiff_t>(id * params.hidden);
    e.values.insert(e.values.end(), row, row + static_cast<std::ptrdiff_t>(params.hidden));
  }
  return e;
}

std::vector<double> forward(const ModelParams& params, std::span<const std::size_t> ids) {
  check_ids(params, ids);
  return head(params, mean_pool(params, ids));
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double zmax = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) sum += (v = std::exp(v - zmax));
  for (double& v : p) v /= sum;
  return p;
}

LossAndGrad loss_and_grad(const ModelParams& params, std::span<const std::size_t> ids,
                          std::span<const std::size_t> target) {
  LossAndGrad out{0.0, Gradients::zeros_like(params)};
  out.loss = accumulate(params, ids, target, 1.0, out.grad);
  return out;
}

EpochResult train_epoch(ModelParams params, const EpochPlan& plan, const Dataset& dataset,
                        double lr, std::size_t batch) {
  require(batch >= 1, "batch size must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::size_t> positions;
  positions.reserve(plan.ordered_ids.size());
  for (const auto& id : plan.ordered_ids) positions.push_back(dataset.position(id));

  Gradients grad = Gradients::zeros_like(params);
  double loss_sum = 0.0;
  for (std::size_t begin = 0; begin < positions.size(); begin += batch) {
    const std::size_t end = std::min(positions.size(), begin + batch);
    const double scale = 1.0 / static_cast<double>(end - begin);
    for (auto* g : {&grad.embedding, &grad.head_weights, &grad.head_bias})
      std::fill(g->begin(), g->end(), 0.0);
    for (std::size_t i = begin; i < end; ++i) {
      const Sample& s = dataset.samples[positions[i]];
      loss_sum += accumulate(params, s.tokens, s.labels, scale, grad);
    }
    if (lr != 0.0) {
      for (std::size_t i = 0; i < params.embedding.size(); ++i)
        params.embedding[i] -= lr * grad.embedding[i];
      for (std::size_t i = 0; i < params.head_weights.size(); ++i)
        params.head_weights[i] -= lr * grad.head_weights[i];
      for (std::size_t i = 0; i < params.head_bias.size(); ++i)
        params.head_bias[i] -= lr * grad.head_bias[i];
    }
  }

  TrainStats stats;
  stats.epoch = plan.epoch;
  stats.samples_seen = positions.size();
  stats.mean_loss = positions.empty() ? 0.0 : loss_sum / static_cast<double>(positions.size());
  stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return EpochResult{std::move(params), stats};
}

LabelMatrix predict(const ModelParams& params, const Dataset& dataset, double threshold) {
  LabelMatrix out(dataset.samples.size(), params.labels);
  const double logit_cut = std::log(threshold / (1.0 - threshold));
  for (std::size_t s = 0; s < dataset.samples.size(); ++s) {
    const auto z = forward(params, dataset.samples[s].tokens);
    if (params.task == TaskKind::kMulticlass) {
      out.set(s, static_cast<std::size_t>(std::max_element(z.begin(), z.end()) - z.begin()), true);
    } else {
      for (std::size_t l = 0; l < z.size(); ++l) out.set(s, l, z[l] >= logit_cut);
    }
  }
  return out;
}

std::vector<EmbeddingMatrix> dump_embeddings(const ModelParams& params, const Dataset& dataset) {
  std::vector<EmbeddingMatrix> dump;
  dump.reserve(dataset.samples.size());
  for (const auto& s : dataset.samples) {
    auto e = embed_sample(params, s.tokens, s.id);
    for (double& v : e.values) v = static_cast<double>(static_cast<float>(v));
    dump.push_back(std::move(e));
  }
  return dump;
}

RunResult run_spdcl(const Dataset& train, const Dataset& valid, const RunConfig& config,
                    std::size_t vocab_size, bool baseline, const EpochObserver& observer) {
  const auto& cc = config.curriculum;
  const auto& hp = config.hyper;
  require(!train.samples.empty(), "training set is empty");
  require(train.num_labels == valid.num_labels, "train and valid label spaces differ");
  require(train.task == config.task && valid.task == config.task,
          "dataset task kind does not match the run configuration");
  require(hp.lr >= 0.0 && std::isfinite(hp.lr), "learning rate must be finite and >= 0");
  require(hp.batch >= 1, "batch size must be >= 1");
  require(hp.threshold > 0.0 && hp.threshold < 1.0, "threshold must lie in (0, 1)");
  cc.validate(train.samples.size());

  const bool binary_task = config.task == TaskKind::kMulticlass && train.num_labels == 2;
  RunResult result;
  result.label_groups = label_frequency_groups(
      train.label_matrix(), std::min<std::size_t>(hp.n_groups, train.num_labels));
  const LabelMatrix valid_truth = valid.label_matrix();

  ModelParams params =
      ModelParams::initialize(config.task, vocab_size, hp.hidden_d, train.num_labels,
                              cc.shuffle_seed);
  DifficultyTracker tracker(cc.alignment, cc.delta_ordering);
  const auto all_ids = train.ids();

  for (int epoch = 1; epoch <= cc.total_epochs; ++epoch) {
    const auto dump = dump_embeddings(params, train);
    const auto norms = compute_norms(dump, hp.threads);
    const auto records = tracker.score_epoch(norms);
    const EpochPlan plan =
        baseline ? build_full_plan(all_ids, cc, epoch) : build_epoch_plan(records, cc, epoch);

    auto trained = train_epoch(std::move(params), plan, train, hp.lr, hp.batch);
    params = std::move(trained.params);

    EvalReport report;
    if (!valid.samples.empty())
      report = evaluate(valid_truth, predict(params, valid, hp.threshold), result.label_groups,
                        binary_task);
    result.epochs.push_back(EpochSummary{trained.stats, plan.visible_bins, report});
    if (observer) observer(EpochArtifacts{epoch, dump, records, plan, trained.stats, report});
  }

  result.final_train_report = evaluate(train.label_matrix(), predict(params, train, hp.threshold),
                                       result.label_groups, binary_task);
  result.params = std::move(params);
  return result;
}

}  // namespace spdcl
