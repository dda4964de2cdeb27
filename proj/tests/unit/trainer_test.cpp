#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/oracles.hpp"
#include "spdcl/error.hpp"
#include "spdcl/trainer.hpp"
#include "support/synthetic.hpp"

using namespace spdcl;

namespace {

RawExample raw(std::string id, std::string text, std::vector<std::string> labels) {
  return RawExample{std::move(id), std::move(text), std::move(labels)};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::fabs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("tokenize folds case and falls back to UNK") {
  Vocabulary vocab(250);
  for (const char* t : {"a", "b", "c"}) vocab.add(t);
  CHECK(vocab.add("the") == 5);
  CHECK(tokenize("The THE the", vocab) == std::vector<std::size_t>{5, 5, 5});
  CHECK(tokenize("", vocab) == std::vector<std::size_t>{Vocabulary::kUnk});
  CHECK(tokenize("   \t\n", vocab) == std::vector<std::size_t>{Vocabulary::kUnk});
  CHECK(tokenize("the zebra", vocab) == std::vector<std::size_t>{5, Vocabulary::kUnk});

  Vocabulary short_vocab(2);
  short_vocab.add("x");
  CHECK(tokenize("x x x x", short_vocab).size() == 2);
}

TEST_CASE("vocabulary follows first appearance") {
  const std::vector<RawExample> train = {raw("1", "b a", {"p"}), raw("2", "A c b", {"q"})};
  const auto vocab = Vocabulary::build(train, 250);
  CHECK(vocab.size() == 5);
  CHECK(vocab.lookup("b") == 2);
  CHECK(vocab.lookup("a") == 3);
  CHECK(vocab.lookup("c") == 4);
  CHECK(vocab.lookup("zzz") == Vocabulary::kUnk);
}

TEST_CASE("label space and dataset preparation") {
  const std::vector<RawExample> train = {raw("1", "x", {"pos"}), raw("2", "y", {"neg"})};
  const std::vector<RawExample> valid = {raw("3", "x y", {"other"})};
  const auto labels = LabelSpace::collect(train, valid);
  CHECK(labels.names() == std::vector<std::string>{"neg", "other", "pos"});
  CHECK_THROWS_AS(labels.index("missing"), Error);

  const auto vocab = Vocabulary::build(train, 250);
  const auto ds = prepare_dataset(train, vocab, labels, TaskKind::kMulticlass);
  CHECK(ds.samples.size() == 2);
  CHECK(ds.samples[0].labels == std::vector<std::size_t>{2});
  CHECK(ds.position("2") == 1);
  CHECK_THROWS_AS(ds.position("9"), Error);

  CHECK_THROWS_AS(prepare_dataset(std::vector<RawExample>{raw("1", "x", {"pos", "neg"})}, vocab,
                                  labels, TaskKind::kMulticlass),
                  Error);
  CHECK_THROWS_AS(prepare_dataset(std::vector<RawExample>{raw("1", "x", {})}, vocab, labels,
                                  TaskKind::kMultilabel),
                  Error);
  CHECK_THROWS_AS(prepare_dataset(std::vector<RawExample>{raw("1", "x", {"pos"}),
                                                          raw("1", "y", {"neg"})},
                                  vocab, labels, TaskKind::kMulticlass),
                  Error);
}

TEST_CASE("embed_sample gathers table rows") {
  auto p = ModelParams::initialize(TaskKind::kMulticlass, 6, 3, 2, 1);
  const std::vector<std::size_t> ids{2, 2};
  const auto e = embed_sample(p, ids, "s");
  CHECK(e.rows == 2);
  CHECK(e.cols == 3);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(e.at(0, c) == p.embedding[2 * 3 + c]);
    CHECK(e.at(1, c) == e.at(0, c));
  }
  const std::vector<std::size_t> bad{6};
  CHECK_THROWS_AS(embed_sample(p, bad), Error);

  std::fill(p.embedding.begin(), p.embedding.end(), 0.0);
  const std::vector<std::size_t> some{1, 4, 5};
  CHECK(nuclear_norm(embed_sample(p, some)) == 0.0);
}

TEST_CASE("forward pass") {
  auto zero = ModelParams::zeros(TaskKind::kMulticlass, 4, 2, 3);
  zero.head_bias = {0.5, -1.0, 2.0};
  const std::vector<std::size_t> ids{1, 3};
  CHECK(forward(zero, ids) == zero.head_bias);

  auto ident = ModelParams::initialize(TaskKind::kMulticlass, 5, 3, 3, 9);
  std::fill(ident.head_weights.begin(), ident.head_weights.end(), 0.0);
  for (std::size_t j = 0; j < 3; ++j) ident.head_weights[j * 3 + j] = 1.0;
  const std::vector<std::size_t> one{4};
  const auto z = forward(ident, one);
  for (std::size_t j = 0; j < 3; ++j) CHECK(z[j] == doctest::Approx(ident.embedding[4 * 3 + j]));

  // Tokens 1 -> [1, 2], 2 -> [3, -1]; mean [2, 0.5].
  auto hand = ModelParams::zeros(TaskKind::kMulticlass, 3, 2, 2);
  hand.embedding = {0, 0, 1, 2, 3, -1};
  hand.head_weights = {1, 0, 0.5, 2};
  hand.head_bias = {0.1, -0.2};
  const std::vector<std::size_t> pair{1, 2};
  const auto zh = forward(hand, pair);
  CHECK(zh[0] == doctest::Approx(2.35).epsilon(1e-15));
  CHECK(zh[1] == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("loss values at zero logits") {
  const std::vector<std::size_t> ids{1};
  const auto mc = ModelParams::zeros(TaskKind::kMulticlass, 3, 2, 4);
  const std::vector<std::size_t> cls{2};
  CHECK(loss_and_grad(mc, ids, cls).loss == doctest::Approx(std::log(4.0)).epsilon(1e-15));

  const auto ml = ModelParams::zeros(TaskKind::kMultilabel, 3, 2, 5);
  CHECK(loss_and_grad(ml, ids, std::vector<std::size_t>{}).loss ==
        doctest::Approx(std::log(2.0)).epsilon(1e-15));

  CHECK_THROWS_AS(loss_and_grad(mc, ids, std::vector<std::size_t>{4}), Error);
  CHECK_THROWS_AS(loss_and_grad(mc, ids, std::vector<std::size_t>{0, 1}), Error);
  CHECK_THROWS_AS(loss_and_grad(ml, ids, std::vector<std::size_t>{1, 1}), Error);
  CHECK_THROWS_AS(loss_and_grad(ml, std::vector<std::size_t>{}, std::vector<std::size_t>{}),
                  Error);
}

TEST_CASE("softmax sums to one and loss is non-negative") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    std::vector<double> z(1 + testing::uniform_index(rng, 10));
    for (double& v : z) v = testing::uniform(rng, -50, 50);
    const auto p = softmax(z);
    double sum = 0;
    for (double v : p) sum += v;
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
  for (auto task : {TaskKind::kMulticlass, TaskKind::kMultilabel}) {
    const auto p = ModelParams::initialize(task, 10, 4, 3, 5);
    const std::vector<std::size_t> ids{2, 3, 9}, target{1};
    CHECK(loss_and_grad(p, ids, target).loss >= 0.0);
  }
}

TEST_CASE("analytic gradients match central differences") {
  std::mt19937_64 rng(77);
  for (auto task : {TaskKind::kMulticlass, TaskKind::kMultilabel}) {
    for (int trial = 0; trial < 5; ++trial) {
      const std::size_t V = 4 + testing::uniform_index(rng, 6);
      const std::size_t L = 2 + testing::uniform_index(rng, 4);
      auto p = ModelParams::initialize(task, V, 1 + testing::uniform_index(rng, 5), L, rng());
      for (double& b : p.head_bias) b = testing::uniform(rng, -1, 1);
      std::vector<std::size_t> ids(1 + testing::uniform_index(rng, 6));
      for (auto& id : ids) id = testing::uniform_index(rng, V);
      std::vector<std::size_t> target;
      if (task == TaskKind::kMulticlass) {
        target.push_back(testing::uniform_index(rng, L));
      } else {
        for (std::size_t l = 0; l < L; ++l)
          if (testing::uniform_index(rng, 2)) target.push_back(l);
      }
      const auto analytic = loss_and_grad(p, ids, target).grad;
      const auto numeric = oracle::numeric_gradient(p, ids, target, 1e-5);
      CHECK(max_abs_diff(analytic.embedding, numeric.embedding) <= 1e-6);
      CHECK(max_abs_diff(analytic.head_weights, numeric.head_weights) <= 1e-6);
      CHECK(max_abs_diff(analytic.head_bias, numeric.head_bias) <= 1e-6);
    }
  }
}

namespace {

struct Tiny {
  Dataset data;
  EpochPlan plan;
};

Tiny tiny_set() {
  const std::vector<RawExample> raw_train = {raw("a", "good fine", {"pos"}),
                                             raw("b", "bad awful", {"neg"}),
                                             raw("c", "good", {"pos"})};
  const auto vocab = Vocabulary::build(raw_train, 250);
  const auto labels = LabelSpace::collect(raw_train);
  Tiny t{prepare_dataset(raw_train, vocab, labels, TaskKind::kMulticlass), {}};
  t.plan.epoch = 1;
  t.plan.ordered_ids = {"a", "b", "c"};
  return t;
}

}  // namespace

TEST_CASE("train_epoch with lr 0 leaves parameters unchanged") {
  const auto t = tiny_set();
  const auto p = ModelParams::initialize(TaskKind::kMulticlass, 6, 4, 2, 3);
  const auto res = train_epoch(p, t.plan, t.data, 0.0, 2);
  CHECK(res.params == p);
  CHECK(res.stats.samples_seen == 3);
  CHECK(res.stats.mean_loss > 0.0);
}

TEST_CASE("one step moves against the gradient") {
  const auto t = tiny_set();
  const auto p = ModelParams::initialize(TaskKind::kMulticlass, 6, 4, 2, 3);
  EpochPlan plan = t.plan;
  plan.ordered_ids = {"b"};
  const double lr = 0.5;
  const auto res = train_epoch(p, plan, t.data, lr, 1);
  const auto& s = t.data.samples[t.data.position("b")];
  const auto g = loss_and_grad(p, s.tokens, s.labels).grad;
  for (std::size_t i = 0; i < p.head_weights.size(); ++i)
    CHECK(res.params.head_weights[i] == doctest::Approx(p.head_weights[i] - lr * g.head_weights[i]));
  for (std::size_t i = 0; i < p.embedding.size(); ++i)
    CHECK(res.params.embedding[i] == doctest::Approx(p.embedding[i] - lr * g.embedding[i]));
  CHECK(loss_and_grad(res.params, s.tokens, s.labels).loss <
        loss_and_grad(p, s.tokens, s.labels).loss);

  plan.ordered_ids = {"missing"};
  CHECK_THROWS_AS(train_epoch(p, plan, t.data, lr, 1), Error);
}

TEST_CASE("predict thresholds multilabel outputs") {
  auto p = ModelParams::zeros(TaskKind::kMultilabel, 3, 2, 3);
  p.head_bias = {1.0, -1.0, 0.0};
  Dataset ds;
  ds.task = TaskKind::kMultilabel;
  ds.num_labels = 3;
  ds.samples.push_back(Sample{"s", {1}, {0}});
  ds.reindex();
  const auto pred = predict(p, ds, 0.5);
  CHECK(pred(0, 0) == 1);
  CHECK(pred(0, 1) == 0);
  CHECK(pred(0, 2) == 1);
  CHECK(predict(p, ds, 0.7)(0, 2) == 0);
}

TEST_CASE("dump values are single precision") {
  const auto t = tiny_set();
  const auto p = ModelParams::initialize(TaskKind::kMulticlass, 6, 4, 2, 3);
  const auto dump = dump_embeddings(p, t.data);
  REQUIRE(dump.size() == 3);
  for (const auto& e : dump)
    for (double v : e.values) CHECK(v == static_cast<double>(static_cast<float>(v)));
}

TEST_CASE("separable two-class set is learned") {
  testing::SyntheticSpec spec;
  spec.n_train = 200;
  spec.n_valid = 50;
  spec.classes = 2;
  spec.zipf_exponent = 0.0;
  const auto data = testing::prepare(testing::make_corpus(spec), TaskKind::kMulticlass);
  RunConfig cfg;
  cfg.curriculum.total_epochs = 30;
  cfg.hyper.lr = 0.5;
  const auto res = run_spdcl(data.train, data.valid, cfg, data.vocab.size());
  CHECK(res.final_train_report.subset_accuracy >= 0.95);
  CHECK(res.final_train_report.matthews.has_value());
  CHECK(res.epochs.size() == 30);
}

TEST_CASE("single-bin curriculum equals the baseline run") {
  testing::SyntheticSpec spec;
  spec.n_train = 120;
  spec.n_valid = 30;
  const auto data = testing::prepare(testing::make_corpus(spec), TaskKind::kMulticlass);
  RunConfig cfg;
  cfg.curriculum.bins_k = 1;
  cfg.curriculum.total_epochs = 5;
  const auto a = run_spdcl(data.train, data.valid, cfg, data.vocab.size(), false);
  const auto b = run_spdcl(data.train, data.valid, cfg, data.vocab.size(), true);
  CHECK(a.params == b.params);
  CHECK(a.final_train_report == b.final_train_report);
  for (std::size_t i = 0; i < a.epochs.size(); ++i) {
    CHECK(a.epochs[i].stats.mean_loss == b.epochs[i].stats.mean_loss);
    CHECK(a.epochs[i].valid_report == b.epochs[i].valid_report);
  }
}

TEST_CASE("runs are deterministic and observe every epoch") {
  testing::SyntheticSpec spec;
  spec.n_train = 150;
  spec.n_valid = 40;
  spec.task = TaskKind::kMultilabel;
  const auto data = testing::prepare(testing::make_corpus(spec), TaskKind::kMultilabel);
  RunConfig cfg;
  cfg.task = TaskKind::kMultilabel;
  cfg.curriculum.total_epochs = 6;
  cfg.hyper.threads = 3;
  std::vector<std::size_t> seen;
  const auto a = run_spdcl(data.train, data.valid, cfg, data.vocab.size(), false,
                           [&](const EpochArtifacts& art) {
                             seen.push_back(art.plan.ordered_ids.size());
                             CHECK(art.stats.samples_seen == art.plan.ordered_ids.size());
                             CHECK(art.dump.size() == data.train.samples.size());
                             CHECK(art.records.front().epoch == art.epoch);
                           });
  cfg.hyper.threads = 1;
  const auto b = run_spdcl(data.train, data.valid, cfg, data.vocab.size());
  CHECK(a.params == b.params);
  CHECK(seen == std::vector<std::size_t>{30, 60, 90, 120, 150, 150});
}

TEST_CASE("Zipfian ten-class run completes") {
  const auto data = testing::prepare(testing::make_corpus({}), TaskKind::kMulticlass);
  RunConfig cfg;
  cfg.curriculum.total_epochs = 3;
  const auto res = run_spdcl(data.train, data.valid, cfg, data.vocab.size());
  CHECK(res.epochs.size() == 3);
  CHECK(res.label_groups.size() == 4);
  CHECK(res.epochs.back().valid_report.group_macro_f1.size() == 4);
}

TEST_CASE("run configuration errors") {
  const auto t = tiny_set();
  RunConfig cfg;
  CHECK_THROWS_AS(run_spdcl(t.data, t.data, cfg, 6), Error);  // k=5 > N=3
  cfg.curriculum.bins_k = 2;
  cfg.hyper.lr = -1;
  CHECK_THROWS_AS(run_spdcl(t.data, t.data, cfg, 6), Error);
  cfg.hyper.lr = 0.1;
  cfg.task = TaskKind::kMultilabel;
  CHECK_THROWS_AS(run_spdcl(t.data, t.data, cfg, 6), Error);
}
