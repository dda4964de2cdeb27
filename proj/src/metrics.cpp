#include "spdcl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spdcl/error.hpp"

namespace spdcl {

namespace {

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
};

void check_shapes(const LabelMatrix& truth, const LabelMatrix& pred) {
  if (truth.samples() != pred.samples() || truth.labels() != pred.labels())
    fail(ErrorCategory::kInvalidArgument,
         "label matrices differ in shape: " + std::to_string(truth.samples()) + "x" +
             std::to_string(truth.labels()) + " vs " + std::to_string(pred.samples()) + "x" +
             std::to_string(pred.labels()));
}

Counts label_counts(const LabelMatrix& truth, const LabelMatrix& pred, std::size_t label) {
  Counts c;
  for (std::size_t s = 0; s < truth.samples(); ++s) {
    const bool t = truth(s, label) != 0;
    const bool p = pred(s, label) != 0;
    if (t && p) ++c.tp;
    else if (p) ++c.fp;
    else if (t) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double f1_from(const Counts& c) {
  const std::size_t denom = 2 * c.tp + c.fp + c.fn;
  return denom == 0 ? 0.0 : 2.0 * static_cast<double>(c.tp) / static_cast<double>(denom);
}

Counts binary_counts(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size())
    fail(ErrorCategory::kInvalidArgument, "binary metric: length mismatch");
  Counts c;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if ((truth[i] != 0 && truth[i] != 1) || (pred[i] != 0 && pred[i] != 1))
      fail(ErrorCategory::kInvalidArgument,
           "binary metric: non-binary value at position " + std::to_string(i));
    if (truth[i] == 1 && pred[i] == 1) ++c.tp;
    else if (pred[i] == 1) ++c.fp;
    else if (truth[i] == 1) ++c.fn;
    else ++c.tn;
  }
  return c;
}

double macro_over(const LabelMatrix& truth, const LabelMatrix& pred,
                  std::span<const std::size_t> labels) {
  if (labels.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t l : labels) sum += f1_from(label_counts(truth, pred, l));
  return sum / static_cast<double>(labels.size());
}

}  // namespace

LabelMatrix::LabelMatrix(std::size_t samples, std::size_t labels)
    : samples_(samples), labels_(labels), data_(samples * labels, 0) {}

LabelMatrix::LabelMatrix(std::size_t samples, std::size_t labels,
                         std::vector<std::uint8_t> entries)
    : samples_(samples), labels_(labels), data_(std::move(entries)) {
  if (data_.size() != samples * labels)
    fail(ErrorCategory::kInvalidArgument, "label matrix: entry count does not match shape");
  for (auto v : data_)
    if (v > 1) fail(ErrorCategory::kInvalidArgument, "label matrix: entries must be 0 or 1");
}

LabelMatrix LabelMatrix::from_class_indices(std::span<const std::size_t> classes,
                                            std::size_t labels) {
  LabelMatrix m(classes.size(), labels);
  for (std::size_t s = 0; s < classes.size(); ++s) {
    if (classes[s] >= labels)
      fail(ErrorCategory::kInvalidArgument,
           "class index " + std::to_string(classes[s]) + " >= " + std::to_string(labels));
    m.set(s, classes[s], true);
  }
  return m;
}

double micro_f1(const LabelMatrix& truth, const LabelMatrix& pred) {
  check_shapes(truth, pred);
  Counts total;
  for (std::size_t l = 0; l < truth.labels(); ++l) {
    const auto c = label_counts(truth, pred, l);
    total.tp += c.tp;
    total.fp += c.fp;
    total.fn += c.fn;
  }
  return f1_from(total);
}

double macro_f1(const LabelMatrix& truth, const LabelMatrix& pred) {
  check_shapes(truth, pred);
  std::vector<std::size_t> all(truth.labels());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return macro_over(truth, pred, all);
}

double hamming_loss(const LabelMatrix& truth, const LabelMatrix& pred) {
  check_shapes(truth, pred);
  const auto& a = truth.data();
  const auto& b = pred.data();
  if (a.empty()) return 0.0;
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < a.size(); ++i) wrong += a[i] != b[i];
  return static_cast<double>(wrong) / static_cast<double>(a.size());
}

double subset_accuracy(const LabelMatrix& truth, const LabelMatrix& pred) {
  check_shapes(truth, pred);
  if (truth.samples() == 0) return 0.0;
  std::size_t exact = 0;
  for (std::size_t s = 0; s < truth.samples(); ++s) {
    const auto t = truth.row(s);
    const auto p = pred.row(s);
    exact += std::equal(t.begin(), t.end(), p.begin());
  }
  return static_cast<double>(exact) / static_cast<double>(truth.samples());
}

double matthews(std::span<const int> truth, std::span<const int> pred) {
  const auto c = binary_counts(truth, pred);
  const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

double binary_f1(std::span<const int> truth, std::span<const int> pred) {
  return f1_from(binary_counts(truth, pred));
}

std::vector<std::vector<std::size_t>> label_frequency_groups(const LabelMatrix& train_labels,
                                                             std::size_t n_groups) {
  const std::size_t labels = train_labels.labels();
  if (n_groups < 1 || n_groups > labels)
    fail(ErrorCategory::kInvalidArgument,
         "label_frequency_groups: n_groups = " + std::to_string(n_groups) + " with " +
             std::to_string(labels) + " labels");
  std::vector<std::size_t> freq(labels, 0);
  for (std::size_t s = 0; s < train_labels.samples(); ++s)
    for (std::size_t l = 0; l < labels; ++l) freq[l] += train_labels(s, l);

  std::vector<std::size_t> order(labels);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return freq[a] > freq[b]; });

  std::vector<std::vector<std::size_t>> groups(n_groups);
  const std::size_t base = labels / n_groups, extra = labels % n_groups;
  std::size_t pos = 0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    groups[g].assign(order.begin() + static_cast<std::ptrdiff_t>(pos),
                     order.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return groups;
}

std::vector<double> macro_f1_per_group(const LabelMatrix& truth, const LabelMatrix& pred,
                                       const std::vector<std::vector<std::size_t>>& groups) {
  check_shapes(truth, pred);
  std::vector<int> covered(truth.labels(), 0);
  for (const auto& g : groups) {
    if (g.empty()) fail(ErrorCategory::kInvalidArgument, "macro_f1_per_group: empty group");
    for (std::size_t l : g) {
      if (l >= truth.labels() || covered[l]++)
        fail(ErrorCategory::kInvalidArgument,
             "macro_f1_per_group: groups do not partition the label set");
    }
  }
  if (std::find(covered.begin(), covered.end(), 0) != covered.end())
    fail(ErrorCategory::kInvalidArgument, "macro_f1_per_group: some labels are in no group");

  std::vector<double> out;
  out.reserve(groups.size());
  for (const auto& g : groups) out.push_back(macro_over(truth, pred, g));
  return out;
}

EvalReport evaluate(const LabelMatrix& truth, const LabelMatrix& pred,
                    const std::vector<std::vector<std::size_t>>& groups, bool binary_task) {
  EvalReport r;
  r.micro_f1 = micro_f1(truth, pred);
  r.macro_f1 = macro_f1(truth, pred);
  r.hamming_loss = hamming_loss(truth, pred);
  r.subset_accuracy = subset_accuracy(truth, pred);
  if (!groups.empty()) r.group_macro_f1 = macro_f1_per_group(truth, pred, groups);
  if (binary_task) {
    require(truth.labels() == 2, "binary metrics need exactly two classes");
    std::vector<int> t(truth.samples()), p(pred.samples());
    for (std::size_t s = 0; s < truth.samples(); ++s) {
      t[s] = truth(s, 1);
      p[s] = pred(s, 1);
    }
    r.matthews = matthews(t, p);
    r.binary_f1 = binary_f1(t, p);
  }
  return r;
}

}  // namespace spdcl
