#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace spdcl {

/// Dense n_samples x n_labels binary matrix. Multiclass data is stored
/// one-hot so every metric works on one representation.
class LabelMatrix {
 public:
  LabelMatrix() = default;
  LabelMatrix(std::size_t samples, std::size_t labels);
  /// Row-major 0/1 entries; anything else is rejected.
  LabelMatrix(std::size_t samples, std::size_t labels, std::vector<std::uint8_t> entries);

  static LabelMatrix from_class_indices(std::span<const std::size_t> classes,
                                        std::size_t labels);

  std::size_t samples() const { return samples_; }
  std::size_t labels() const { return labels_; }
  std::uint8_t operator()(std::size_t s, std::size_t l) const { return data_[s * labels_ + l]; }
  void set(std::size_t s, std::size_t l, bool value) { data_[s * labels_ + l] = value ? 1 : 0; }
  std::span<const std::uint8_t> row(std::size_t s) const {
    return {data_.data() + s * labels_, labels_};
  }
  const std::vector<std::uint8_t>& data() const { return data_; }

  bool operator==(const LabelMatrix&) const = default;

 private:
  std::size_t samples_ = 0;
  std::size_t labels_ = 0;
  std::vector<std::uint8_t> data_;
};

// All F1-style metrics and Mcc return 0 when their denominator is 0.
double micro_f1(const LabelMatrix& truth, const LabelMatrix& pred);
double macro_f1(const LabelMatrix& truth, const LabelMatrix& pred);
double hamming_loss(const LabelMatrix& truth, const LabelMatrix& pred);
double subset_accuracy(const LabelMatrix& truth, const LabelMatrix& pred);

/// Single-label binary tasks; entries must be 0 or 1.
double matthews(std::span<const int> truth, std::span<const int> pred);
double binary_f1(std::span<const int> truth, std::span<const int> pred);

/// Label indices grouped by descending training frequency (ties by index),
/// `n_groups` contiguous groups of near-equal size with the remainder going
/// to the earliest groups.
std::vector<std::vector<std::size_t>> label_frequency_groups(const LabelMatrix& train_labels,
                                                             std::size_t n_groups = 4);

/// Macro-F1 restricted to each group. `groups` must partition the labels.
std::vector<double> macro_f1_per_group(const LabelMatrix& truth, const LabelMatrix& pred,
                                       const std::vector<std::vector<std::size_t>>& groups);

struct EvalReport {
  double micro_f1 = 0.0;
  double macro_f1 = 0.0;
  double hamming_loss = 0.0;
  double subset_accuracy = 0.0;
  // Present only for two-class single-label tasks (class 1 is positive).
  std::optional<double> matthews;
  std::optional<double> binary_f1;
  std::vector<double> group_macro_f1;

  bool operator==(const EvalReport&) const = default;
};

/// Every metric at once. `binary_task` enables Mcc and binary F1 and needs a
/// two-label one-hot matrix.
EvalReport evaluate(const LabelMatrix& truth, const LabelMatrix& pred,
                    const std::vector<std::vector<std::size_t>>& groups, bool binary_task);

}  // namespace spdcl
