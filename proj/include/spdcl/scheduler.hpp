#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "spdcl/difficulty.hpp"

namespace spdcl {

struct CurriculumConfig {
  std::size_t bins_k = 5;
  int total_epochs = 10;
  std::uint64_t shuffle_seed = 2;
  AlignmentMode alignment = AlignmentMode::kRankAligned;
  DeltaOrdering delta_ordering = DeltaOrdering::kMagnitude;
  bool shuffle_within_epoch = true;

  /// Throws kConfig for hard violations (k < 1, T < 1, k > dataset size).
  /// Returns soft warnings, e.g. when T < k leaves the hardest bins unseen.
  std::vector<std::string> validate(std::size_t dataset_size) const;
};

/// Training order for one epoch. Bins are numbered from 1 (easiest).
struct EpochPlan {
  int epoch = 1;
  std::size_t visible_bins = 1;
  std::vector<std::string> ordered_ids;
  std::map<std::string, std::size_t> bin_of;  // every sample, visible or not

  bool operator==(const EpochPlan&) const = default;
};

using Bins = std::vector<std::vector<std::string>>;

/// Contiguous slices of an easy-to-hard ordering, easiest first; sizes
/// differ by at most one and the earlier bins take the remainder.
Bins partition_bins(std::span<const std::string> ordered_ids, std::size_t k);

/// Bins 1..min(epoch, k) concatenated in bin order.
std::vector<std::string> visible_set(int epoch, const Bins& bins);

/// Deterministic Fisher-Yates shuffle driven by (seed, epoch).
void seeded_shuffle(std::vector<std::string>& ids, std::uint64_t seed, int epoch);

/// Ranks -> bins -> visible set -> within-epoch order. The visible set is
/// put in id order before shuffling, so the order depends only on which
/// samples are visible, not on how they were ranked. With
/// `shuffle_within_epoch == false` the visible set stays in rank order.
EpochPlan build_epoch_plan(std::span<const DifficultyRecord> records,
                           const CurriculumConfig& config, int epoch);

/// Full-data plan used when training without a curriculum: every sample
/// visible, all assigned to bin 1. With shuffling on, the order matches a
/// single-bin curriculum plan for the same epoch; otherwise ids are sorted.
EpochPlan build_full_plan(std::span<const std::string> ids, const CurriculumConfig& config,
                          int epoch);

}  // namespace spdcl
