#include "spdcl/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "spdcl/error.hpp"

namespace spdcl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Unbiased draw from [0, bound) by rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

std::vector<std::string> CurriculumConfig::validate(std::size_t dataset_size) const {
  if (bins_k < 1) fail(ErrorCategory::kConfig, "bins_k must be >= 1");
  if (total_epochs < 1) fail(ErrorCategory::kConfig, "epochs_T must be >= 1");
  if (bins_k > dataset_size)
    fail(ErrorCategory::kConfig, "bins_k (" + std::to_string(bins_k) +
                                     ") exceeds the dataset size (" +
                                     std::to_string(dataset_size) + ")");
  std::vector<std::string> warnings;
  if (static_cast<std::size_t>(total_epochs) < bins_k)
    warnings.push_back("epochs_T (" + std::to_string(total_epochs) + ") < bins_k (" +
                       std::to_string(bins_k) + "): the hardest bins are never trained on");
  return warnings;
}

Bins partition_bins(std::span<const std::string> ordered_ids, std::size_t k) {
  if (k < 1) fail(ErrorCategory::kInvalidArgument, "partition_bins: k must be >= 1");
  if (k > ordered_ids.size())
    fail(ErrorCategory::kInvalidArgument,
         "partition_bins: k = " + std::to_string(k) + " exceeds " +
             std::to_string(ordered_ids.size()) + " samples");
  const std::size_t base = ordered_ids.size() / k;
  const std::size_t extra = ordered_ids.size() % k;
  Bins bins(k);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < k; ++b) {
    const std::size_t size = base + (b < extra ? 1 : 0);
    bins[b].assign(ordered_ids.begin() + static_cast<std::ptrdiff_t>(pos),
                   ordered_ids.begin() + static_cast<std::ptrdiff_t>(pos + size));
    pos += size;
  }
  return bins;
}

std::vector<std::string> visible_set(int epoch, const Bins& bins) {
  require(epoch >= 1, "visible_set: epoch must be >= 1");
  const std::size_t visible = std::min(static_cast<std::size_t>(epoch), bins.size());
  std::vector<std::string> out;
  for (std::size_t b = 0; b < visible; ++b) out.insert(out.end(), bins[b].begin(), bins[b].end());
  return out;
}

void seeded_shuffle(std::vector<std::string>& ids, std::uint64_t seed, int epoch) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(epoch))));
  for (std::size_t i = ids.size(); i > 1; --i) {
    const std::size_t j = bounded(rng, i);
    std::swap(ids[i - 1], ids[j]);
  }
}

EpochPlan build_epoch_plan(std::span<const DifficultyRecord> records,
                           const CurriculumConfig& config, int epoch) {
  require(epoch >= 1, "build_epoch_plan: epoch must be >= 1");
  config.validate(records.size());
  for (const auto& r : records) {
    if (r.epoch != epoch)
      fail(ErrorCategory::kMismatch, "build_epoch_plan: record for '" + r.sample_id +
                                         "' belongs to epoch " + std::to_string(r.epoch) +
                                         ", planning epoch " + std::to_string(epoch));
  }
  const auto ordered = rank_samples(records);
  const auto bins = partition_bins(ordered, config.bins_k);

  EpochPlan plan;
  plan.epoch = epoch;
  plan.visible_bins = std::min(static_cast<std::size_t>(epoch), bins.size());
  for (std::size_t b = 0; b < bins.size(); ++b)
    for (const auto& id : bins[b]) plan.bin_of.emplace(id, b + 1);
  plan.ordered_ids = visible_set(epoch, bins);
  if (config.shuffle_within_epoch) {
    std::sort(plan.ordered_ids.begin(), plan.ordered_ids.end());
    seeded_shuffle(plan.ordered_ids, config.shuffle_seed, epoch);
  }
  return plan;
}

EpochPlan build_full_plan(std::span<const std::string> ids, const CurriculumConfig& config,
                          int epoch) {
  require(epoch >= 1, "build_full_plan: epoch must be >= 1");
  require(!ids.empty(), "build_full_plan: no samples");
  EpochPlan plan;
  plan.epoch = epoch;
  plan.visible_bins = 1;
  plan.ordered_ids.assign(ids.begin(), ids.end());
  std::sort(plan.ordered_ids.begin(), plan.ordered_ids.end());
  if (std::adjacent_find(plan.ordered_ids.begin(), plan.ordered_ids.end()) !=
      plan.ordered_ids.end())
    fail(ErrorCategory::kInvalidArgument, "build_full_plan: duplicate sample id");
  for (const auto& id : plan.ordered_ids) plan.bin_of.emplace(id, 1);
  if (config.shuffle_within_epoch) seeded_shuffle(plan.ordered_ids, config.shuffle_seed, epoch);
  return plan;
}

}  // namespace spdcl
