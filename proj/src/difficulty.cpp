#include "spdcl/difficulty.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>
#include <unordered_map>

#include "spdcl/error.hpp"

namespace spdcl {

namespace {

void check_unique_ids(std::span<const SampleNorm> norms) {
  std::set<std::string_view> seen;
  for (const auto& n : norms) {
    if (!seen.insert(n.sample_id).second)
      fail(ErrorCategory::kInvalidArgument, "duplicate sample id '" + n.sample_id + "'");
  }
}

std::vector<SampleNorm> sorted_by_norm(std::span<const SampleNorm> norms) {
  std::vector<SampleNorm> out(norms.begin(), norms.end());
  std::sort(out.begin(), out.end(), [](const SampleNorm& a, const SampleNorm& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.sample_id < b.sample_id;
  });
  return out;
}

// Assigns ranks by descending `key`, ties by ascending id, and returns the
// records in rank order.
std::vector<DifficultyRecord> rank_descending(std::vector<DifficultyRecord> records,
                                              const std::vector<double>& key) {
  std::vector<std::size_t> order(records.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return records[a].sample_id < records[b].sample_id;
  });
  std::vector<DifficultyRecord> out;
  out.reserve(records.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    out.push_back(std::move(records[order[r]]));
    out.back().rank = r;
  }
  return out;
}

}  // namespace

DifficultyHistory DifficultyHistory::resume_from(int epoch, std::vector<SampleNorm> norms) {
  require(epoch >= 1, "resume_from: epoch must be >= 1");
  DifficultyHistory h;
  h.first_epoch_ = epoch;
  h.append(std::move(norms));
  return h;
}

const std::vector<SampleNorm>& DifficultyHistory::table(int epoch) const {
  if (epoch < first_epoch_ || epoch >= next_epoch())
    fail(ErrorCategory::kMismatch,
         "difficulty history has no epoch " + std::to_string(epoch));
  return epochs_[static_cast<std::size_t>(epoch - first_epoch_)];
}

void DifficultyHistory::append(std::vector<SampleNorm> norms) {
  require(!norms.empty(), "cannot record an empty epoch");
  check_unique_ids(norms);
  auto sorted = sorted_by_norm(norms);
  if (!epochs_.empty()) {
    const auto& last = epochs_.back();
    std::set<std::string_view> prev_ids;
    for (const auto& n : last) prev_ids.insert(n.sample_id);
    bool same = last.size() == sorted.size();
    for (const auto& n : sorted) same = same && prev_ids.count(n.sample_id) == 1;
    if (!same)
      fail(ErrorCategory::kMismatch,
           "sample set of epoch " + std::to_string(next_epoch()) +
               " differs from epoch " + std::to_string(next_epoch() - 1));
  }
  epochs_.push_back(std::move(sorted));
}

std::vector<SampleNorm> compute_norms(std::span<const EmbeddingMatrix> dump, unsigned threads) {
  std::vector<SampleNorm> out(dump.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = SampleNorm{dump[i].sample_id, nuclear_norm(dump[i])};
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(dump.size())));
  if (threads <= 1) {
    work(0, dump.size());
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (dump.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(dump.size(), t * chunk);
    const std::size_t end = std::min(dump.size(), begin + chunk);
    pool.emplace_back([&, t, begin, end] {
      try {
        work(begin, end);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<DifficultyRecord> initial_scores(std::span<const SampleNorm> norms) {
  require(!norms.empty(), "initial_scores: empty dump");
  check_unique_ids(norms);
  std::vector<DifficultyRecord> out;
  out.reserve(norms.size());
  std::size_t rank = 0;
  for (const auto& n : sorted_by_norm(norms))
    out.push_back(DifficultyRecord{n.sample_id, 1, n.norm, rank++, n.norm});
  return out;
}

std::vector<DifficultyRecord> initial_scores(std::span<const EmbeddingMatrix> dump) {
  require(!dump.empty(), "initial_scores: empty dump");
  const auto norms = compute_norms(dump);
  return initial_scores(norms);
}

std::vector<DifficultyRecord> delta_scores(std::span<const SampleNorm> current,
                                           DifficultyHistory& history, AlignmentMode mode,
                                           DeltaOrdering ordering) {
  if (history.empty())
    fail(ErrorCategory::kMismatch, "delta_scores: no previous epoch in history");
  require(!current.empty(), "delta_scores: empty epoch");
  check_unique_ids(current);

  const int epoch = history.next_epoch();
  const auto& previous = history.table(epoch - 1);
  if (previous.size() != current.size())
    fail(ErrorCategory::kMismatch, "delta_scores: sample count differs from previous epoch");

  std::unordered_map<std::string_view, double> prev_by_id;
  for (const auto& n : previous) prev_by_id.emplace(n.sample_id, n.norm);
  for (const auto& n : current) {
    if (!prev_by_id.count(n.sample_id))
      fail(ErrorCategory::kMismatch,
           "delta_scores: sample '" + n.sample_id + "' missing from previous epoch");
  }

  std::vector<DifficultyRecord> records;
  records.reserve(current.size());
  if (mode == AlignmentMode::kRankAligned) {
    const auto sorted = sorted_by_norm(current);
    for (std::size_t i = 0; i < sorted.size(); ++i)
      records.push_back(DifficultyRecord{sorted[i].sample_id, epoch,
                                         sorted[i].norm - previous[i].norm, 0, sorted[i].norm});
  } else {
    for (const auto& n : current)
      records.push_back(
          DifficultyRecord{n.sample_id, epoch, n.norm - prev_by_id.at(n.sample_id), 0, n.norm});
  }

  std::vector<double> key(records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    key[i] = ordering == DeltaOrdering::kMagnitude ? std::fabs(records[i].score) : records[i].score;

  auto ranked = rank_descending(std::move(records), key);
  history.append(std::vector<SampleNorm>(current.begin(), current.end()));
  return ranked;
}

std::vector<std::string> rank_samples(std::span<const DifficultyRecord> records) {
  require(!records.empty(), "rank_samples: no records");
  const int epoch = records.front().epoch;
  std::vector<const DifficultyRecord*> slots(records.size(), nullptr);
  for (const auto& r : records) {
    if (r.epoch != epoch)
      fail(ErrorCategory::kInvalidArgument, "rank_samples: records span several epochs");
    if (r.rank >= records.size())
      fail(ErrorCategory::kInvalidArgument,
           "rank_samples: rank " + std::to_string(r.rank) + " out of range");
    if (slots[r.rank] != nullptr)
      fail(ErrorCategory::kInvalidArgument,
           "rank_samples: rank collision at " + std::to_string(r.rank));
    slots[r.rank] = &r;
  }
  std::vector<std::string> ids;
  ids.reserve(records.size());
  std::set<std::string_view> seen;
  for (const auto* r : slots) {
    if (!seen.insert(r->sample_id).second)
      fail(ErrorCategory::kInvalidArgument,
           "rank_samples: sample '" + r->sample_id + "' ranked twice");
    ids.push_back(r->sample_id);
  }
  return ids;
}

std::vector<DifficultyRecord> DifficultyTracker::score_epoch(std::span<const SampleNorm> norms) {
  if (history_.empty()) {
    auto records = initial_scores(norms);
    history_.append(std::vector<SampleNorm>(norms.begin(), norms.end()));
    return records;
  }
  return delta_scores(norms, history_, mode_, ordering_);
}

std::string to_string(AlignmentMode mode) {
  return mode == AlignmentMode::kRankAligned ? "rank-aligned" : "identity-aligned";
}

std::string to_string(DeltaOrdering ordering) {
  return ordering == DeltaOrdering::kMagnitude ? "magnitude" : "signed";
}

AlignmentMode parse_alignment_mode(const std::string& text) {
  if (text == "rank-aligned" || text == "rank") return AlignmentMode::kRankAligned;
  if (text == "identity-aligned" || text == "identity") return AlignmentMode::kIdentityAligned;
  fail(ErrorCategory::kConfig, "unknown alignment mode '" + text + "'");
}

DeltaOrdering parse_delta_ordering(const std::string& text) {
  if (text == "magnitude") return DeltaOrdering::kMagnitude;
  if (text == "signed") return DeltaOrdering::kSigned;
  fail(ErrorCategory::kConfig, "unknown delta ordering '" + text + "'");
}

}  // namespace spdcl
