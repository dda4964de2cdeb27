#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "spdcl/metrics.hpp"

namespace spdcl {

enum class TaskKind { kMulticlass, kMultilabel };

std::string to_string(TaskKind kind);
TaskKind parse_task_kind(const std::string& text);

/// One dataset record as it appears on disk.
struct RawExample {
  std::string id;
  std::string text;
  std::vector<std::string> labels;
};

/// Lowercased whitespace tokens mapped to dense ids. Ids 0 and 1 are PAD and
/// UNK; the rest follow first appearance in the training texts.
class Vocabulary {
 public:
  static constexpr std::size_t kPad = 0;
  static constexpr std::size_t kUnk = 1;

  explicit Vocabulary(std::size_t max_len = 250);

  static Vocabulary build(std::span<const RawExample> train, std::size_t max_len);

  /// Adds `token` (already lowercased) if absent and returns its id.
  std::size_t add(const std::string& token);

  std::size_t lookup(const std::string& token) const;
  std::size_t size() const { return tokens_.size(); }
  std::size_t max_len() const { return max_len_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::size_t max_len_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Lowercase, split on whitespace, map with UNK fallback, truncate to
/// max_len. Never returns an empty sequence: blank text becomes [UNK].
std::vector<std::size_t> tokenize(std::string_view text, const Vocabulary& vocab);

/// Sorted set of label names; index = position.
class LabelSpace {
 public:
  LabelSpace() = default;
  explicit LabelSpace(std::vector<std::string> names);

  static LabelSpace collect(std::span<const RawExample> a, std::span<const RawExample> b = {});

  std::size_t index(const std::string& name) const;
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
};

struct Sample {
  std::string id;
  std::vector<std::size_t> tokens;
  std::vector<std::size_t> labels;  // exactly one entry for multiclass
};

struct Dataset {
  TaskKind task = TaskKind::kMulticlass;
  std::size_t num_labels = 0;
  std::vector<Sample> samples;

  /// Position of `id` in `samples`; throws kMismatch if absent.
  std::size_t position(const std::string& id) const;
  std::vector<std::string> ids() const;
  LabelMatrix label_matrix() const;

  /// Rebuilds the id lookup; call after editing `samples` directly.
  void reindex();

 private:
  std::unordered_map<std::string, std::size_t> by_id_;
};

/// Tokenizes and label-indexes raw records. Rejects duplicate ids, empty label
/// sets and (for multiclass) records carrying more than one label.
Dataset prepare_dataset(std::span<const RawExample> raw, const Vocabulary& vocab,
                        const LabelSpace& labels, TaskKind task);

}  // namespace spdcl
