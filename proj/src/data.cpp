#include "spdcl/data.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "spdcl/error.hpp"

namespace spdcl {

namespace {

template <typename Fn>
void for_each_token(std::string_view text, Fn&& fn) {
  std::string token;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isspace(c)) {
      if (!token.empty()) {
        fn(token);
        token.clear();
      }
    } else {
      token.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  if (!token.empty()) fn(token);
}

}  // namespace

std::string to_string(TaskKind kind) {
  return kind == TaskKind::kMulticlass ? "multiclass" : "multilabel";
}

TaskKind parse_task_kind(const std::string& text) {
  if (text == "multiclass") return TaskKind::kMulticlass;
  if (text == "multilabel") return TaskKind::kMultilabel;
  fail(ErrorCategory::kConfig, "unknown task kind '" + text + "'");
}

Vocabulary::Vocabulary(std::size_t max_len) : max_len_(max_len) {
  require(max_len >= 1, "vocabulary: max_len must be >= 1");
  tokens_ = {"[PAD]", "[UNK]"};
  index_ = {{"[PAD]", kPad}, {"[UNK]", kUnk}};
}

Vocabulary Vocabulary::build(std::span<const RawExample> train, std::size_t max_len) {
  Vocabulary vocab(max_len);
  for (const auto& ex : train)
    for_each_token(ex.text, [&](const std::string& tok) { vocab.add(tok); });
  return vocab;
}

std::size_t Vocabulary::add(const std::string& token) {
  auto [it, inserted] = index_.emplace(token, tokens_.size());
  if (inserted) tokens_.push_back(token);
  return it->second;
}

std::size_t Vocabulary::lookup(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<std::size_t> tokenize(std::string_view text, const Vocabulary& vocab) {
  std::vector<std::size_t> ids;
  for_each_token(text, [&](const std::string& tok) {
    if (ids.size() < vocab.max_len()) ids.push_back(vocab.lookup(tok));
  });
  if (ids.empty()) ids.push_back(Vocabulary::kUnk);
  return ids;
}

LabelSpace::LabelSpace(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (std::size_t i = 0; i < names_.size(); ++i) index_.emplace(names_[i], i);
}

LabelSpace LabelSpace::collect(std::span<const RawExample> a, std::span<const RawExample> b) {
  std::vector<std::string> names;
  for (auto span : {a, b})
    for (const auto& ex : span) names.insert(names.end(), ex.labels.begin(), ex.labels.end());
  return LabelSpace(std::move(names));
}

std::size_t LabelSpace::index(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) fail(ErrorCategory::kMismatch, "unknown label '" + name + "'");
  return it->second;
}

std::size_t Dataset::position(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) fail(ErrorCategory::kMismatch, "sample '" + id + "' not in dataset");
  return it->second;
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.id);
  return out;
}

LabelMatrix Dataset::label_matrix() const {
  LabelMatrix m(samples.size(), num_labels);
  for (std::size_t s = 0; s < samples.size(); ++s)
    for (std::size_t l : samples[s].labels) m.set(s, l, true);
  return m;
}

void Dataset::reindex() {
  by_id_.clear();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!by_id_.emplace(samples[i].id, i).second)
      fail(ErrorCategory::kFormat, "duplicate sample id '" + samples[i].id + "'");
  }
}

Dataset prepare_dataset(std::span<const RawExample> raw, const Vocabulary& vocab,
                        const LabelSpace& labels, TaskKind task) {
  Dataset ds;
  ds.task = task;
  ds.num_labels = labels.size();
  ds.samples.reserve(raw.size());
  for (const auto& ex : raw) {
    if (ex.labels.empty())
      fail(ErrorCategory::kFormat, "record '" + ex.id + "' has no labels");
    if (task == TaskKind::kMulticlass && ex.labels.size() != 1)
      fail(ErrorCategory::kFormat, "multiclass record '" + ex.id + "' has " +
                                       std::to_string(ex.labels.size()) + " labels");
    Sample s{ex.id, tokenize(ex.text, vocab), {}};
    std::set<std::size_t> uniq;
    for (const auto& name : ex.labels) uniq.insert(labels.index(name));
    s.labels.assign(uniq.begin(), uniq.end());
    ds.samples.push_back(std::move(s));
  }
  ds.reindex();
  return ds;
}

}  // namespace spdcl
