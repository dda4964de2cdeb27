#include "spdcl/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "spdcl/error.hpp"

namespace spdcl::io {

using json = nlohmann::ordered_json;

namespace {

// --- little-endian byte helpers -------------------------------------------

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<T>;
  auto u = static_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<char>(u & 0xff));
    u = static_cast<U>(u >> 8);
  }
}

void put_f32(std::string& out, float v) { put_le(out, std::bit_cast<std::uint32_t>(v)); }
void put_f64(std::string& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }

class ByteReader {
 public:
  ByteReader(std::string_view bytes, std::string what) : bytes_(bytes), what_(std::move(what)) {}

  template <typename T>
  T le() {
    need(sizeof(T));
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
      u |= static_cast<std::make_unsigned_t<T>>(
          static_cast<std::make_unsigned_t<T>>(static_cast<unsigned char>(bytes_[pos_ + i]))
          << (8 * i));
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }

  float f32() { return std::bit_cast<float>(le<std::uint32_t>()); }
  double f64() { return std::bit_cast<double>(le<std::uint64_t>()); }

  std::string_view take(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

  void need(std::size_t n) const {
    if (remaining() < n)
      fail(ErrorCategory::kFormat, what_ + ": truncated at byte " + std::to_string(pos_));
  }

 private:
  std::string_view bytes_;
  std::string what_;
  std::size_t pos_ = 0;
};

// --- JSON helpers ------------------------------------------------------------

json parse_json_line(std::string_view line, const std::string& what, std::size_t line_no) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    fail(ErrorCategory::kFormat,
         what + " line " + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")");
  }
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    fn(line, line_no);
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key))
    fail(ErrorCategory::kFormat, where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) fail(ErrorCategory::kFormat, where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number()) fail(ErrorCategory::kFormat, where + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_integer())
    fail(ErrorCategory::kFormat, where + ": field '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::size_t get_count(const json& obj, const char* key, const std::string& where) {
  const auto v = get_integer(obj, key, where);
  if (v < 0) fail(ErrorCategory::kFormat, where + ": field '" + key + "' must be >= 0");
  return static_cast<std::size_t>(v);
}

json eval_to_json(const EvalReport& r) {
  json j;
  j["micro_f1"] = r.micro_f1;
  j["macro_f1"] = r.macro_f1;
  j["hamming_loss"] = r.hamming_loss;
  j["subset_accuracy"] = r.subset_accuracy;
  if (r.matthews) j["matthews"] = *r.matthews;
  if (r.binary_f1) j["binary_f1"] = *r.binary_f1;
  j["group_macro_f1"] = r.group_macro_f1;
  return j;
}

EvalReport eval_from_json(const json& j, const std::string& where) {
  EvalReport r;
  r.micro_f1 = get_number(j, "micro_f1", where);
  r.macro_f1 = get_number(j, "macro_f1", where);
  r.hamming_loss = get_number(j, "hamming_loss", where);
  r.subset_accuracy = get_number(j, "subset_accuracy", where);
  if (j.contains("matthews")) r.matthews = get_number(j, "matthews", where);
  if (j.contains("binary_f1")) r.binary_f1 = get_number(j, "binary_f1", where);
  const auto& groups = field(j, "group_macro_f1", where);
  if (!groups.is_array()) fail(ErrorCategory::kFormat, where + ": group_macro_f1 must be an array");
  for (const auto& g : groups) {
    if (!g.is_number()) fail(ErrorCategory::kFormat, where + ": group_macro_f1 entries must be numbers");
    r.group_macro_f1.push_back(g.get<double>());
  }
  return r;
}

std::string single_line(std::string_view text, const std::string& what) {
  std::string found;
  std::size_t count = 0;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    ++count;
    found = std::string(line);
  });
  if (count != 1)
    fail(ErrorCategory::kFormat, what + ": expected exactly one JSON line, found " +
                                     std::to_string(count));
  return found;
}

}  // namespace

// ---------------------------------------------------------------------------

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::kIo, "cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCategory::kIo, "error reading '" + path.string() + "'");
  return ss.str();
}

void atomic_write(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCategory::kIo, "cannot open '" + tmp.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) fail(ErrorCategory::kIo, "error writing '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCategory::kIo, "cannot move output into place at '" + path.string() + "'");
  }
}

// --- datasets ---------------------------------------------------------------

std::vector<RawExample> parse_dataset(std::string_view text) {
  std::vector<RawExample> out;
  std::set<std::string> ids;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const std::string where = "dataset line " + std::to_string(line_no);
    const json j = parse_json_line(line, "dataset", line_no);
    RawExample ex;
    ex.id = get_string(j, "id", where);
    ex.text = get_string(j, "text", where);
    const auto& labels = field(j, "labels", where);
    if (labels.is_string()) {
      ex.labels.push_back(labels.get<std::string>());
    } else if (labels.is_array()) {
      for (const auto& l : labels) {
        if (!l.is_string()) fail(ErrorCategory::kFormat, where + ": labels must be strings");
        ex.labels.push_back(l.get<std::string>());
      }
    } else {
      fail(ErrorCategory::kFormat, where + ": labels must be a string or an array of strings");
    }
    if (ex.labels.empty()) fail(ErrorCategory::kFormat, where + ": empty label set");
    if (!ids.insert(ex.id).second)
      fail(ErrorCategory::kFormat, where + ": duplicate id '" + ex.id + "'");
    out.push_back(std::move(ex));
  });
  return out;
}

std::vector<RawExample> read_dataset(const fs::path& path) {
  return parse_dataset(read_file(path));
}

std::string format_dataset(std::span<const RawExample> records, TaskKind task) {
  std::string out;
  for (const auto& ex : records) {
    json j;
    j["id"] = ex.id;
    j["text"] = ex.text;
    if (task == TaskKind::kMulticlass && ex.labels.size() == 1)
      j["labels"] = ex.labels.front();
    else
      j["labels"] = ex.labels;
    out += j.dump() + "\n";
  }
  return out;
}

// --- embedding dumps ------------------------------------------------------------

std::string encode_embedding_dump(std::span<const EmbeddingMatrix> dump) {
  std::string out(kDumpMagic);
  put_le(out, kDumpVersion);
  put_le(out, static_cast<std::uint64_t>(dump.size()));
  for (const auto& e : dump) {
    e.validate();
    require(e.sample_id.size() <= 0xffffffffu && e.rows <= 0xffffffffu && e.cols <= 0xffffffffu,
            "embedding matrix too large for the dump format");
    put_le(out, static_cast<std::uint32_t>(e.sample_id.size()));
    out += e.sample_id;
    put_le(out, static_cast<std::uint32_t>(e.rows));
    put_le(out, static_cast<std::uint32_t>(e.cols));
    for (double v : e.values) put_f32(out, static_cast<float>(v));
  }
  return out;
}

std::vector<EmbeddingMatrix> decode_embedding_dump(std::string_view bytes) {
  ByteReader in(bytes, "embedding dump");
  if (in.take(kDumpMagic.size()) != kDumpMagic)
    fail(ErrorCategory::kFormat, "embedding dump: bad magic");
  const auto version = in.le<std::uint32_t>();
  if (version != kDumpVersion)
    fail(ErrorCategory::kFormat,
         "embedding dump: unsupported version " + std::to_string(version));
  const auto count = in.le<std::uint64_t>();
  // Smallest possible record is 4 + 0 + 4 + 4 + 4 bytes.
  if (count > in.remaining() / 16)
    fail(ErrorCategory::kFormat, "embedding dump: declared sample count exceeds payload");

  std::vector<EmbeddingMatrix> dump;
  dump.reserve(static_cast<std::size_t>(count));
  std::set<std::string> ids;
  for (std::uint64_t i = 0; i < count; ++i) {
    EmbeddingMatrix e;
    const auto id_len = in.le<std::uint32_t>();
    e.sample_id = std::string(in.take(id_len));
    e.rows = in.le<std::uint32_t>();
    e.cols = in.le<std::uint32_t>();
    if (e.rows == 0 || e.cols == 0)
      fail(ErrorCategory::kFormat, "embedding dump: sample '" + e.sample_id + "' has a zero dimension");
    const std::uint64_t n = static_cast<std::uint64_t>(e.rows) * e.cols;
    if (n > in.remaining() / 4)
      fail(ErrorCategory::kFormat, "embedding dump: sample '" + e.sample_id + "' is truncated");
    e.values.resize(static_cast<std::size_t>(n));
    for (auto& v : e.values) {
      v = static_cast<double>(in.f32());
      if (!std::isfinite(v))
        fail(ErrorCategory::kFormat,
             "embedding dump: sample '" + e.sample_id + "' has a non-finite value");
    }
    if (!ids.insert(e.sample_id).second)
      fail(ErrorCategory::kFormat, "embedding dump: duplicate sample id '" + e.sample_id + "'");
    dump.push_back(std::move(e));
  }
  if (in.remaining() != 0)
    fail(ErrorCategory::kFormat,
         "embedding dump: " + std::to_string(in.remaining()) + " trailing bytes");
  return dump;
}

void write_embedding_dump(const fs::path& path, std::span<const EmbeddingMatrix> dump) {
  atomic_write(path, encode_embedding_dump(dump));
}

std::vector<EmbeddingMatrix> read_embedding_dump(const fs::path& path) {
  return decode_embedding_dump(read_file(path));
}

// --- scores ---------------------------------------------------------------------

std::string format_scores(std::span<const DifficultyRecord> records) {
  std::string out;
  for (const auto& r : records) {
    json j;
    j["id"] = r.sample_id;
    j["epoch"] = r.epoch;
    j["score"] = r.score;
    j["rank"] = r.rank;
    j["norm"] = r.norm;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<DifficultyRecord> parse_scores(std::string_view text) {
  std::vector<DifficultyRecord> out;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const std::string where = "score line " + std::to_string(line_no);
    const json j = parse_json_line(line, "score file", line_no);
    DifficultyRecord r;
    r.sample_id = get_string(j, "id", where);
    const auto epoch = get_integer(j, "epoch", where);
    if (epoch < 1) fail(ErrorCategory::kFormat, where + ": epoch must be >= 1");
    r.epoch = static_cast<int>(epoch);
    r.score = get_number(j, "score", where);
    r.rank = get_count(j, "rank", where);
    r.norm = get_number(j, "norm", where);
    out.push_back(std::move(r));
  });
  if (out.empty()) fail(ErrorCategory::kFormat, "score file is empty");
  try {
    rank_samples(out);
  } catch (const Error& e) {
    fail(ErrorCategory::kFormat, std::string("score file: ") + e.what());
  }
  return out;
}

void write_scores(const fs::path& path, std::span<const DifficultyRecord> records) {
  atomic_write(path, format_scores(records));
}

std::vector<DifficultyRecord> read_scores(const fs::path& path) {
  return parse_scores(read_file(path));
}

// --- manifests ------------------------------------------------------------------

std::string format_manifest(const EpochPlan& plan) {
  json j;
  j["epoch"] = plan.epoch;
  j["order"] = plan.ordered_ids;
  json bins = json::object();
  for (const auto& [id, bin] : plan.bin_of) bins[id] = bin;
  j["bin_of"] = std::move(bins);
  return j.dump() + "\n";
}

EpochPlan parse_manifest(std::string_view text) {
  const std::string where = "manifest";
  const json j = parse_json_line(single_line(text, where), where, 1);
  EpochPlan plan;
  const auto epoch = get_integer(j, "epoch", where);
  if (epoch < 1) fail(ErrorCategory::kFormat, "manifest: epoch must be >= 1");
  plan.epoch = static_cast<int>(epoch);
  const auto& order = field(j, "order", where);
  if (!order.is_array()) fail(ErrorCategory::kFormat, "manifest: order must be an array");
  for (const auto& id : order) {
    if (!id.is_string()) fail(ErrorCategory::kFormat, "manifest: order entries must be strings");
    plan.ordered_ids.push_back(id.get<std::string>());
  }
  const auto& bins = field(j, "bin_of", where);
  if (!bins.is_object()) fail(ErrorCategory::kFormat, "manifest: bin_of must be an object");
  for (const auto& [id, bin] : bins.items()) {
    if (!bin.is_number_integer() || bin.get<std::int64_t>() < 1)
      fail(ErrorCategory::kFormat, "manifest: bin of '" + id + "' must be an integer >= 1");
    plan.bin_of.emplace(id, bin.get<std::size_t>());
  }
  std::set<std::string_view> seen;
  plan.visible_bins = 0;
  for (const auto& id : plan.ordered_ids) {
    if (!seen.insert(id).second)
      fail(ErrorCategory::kFormat, "manifest: '" + id + "' appears twice in order");
    auto it = plan.bin_of.find(id);
    if (it == plan.bin_of.end())
      fail(ErrorCategory::kFormat, "manifest: '" + id + "' has no bin assignment");
    plan.visible_bins = std::max(plan.visible_bins, it->second);
  }
  return plan;
}

void write_manifest(const fs::path& path, const EpochPlan& plan) {
  atomic_write(path, format_manifest(plan));
}

EpochPlan read_manifest(const fs::path& path) { return parse_manifest(read_file(path)); }

// --- run config -----------------------------------------------------------------

RunConfig parse_run_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorCategory::kConfig, std::string("run config: invalid JSON (") + e.what() + ")");
  }
  if (!j.is_object()) fail(ErrorCategory::kConfig, "run config: expected a JSON object");

  static const std::set<std::string> known = {
      "bins_k",   "epochs_T",  "seed",           "lr",
      "batch",    "hidden_d",  "max_len",        "task_kind",
      "alignment_mode", "delta_ordering", "shuffle_within_epoch", "threshold",
      "n_groups", "threads"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) fail(ErrorCategory::kConfig, "run config: unknown key '" + key + "'");

  auto positive_int = [&](const char* key, auto& target) {
    if (!j.contains(key)) return;
    const auto& v = j.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 1)
      fail(ErrorCategory::kConfig, std::string("run config: '") + key + "' must be an integer >= 1");
    target = static_cast<std::remove_reference_t<decltype(target)>>(v.get<std::int64_t>());
  };
  auto string_opt = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_string())
      fail(ErrorCategory::kConfig, std::string("run config: '") + key + "' must be a string");
    return j.at(key).get<std::string>();
  };

  RunConfig c;
  positive_int("bins_k", c.curriculum.bins_k);
  positive_int("epochs_T", c.curriculum.total_epochs);
  positive_int("batch", c.hyper.batch);
  positive_int("hidden_d", c.hyper.hidden_d);
  positive_int("max_len", c.hyper.max_len);
  positive_int("n_groups", c.hyper.n_groups);
  positive_int("threads", c.hyper.threads);
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      fail(ErrorCategory::kConfig, "run config: 'seed' must be a non-negative integer");
    c.curriculum.shuffle_seed = v.get<std::uint64_t>();
  }
  if (j.contains("lr")) {
    const auto& v = j.at("lr");
    if (!v.is_number() || !std::isfinite(v.get<double>()) || v.get<double>() < 0)
      fail(ErrorCategory::kConfig, "run config: 'lr' must be a finite number >= 0");
    c.hyper.lr = v.get<double>();
  }
  if (j.contains("threshold")) {
    const auto& v = j.at("threshold");
    if (!v.is_number() || !(v.get<double>() > 0.0 && v.get<double>() < 1.0))
      fail(ErrorCategory::kConfig, "run config: 'threshold' must lie in (0, 1)");
    c.hyper.threshold = v.get<double>();
  }
  if (j.contains("shuffle_within_epoch")) {
    if (!j.at("shuffle_within_epoch").is_boolean())
      fail(ErrorCategory::kConfig, "run config: 'shuffle_within_epoch' must be a boolean");
    c.curriculum.shuffle_within_epoch = j.at("shuffle_within_epoch").get<bool>();
  }
  if (auto s = string_opt("task_kind")) c.task = parse_task_kind(*s);
  if (auto s = string_opt("alignment_mode")) c.curriculum.alignment = parse_alignment_mode(*s);
  if (auto s = string_opt("delta_ordering")) c.curriculum.delta_ordering = parse_delta_ordering(*s);
  return c;
}

RunConfig read_run_config(const fs::path& path) { return parse_run_config(read_file(path)); }

std::string format_run_config(const RunConfig& c) {
  json j;
  j["bins_k"] = c.curriculum.bins_k;
  j["epochs_T"] = c.curriculum.total_epochs;
  j["seed"] = c.curriculum.shuffle_seed;
  j["lr"] = c.hyper.lr;
  j["batch"] = c.hyper.batch;
  j["hidden_d"] = c.hyper.hidden_d;
  j["max_len"] = c.hyper.max_len;
  j["task_kind"] = to_string(c.task);
  j["alignment_mode"] = to_string(c.curriculum.alignment);
  j["delta_ordering"] = to_string(c.curriculum.delta_ordering);
  j["shuffle_within_epoch"] = c.curriculum.shuffle_within_epoch;
  j["threshold"] = c.hyper.threshold;
  j["n_groups"] = c.hyper.n_groups;
  j["threads"] = c.hyper.threads;
  return j.dump(2) + "\n";
}

// --- parameters -----------------------------------------------------------------

std::string encode_params(const ModelParams& p) {
  p.validate();
  std::string out("SPDCLPRM");
  put_le(out, std::uint32_t{1});
  put_le(out, static_cast<std::uint32_t>(p.task == TaskKind::kMulticlass ? 0 : 1));
  put_le(out, static_cast<std::uint64_t>(p.vocab_size));
  put_le(out, static_cast<std::uint64_t>(p.hidden));
  put_le(out, static_cast<std::uint64_t>(p.labels));
  for (const auto* group : {&p.embedding, &p.head_weights, &p.head_bias})
    for (double v : *group) put_f64(out, v);
  return out;
}

ModelParams decode_params(std::string_view bytes) {
  ByteReader in(bytes, "parameter file");
  if (in.take(8) != "SPDCLPRM") fail(ErrorCategory::kFormat, "parameter file: bad magic");
  if (in.le<std::uint32_t>() != 1) fail(ErrorCategory::kFormat, "parameter file: bad version");
  const auto task = in.le<std::uint32_t>();
  if (task > 1) fail(ErrorCategory::kFormat, "parameter file: bad task kind");
  ModelParams p;
  p.task = task == 0 ? TaskKind::kMulticlass : TaskKind::kMultilabel;
  p.vocab_size = in.le<std::uint64_t>();
  p.hidden = in.le<std::uint64_t>();
  p.labels = in.le<std::uint64_t>();
  const std::uint64_t total =
      p.vocab_size * p.hidden + p.hidden * p.labels + p.labels;
  if (total != in.remaining() / 8 || in.remaining() % 8 != 0)
    fail(ErrorCategory::kFormat, "parameter file: payload does not match declared shape");
  p.embedding.resize(p.vocab_size * p.hidden);
  p.head_weights.resize(p.hidden * p.labels);
  p.head_bias.resize(p.labels);
  for (auto* group : {&p.embedding, &p.head_weights, &p.head_bias})
    for (double& v : *group) v = in.f64();
  return p;
}

// --- reports ----------------------------------------------------------------------

std::string format_epoch_report(const EpochReport& r) {
  json j;
  j["epoch"] = r.epoch;
  j["train_loss"] = r.train_loss;
  j["samples_seen"] = r.samples_seen;
  j["visible_bins"] = r.visible_bins;
  j["valid"] = eval_to_json(r.valid);
  return j.dump() + "\n";
}

EpochReport parse_epoch_report(std::string_view text) {
  const std::string where = "epoch report";
  const json j = parse_json_line(single_line(text, where), where, 1);
  EpochReport r;
  r.epoch = static_cast<int>(get_integer(j, "epoch", where));
  r.train_loss = get_number(j, "train_loss", where);
  r.samples_seen = get_count(j, "samples_seen", where);
  r.visible_bins = get_count(j, "visible_bins", where);
  r.valid = eval_from_json(field(j, "valid", where), where);
  return r;
}

std::string format_run_summary(const RunSummary& s) {
  json j;
  j["epochs_T"] = s.epochs;
  j["baseline"] = s.baseline;
  j["final_train"] = eval_to_json(s.final_train);
  j["label_names"] = s.label_names;
  j["label_groups"] = s.label_groups;
  return j.dump() + "\n";
}

RunSummary parse_run_summary(std::string_view text) {
  const std::string where = "run summary";
  const json j = parse_json_line(single_line(text, where), where, 1);
  RunSummary s;
  s.epochs = static_cast<int>(get_integer(j, "epochs_T", where));
  const auto& b = field(j, "baseline", where);
  if (!b.is_boolean()) fail(ErrorCategory::kFormat, where + ": baseline must be a boolean");
  s.baseline = b.get<bool>();
  s.final_train = eval_from_json(field(j, "final_train", where), where);
  try {
    s.label_names = field(j, "label_names", where).get<std::vector<std::string>>();
    s.label_groups =
        field(j, "label_groups", where).get<std::vector<std::vector<std::size_t>>>();
  } catch (const json::exception& e) {
    fail(ErrorCategory::kFormat, where + ": " + e.what());
  }
  return s;
}

// --- layout -----------------------------------------------------------------------

std::string epoch_tag(int epoch) {
  std::string s = std::to_string(epoch);
  if (s.size() < 3) s.insert(0, 3 - s.size(), '0');
  return s;
}

fs::path dump_path(const fs::path& d, int e) { return d / ("embeddings_epoch_" + epoch_tag(e) + ".bin"); }
fs::path scores_path(const fs::path& d, int e) { return d / ("scores_epoch_" + epoch_tag(e) + ".jsonl"); }
fs::path manifest_path(const fs::path& d, int e) { return d / ("manifest_epoch_" + epoch_tag(e) + ".jsonl"); }
fs::path report_path(const fs::path& d, int e) { return d / ("report_epoch_" + epoch_tag(e) + ".jsonl"); }
fs::path config_path(const fs::path& d) { return d / "config.json"; }
fs::path summary_path(const fs::path& d) { return d / "summary.json"; }
fs::path params_path(const fs::path& d) { return d / "params.bin"; }

}  // namespace spdcl::io
