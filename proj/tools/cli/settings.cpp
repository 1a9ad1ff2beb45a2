/*
 * Copyright 2026 The JPSH Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "settings.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace jpsh::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') || (s.front() == '\'' && s.back() == '\'')))
    return s.substr(1, s.size() - 2);
  return s;
}

// Drops a trailing comment that is not inside quotes.
std::string strip_comment(const std::string& line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = unquote(trim(item));
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool numeric(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table = {
      {"data", ValueKind::kString, "", "feature file (training corpus / database)"},
      {"format", ValueKind::kString, "", "feature format: fvec, csv, idx (default: by extension)"},
      {"labels", ValueKind::kString, "", "label file for --data"},
      {"test_data", ValueKind::kString, "", "query feature file; when unset the data is split"},
      {"test_labels", ValueKind::kString, "", "label file for --test-data"},
      {"test_per_class", ValueKind::kInteger, "100", "test rows per class (total for uniform)"},
      {"split", ValueKind::kString, "stratified", "split strategy: stratified or uniform"},
      {"split_seed", ValueKind::kInteger, "0", "seed of the train/test split"},
      {"bits", ValueKind::kList, "16", "code length l (a list for eval)"},
      {"m", ValueKind::kInteger, "800", "anchor count"},
      {"k", ValueKind::kInteger, "7", "nearest anchors per sample"},
      {"psi", ValueKind::kInteger, "7", "anchor neighbours in the similarity graph"},
      {"l1", ValueKind::kReal, "1", "personalized sparsity weight"},
      {"l2", ValueKind::kReal, "1", "network lasso weight"},
      {"l3", ValueKind::kReal, "10", "pairwise sparsity weight"},
      {"iters", ValueKind::kInteger, "10", "maximum outer iterations"},
      {"eps", ValueKind::kReal, "1e-8", "reweighting guard"},
      {"tol", ValueKind::kReal, "1e-5", "relative objective change that stops training"},
      {"mode", ValueKind::kString, "JPSH", "JPSH, JSH_ONLY or PSH_ONLY"},
      {"seed", ValueKind::kInteger, "0", "training seed"},
      {"seeds", ValueKind::kList, "0", "seeds for eval/ablate"},
      {"ridge", ValueKind::kReal, "", "explicit diagonal regularizer"},
      {"kmeans_iters", ValueKind::kInteger, "100", "k-means iteration cap"},
      {"anchor_init", ValueKind::kString, "kmeans", "kmeans or random"},
      {"center", ValueKind::kBool, "true", "subtract the training mean"},
      {"theta", ValueKind::kReal, "", "affinity bandwidth (default: automatic)"},
      {"delta", ValueKind::kReal, "", "similarity bandwidth (default: automatic)"},
      {"methods", ValueKind::kList, "JPSH,JSH_ONLY,PSH_ONLY,JPSH0,LSH", "methods for eval"},
      {"top_ns", ValueKind::kList, "1,5,10,20,50,100,200,500,1000", "precision/recall cutoffs"},
      {"ap_cutoff", ValueKind::kInteger, "100", "rank cutoff of the truncated AP"},
      {"radius", ValueKind::kInteger, "2", "Hamming radius (eval: radius precision; search: lookup)"},
      {"out_dir", ValueKind::kString, ".", "output directory"},
      {"trace_timing", ValueKind::kBool, "false", "append wall-clock seconds to trace.csv"},
      {"model", ValueKind::kString, "", "model file"},
      {"codes", ValueKind::kString, "codes.jpshc", "code file (encode output, search database)"},
      {"query", ValueKind::kString, "", "query feature file for search"},
      {"query_format", ValueKind::kString, "", "format of --query (default: by extension)"},
      {"top_n", ValueKind::kInteger, "10", "results per query"},
      {"buckets", ValueKind::kBool, "false", "use the prefix bucket table for radius search"},
  };
  return table;
}

const KeySpec* find_key(std::string_view key) {
  for (const auto& spec : key_table())
    if (spec.key == key) return &spec;
  return nullptr;
}

std::string flag_for(std::string_view key) {
  std::string flag = "--" + std::string(key);
  std::replace(flag.begin(), flag.end(), '_', '-');
  return flag;
}

Settings Settings::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  Settings s;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(strip_comment(line));
    if (body.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    if (body.front() == '[') throw ConfigError(where + "sections are not supported");
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (!find_key(key)) throw ConfigError(where + "unknown key \"" + key + "\"");
    if (s.values_.count(key)) throw ConfigError(where + "key \"" + key + "\" given twice");
    if (value.size() >= 2 && value.front() == '[' && value.back() == ']') {
      const auto items = split_list(value.substr(1, value.size() - 2));
      value.clear();
      for (std::size_t i = 0; i < items.size(); ++i) value += (i ? "," : "") + items[i];
    } else {
      value = unquote(value);
    }
    s.values_[key] = value;
  }
  return s;
}

void Settings::set(std::string_view key, std::string value) {
  if (!find_key(key)) throw ConfigError("unknown key \"" + std::string(key) + "\"");
  values_[std::string(key)] = std::move(value);
}

bool Settings::given(std::string_view key) const {
  const auto it = values_.find(key);
  return it != values_.end() && !it->second.empty();
}

bool Settings::has(std::string_view key) const {
  const auto it = values_.find(key);
  if (it != values_.end()) return !it->second.empty();
  const KeySpec* spec = find_key(key);
  return spec && !spec->fallback.empty();
}

std::vector<std::string> Settings::given_keys() const {
  std::vector<std::string> out;
  for (const auto& [key, value] : values_) out.push_back(key);
  return out;
}

std::string Settings::raw(std::string_view key) const {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError("unknown key \"" + std::string(key) + "\"");
  const auto it = values_.find(key);
  return it != values_.end() ? it->second : std::string(spec->fallback);
}

std::string Settings::str(std::string_view key) const {
  const std::string v = raw(key);
  if (v.empty()) throw ConfigError("missing required setting " + flag_for(key));
  return v;
}

std::optional<std::string> Settings::maybe_str(std::string_view key) const {
  const std::string v = raw(key);
  return v.empty() ? std::nullopt : std::optional<std::string>(v);
}

std::int64_t Settings::integer(std::string_view key) const {
  const std::string v = str(key);
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(flag_for(key) + " expects an integer, got \"" + v + "\"");
  if (out < 0) throw ConfigError(flag_for(key) + " must be >= 0");
  return out;
}

double Settings::real(std::string_view key) const {
  const std::string v = str(key);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(flag_for(key) + " expects a number, got \"" + v + "\"");
  return out;
}

std::optional<double> Settings::maybe_real(std::string_view key) const {
  if (raw(key).empty()) return std::nullopt;
  return real(key);
}

bool Settings::boolean(std::string_view key) const {
  const std::string v = str(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError(flag_for(key) + " expects true or false, got \"" + v + "\"");
}

std::vector<std::string> Settings::list(std::string_view key) const {
  return split_list(raw(key));
}

std::vector<std::uint64_t> Settings::uint_list(std::string_view key) const {
  std::vector<std::uint64_t> out;
  for (const auto& item : list(key)) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc() || ptr != item.data() + item.size())
      throw ConfigError(flag_for(key) + " expects integers, got \"" + item + "\"");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(flag_for(key) + " must not be empty");
  return out;
}

std::string Settings::manifest(const std::vector<std::string_view>& keys) const {
  std::ostringstream out;
  out << "# resolved jpsh settings; rerun with --config <this file>\n";
  for (const auto key : keys) {
    const KeySpec* spec = find_key(key);
    const std::string v = raw(key);
    if (v.empty()) continue;
    out << key << " = ";
    switch (spec->kind) {
      case ValueKind::kString:
        out << '"' << v << '"';
        break;
      case ValueKind::kList: {
        const auto items = split_list(v);
        out << '[';
        for (std::size_t i = 0; i < items.size(); ++i)
          out << (i ? ", " : "") << (numeric(items[i]) ? items[i] : '"' + items[i] + '"');
        out << ']';
        break;
      }
      default:
        out << v;
    }
    out << '\n';
  }
  return out.str();
}

Hyperparams hyperparams_from(const Settings& s, std::optional<std::size_t> bits) {
  Hyperparams h;
  if (bits) {
    h.bits = *bits;
  } else {
    const auto all = s.uint_list("bits");
    if (all.size() != 1) throw ConfigError("--bits must be a single value here");
    h.bits = all.front();
  }
  h.anchors = static_cast<std::size_t>(s.integer("m"));
  h.k = static_cast<std::size_t>(s.integer("k"));
  h.psi = static_cast<std::size_t>(s.integer("psi"));
  h.lambda1 = s.real("l1");
  h.lambda2 = s.real("l2");
  h.lambda3 = s.real("l3");
  h.max_iters = static_cast<std::size_t>(s.integer("iters"));
  h.eps = s.real("eps");
  h.tol = s.real("tol");
  h.mode = parse_mode(s.str("mode"));
  h.seed = static_cast<std::uint64_t>(s.integer("seed"));
  h.ridge = s.maybe_real("ridge");
  h.kmeans_iters = static_cast<std::size_t>(s.integer("kmeans_iters"));
  h.anchor_init = parse_anchor_init(s.str("anchor_init"));
  h.center = s.boolean("center");
  h.theta = s.maybe_real("theta");
  h.delta = s.maybe_real("delta");
  h.validate();
  return h;
}

EvalOptions eval_options_from(const Settings& s) {
  EvalOptions o;
  o.top_ns.clear();
  for (const auto n : s.uint_list("top_ns")) {
    if (n == 0) throw ConfigError("--top-ns entries must be >= 1");
    o.top_ns.push_back(n);
  }
  o.ap_cutoff = static_cast<std::size_t>(s.integer("ap_cutoff"));
  if (o.ap_cutoff == 0) throw ConfigError("--ap-cutoff must be >= 1");
  o.radius = static_cast<std::uint32_t>(s.integer("radius"));
  return o;
}

SplitSpec split_spec_from(const Settings& s) {
  SplitSpec spec;
  spec.test_per_class = static_cast<std::size_t>(s.integer("test_per_class"));
  spec.seed = static_cast<std::uint64_t>(s.integer("split_seed"));
  spec.strategy = parse_split_strategy(s.str("split"));
  return spec;
}

std::filesystem::path require_existing(const Settings& s, std::string_view key) {
  const std::filesystem::path path = s.str(key);
  if (!std::filesystem::exists(path))
    throw ConfigError(flag_for(key) + ": no such file: " + path.string());
  return path;
}

FeatureSet load_dataset(const Settings& s, std::string_view data_key, std::string_view labels_key,
                        std::string_view format_key) {
  const auto path = require_existing(s, data_key);
  const auto format_name = s.maybe_str(format_key);
  FeatureSet fs = load_features(path, format_name ? parse_feature_format(*format_name)
                                                  : guess_feature_format(path));
  if (s.maybe_str(labels_key)) attach_labels(fs, load_labels(require_existing(s, labels_key)));
  return fs;
}

}  // namespace jpsh::cli
