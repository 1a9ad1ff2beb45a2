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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jpsh/data_io.hpp"
#include "jpsh/error.hpp"
#include "jpsh/experiment.hpp"
#include "jpsh/metrics.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh::cli {

/// Bad flags, unknown keys, unreadable config files, missing inputs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ValueKind { kString, kInteger, kReal, kBool, kList };

struct KeySpec {
  std::string_view key;  // config key; the flag is "--" + key with '_' -> '-'
  ValueKind kind;
  std::string_view fallback;  // empty: unset unless given
  std::string_view help;
};

/// Every key the tool understands, in manifest order.
const std::vector<KeySpec>& key_table();
const KeySpec* find_key(std::string_view key);
std::string flag_for(std::string_view key);

/// Raw key -> value strings. Lists are stored comma-joined.
class Settings {
 public:
  /// Parses "key = value" lines; '#' starts a comment. Unknown or repeated
  /// keys raise ConfigError naming the file and line.
  static Settings from_file(const std::filesystem::path& path);

  void set(std::string_view key, std::string value);
  bool has(std::string_view key) const;
  /// True when set by the config file or a flag rather than by default.
  bool given(std::string_view key) const;
  /// Keys set explicitly, in sorted order.
  std::vector<std::string> given_keys() const;

  std::string str(std::string_view key) const;
  std::optional<std::string> maybe_str(std::string_view key) const;
  std::int64_t integer(std::string_view key) const;
  double real(std::string_view key) const;
  std::optional<double> maybe_real(std::string_view key) const;
  bool boolean(std::string_view key) const;
  std::vector<std::string> list(std::string_view key) const;
  std::vector<std::uint64_t> uint_list(std::string_view key) const;

  /// TOML-style dump of the given keys with defaults resolved.
  std::string manifest(const std::vector<std::string_view>& keys) const;

 private:
  std::string raw(std::string_view key) const;
  std::map<std::string, std::string, std::less<>> values_;
};

/// Optimizer fields from the settings (bits taken from `bits` unless given).
Hyperparams hyperparams_from(const Settings& s, std::optional<std::size_t> bits = std::nullopt);
EvalOptions eval_options_from(const Settings& s);
SplitSpec split_spec_from(const Settings& s);

/// Loads features (format from `format_key` or the extension) and attaches
/// labels from `labels_key` when set. Missing paths raise ConfigError.
FeatureSet load_dataset(const Settings& s, std::string_view data_key, std::string_view labels_key,
                        std::string_view format_key = "format");

std::filesystem::path require_existing(const Settings& s, std::string_view key);

}  // namespace jpsh::cli
