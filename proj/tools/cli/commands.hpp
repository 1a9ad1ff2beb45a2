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

#include <iosfwd>
#include <string_view>
#include <vector>

#include "settings.hpp"

namespace jpsh::cli {

struct Command {
  std::string_view name;
  std::string_view summary;
  std::vector<std::string_view> keys;  // settings the command reads
  int (*run)(const Settings& settings, std::ostream& out);
};

const std::vector<Command>& commands();

/// Keys outside `command.keys` raise ConfigError.
void check_keys_apply(const Command& command, const Settings& settings);

int cmd_train(const Settings& s, std::ostream& out);
int cmd_encode(const Settings& s, std::ostream& out);
int cmd_search(const Settings& s, std::ostream& out);
int cmd_eval(const Settings& s, std::ostream& out);
int cmd_ablate(const Settings& s, std::ostream& out);

/// Exit status for an exception escaping a command: 2 usage/config,
/// 3 solver failure, 4 bad data.
int exit_code_for(const std::exception& e);

}  // namespace jpsh::cli
