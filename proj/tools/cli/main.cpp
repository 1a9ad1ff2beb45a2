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

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "jpsh/log.hpp"

int main(int argc, char** argv) {
  using namespace jpsh::cli;

  CLI::App app{"Sparse personalized binary hashing"};
  app.require_subcommand(1);
  bool verbose = false;
  app.add_flag("-v,--verbose", verbose, "log progress to stderr");

  struct Invocation {
    const Command* command = nullptr;
    std::string config;
    std::map<std::string, std::string> flags;
  };
  std::map<CLI::App*, Invocation> invocations;

  for (const auto& command : commands()) {
    CLI::App* sub = app.add_subcommand(std::string(command.name), std::string(command.summary));
    Invocation& inv = invocations[sub];
    inv.command = &command;
    sub->add_option("-c,--config", inv.config, "key = value settings file");
    for (const auto key : command.keys) {
      const KeySpec* spec = find_key(key);
      std::string help(spec->help);
      if (!spec->fallback.empty()) help += " [" + std::string(spec->fallback) + "]";
      sub->add_option(flag_for(key), inv.flags[std::string(key)], help)
          ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  jpsh::log::set_sink([verbose](jpsh::log::Level level, std::string_view message) {
    if (level == jpsh::log::Level::kDebug) return;
    if (level == jpsh::log::Level::kInfo && !verbose) return;
    std::cerr << (level == jpsh::log::Level::kWarning ? "warning: " : "") << message << '\n';
  });

  for (auto& [sub, inv] : invocations) {
    if (!sub->parsed()) continue;
    try {
      Settings settings = inv.config.empty() ? Settings{} : Settings::from_file(inv.config);
      for (const auto& [key, value] : inv.flags)
        if (sub->count(flag_for(key)) > 0) settings.set(key, value);
      check_keys_apply(*inv.command, settings);
      return inv.command->run(settings, std::cout);
    } catch (const std::exception& e) {
      std::cerr << "jpsh " << inv.command->name << ": " << e.what() << '\n';
      return exit_code_for(e);
    }
  }
  return 2;
}
