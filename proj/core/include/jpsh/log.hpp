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

#include <functional>
#include <string_view>

namespace jpsh::log {

enum class Level { kDebug, kInfo, kWarning };

using Sink = std::function<void(Level, std::string_view)>;

// Replaces the process-wide sink; returns the previous one. The default sink
// writes warnings to stderr and drops everything else.
Sink set_sink(Sink sink);

void emit(Level level, std::string_view message);

inline void debug(std::string_view message) { emit(Level::kDebug, message); }
inline void info(std::string_view message) { emit(Level::kInfo, message); }
inline void warn(std::string_view message) { emit(Level::kWarning, message); }

}  // namespace jpsh::log
