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

#include <cstdint>
#include <filesystem>

#include "jpsh/baselines.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {

enum class ModelKind : std::uint32_t { kJpsh = 1, kLsh = 2 };

/// Versioned little-endian container: "JPSHM1", u32 version, u32 kind, then
/// the kind's payload. Writing the same model twice yields identical bytes.
void save_model(const JpshModel& model, const std::filesystem::path& path);
JpshModel load_jpsh_model(const std::filesystem::path& path);

void save_model(const LshModel& model, const std::filesystem::path& path);
LshModel load_lsh_model(const std::filesystem::path& path);

ModelKind peek_model_kind(const std::filesystem::path& path);

}  // namespace jpsh
