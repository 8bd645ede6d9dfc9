/* Copyright 2026 The laceprep Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace laceprep {

extern const char* kVersion;

// FNV-1a over the canonical (sorted-key) dump; reports embed it so identical
// configs yield byte-identical outputs.
std::uint64_t config_hash(const nlohmann::json& j);

nlohmann::json provenance(const nlohmann::json& config, std::uint64_t seed);

void write_json(const std::string& path, const nlohmann::json& j);
nlohmann::json read_json(const std::string& path);

// Throws when the object holds keys outside the allowed set.
void reject_unknown_keys(const nlohmann::json& obj,
                         const std::vector<std::string>& allowed,
                         const std::string& where);

} // namespace laceprep
