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

#include "laceprep/report.hpp"

#include <fstream>

namespace laceprep {

const char* kVersion = "0.1.0";

std::uint64_t config_hash(const nlohmann::json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

nlohmann::json provenance(const nlohmann::json& config, std::uint64_t seed) {
    nlohmann::json p;
    p["version"] = kVersion;
    p["config_hash"] = config_hash(config);
    p["seed"] = seed;
    return p;
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void reject_unknown_keys(const nlohmann::json& obj,
                         const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!obj.is_object()) return;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) { ok = true; break; }
        if (!ok)
            throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
    }
}

} // namespace laceprep
