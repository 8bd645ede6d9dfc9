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
#include <optional>
#include <vector>

namespace laceprep {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n);

    void set(std::size_t i, bool v = true);
    bool get(std::size_t i) const;
    void operator^=(const BitVec& o);
    bool any() const;
    int popcount() const;
    bool dot(const BitVec& o) const;  // parity of AND
    std::size_t size() const { return size_; }
    const std::vector<std::uint64_t>& words() const { return bits_; }

private:
    std::vector<std::uint64_t> bits_;
    std::size_t size_ = 0;
};

int gf2_rank(std::vector<BitVec> rows);

// Solve A x = b (rows of A over GF(2)); nullopt when inconsistent.
std::optional<BitVec> gf2_solve(const std::vector<BitVec>& a, const BitVec& b);

// Basis of {x : A x = 0}.
std::vector<BitVec> gf2_kernel(const std::vector<BitVec>& a, std::size_t cols);

} // namespace laceprep
