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

#include "laceprep/gf2.hpp"

#include <stdexcept>

namespace laceprep {

BitVec::BitVec(std::size_t n) : bits_((n + 63) / 64, 0), size_(n) {}

void BitVec::set(std::size_t i, bool v) {
    if (v)
        bits_[i >> 6] |= (1ull << (i & 63));
    else
        bits_[i >> 6] &= ~(1ull << (i & 63));
}

bool BitVec::get(std::size_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1ull; }

void BitVec::operator^=(const BitVec& o) {
    for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= o.bits_[w];
}

bool BitVec::any() const {
    for (auto w : bits_)
        if (w) return true;
    return false;
}

int BitVec::popcount() const {
    int c = 0;
    for (auto w : bits_) c += __builtin_popcountll(w);
    return c;
}

bool BitVec::dot(const BitVec& o) const {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < bits_.size(); ++w) acc ^= bits_[w] & o.bits_[w];
    return __builtin_popcountll(acc) & 1;
}

int gf2_rank(std::vector<BitVec> rows) {
    if (rows.empty()) return 0;
    const std::size_t n = rows[0].size();
    int rank = 0;
    for (std::size_t col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
        int piv = -1;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (rows[r].get(col)) { piv = static_cast<int>(r); break; }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (static_cast<int>(r) != rank && rows[r].get(col)) rows[r] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::optional<BitVec> gf2_solve(const std::vector<BitVec>& a, const BitVec& b) {
    if (a.empty()) return b.any() ? std::nullopt : std::optional<BitVec>(BitVec(0));
    const std::size_t rows = a.size();
    const std::size_t cols = a[0].size();
    std::vector<BitVec> m(a);
    BitVec rhs = b;
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && !m[piv].get(col)) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        bool t = rhs.get(rank);
        rhs.set(rank, rhs.get(piv));
        rhs.set(piv, t);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != rank && m[r].get(col)) {
                m[r] ^= m[rank];
                rhs.set(r, rhs.get(r) ^ rhs.get(rank));
            }
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (rhs.get(r)) return std::nullopt;
    BitVec x(cols);
    for (std::size_t r = 0; r < rank; ++r)
        if (rhs.get(r)) x.set(pivot_col[r], true);
    return x;
}

std::vector<BitVec> gf2_kernel(const std::vector<BitVec>& a, std::size_t cols) {
    std::vector<BitVec> m(a);
    std::vector<int> pivot_of_col(cols, -1);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t piv = rank;
        while (piv < m.size() && !m[piv].get(col)) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[rank], m[piv]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r].get(col)) m[r] ^= m[rank];
        pivot_of_col[col] = static_cast<int>(rank);
        ++rank;
    }
    std::vector<BitVec> kernel;
    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        BitVec v(cols);
        v.set(col, true);
        for (std::size_t c2 = 0; c2 < cols; ++c2) {
            int piv = pivot_of_col[c2];
            if (piv >= 0 && m[piv].get(col)) v.set(c2, true);
        }
        kernel.push_back(v);
    }
    return kernel;
}

} // namespace laceprep
