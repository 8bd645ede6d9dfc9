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

#include "laceprep/tableau.hpp"

#include <stdexcept>

namespace laceprep {

Tableau::Tableau(std::size_t n, char initial)
    : n_(n), words_((n + 63) / 64), xs_(2 * n * words_, 0), zs_(2 * n * words_, 0),
      r_(2 * n, 0) {
    for (std::size_t q = 0; q < n; ++q) {
        if (initial == '0') {
            // destabilizer X_q, stabilizer Z_q
            xrow(q)[q >> 6] |= 1ull << (q & 63);
            zrow(n + q)[q >> 6] |= 1ull << (q & 63);
        } else {
            // |+> or |->: destabilizer Z_q, stabilizer (+/-) X_q
            zrow(q)[q >> 6] |= 1ull << (q & 63);
            xrow(n + q)[q >> 6] |= 1ull << (q & 63);
            if (initial == '-') r_[n + q] = 1;
        }
    }
}

// Phase exponent contribution (mod 4, in units of i) of multiplying
// Pauli(x1,z1) * Pauli(x2,z2), Aaronson-Gottesman g-function summed over
// qubits; returns 0..3.
int Tableau::rowsum_phase(const std::uint64_t* x1, const std::uint64_t* z1,
                          const std::uint64_t* x2, const std::uint64_t* z2) const {
    long long acc = 0;
    for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t a = x2[w], b = z2[w], c = x1[w], d = z1[w];
        // g per qubit:
        //  (x2,z2)=(0,0): 0
        //  (1,1): z1 - x1
        //  (1,0): z1 (2 x1 - 1)
        //  (0,1): x1 (1 - 2 z1)
        std::uint64_t case11 = a & b;
        std::uint64_t case10 = a & ~b;
        std::uint64_t case01 = ~a & b;
        acc += __builtin_popcountll(case11 & d) - __builtin_popcountll(case11 & c);
        acc += 2 * __builtin_popcountll(case10 & d & c) -
               __builtin_popcountll(case10 & d);
        acc += __builtin_popcountll(case01 & c) -
               2 * __builtin_popcountll(case01 & c & d);
    }
    return static_cast<int>(((acc % 4) + 4) % 4);
}

void Tableau::rowsum(std::size_t h, std::size_t i) {
    int g = rowsum_phase(xrow(h), zrow(h), xrow(i), zrow(i));
    int ph = 2 * r_[h] + 2 * r_[i] + g;
    ph = ((ph % 4) + 4) % 4;
    // Odd phases only arise on destabilizer rows, whose sign is untracked.
    if ((ph == 1 || ph == 3) && h >= n_)
        throw std::logic_error("stabilizer row acquired an imaginary phase");
    r_[h] = static_cast<std::uint8_t>(ph / 2);
    for (std::size_t w = 0; w < words_; ++w) {
        xrow(h)[w] ^= xrow(i)[w];
        zrow(h)[w] ^= zrow(i)[w];
    }
}

void Tableau::h(std::size_t q) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    for (std::size_t row = 0; row < 2 * n_; ++row) {
        std::uint64_t xv = xrow(row)[w] & m, zv = zrow(row)[w] & m;
        if (xv && zv) r_[row] ^= 1;
        xrow(row)[w] ^= xv ^ zv;
        zrow(row)[w] ^= xv ^ zv;
    }
}

void Tableau::s(std::size_t q) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    for (std::size_t row = 0; row < 2 * n_; ++row) {
        std::uint64_t xv = xrow(row)[w] & m, zv = zrow(row)[w] & m;
        if (xv && zv) r_[row] ^= 1;
        zrow(row)[w] ^= xv;
    }
}

void Tableau::sdg(std::size_t q) { s(q); z(q); }

void Tableau::x(std::size_t q) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    for (std::size_t row = 0; row < 2 * n_; ++row)
        if (zrow(row)[w] & m) r_[row] ^= 1;
}

void Tableau::z(std::size_t q) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    for (std::size_t row = 0; row < 2 * n_; ++row)
        if (xrow(row)[w] & m) r_[row] ^= 1;
}

void Tableau::y(std::size_t q) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    for (std::size_t row = 0; row < 2 * n_; ++row)
        if (bool(xrow(row)[w] & m) != bool(zrow(row)[w] & m)) r_[row] ^= 1;
}

void Tableau::cx(std::size_t a, std::size_t b) {
    const std::size_t wa = a >> 6, wb = b >> 6;
    const std::uint64_t ma = 1ull << (a & 63), mb = 1ull << (b & 63);
    for (std::size_t row = 0; row < 2 * n_; ++row) {
        bool xa = xrow(row)[wa] & ma, za = zrow(row)[wa] & ma;
        bool xb = xrow(row)[wb] & mb, zb = zrow(row)[wb] & mb;
        if (xa && zb && (xb == za)) r_[row] ^= 1;
        if (xa) xrow(row)[wb] ^= mb;
        if (zb) zrow(row)[wa] ^= ma;
    }
}

void Tableau::cz(std::size_t a, std::size_t b) {
    h(b);
    cx(a, b);
    h(b);
}

Tableau::Outcome Tableau::measure_z_forced(std::size_t q, int forced) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    std::size_t p = 2 * n_;
    for (std::size_t row = n_; row < 2 * n_; ++row)
        if (xrow(row)[w] & m) { p = row; break; }
    if (p == 2 * n_) {
        CounterRng dummy(0, 0);
        Outcome o = measure_z_impl(q, dummy);
        if (o.value != forced)
            throw std::logic_error("forced outcome contradicts a deterministic value");
        return o;
    }
    Outcome out;
    out.deterministic = false;
    out.value = forced;
    for (std::size_t row = 0; row < 2 * n_; ++row)
        if (row != p && (xrow(row)[w] & m)) rowsum(row, p);
    std::size_t d = p - n_;
    for (std::size_t ww = 0; ww < words_; ++ww) {
        xrow(d)[ww] = xrow(p)[ww];
        zrow(d)[ww] = zrow(p)[ww];
        xrow(p)[ww] = 0;
        zrow(p)[ww] = 0;
    }
    r_[d] = r_[p];
    zrow(p)[w] |= m;
    r_[p] = out.value < 0 ? 1 : 0;
    return out;
}

Tableau::Outcome Tableau::measure_x_forced(std::size_t q, int value) {
    h(q);
    Outcome o = measure_z_forced(q, value);
    h(q);
    return o;
}

Tableau::Outcome Tableau::measure_z_impl(std::size_t q, CounterRng& rng) {
    const std::size_t w = q >> 6;
    const std::uint64_t m = 1ull << (q & 63);
    std::size_t p = 2 * n_;
    for (std::size_t row = n_; row < 2 * n_; ++row)
        if (xrow(row)[w] & m) { p = row; break; }
    Outcome out;
    if (p < 2 * n_) {
        // random outcome
        out.deterministic = false;
        out.value = rng.next_bool() ? -1 : +1;
        for (std::size_t row = 0; row < 2 * n_; ++row)
            if (row != p && (xrow(row)[w] & m)) rowsum(row, p);
        // destabilizer p-n <- old stabilizer p; stabilizer p <- +/- Z_q
        std::size_t d = p - n_;
        for (std::size_t ww = 0; ww < words_; ++ww) {
            xrow(d)[ww] = xrow(p)[ww];
            zrow(d)[ww] = zrow(p)[ww];
            xrow(p)[ww] = 0;
            zrow(p)[ww] = 0;
        }
        r_[d] = r_[p];
        zrow(p)[w] |= m;
        r_[p] = out.value < 0 ? 1 : 0;
        return out;
    }
    // deterministic: accumulate into scratch via destabilizer structure
    out.deterministic = true;
    std::vector<std::uint64_t> sx(words_, 0), sz(words_, 0);
    int phase = 0;
    for (std::size_t row = 0; row < n_; ++row) {
        if (xrow(row)[w] & m) {
            int g = rowsum_phase(sx.data(), sz.data(), xrow(row + n_), zrow(row + n_));
            phase = (phase + 2 * r_[row + n_] + g) % 4;
            for (std::size_t ww = 0; ww < words_; ++ww) {
                sx[ww] ^= xrow(row + n_)[ww];
                sz[ww] ^= zrow(row + n_)[ww];
            }
        }
    }
    out.value = (phase == 0) ? +1 : -1;
    return out;
}

Tableau::Outcome Tableau::measure_z(std::size_t q, CounterRng& rng) {
    return measure_z_impl(q, rng);
}

Tableau::Outcome Tableau::measure_x(std::size_t q, CounterRng& rng) {
    h(q);
    Outcome o = measure_z_impl(q, rng);
    h(q);
    return o;
}

Tableau::Outcome Tableau::measure_y(std::size_t q, CounterRng& rng) {
    // Y = S X S^dagger: rotate Y onto X, measure, rotate back.
    sdg(q);
    h(q);
    Outcome o = measure_z_impl(q, rng);
    h(q);
    s(q);
    return o;
}

std::optional<int> Tableau::expectation(const PauliOp& op) const {
    // Anticommutes with a stabilizer -> expectation 0.
    auto symp = [&](std::size_t row) {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_; ++w)
            acc ^= (xrow(row)[w] & op.z[w]) ^ (zrow(row)[w] & op.x[w]);
        return __builtin_popcountll(acc) & 1;
    };
    for (std::size_t row = n_; row < 2 * n_; ++row)
        if (symp(row)) return 0;
    // Commutes: op = product of stabilizers whose destabilizer partners
    // anticommute with it.
    std::vector<std::uint64_t> sx(op.x.size(), 0), sz(op.z.size(), 0);
    int phase = 0;
    for (std::size_t row = 0; row < n_; ++row) {
        if (symp(row)) {
            int g = rowsum_phase(sx.data(), sz.data(), xrow(row + n_), zrow(row + n_));
            phase = (phase + 2 * r_[row + n_] + g) % 4;
            for (std::size_t w = 0; w < words_; ++w) {
                sx[w] ^= xrow(row + n_)[w];
                sz[w] ^= zrow(row + n_)[w];
            }
        }
    }
    for (std::size_t w = 0; w < op.x.size(); ++w)
        if (sx[w] != op.x[w] || sz[w] != op.z[w]) return std::nullopt;
    int value = (phase == 0) ? +1 : -1;
    return value * op.sign;
}

std::vector<PauliOp> Tableau::stabilizers() const {
    std::vector<PauliOp> out;
    for (std::size_t row = n_; row < 2 * n_; ++row) {
        PauliOp p(n_);
        for (std::size_t w = 0; w < words_; ++w) {
            p.x[w] = xrow(row)[w];
            p.z[w] = zrow(row)[w];
        }
        p.sign = r_[row] ? -1 : +1;
        out.push_back(p);
    }
    return out;
}

} // namespace laceprep
