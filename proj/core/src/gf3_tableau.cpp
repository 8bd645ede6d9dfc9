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

#include "laceprep/gf3_tableau.hpp"

#include <stdexcept>

namespace laceprep {

namespace {
inline int m3(int v) { return ((v % 3) + 3) % 3; }
inline int inv3(int v) { return v; }  // 1->1, 2->2 (self-inverse mod 3)
} // namespace

Gf3Tableau::Gf3Tableau(std::size_t n) : n_(n) {
    for (std::size_t q = 0; q < n; ++q) {
        QutritPauli p(n);
        p.x[q] = 1;
        gen_.push_back(p);
    }
}

int Gf3Tableau::symp(const QutritPauli& a, const QutritPauli& b) {
    int acc = 0;
    for (std::size_t q = 0; q < a.x.size(); ++q)
        acc += a.z[q] * b.x[q] - a.x[q] * b.z[q];
    return m3(acc);
}

QutritPauli Gf3Tableau::mul(const QutritPauli& a, const QutritPauli& b) {
    QutritPauli out(a.x.size());
    int phase = a.phase + b.phase;
    for (std::size_t q = 0; q < a.x.size(); ++q) {
        phase += a.z[q] * b.x[q];  // Z^z X^x reorder
        out.x[q] = static_cast<std::uint8_t>(m3(a.x[q] + b.x[q]));
        out.z[q] = static_cast<std::uint8_t>(m3(a.z[q] + b.z[q]));
    }
    out.phase = m3(phase);
    return out;
}

QutritPauli Gf3Tableau::pow(const QutritPauli& a, int e) {
    e = m3(e);
    QutritPauli out(a.x.size());
    for (int i = 0; i < e; ++i) out = mul(out, a);
    return out;
}

void Gf3Tableau::fourier(std::size_t q) {
    for (auto& g : gen_) {
        int x = g.x[q], z = g.z[q];
        g.phase = m3(g.phase - x * z);
        g.x[q] = static_cast<std::uint8_t>(m3(-z));
        g.z[q] = static_cast<std::uint8_t>(x);
    }
}

void Gf3Tableau::fourier_inv(std::size_t q) {
    for (auto& g : gen_) {
        int x = g.x[q], z = g.z[q];
        g.phase = m3(g.phase - x * z);
        g.x[q] = static_cast<std::uint8_t>(z);
        g.z[q] = static_cast<std::uint8_t>(m3(-x));
    }
}

void Gf3Tableau::charge_conj(std::size_t q) {
    for (auto& g : gen_) {
        g.x[q] = static_cast<std::uint8_t>(m3(-g.x[q]));
        g.z[q] = static_cast<std::uint8_t>(m3(-g.z[q]));
    }
}

void Gf3Tableau::xgate(std::size_t q, int power) {
    for (auto& g : gen_) g.phase = m3(g.phase - power * g.z[q]);
}

void Gf3Tableau::zgate(std::size_t q, int power) {
    for (auto& g : gen_) g.phase = m3(g.phase + power * g.x[q]);
}

void Gf3Tableau::cz(std::size_t a, std::size_t b, int power) {
    for (auto& g : gen_) {
        g.phase = m3(g.phase + power * g.x[a] * g.x[b]);
        g.z[a] = static_cast<std::uint8_t>(m3(g.z[a] + power * g.x[b]));
        g.z[b] = static_cast<std::uint8_t>(m3(g.z[b] + power * g.x[a]));
    }
}

Gf3Tableau::Outcome Gf3Tableau::measure_x(std::size_t q, CounterRng& rng) {
    QutritPauli m(n_);
    m.x[q] = 1;
    // find a generator with nonzero symplectic product
    int pivot = -1;
    for (std::size_t i = 0; i < gen_.size(); ++i) {
        if (symp(m, gen_[i]) != 0) { pivot = static_cast<int>(i); break; }
    }
    Outcome out;
    if (pivot < 0) {
        auto e = expectation(m);
        if (!e.in_group)
            throw std::logic_error("pure-state tableau lost a stabilizer direction");
        out.deterministic = true;
        out.value = e.phase;
        return out;
    }
    out.deterministic = false;
    out.value = static_cast<int>(rng.next_u64() % 3);
    int sp = symp(m, gen_[pivot]);
    for (std::size_t i = 0; i < gen_.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        int si = symp(m, gen_[i]);
        if (si == 0) continue;
        // g_i <- g_i * pivot^e with e chosen so the product commutes with m
        int e = m3(-si * inv3(sp));
        gen_[i] = mul(gen_[i], pow(gen_[pivot], e));
    }
    QutritPauli repl(n_);
    repl.x[q] = 1;
    repl.phase = m3(-out.value);
    gen_[pivot] = repl;
    return out;
}

Gf3Tableau::Outcome Gf3Tableau::measure_z(std::size_t q, CounterRng& rng) {
    // Measuring X after F^{-1} measures F X F^{-1} = Z on the original frame.
    fourier_inv(q);
    Outcome o = measure_x(q, rng);
    fourier(q);
    return o;
}

Gf3Tableau::Expectation Gf3Tableau::expectation(const QutritPauli& op) const {
    Expectation out;
    for (const auto& g : gen_)
        if (symp(op, g) != 0) {
            out.zero = true;
            return out;
        }
    // Solve sum e_i (x_i|z_i) = (x|z) over GF(3).
    const std::size_t cols = 2 * n_;
    std::vector<std::vector<int>> m(gen_.size(), std::vector<int>(cols + 1, 0));
    for (std::size_t i = 0; i < gen_.size(); ++i) {
        for (std::size_t q = 0; q < n_; ++q) {
            m[i][q] = gen_[i].x[q];
            m[i][n_ + q] = gen_[i].z[q];
        }
    }
    // transpose system: columns are generators
    std::vector<std::vector<int>> a(cols, std::vector<int>(gen_.size() + 1, 0));
    for (std::size_t i = 0; i < gen_.size(); ++i)
        for (std::size_t c = 0; c < cols; ++c) a[c][i] = m[i][c];
    for (std::size_t q = 0; q < n_; ++q) {
        a[q][gen_.size()] = op.x[q];
        a[n_ + q][gen_.size()] = op.z[q];
    }
    // Gaussian elimination mod 3
    std::size_t rank = 0;
    std::vector<int> pivot_col;
    for (std::size_t col = 0; col < gen_.size() && rank < cols; ++col) {
        std::size_t piv = rank;
        while (piv < cols && a[piv][col] == 0) ++piv;
        if (piv == cols) continue;
        std::swap(a[rank], a[piv]);
        int inv = inv3(a[rank][col]);
        for (auto& v : a[rank]) v = m3(v * inv);
        for (std::size_t r = 0; r < cols; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            int f = a[r][col];
            for (std::size_t c = 0; c <= gen_.size(); ++c)
                a[r][c] = m3(a[r][c] - f * a[rank][c]);
        }
        pivot_col.push_back(static_cast<int>(col));
        ++rank;
    }
    for (std::size_t r = rank; r < cols; ++r)
        if (a[r][gen_.size()] != 0) return out;  // not in group
    std::vector<int> coeff(gen_.size(), 0);
    for (std::size_t r = 0; r < rank; ++r) coeff[pivot_col[r]] = a[r][gen_.size()];
    QutritPauli prod(n_);
    for (std::size_t i = 0; i < gen_.size(); ++i)
        if (coeff[i]) prod = mul(prod, pow(gen_[i], coeff[i]));
    out.in_group = true;
    // op = omega^{op.phase - prod.phase} * stabilizer, so the eigenvalue of
    // op on the state is omega^{op.phase - prod.phase}.
    out.phase = m3(op.phase - prod.phase);
    return out;
}

int Gf3Tableau::gf3_rank(std::vector<std::vector<std::uint8_t>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = inv3(rows[rank][col]);
        for (auto& v : rows[rank]) v = static_cast<std::uint8_t>(m3(v * inv));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            int f = rows[r][col];
            for (std::size_t c = 0; c < cols; ++c)
                rows[r][c] = static_cast<std::uint8_t>(m3(rows[r][c] - f * rows[rank][c]));
        }
        ++rank;
    }
    return static_cast<int>(rank);
}

} // namespace laceprep
