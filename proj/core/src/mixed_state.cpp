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

#include "laceprep/mixed_state.hpp"

#include <cmath>
#include <numbers>

namespace laceprep {

CMat CMat::identity(int n) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMat CMat::operator*(const CMat& o) const {
    CMat out(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            cdbl v = (*this)(i, k);
            if (v == cdbl{0, 0}) continue;
            for (int j = 0; j < o.cols; ++j) out(i, j) += v * o(k, j);
        }
    return out;
}

CMat CMat::operator+(const CMat& o) const {
    CMat out = *this;
    for (std::size_t i = 0; i < a.size(); ++i) out.a[i] += o.a[i];
    return out;
}

CMat CMat::operator-(const CMat& o) const {
    CMat out = *this;
    for (std::size_t i = 0; i < a.size(); ++i) out.a[i] -= o.a[i];
    return out;
}

CMat CMat::scaled(cdbl s) const {
    CMat out = *this;
    for (auto& v : out.a) v *= s;
    return out;
}

CMat CMat::dagger() const {
    CMat out(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

CMat CMat::kron(const CMat& o) const {
    CMat out(rows * o.rows, cols * o.cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            for (int k = 0; k < o.rows; ++k)
                for (int l = 0; l < o.cols; ++l)
                    out(i * o.rows + k, j * o.cols + l) = (*this)(i, j) * o(k, l);
    return out;
}

double CMat::max_abs() const {
    double m = 0.0;
    for (const auto& v : a) m = std::max(m, std::abs(v));
    return m;
}

CMat mat_exp_i(const CMat& h, double scale) {
    // Taylor series with scaling-and-squaring; adequate for the small
    // Hamiltonian blocks used in gate synthesis.
    int n = h.rows;
    double norm = h.max_abs() * std::abs(scale) * n;
    int squarings = 0;
    double s = scale;
    while (norm > 0.5) {
        norm /= 2;
        s /= 2;
        ++squarings;
    }
    CMat term = CMat::identity(n), sum = CMat::identity(n);
    for (int k = 1; k < 40; ++k) {
        term = term * h.scaled(cdbl{0, s / k});
        sum = sum + term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

MixedRegister::MixedRegister(std::vector<int> dims, std::size_t cap)
    : dims_(std::move(dims)), cap_(cap) {
    std::size_t d = 1;
    for (int x : dims_) {
        if (x != 2 && x != 3) throw std::invalid_argument("site dims must be 2 or 3");
        if (d > cap_ / x) throw DimensionCap("register exceeds the amplitude cap");
        d *= x;
    }
    rebuild_strides();
    amps_.assign(d, cdbl{0, 0});
    if (d > 0) amps_[0] = 1.0;
}

void MixedRegister::rebuild_strides() {
    stride_.assign(dims_.size(), 1);
    for (int s = static_cast<int>(dims_.size()) - 2; s >= 0; --s)
        stride_[s] = stride_[s + 1] * dims_[s + 1];
}

void MixedRegister::apply_1site(int site, const CMat& u) {
    const int d = dims_[site];
    const std::size_t st = stride_[site];
    const std::size_t block = st * d;
    std::vector<cdbl> tmp(d);
    for (std::size_t base = 0; base < amps_.size(); base += block) {
        for (std::size_t off = 0; off < st; ++off) {
            for (int i = 0; i < d; ++i) tmp[i] = amps_[base + off + i * st];
            for (int i = 0; i < d; ++i) {
                cdbl v{0, 0};
                for (int j = 0; j < d; ++j) v += u(i, j) * tmp[j];
                amps_[base + off + i * st] = v;
            }
        }
    }
}

void MixedRegister::apply_2site(int a, int b, const CMat& u) {
    if (a == b) throw std::invalid_argument("apply_2site needs distinct sites");
    // order the sites; reindex the matrix when swapped
    const CMat* mat = &u;
    CMat swapped;
    if (a > b) {
        const int da = dims_[a], db = dims_[b];
        swapped = CMat(da * db, da * db);
        for (int i = 0; i < db; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k)
                    for (int l = 0; l < da; ++l)
                        swapped(i * da + j, k * da + l) = u(j * db + i, l * db + k);
        std::swap(a, b);
        mat = &swapped;
    }
    const int da = dims_[a], db = dims_[b];
    const std::size_t sa = stride_[a], sb = stride_[b];
    std::vector<cdbl> tmp(da * db);
    for (std::size_t hi = 0; hi < amps_.size(); hi += sa * da)
        for (std::size_t mid = hi; mid < hi + sa; mid += sb * db)
            for (std::size_t lo = mid; lo < mid + sb; ++lo) {
                for (int i = 0; i < da; ++i)
                    for (int j = 0; j < db; ++j)
                        tmp[i * db + j] = amps_[lo + i * sa + j * sb];
                for (int i = 0; i < da; ++i)
                    for (int j = 0; j < db; ++j) {
                        cdbl v{0, 0};
                        const int row = i * db + j;
                        for (int k = 0; k < da * db; ++k)
                            v += (*mat)(row, k) * tmp[k];
                        amps_[lo + i * sa + j * sb] = v;
                    }
            }
}

void MixedRegister::add_site(int d, const std::vector<cdbl>& state) {
    if (amps_.size() > cap_ / d) throw DimensionCap("register exceeds the amplitude cap");
    std::vector<cdbl> out(amps_.size() * d);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        for (int j = 0; j < d; ++j) out[i * d + j] = amps_[i] * state[j];
    amps_ = std::move(out);
    dims_.push_back(d);
    rebuild_strides();
}

void MixedRegister::remove_site(int site, int digit) {
    const int d = dims_[site];
    const std::size_t st = stride_[site];
    const std::size_t block = st * d;
    std::vector<cdbl> out(amps_.size() / d);
    std::size_t w = 0;
    for (std::size_t base = 0; base < amps_.size(); base += block)
        for (std::size_t off = 0; off < st; ++off)
            out[w++] = amps_[base + off + digit * st];
    amps_ = std::move(out);
    dims_.erase(dims_.begin() + site);
    rebuild_strides();
    normalize();
}

int MixedRegister::measure_computational(int site, CounterRng& rng) {
    const int d = dims_[site];
    const std::size_t st = stride_[site];
    const std::size_t block = st * d;
    std::vector<double> prob(d, 0.0);
    for (std::size_t base = 0; base < amps_.size(); base += block)
        for (std::size_t off = 0; off < st; ++off)
            for (int i = 0; i < d; ++i) prob[i] += std::norm(amps_[base + off + i * st]);
    double u = rng.next_double();
    int outcome = d - 1;
    double acc = 0.0;
    for (int i = 0; i < d; ++i) {
        acc += prob[i];
        if (u < acc) { outcome = i; break; }
    }
    project_computational(site, outcome);
    return outcome;
}

double MixedRegister::project_computational(int site, int digit) {
    const int d = dims_[site];
    const std::size_t st = stride_[site];
    const std::size_t block = st * d;
    double p = 0.0;
    for (std::size_t base = 0; base < amps_.size(); base += block)
        for (std::size_t off = 0; off < st; ++off)
            for (int i = 0; i < d; ++i) {
                if (i == digit)
                    p += std::norm(amps_[base + off + i * st]);
                else
                    amps_[base + off + i * st] = 0.0;
            }
    if (p <= 0.0) throw std::runtime_error("projected onto a zero-probability outcome");
    double s = 1.0 / std::sqrt(p);
    for (auto& v : amps_) v *= s;
    return p;
}

double MixedRegister::norm2() const {
    double n = 0.0;
    for (const auto& v : amps_) n += std::norm(v);
    return n;
}

void MixedRegister::normalize() {
    double s = 1.0 / std::sqrt(norm2());
    for (auto& v : amps_) v *= s;
}

cdbl MixedRegister::inner(const MixedRegister& o) const {
    cdbl acc{0, 0};
    for (std::size_t i = 0; i < amps_.size(); ++i)
        acc += std::conj(amps_[i]) * o.amps_[i];
    return acc;
}

cdbl MixedRegister::expectation_apply(
    const std::function<void(MixedRegister&)>& apply) const {
    MixedRegister copy = *this;
    apply(copy);
    return inner(copy);
}

namespace gates {

namespace {
const cdbl w3{-0.5, std::numbers::sqrt3 / 2.0};  // e^{2 pi i / 3}

cdbl w3pow(int e) {
    e = ((e % 3) + 3) % 3;
    if (e == 0) return {1, 0};
    return e == 1 ? w3 : std::conj(w3);
}
}  // namespace

const CMat& shift3() {
    static CMat m = [] {
        CMat x(3, 3);
        x(1, 0) = x(2, 1) = x(0, 2) = 1.0;
        return x;
    }();
    return m;
}

const CMat& clock3() {
    static CMat m = [] {
        CMat z(3, 3);
        z(0, 0) = 1.0;
        z(1, 1) = w3;
        z(2, 2) = std::conj(w3);
        return z;
    }();
    return m;
}

const CMat& conj3() {
    static CMat m = [] {
        CMat c(3, 3);
        c(0, 0) = 1.0;
        c(1, 2) = c(2, 1) = 1.0;
        return c;
    }();
    return m;
}

const CMat& fourier3() {
    static CMat m = [] {
        CMat f(3, 3);
        const double s = 1.0 / std::sqrt(3.0);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) f(j, k) = s * w3pow(j * k);
        return f;
    }();
    return m;
}

const CMat& hadamard() {
    static CMat m = [] {
        CMat h(2, 2);
        const double s = 1.0 / std::numbers::sqrt2;
        h(0, 0) = h(0, 1) = h(1, 0) = s;
        h(1, 1) = -s;
        return h;
    }();
    return m;
}

const CMat& pauli_x() {
    static CMat m = [] {
        CMat x(2, 2);
        x(0, 1) = x(1, 0) = 1.0;
        return x;
    }();
    return m;
}

const CMat& pauli_y() {
    static CMat m = [] {
        CMat y(2, 2);
        y(0, 1) = cdbl{0, -1};
        y(1, 0) = cdbl{0, 1};
        return y;
    }();
    return m;
}

const CMat& pauli_z() {
    static CMat m = [] {
        CMat z(2, 2);
        z(0, 0) = 1.0;
        z(1, 1) = -1.0;
        return z;
    }();
    return m;
}

CMat cz33() {
    CMat m(9, 9);
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) m(j * 3 + k, j * 3 + k) = w3pow(j * k);
    return m;
}

CMat cz22() {
    CMat m(4, 4);
    m(0, 0) = m(1, 1) = m(2, 2) = 1.0;
    m(3, 3) = -1.0;
    return m;
}

CMat control2_u3(const CMat& u3) {
    CMat m(6, 6);
    for (int i = 0; i < 3; ++i) m(i, i) = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(3 + i, 3 + j) = u3(i, j);
    return m;
}

CMat ry(double theta) {
    CMat m(2, 2);
    m(0, 0) = m(1, 1) = std::cos(theta);
    m(0, 1) = -std::sin(theta);
    m(1, 0) = std::sin(theta);
    return m;
}

} // namespace gates

} // namespace laceprep
