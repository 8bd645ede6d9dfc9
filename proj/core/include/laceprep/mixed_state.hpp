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

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "laceprep/rng.hpp"

namespace laceprep {

using cdbl = std::complex<double>;

struct DimensionCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Small dense complex matrix, row-major.
struct CMat {
    int rows = 0, cols = 0;
    std::vector<cdbl> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, cdbl{0, 0}) {}
    static CMat identity(int n);
    cdbl& operator()(int r, int c) { return a[std::size_t(r) * cols + c]; }
    const cdbl& operator()(int r, int c) const { return a[std::size_t(r) * cols + c]; }
    CMat operator*(const CMat& o) const;
    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    CMat scaled(cdbl s) const;
    CMat dagger() const;
    CMat kron(const CMat& o) const;
    double max_abs() const;
};

CMat mat_exp_i(const CMat& hermitian_diag_free, double scale);  // exp(i*scale*H)

// Dense amplitude vector over mixed 2/3-dimensional sites.  Site 0 varies
// slowest.  The default cap of 2^24 amplitudes covers every protocol in
// scope; larger requests must go through the tableau engines.
class MixedRegister {
public:
    MixedRegister() : MixedRegister(std::vector<int>{}) {}
    explicit MixedRegister(std::vector<int> dims,
                           std::size_t cap = (std::size_t(1) << 24));

    std::size_t dim() const { return amps_.size(); }
    int num_sites() const { return static_cast<int>(dims_.size()); }
    int site_dim(int s) const { return dims_[s]; }
    const std::vector<int>& dims() const { return dims_; }
    std::vector<cdbl>& amplitudes() { return amps_; }
    const std::vector<cdbl>& amplitudes() const { return amps_; }

    void apply_1site(int site, const CMat& u);
    void apply_2site(int a, int b, const CMat& u);  // u is (da*db) x (da*db), a-major
    // Diagonal phase over all sites: amp *= phase(digits).
    template <class F>
    void apply_diagonal(F&& phase) {
        std::vector<int> digits(dims_.size(), 0);
        for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
            amps_[idx] *= phase(digits);
            for (int s = num_sites() - 1; s >= 0; --s) {
                if (++digits[s] < dims_[s]) break;
                digits[s] = 0;
            }
        }
    }

    // Append a site in the given pure state (varies fastest).
    void add_site(int d, const std::vector<cdbl>& state);
    // Remove a site that is in a definite computational state `digit`.
    void remove_site(int site, int digit);

    // Projective computational-basis measurement with a seeded outcome.
    int measure_computational(int site, CounterRng& rng);
    // Force an outcome; returns the probability (state renormalized).
    double project_computational(int site, int digit);

    double norm2() const;
    void normalize();
    cdbl inner(const MixedRegister& o) const;  // <this|o>

    // <psi| U |psi> for U given as a sparse application function.
    cdbl expectation_apply(const std::function<void(MixedRegister&)>& apply) const;

private:
    std::vector<int> dims_;
    std::vector<std::size_t> stride_;
    std::vector<cdbl> amps_;
    std::size_t cap_;
    void rebuild_strides();
};

// Qutrit and qubit gate constants (omega = e^{2 pi i/3}).
namespace gates {
const CMat& shift3();        // X3
const CMat& clock3();        // Z3
const CMat& conj3();         // charge conjugation C
const CMat& fourier3();      // F|j> = 3^{-1/2} sum omega^{jk} |k>
const CMat& hadamard();
const CMat& pauli_x();
const CMat& pauli_y();
const CMat& pauli_z();
CMat cz33();                       // omega^{jk} on two qutrits
CMat cz22();                       // qubit CZ
CMat control2_u3(const CMat& u3);  // qubit controls a qutrit unitary
CMat ry(double theta);             // exp(-i theta Y)
} // namespace gates

} // namespace laceprep
