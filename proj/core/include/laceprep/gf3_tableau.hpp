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
#include <stdexcept>
#include <vector>

#include "laceprep/rng.hpp"

namespace laceprep {

struct NonCliffordRequest : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Generalized Pauli over n qutrits: omega^phase * prod X^x Z^z,
// omega = e^{2 pi i/3}, entries mod 3.
struct QutritPauli {
    std::vector<std::uint8_t> x, z;
    int phase = 0;  // exponent of omega

    explicit QutritPauli(std::size_t n) : x(n, 0), z(n, 0) {}
};

// Stabilizer tableau over GF(3): n generators for a pure n-qutrit state.
class Gf3Tableau {
public:
    explicit Gf3Tableau(std::size_t n);  // |+3>^n (X-eigenstate, eigenvalue 1)

    std::size_t num_qutrits() const { return n_; }

    void fourier(std::size_t q);        // X -> Z, Z -> X^-1
    void fourier_inv(std::size_t q);
    void charge_conj(std::size_t q);    // X -> X^-1, Z -> Z^-1
    void xgate(std::size_t q, int power);  // shift
    void zgate(std::size_t q, int power);  // clock
    void cz(std::size_t a, std::size_t b, int power = 1);

    struct Outcome {
        int value = 0;  // omega exponent of the measured eigenvalue
        bool deterministic = false;
    };
    // Measure the X operator at site q (Fourier-basis occupancy).
    Outcome measure_x(std::size_t q, CounterRng& rng);
    Outcome measure_z(std::size_t q, CounterRng& rng);

    // omega exponent if op (up to phase) lies in the group, nullopt if it is
    // a logical direction, and no value (0-marker) when it anticommutes.
    struct Expectation {
        bool zero = false;
        bool in_group = false;
        int phase = 0;
    };
    Expectation expectation(const QutritPauli& op) const;

    const std::vector<QutritPauli>& generators() const { return gen_; }

    // Rank of the generator symplectic matrix restricted to a subset of
    // qutrits; used for degeneracy counting.
    static int gf3_rank(std::vector<std::vector<std::uint8_t>> rows);

private:
    std::size_t n_;
    std::vector<QutritPauli> gen_;

    static int symp(const QutritPauli& a, const QutritPauli& b);  // mod 3
    static QutritPauli mul(const QutritPauli& a, const QutritPauli& b);
    static QutritPauli pow(const QutritPauli& a, int e);
};

} // namespace laceprep
