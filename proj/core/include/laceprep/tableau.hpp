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
#include <string>
#include <vector>

#include "laceprep/rng.hpp"

namespace laceprep {

// Pauli operator as X/Z support plus a sign.
struct PauliOp {
    std::vector<std::uint64_t> x, z;
    int sign = +1;  // +1 or -1

    explicit PauliOp(std::size_t n)
        : x((n + 63) / 64, 0), z((n + 63) / 64, 0) {}
    bool x_bit(std::size_t q) const { return (x[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(std::size_t q) const { return (z[q >> 6] >> (q & 63)) & 1; }
    void set_x(std::size_t q) { x[q >> 6] |= 1ull << (q & 63); }
    void set_z(std::size_t q) { z[q >> 6] |= 1ull << (q & 63); }
};

// Bit-packed destabilizer/stabilizer tableau (Aaronson-Gottesman layout).
class Tableau {
public:
    explicit Tableau(std::size_t n, char initial = '+');  // |+>^n or |->^n ('-'), |0>^n ('0')

    std::size_t num_qubits() const { return n_; }

    void h(std::size_t q);
    void s(std::size_t q);
    void sdg(std::size_t q);
    void x(std::size_t q);
    void y(std::size_t q);
    void z(std::size_t q);
    void cx(std::size_t a, std::size_t b);
    void cz(std::size_t a, std::size_t b);

    struct Outcome {
        int value = +1;        // +1 / -1
        bool deterministic = false;
    };
    // Measurement with a seeded coin for the random branch.
    Outcome measure_z(std::size_t q, CounterRng& rng);
    Outcome measure_x(std::size_t q, CounterRng& rng);
    Outcome measure_y(std::size_t q, CounterRng& rng);
    // Random branches take the supplied value (for replaying a measurement
    // record); deterministic branches must agree with it.
    Outcome measure_x_forced(std::size_t q, int value);

    // Expectation of a Pauli product: +1/-1 when the operator is in the
    // stabilizer group (up to sign), 0 when it anticommutes with some
    // stabilizer, nullopt when it commutes but is not in the group
    // (logical direction).
    std::optional<int> expectation(const PauliOp& op) const;

    // Stabilizer generators as Pauli ops.
    std::vector<PauliOp> stabilizers() const;

private:
    std::size_t n_, words_;
    // rows 0..n-1 destabilizers, n..2n-1 stabilizers
    std::vector<std::uint64_t> xs_, zs_;
    std::vector<std::uint8_t> r_;  // phase bit per row

    std::uint64_t* xrow(std::size_t r) { return xs_.data() + r * words_; }
    std::uint64_t* zrow(std::size_t r) { return zs_.data() + r * words_; }
    const std::uint64_t* xrow(std::size_t r) const { return xs_.data() + r * words_; }
    const std::uint64_t* zrow(std::size_t r) const { return zs_.data() + r * words_; }
    bool xbit(std::size_t r, std::size_t q) const {
        return (xrow(r)[q >> 6] >> (q & 63)) & 1;
    }
    bool zbit(std::size_t r, std::size_t q) const {
        return (zrow(r)[q >> 6] >> (q & 63)) & 1;
    }
    void rowsum(std::size_t h, std::size_t i);       // row h *= row i
    int rowsum_phase(const std::uint64_t* x1, const std::uint64_t* z1,
                     const std::uint64_t* x2, const std::uint64_t* z2) const;
    Outcome measure_z_impl(std::size_t q, CounterRng& rng);
    Outcome measure_z_forced(std::size_t q, int forced);
};

} // namespace laceprep
