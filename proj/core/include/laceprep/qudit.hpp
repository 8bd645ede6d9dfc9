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

#include <array>
#include <cstdint>
#include <vector>

#include "laceprep/gf3_tableau.hpp"
#include "laceprep/mixed_state.hpp"

namespace laceprep::qudit {

struct InfeasibleFrame : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- Z3 toric code on the Lieb lattice (qutrits on bonds) ----

struct Z3Result {
    MixedRegister state;            // 2*L*L bond qutrits
    std::vector<int> outcomes;      // vertex measurement outcomes (omega powers)
    std::vector<int> frame;         // applied shift powers per bond
    double min_vertex_check = 0.0;  // min Re<A_v> after frame
    double min_plaquette_check = 0.0;
    int L = 0;
};

Z3Result prepare_z3_toric(int L, bool post_select, std::uint64_t seed,
                          std::size_t cap = std::size_t(1) << 24);

struct Z3TableauResult {
    int l = 0;
    int log3_degeneracy = 0;  // torus ground-space dimension = 3^this
    bool checks_plus_one = false;
    std::vector<int> outcomes;
};

// GF(3) tableau route; scales past the dense cap.
Z3TableauResult prepare_z3_toric_tableau(int L, std::uint64_t seed);

// ---- S3 quantum double (Appendix-style two-stage gauging) ----

struct S3Result {
    // Final register: edge qutrits 0..2L^2-1 then edge qubits 2L^2..4L^2-1.
    MixedRegister state;
    int L = 0;
    std::vector<int> vertex_outcomes;   // stage-1 (omega powers)
    std::vector<int> c_outcomes;        // stage-2 (+-1 as 0/1)
    std::array<double, 4> projector_min{};  // min expectation per family
    double projector_comm_norm = 0.0;       // max commutator norm over pairs
};

S3Result prepare_s3(int L, bool post_select, std::uint64_t seed);

struct QuantumDoubleReport {
    double vertex_distance = 1e9;     // operator distance to Kitaev's A_v
    double plaquette_distance = 1e9;  // to Kitaev's B_p
    int ground_space_dim = 0;         // torus
    std::vector<int> conj_pattern;    // edges carrying the charge-conjugation
    bool found = false;
};

// Maps the prepared projectors onto the D(S3) quantum double via the three
// commuting substitutions (qutrit X<->Z, qubit X<->Z, charge-conjugation
// pattern found by search) and measures the torus ground-space dimension.
QuantumDoubleReport verify_s3_quantum_double(int L, const S3Result& res);

// ---- D4 order from color code + gauging (Eq.-(10)-style circuit) ----

struct D4Result {
    MixedRegister state;  // bond qubits
    int L = 0;
    bool color_code_certified = false;
    double min_loop_check = 0.0;       // min <prod X_c> over hexagon loops
    std::vector<int> b_outcomes;       // stage-2 outcomes (0/1)
    std::vector<int> a_outcomes;       // stage-1 outcomes (0/1)
};

D4Result prepare_d4(int L, bool post_select, std::uint64_t seed);

// Exact probability of every stage-2 outcome string (bit b of the index is
// the X outcome of vertex qubit b), for the run seeded as in prepare_d4.
std::vector<double> d4_outcome_distribution(int L, std::uint64_t seed);

// ---- Rydberg gate synthesis (two-site / star Hamiltonian exponentials) ----

enum class SynthTarget { AB, BC, CD };

struct SynthesisReport {
    bool pass = false;
    double distance = 1e9;            // after phase stripping
    std::vector<double> stripped_phases;
    std::string detail;
};

struct SynthesisMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

SynthesisReport synthesize_gate_from_hamiltonian(SynthTarget which);

// The conjugated charge conjugation used by the BC construction.
CMat tilde_conj_matrix();  // diag(-1, 1, 1) via the pulse product

} // namespace laceprep::qudit
