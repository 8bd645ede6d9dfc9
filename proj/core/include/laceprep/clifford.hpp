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

#include <map>
#include <set>
#include <string>
#include <vector>

#include "laceprep/gf2.hpp"
#include "laceprep/lattice.hpp"
#include "laceprep/stabilizer_spec.hpp"
#include "laceprep/tableau.hpp"

namespace laceprep {

struct InfeasibleSyndrome : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CertificationFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ising evolution at t_SPT equals CZ on every edge plus S^deg on each site;
// prepare_cluster applies exactly that mapping.
Tableau prepare_cluster(const Lattice& lat, char initial_basis /* '-' or '+' */);

struct MeasurementEntry {
    SiteId site = 0;
    char basis = 'X';
    int outcome = +1;
    bool deterministic = false;
};

struct MeasurementRecord {
    std::vector<MeasurementEntry> entries;
};

// Measure every site of the given sublattice labels; outcomes drawn from
// per-(seed, site) counter streams, so they are order-independent wherever
// physics allows.
MeasurementRecord measure_sublattice(Tableau& tab, const Lattice& lat,
                                     const std::set<std::string>& labels, char basis,
                                     std::uint64_t seed);
MeasurementRecord measure_all_measured(Tableau& tab, const Lattice& lat, char basis,
                                       std::uint64_t seed);

struct PauliFrame {
    std::set<SiteId> x_flips;
    std::set<SiteId> z_flips;
    bool empty() const { return x_flips.empty() && z_flips.empty(); }
};

// Single-site flip frame on retained sites making every check +1 (GF(2)
// solve over X and Z flips).
PauliFrame solve_byproduct_frame(const Tableau& tab, const Lattice& lat,
                                 const std::vector<PauliOp>& checks);
PauliFrame solve_byproduct_frame(const Tableau& tab, const Lattice& lat,
                                 const std::vector<StabilizerSpec>& checks);
// Frame for the full protocol check set (Z checks plus plaquette checks).
PauliFrame solve_protocol_frame(const Tableau& tab, const Lattice& lat,
                                char initial_basis = '-');
void apply_frame(Tableau& tab, const PauliFrame& frame);

// Post-measurement Pauli ops for checks.
PauliOp z_check_op(std::size_t n, const StabilizerSpec& spec);
PauliOp x_check_op(std::size_t n, const StabilizerSpec& spec);
// Product of the legs' cluster-term stabilizers (Y on odd-degree legs, sign
// fixed by the initial basis).
PauliOp canonical_x_check_op(const Lattice& lat, const StabilizerSpec& spec,
                             char initial_basis = '-');
std::vector<PauliOp> certify_z_ops(const Lattice& lat);
std::vector<PauliOp> certify_x_ops(const Lattice& lat, char initial_basis = '-');

// k = retained qubits - rank of the locally generated check group; the code
// space has dimension 2^k.
struct LogicalCount {
    int k = 0;
    int z_rank = 0;
    int x_rank = 0;
    int n_retained = 0;
    std::vector<BitVec> x_local_generators;  // supports over retained indexing
};
LogicalCount logical_count(const Lattice& lat);

// Representatives of X-type operators commuting with all Z checks but outside
// the locally generated group (logical directions; fractal supports for the
// prism model).  Supports indexed over retained sites.
std::vector<BitVec> logical_x_representatives(const Lattice& lat);

// X-check supports over the retained indexing.
std::vector<BitVec> x_check_supports(const Lattice& lat);

// Independent derivation of the local X-check group: kernel vectors of the
// measured-neighborhood map restricted to graph-distance windows.  Empty
// whenever the window wraps the torus.
std::vector<BitVec> windowed_x_generators(const Lattice& lat, int radius);

enum class ExpectedCode { ghz, toric, color, xu_moore, yoshida_fracton, xcube, toric3d };
ExpectedCode expected_code_from_string(const std::string& s);

struct CertifyReport {
    bool ok = false;
    int k = 0;
    int expected_k = -1;  // -1: recorded only
    std::string failure;
    int n_checks_verified = 0;
};

// Verifies the expected check set is stabilized (+1 after the frame) and the
// logical count matches.
CertifyReport certify_code(Tableau& tab, const Lattice& lat, ExpectedCode expected,
                           const PauliFrame& frame_applied);

} // namespace laceprep
