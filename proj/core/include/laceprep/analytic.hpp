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
#include <vector>

#include "laceprep/coupling.hpp"
#include "laceprep/pulse.hpp"
#include "laceprep/rng.hpp"
#include "laceprep/stabilizer_spec.hpp"

namespace laceprep {

struct OutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExactOptions {
    char initial = '-';     // product state |-\rangle^N or |+\rangle^N
    // Drop same-species couplings touching the legs: evaluates the
    // rotation-corrected (modified) stabilizer.
    bool correct_same_species_tilt = false;
    double theta_cutoff = 1e-10;    // spec'd truncation on |theta|
    double cycle_cutoff = 1e-15;
};

struct ExactExpectation {
    double value = 0.0;        // signed
    double closed_form = 0.0;  // cosine product only (no loop corrections)
    double cycle_sum = 0.0;    // sum over residual Z-string loops
    double truncation_bound = 0.0;
    bool protocol_ok = true;   // every leg parity resolved by its natural basis
    bool basis_flagged = false;

    double abs_value() const { return value < 0 ? -value : value; }
};

// Exact expectation of `spec` in the sign-weighted diagonal evolution of the
// initial product state: symbolic conjugation, cosine product over residual
// couplings touching the legs, plus the exact sum over cancelling Z-string
// subsets (loops in the leg-partner graph).
ExactExpectation exact_stabilizer_expectation(const CouplingModel& model,
                                              const EffectiveCouplings& eff,
                                              const StabilizerSpec& spec,
                                              const ExactOptions& opt = {});
ExactExpectation exact_stabilizer_expectation(const CouplingModel& model,
                                              const PulseSchedule& sched,
                                              const StabilizerSpec& spec,
                                              const ExactOptions& opt = {});

// Residual cosine exponents per half-angle: |delta| -> count.  delta is the
// angle whose cosine enters the product once.
std::map<double, int> residual_exponents(const CouplingModel& model,
                                         const EffectiveCouplings& eff,
                                         const StabilizerSpec& spec,
                                         const ExactOptions& opt = {});

enum class BoundMode { half_sum, cramer };
double fidelity_per_site_bound(double stab_expectation, BoundMode mode);

// Cramer-style aggregate over a generating check set: 1 - sum(eps)/2N.
double aggregate_fidelity_bound(const std::vector<std::pair<double, int>>& check_eps,
                                int n_sites);

struct OrderExtent {
    double atoms = 0.0;
    bool infinite = false;
    double r_dominant = 0.0;
    int multiplicity = 0;
    double retained_per_measured = 0.0;
};

// Number of retained atoms within which the prepared order persists,
// set by the dominant surviving measured-retained coupling.
OrderExtent order_extent(const Lattice& lat, const CouplingModel& model,
                         const EffectiveCouplings& eff);
OrderExtent order_extent(const Lattice& lat, const CouplingModel& model);

struct ChainObservables {
    double fidelity_per_site = 0.0;   // product lower bound
    double stabilizer = 0.0;
    double x_expectation = 0.0;
    double xx_expectation = 0.0;
};

// Exact 1D results for general coupling list v (v[0] is the protocol edge).
ChainObservables chain_exact_observables(const std::vector<double>& v);

struct SymmetryBreaking {
    double expectation = 0.0;  // sin(2Jt)^N
    double xi_s = 0.0;         // units of the retained spacing 2a
    bool infinite = false;
};
SymmetryBreaking symmetry_breaking_scale(double t_over_tspt, int n_sites);

struct CatXiStatistics {
    double xi_mean = 0.0;
    double xi_sigma = 0.0;
    bool infinite = false;
};
CatXiStatistics cat_xi_statistics(double t_over_tspt, std::int64_t n);

// Monte Carlo samples of the post-measurement correlation length; infinite
// samples reported as +infinity.  Deterministic in (seed, trial index).
std::vector<double> sample_cat_xi(double t_over_tspt, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed);

struct StabilizerRotation {
    double tilt_angle = 0.0;       // pi v2 / 2
    double corrective_pulse_area = 0.0;  // -pi v2 / 2
};
StabilizerRotation modified_stabilizer_rotation(double v2);

} // namespace laceprep
