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
#include <string>
#include <vector>

namespace laceprep {

struct ConvergenceFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frequencies are angular (rad/us); times in ns.  All accumulated phases are
// rate * time with the 2*pi absorbed into the rates, so t_SPT = pi / V(a).
struct PhysicalParams {
    double u6_thz_um6 = 5.0;  // van der Waals coefficient, THz um^6 (angular)
    double a_um = 12.0;       // lattice spacing
    double t_pulse_ns = 20.0;
    bool dual_species = false;
    bool interactions_during_pulses = true;
    double r_max = 6.0;  // in units of a

    double v_of_a_mhz() const;   // rad/us
    double t_spt_ns() const;     // pi / V(a)
};

enum class StepKind { free_evolve, x_pulse, z_pulse };

struct ScheduleStep {
    StepKind kind = StepKind::free_evolve;
    double duration_ns = 0.0;
    double strength_mhz = 0.0;  // Omega or h (rad/us)
};

// Methods-style preparation: X pulse, Z pulse, free evolution
// t_SPT - (5/2) t_pulse, and the corrective X pulse of relative
// strength -1/2^6.
std::vector<ScheduleStep> standard_recipe(const PhysicalParams& p);

struct ChainEvolution {
    std::vector<std::complex<double>> state;
    int n = 0;
    double time_ns = 0.0;
    int split_steps = 0;
};

// Exact split-step evolution of a periodic/open chain under the spin-form
// Hamiltonian; step size is halved until the final fidelity moves < 1e-9.
ChainEvolution evolve_chain(const PhysicalParams& params,
                            const std::vector<ScheduleStep>& steps, int n,
                            bool periodic);

// Nth root of the squared overlap with the ideal nearest-neighbor cluster
// state prepared from |-> by the same sign conventions.
double cluster_fidelity_per_site(const ChainEvolution& evo, bool periodic);

// <Z_{n-1} X_n Z_{n+1}> averaged over sites.
double chain_stabilizer_expectation(const ChainEvolution& evo, bool periodic);

} // namespace laceprep
