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

#include "laceprep/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace laceprep {

namespace {

constexpr double kPi = std::numbers::pi;

// Pairwise J_ij = V(a) v_d / 4 along the chain; v_d = 1/d^6 with periodic
// images inside r_max, even distances dropped for dual species.
std::vector<std::vector<double>> chain_couplings(const PhysicalParams& p, int n,
                                                 bool periodic) {
    std::vector<std::vector<double>> j(n, std::vector<double>(n, 0.0));
    const double v_a = p.v_of_a_mhz();
    const int dmax = static_cast<int>(p.r_max);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            double v = 0.0;
            auto add = [&](int d) {
                if (d < 1 || d > dmax) return;
                if (p.dual_species && d % 2 == 0) return;
                v += 1.0 / std::pow(double(d), 6.0);
            };
            add(b - a);
            if (periodic) add(n - (b - a));
            j[a][b] = v_a * v / 4.0;
        }
    return j;
}

struct Engine {
    int n;
    std::vector<std::complex<double>> amp;
    std::vector<double> zz_energy;  // rad/us per basis state

    Engine(int n, const std::vector<std::vector<double>>& j) : n(n) {
        const std::size_t dim = std::size_t(1) << n;
        amp.assign(dim, {0.0, 0.0});
        amp[dim - 1] = 1.0;  // all atoms in the ground state (Z = -1)
        zz_energy.assign(dim, 0.0);
        for (std::size_t z = 0; z < dim; ++z) {
            double e = 0.0;
            for (int a = 0; a < n; ++a) {
                double za = ((z >> a) & 1) ? -1.0 : 1.0;
                for (int b = a + 1; b < n; ++b) {
                    if (j[a][b] == 0.0) continue;
                    double zb = ((z >> b) & 1) ? -1.0 : 1.0;
                    e += j[a][b] * za * zb;
                }
            }
            zz_energy[z] = e;
        }
    }

    // exp(-i t [ZZ - (h/2) sum Z]), exact.
    void phase_diag(double t_ns, double h_mhz, bool zz_on) {
        const double t_us = t_ns / 1000.0;
        for (std::size_t z = 0; z < amp.size(); ++z) {
            double sz = double(n) - 2.0 * double(__builtin_popcountll(z));
            double e = (zz_on ? zz_energy[z] : 0.0) - 0.5 * h_mhz * sz;
            double ph = -e * t_us;
            amp[z] *= std::complex<double>(std::cos(ph), std::sin(ph));
        }
    }

    void rotate_x_all(double angle) {  // exp(-i angle X) on every qubit
        const double c = std::cos(angle), s = std::sin(angle);
        const std::complex<double> mis{0.0, -s};
        for (int q = 0; q < n; ++q) {
            const std::size_t bit = std::size_t(1) << q;
            for (std::size_t z = 0; z < amp.size(); ++z) {
                if (z & bit) continue;
                auto a0 = amp[z], a1 = amp[z | bit];
                amp[z] = c * a0 + mis * a1;
                amp[z | bit] = mis * a0 + c * a1;
            }
        }
    }

    void x_pulse(double t_ns, double omega_mhz, bool zz_on, int substeps) {
        const double dt = t_ns / substeps;
        const double angle = 0.5 * omega_mhz * (dt / 1000.0);
        for (int k = 0; k < substeps; ++k) {
            phase_diag(dt / 2.0, 0.0, zz_on);
            rotate_x_all(angle);
            phase_diag(dt / 2.0, 0.0, zz_on);
        }
    }
};

std::vector<std::complex<double>> ideal_cluster_state(int n, bool periodic) {
    // Instantaneous-pulse limit of the recipe: exp(-i pi/4 Z) exp(-i pi/4 X)
    // per site from the ground state, then the nearest-neighbor entangler.
    const std::size_t dim = std::size_t(1) << n;
    std::vector<std::complex<double>> psi(dim, {0.0, 0.0});
    psi[dim - 1] = 1.0;
    const double c = std::cos(kPi / 4.0), s = std::sin(kPi / 4.0);
    const std::complex<double> mis{0.0, -s};
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t(1) << q;
        for (std::size_t z = 0; z < dim; ++z) {
            if (z & bit) continue;
            auto a0 = psi[z], a1 = psi[z | bit];
            psi[z] = c * a0 + mis * a1;
            psi[z | bit] = mis * a0 + c * a1;
        }
    }
    for (std::size_t z = 0; z < dim; ++z) {
        double sz = double(n) - 2.0 * double(__builtin_popcountll(z));
        double zz = 0.0;
        for (int q = 0; q + 1 < n; ++q) {
            double za = ((z >> q) & 1) ? -1.0 : 1.0;
            double zb = ((z >> (q + 1)) & 1) ? -1.0 : 1.0;
            zz += za * zb;
        }
        if (periodic && n > 2) {
            double za = ((z >> (n - 1)) & 1) ? -1.0 : 1.0;
            double zb = (z & 1) ? -1.0 : 1.0;
            zz += za * zb;
        }
        double ph = -kPi / 4.0 * sz - kPi / 4.0 * zz;
        psi[z] *= std::complex<double>(std::cos(ph), std::sin(ph));
    }
    return psi;
}

} // namespace

double PhysicalParams::v_of_a_mhz() const {
    return u6_thz_um6 * 1e6 / std::pow(a_um, 6.0);
}

double PhysicalParams::t_spt_ns() const { return kPi / v_of_a_mhz() * 1000.0; }

std::vector<ScheduleStep> standard_recipe(const PhysicalParams& p) {
    const double tp = p.t_pulse_ns;
    const double omega = kPi / (2.0 * tp / 1000.0);  // rad/us
    std::vector<ScheduleStep> steps;
    steps.push_back({StepKind::x_pulse, tp, omega});
    steps.push_back({StepKind::z_pulse, tp, -omega});
    steps.push_back({StepKind::free_evolve, p.t_spt_ns() - 2.5 * tp, 0.0});
    // corrective pulse undoing the second-neighbor tilt (absent for dual
    // species or when the model carries no r = 2a coupling)
    double v2 = (!p.dual_species && p.r_max >= 2.0) ? 1.0 / 64.0 : 0.0;
    if (v2 > 0.0) steps.push_back({StepKind::x_pulse, tp, -omega * v2});
    return steps;
}

ChainEvolution evolve_chain(const PhysicalParams& params,
                            const std::vector<ScheduleStep>& steps, int n,
                            bool periodic) {
    if (n < 2 || n > 20) throw std::invalid_argument("chain size must be in [2, 20]");
    auto j = chain_couplings(params, n, periodic);

    auto run = [&](int substeps) {
        Engine eng(n, j);
        double t = 0.0;
        for (const auto& s : steps) {
            if (s.duration_ns < 0) throw std::invalid_argument("negative step duration");
            switch (s.kind) {
                case StepKind::free_evolve:
                    eng.phase_diag(s.duration_ns, 0.0, true);
                    break;
                case StepKind::z_pulse:
                    eng.phase_diag(s.duration_ns, s.strength_mhz,
                                   params.interactions_during_pulses);
                    break;
                case StepKind::x_pulse:
                    eng.x_pulse(s.duration_ns, s.strength_mhz,
                                params.interactions_during_pulses, substeps);
                    break;
            }
            t += s.duration_ns;
        }
        ChainEvolution out;
        out.state = std::move(eng.amp);
        out.n = n;
        out.time_ns = t;
        out.split_steps = substeps;
        return out;
    };

    int substeps = 64;
    ChainEvolution prev = run(substeps);
    double prev_f = cluster_fidelity_per_site(prev, periodic);
    for (int iter = 0; iter < 10; ++iter) {
        substeps *= 2;
        ChainEvolution next = run(substeps);
        double f = cluster_fidelity_per_site(next, periodic);
        if (std::abs(f - prev_f) < 1e-9) return next;
        prev = std::move(next);
        prev_f = f;
    }
    throw ConvergenceFailure("split-step fidelity did not stabilize at 1e-9");
}

double cluster_fidelity_per_site(const ChainEvolution& evo, bool periodic) {
    auto ref = ideal_cluster_state(evo.n, periodic);
    std::complex<double> ov{0.0, 0.0};
    for (std::size_t z = 0; z < ref.size(); ++z) ov += std::conj(ref[z]) * evo.state[z];
    return std::pow(std::norm(ov), 1.0 / evo.n);
}

double chain_stabilizer_expectation(const ChainEvolution& evo, bool periodic) {
    const int n = evo.n;
    const std::size_t dim = evo.state.size();
    double acc = 0.0;
    int count = 0;
    for (int q = 0; q < n; ++q) {
        if (!periodic && (q == 0 || q == n - 1)) continue;
        int qm = (q - 1 + n) % n, qp = (q + 1) % n;
        std::complex<double> e{0.0, 0.0};
        const std::size_t bit = std::size_t(1) << q;
        for (std::size_t z = 0; z < dim; ++z) {
            double zm = ((z >> qm) & 1) ? -1.0 : 1.0;
            double zp = ((z >> qp) & 1) ? -1.0 : 1.0;
            e += std::conj(evo.state[z]) * zm * zp * evo.state[z ^ bit];
        }
        acc += e.real();
        ++count;
    }
    return acc / count;
}

} // namespace laceprep
