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

// Brute-force references the fast engines are checked against.  Everything
// here is independent of the implementation paths under test: plain 2^N sums
// over computational basis states.

#pragma once

#include <complex>
#include <cstdint>
#include <tuple>
#include <vector>

#include "laceprep/analytic.hpp"
#include "laceprep/coupling.hpp"
#include "laceprep/pulse.hpp"

namespace oracle {

using laceprep::CouplingModel;
using laceprep::EffectiveCouplings;
using laceprep::StabilizerSpec;

// <psi| S |psi> with |psi> = exp(-i sum theta_ij Z_i Z_j) |init>^n by direct
// 2^n summation.  Legs carry explicit bases ('X' or 'Y').
inline double diagonal_evolution_expectation(
    int n, const std::vector<std::tuple<int, int, double>>& thetas,
    const std::vector<std::pair<int, char>>& legs, const std::vector<int>& z_support,
    char init = '-') {
    const std::size_t dim = std::size_t(1) << n;
    std::uint64_t flip = 0;
    for (auto [q, b] : legs) flip |= (1ull << q);
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t z = 0; z < dim; ++z) {
        // amplitude sign of |init>^n at z and at z^flip
        int sgn = 1;
        if (init == '-') {
            int ones_diff = __builtin_popcountll(z) + __builtin_popcountll(z ^ flip);
            sgn = (ones_diff % 2 == 0) ? 1 : -1;
        }
        double e1 = 0.0, e2 = 0.0;
        for (auto [i, j, th] : thetas) {
            double zi = ((z >> i) & 1) ? -1.0 : 1.0;
            double zj = ((z >> j) & 1) ? -1.0 : 1.0;
            e1 += th * zi * zj;
            double wi = (((z ^ flip) >> i) & 1) ? -1.0 : 1.0;
            double wj = (((z ^ flip) >> j) & 1) ? -1.0 : 1.0;
            e2 += th * wi * wj;
        }
        std::complex<double> coef{1.0, 0.0};
        for (auto [q, b] : legs) {
            if (b == 'Y')
                coef *= ((z >> q) & 1) ? std::complex<double>{0, -1}
                                       : std::complex<double>{0, 1};
        }
        for (int q : z_support)
            if ((z >> q) & 1) coef = -coef;
        // <z^flip| e^{+iE} S e^{-iE} |z> summed with product-state amps
        std::complex<double> ph{std::cos(e2 - e1), std::sin(e2 - e1)};
        acc += double(sgn) * coef * ph;
    }
    return (acc / double(dim)).real();
}

// Same interface as the engine: thetas from a model + schedule.
inline double model_expectation(const CouplingModel& model,
                                const EffectiveCouplings& eff,
                                const StabilizerSpec& spec,
                                const std::vector<char>& leg_basis, char init = '-') {
    std::vector<std::tuple<int, int, double>> thetas;
    for (std::size_t k = 0; k < model.pairs.size(); ++k)
        if (eff.theta[k] != 0.0)
            thetas.push_back({model.pairs[k].i, model.pairs[k].j, eff.theta[k]});
    std::vector<std::pair<int, char>> legs;
    for (std::size_t i = 0; i < spec.x_support.size(); ++i)
        legs.push_back({spec.x_support[i], leg_basis[i]});
    std::vector<int> zs(spec.z_support.begin(), spec.z_support.end());
    return diagonal_evolution_expectation(model.num_sites, thetas, legs, zs, init);
}

} // namespace oracle
