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

#include <doctest.h>

#include <cmath>

#include "laceprep/analytic.hpp"
#include "laceprep/dynamics.hpp"

using namespace laceprep;

TEST_SUITE_BEGIN("dynamics");

TEST_CASE("unit bookkeeping: V(a) and t_SPT") {
    PhysicalParams p;
    p.a_um = 10.0;
    CHECK(p.v_of_a_mhz() == doctest::Approx(5.0));
    p.a_um = 12.0;
    CHECK(p.v_of_a_mhz() == doctest::Approx(1.674).epsilon(1e-3));
    CHECK(p.t_spt_ns() == doctest::Approx(1876.5).epsilon(1e-3));
}

TEST_CASE("instantaneous pulses and nearest-neighbor couplings give fidelity 1") {
    PhysicalParams p;
    p.t_pulse_ns = 1e-4;
    p.r_max = 1.0;  // nearest neighbor only
    auto evo = evolve_chain(p, standard_recipe(p), 8, true);
    CHECK(cluster_fidelity_per_site(evo, true) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(chain_stabilizer_expectation(evo, true) ==
          doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("norm preservation") {
    PhysicalParams p;
    auto evo = evolve_chain(p, standard_recipe(p), 10, true);
    double n2 = 0.0;
    for (const auto& a : evo.state) n2 += std::norm(a);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("diagonal limit agrees with the analytic module") {
    // instantaneous pulses, full 1/r^6: the stabilizer must match the exact
    // engine's corrected value to 1e-10
    PhysicalParams p;
    p.t_pulse_ns = 1e-5;
    p.r_max = 6.0;
    const int n = 12;
    // drop the corrective pulse: compare the raw stabilizer
    auto steps = standard_recipe(p);
    steps.pop_back();
    auto evo = evolve_chain(p, steps, n, true);
    double stab = chain_stabilizer_expectation(evo, true);

    std::vector<double> v(6);
    for (int k = 1; k <= 6; ++k) v[k - 1] = 1.0 / std::pow(double(k), 6.0);
    auto model = chain_model(v, n, true);
    auto eff = effective_couplings(PulseSchedule::single(), model);
    StabilizerSpec zxz;
    zxz.x_support = {4};
    zxz.z_support = {3, 5};
    auto exact = exact_stabilizer_expectation(model, eff, zxz);
    CHECK(stab == doctest::Approx(exact.value).epsilon(1e-8));
}

TEST_CASE("larger spacing wins at long pulse times") {
    PhysicalParams p10;
    p10.a_um = 10.0;
    p10.t_pulse_ns = 20.0;
    PhysicalParams p12 = p10;
    p12.a_um = 12.0;
    auto f10 = cluster_fidelity_per_site(
        evolve_chain(p10, standard_recipe(p10), 10, true), true);
    auto f12 = cluster_fidelity_per_site(
        evolve_chain(p12, standard_recipe(p12), 10, true), true);
    CHECK(f12 > f10);
}

TEST_CASE("methods recipe at 5 ns pulses reaches 0.999997") {
    PhysicalParams p;
    p.a_um = 12.0;
    p.t_pulse_ns = 5.0;
    const int n = 12;  // the acceptance suite runs N = 14
    auto evo = evolve_chain(p, standard_recipe(p), n, true);
    double f = cluster_fidelity_per_site(evo, true);
    CHECK(f == doctest::Approx(0.999997).epsilon(3e-5));
}

TEST_SUITE_END();
