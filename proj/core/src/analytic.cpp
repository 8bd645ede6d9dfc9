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

#include "laceprep/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace laceprep {

namespace {

constexpr double kPi = std::numbers::pi;

struct WeakFactor {
    SiteId leg;
    SiteId partner;
    double tan_delta;
    double cos_delta;
};

struct Reduction {
    std::complex<double> base{1.0, 0.0};
    double cosprod = 1.0;
    std::vector<WeakFactor> factors;
    std::set<SiteId> residual;   // Z parity left over on non-leg sites
    bool basis_flagged = false;
    bool ok = true;
};

Reduction reduce(const CouplingModel& model, const EffectiveCouplings& eff,
                 const StabilizerSpec& spec, const ExactOptions& opt) {
    Reduction red;
    std::unordered_set<SiteId> legs(spec.x_support.begin(), spec.x_support.end());
    std::set<SiteId> rho(spec.z_support.begin(), spec.z_support.end());
    auto flip = [&rho](SiteId s) {
        auto it = rho.find(s);
        if (it == rho.end()) rho.insert(s); else rho.erase(it);
    };
    const std::complex<double> imag{0.0, 1.0};
    for (std::size_t k = 0; k < model.pairs.size(); ++k) {
        const auto& p = model.pairs[k];
        const bool li = legs.count(p.i) > 0, lj = legs.count(p.j) > 0;
        if (li == lj) continue;  // both or neither: conjugation factors cancel
        if (opt.correct_same_species_tilt &&
            model.site_species[p.i] == model.site_species[p.j])
            continue;
        double theta = eff.theta[k];
        if (std::abs(theta) < opt.theta_cutoff) continue;
        double mu = 2.0 * theta;
        long kk = std::lround(mu / (kPi / 2.0));
        double delta = mu - double(kk) * (kPi / 2.0);
        switch (((kk % 4) + 4) % 4) {
            case 0: break;
            case 1: red.base *= imag; flip(p.i); flip(p.j); break;
            case 2: red.base *= -1.0; break;
            case 3: red.base *= -imag; flip(p.i); flip(p.j); break;
        }
        if (std::abs(delta) > 1e-14) {
            WeakFactor f;
            f.leg = li ? p.i : p.j;
            f.partner = li ? p.j : p.i;
            f.tan_delta = std::tan(delta);
            f.cos_delta = std::cos(delta);
            red.cosprod *= f.cos_delta;
            red.factors.push_back(f);
        }
    }
    // Absorb leg parities into each leg's basis.  Residual Z factors sit to
    // the left of the leg operator, which fixes the Y sign.
    const std::complex<double> x_const = (opt.initial == '-') ? -1.0 : 1.0;
    const std::complex<double> y_const =
        (opt.initial == '-') ? std::complex<double>{0, 1} : std::complex<double>{0, -1};
    for (SiteId leg : spec.x_support) {
        bool needed = rho.count(leg) > 0;
        if (needed) rho.erase(leg);
        char natural = needed ? 'Y' : 'X';
        char requested = spec.basis == 'N' ? natural : spec.basis;
        if (requested != natural) {
            // Requested basis has vanishing leading term; the weak factors
            // would have to supply an odd Z count at this leg.
            red.basis_flagged = true;
            red.residual.insert(leg);
        }
        red.base *= (natural == 'X') ? x_const : y_const;
    }
    red.residual.insert(rho.begin(), rho.end());
    return red;
}

// Simple loops in the bipartite leg-partner graph, weight
// (-1)^(len/2) * prod tan(delta); plus sums over edge-disjoint pairs.
struct LoopSum {
    double total = 1.0;
    double bound = 0.0;
};

LoopSum loop_sum(const std::vector<WeakFactor>& factors, double cutoff) {
    LoopSum out;
    if (factors.empty()) return out;
    // adjacency: leg -> list of (factor index)
    std::vector<SiteId> legs;
    std::unordered_map<SiteId, std::vector<int>> by_leg, by_partner;
    for (int k = 0; k < static_cast<int>(factors.size()); ++k) {
        by_leg[factors[k].leg].push_back(k);
        by_partner[factors[k].partner].push_back(k);
        legs.push_back(factors[k].leg);
    }
    std::sort(legs.begin(), legs.end());
    legs.erase(std::unique(legs.begin(), legs.end()), legs.end());
    double tmax = 0.0;
    for (const auto& f : factors) tmax = std::max(tmax, std::abs(f.tan_delta));
    if (tmax >= 0.999) {  // no decay, enumeration would not converge
        out.bound = 1e9;
        return out;
    }

    struct Loop {
        double w;
        std::vector<int> edges;
    };
    std::vector<Loop> loops;

    // DFS over alternating walks leg -> partner -> leg ... closing at the
    // start leg; canonical form: start = smallest leg in the loop, first
    // partner id < closing partner id.
    // Walks alternate leg -> partner -> leg; a loop closes when the partner
    // also touches the start leg.  Canonical form: the start is the smallest
    // leg on the loop and the first partner id is below the closing one.
    std::vector<int> edge_stack;
    std::unordered_set<SiteId> used_partners, used_legs;
    std::function<void(SiteId, SiteId, double, SiteId)> walk =
        [&](SiteId start, SiteId current, double prod, SiteId first_partner) {
            for (int e : by_leg[current]) {
                const auto& f = factors[e];
                if (used_partners.count(f.partner)) continue;
                double p2 = prod * f.tan_delta;
                if (std::abs(p2) * tmax < cutoff) continue;
                for (int e2 : by_partner[f.partner]) {
                    if (e2 == e) continue;
                    const auto& g = factors[e2];
                    if (g.leg != start) continue;
                    if (first_partner >= 0 && first_partner >= f.partner) continue;
                    double w = p2 * g.tan_delta;
                    if (std::abs(w) < cutoff) continue;
                    int len = static_cast<int>(edge_stack.size()) + 2;
                    Loop loop;
                    loop.w = ((len / 2) % 2 == 0 ? 1.0 : -1.0) * w;
                    loop.edges = edge_stack;
                    loop.edges.push_back(e);
                    loop.edges.push_back(e2);
                    loops.push_back(loop);
                }
                used_partners.insert(f.partner);
                edge_stack.push_back(e);
                for (int e2 : by_partner[f.partner]) {
                    if (e2 == e) continue;
                    const auto& g = factors[e2];
                    if (g.leg <= start || used_legs.count(g.leg)) continue;
                    double p3 = p2 * g.tan_delta;
                    if (std::abs(p3) * tmax * tmax < cutoff) continue;
                    used_legs.insert(g.leg);
                    edge_stack.push_back(e2);
                    walk(start, g.leg, p3, first_partner < 0 ? f.partner : first_partner);
                    edge_stack.pop_back();
                    used_legs.erase(g.leg);
                }
                edge_stack.pop_back();
                used_partners.erase(f.partner);
            }
        };

    for (SiteId start : legs) {
        used_legs.insert(start);
        walk(start, start, 1.0, -1);
        used_legs.erase(start);
    }

    double singles = 0.0, abs_singles = 0.0;
    for (const auto& l : loops) {
        singles += l.w;
        abs_singles += std::abs(l.w);
    }
    // Edge-disjoint pairs; triples are bounded, not enumerated.
    double pairs = 0.0;
    for (std::size_t a = 0; a < loops.size(); ++a) {
        for (std::size_t b = a + 1; b < loops.size(); ++b) {
            bool disjoint = true;
            for (int e1 : loops[a].edges) {
                for (int e2 : loops[b].edges)
                    if (e1 == e2) { disjoint = false; break; }
                if (!disjoint) break;
            }
            if (disjoint) pairs += loops[a].w * loops[b].w;
        }
    }
    out.total = 1.0 + singles + pairs;
    out.bound = abs_singles * abs_singles * abs_singles / 6.0 +
                cutoff * double(factors.size());
    return out;
}

} // namespace

ExactExpectation exact_stabilizer_expectation(const CouplingModel& model,
                                              const EffectiveCouplings& eff,
                                              const StabilizerSpec& spec,
                                              const ExactOptions& opt) {
    Reduction red = reduce(model, eff, spec, opt);
    ExactExpectation out;
    out.basis_flagged = red.basis_flagged;
    if (!red.residual.empty()) {
        // A Z leg (or a mismatched basis) was not resolved by the protocol
        // reduction: the leading term vanishes.  Residual strings could only
        // be repaired at higher order; report zero with the flag set.
        out.protocol_ok = false;
        out.value = 0.0;
        out.closed_form = 0.0;
        return out;
    }
    std::complex<double> closed = red.base * red.cosprod;
    if (std::abs(closed.imag()) > 1e-9 * (1.0 + std::abs(closed.real())))
        throw std::logic_error("expectation reduced to a non-Hermitian phase");
    LoopSum loops = loop_sum(red.factors, opt.cycle_cutoff);
    out.closed_form = closed.real();
    out.cycle_sum = loops.total - 1.0;
    out.value = out.closed_form * loops.total;
    out.truncation_bound = std::abs(out.closed_form) * loops.bound;
    return out;
}

ExactExpectation exact_stabilizer_expectation(const CouplingModel& model,
                                              const PulseSchedule& sched,
                                              const StabilizerSpec& spec,
                                              const ExactOptions& opt) {
    return exact_stabilizer_expectation(model, effective_couplings(sched, model), spec,
                                        opt);
}

std::map<double, int> residual_exponents(const CouplingModel& model,
                                         const EffectiveCouplings& eff,
                                         const StabilizerSpec& spec,
                                         const ExactOptions& opt) {
    Reduction red = reduce(model, eff, spec, opt);
    std::map<double, int> out;
    for (const auto& f : red.factors) {
        double delta = std::atan(f.tan_delta);
        double key = std::round(std::abs(delta) * 1e12) / 1e12;
        out[key]++;
    }
    return out;
}

double fidelity_per_site_bound(double s, BoundMode mode) {
    if (s < 0.0 || s > 1.0) throw OutOfRange("stabilizer expectation outside [0,1]");
    switch (mode) {
        case BoundMode::half_sum: return (1.0 + s) / 2.0;
        case BoundMode::cramer: return 1.0 - (1.0 - s) / 2.0;
    }
    return 0.0;
}

double aggregate_fidelity_bound(const std::vector<std::pair<double, int>>& check_eps,
                                int n_sites) {
    double total = 0.0;
    for (auto [eps, count] : check_eps) total += eps * count;
    return 1.0 - total / (2.0 * n_sites);
}

OrderExtent order_extent(const Lattice& lat, const CouplingModel& model,
                         const EffectiveCouplings& eff) {
    OrderExtent out;
    int n_measured = 0, n_retained = 0;
    for (const auto& s : lat.sites)
        (lat.is_measured(s.id) ? n_measured : n_retained)++;
    out.retained_per_measured = double(n_retained) / double(n_measured);

    // Dominant surviving measured<->retained image distance beyond the
    // protocol edges.
    double best_r2 = 0.0;
    for (std::size_t k = 0; k < model.pairs.size(); ++k) {
        const auto& p = model.pairs[k];
        if (model.site_species[p.i] == model.site_species[p.j]) continue;
        if (eff.net[k].is_zero()) continue;
        for (const Vec3& d : lat.images_within(p.i, p.j, model.r_max)) {
            double r2 = d.norm2();
            if (r2 < 1.0 + kShellTol2) continue;
            if (best_r2 == 0.0 || r2 < best_r2 - kShellTol2) best_r2 = r2;
        }
    }
    if (best_r2 == 0.0) {
        out.infinite = true;
        return out;
    }
    out.r_dominant = std::sqrt(best_r2);

    // Multiplicity and net from a measured reference site.
    SiteId ref = -1;
    for (const auto& s : lat.sites)
        if (lat.is_measured(s.id)) { ref = s.id; break; }
    Rational net(0);
    for (std::size_t k = 0; k < model.pairs.size(); ++k) {
        const auto& p = model.pairs[k];
        if (p.i != ref && p.j != ref) continue;
        if (model.site_species[p.i] == model.site_species[p.j]) continue;
        if (eff.net[k].is_zero()) continue;
        for (const Vec3& d : lat.images_within(p.i, p.j, model.r_max)) {
            if (std::abs(d.norm2() - best_r2) < kShellTol2) {
                out.multiplicity++;
                net = eff.net[k];
            }
        }
    }
    double v_eff = std::abs(net.value()) / std::pow(out.r_dominant, 6.0);
    double c = std::cos(kPi * v_eff / 2.0);
    out.atoms = out.retained_per_measured / double(out.multiplicity) /
                std::abs(std::log(c));
    return out;
}

OrderExtent order_extent(const Lattice& lat, const CouplingModel& model) {
    return order_extent(lat, model, effective_couplings(PulseSchedule::single(), model));
}

ChainObservables chain_exact_observables(const std::vector<double>& v) {
    if (v.empty() || v[0] != 1.0)
        throw std::invalid_argument("v[0] (protocol strength) must be 1");
    ChainObservables out;
    out.fidelity_per_site = 1.0;
    out.stabilizer = 1.0;
    auto c = [&](std::size_t k) {  // cos(pi v_k / 2), 1-based distance k
        if (k < 1 || k > v.size()) return 1.0;
        return std::cos(kPi * v[k - 1] / 2.0);
    };
    auto t = [&](std::size_t k) {
        if (k < 1 || k > v.size()) return 0.0;
        return std::tan(kPi * v[k - 1] / 2.0);
    };
    for (std::size_t k = 2; k <= v.size(); ++k) {
        double cb = std::cos(kPi * v[k - 1] / 4.0);
        out.fidelity_per_site *= cb * cb;
        out.stabilizer *= c(k) * c(k);
    }
    out.x_expectation = 0.0;
    // <X_n X_{n+2}> = (c2^2 t3^2 / 2) sum_sigma (-1)^sigma
    //                 prod_{k>=3} [c_k^4 (1 + (-1)^sigma t_{k-1} t_{k+1})^2]
    double pieces[2] = {1.0, 1.0};
    for (std::size_t k = 3; k <= v.size() + 1; ++k) {
        double ck = c(k);
        double tt = t(k - 1) * t(k + 1);
        pieces[0] *= ck * ck * ck * ck * (1.0 + tt) * (1.0 + tt);
        pieces[1] *= ck * ck * ck * ck * (1.0 - tt) * (1.0 - tt);
    }
    out.xx_expectation =
        (c(2) * c(2) * t(3) * t(3) / 2.0) * (pieces[0] - pieces[1]);
    return out;
}

SymmetryBreaking symmetry_breaking_scale(double t_over_tspt, int n_sites) {
    if (std::abs(1.0 - t_over_tspt) >= 0.5)
        throw OutOfRange("symmetry_breaking_scale needs |1 - t/t_SPT| < 1/2");
    SymmetryBreaking out;
    double s = std::sin(kPi / 2.0 * t_over_tspt);
    out.expectation = std::pow(s, n_sites);
    if (s >= 1.0) {
        out.infinite = true;
        return out;
    }
    out.xi_s = -1.0 / (2.0 * std::log(s));  // retained spacing 2a
    return out;
}

CatXiStatistics cat_xi_statistics(double t_over_tspt, std::int64_t n) {
    CatXiStatistics out;
    double alpha = std::cos(kPi / 2.0 * t_over_tspt);
    alpha *= alpha;
    if (alpha >= 1.0) {  // product state
        out.xi_mean = 0.0;
        out.xi_sigma = 0.0;
        return out;
    }
    if (alpha < 1e-30) {  // true cat state
        out.infinite = true;
        return out;
    }
    double lam = std::log((1.0 + alpha) / (1.0 - alpha));
    out.xi_mean = 2.0 / ((1.0 + alpha) * lam);
    out.xi_sigma = out.xi_mean / std::sqrt(double(n)) *
                   std::sqrt((1.0 - alpha) / (1.0 + alpha));
    return out;
}

std::vector<double> sample_cat_xi(double t_over_tspt, std::int64_t n,
                                  std::int64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    double alpha = std::cos(kPi / 2.0 * t_over_tspt);
    alpha *= alpha;
    double p = (1.0 + alpha) / 2.0;  // probability of outcome s = -1
    double lam = alpha < 1.0 ? std::log((1.0 + alpha) / (1.0 - alpha)) : 0.0;
    std::vector<double> out(trials);
    for (std::int64_t t = 0; t < trials; ++t) {
        CounterRng rng(seed, static_cast<std::uint64_t>(t));
        std::int64_t b = binomial_inverse_cdf(n, p, rng.next_double());
        double rho = double(b) / double(n);
        out[t] = (lam <= 0.0 || rho <= 0.0)
                     ? std::numeric_limits<double>::infinity()
                     : 1.0 / (lam * rho);
    }
    return out;
}

StabilizerRotation modified_stabilizer_rotation(double v2) {
    if (std::abs(v2) >= 1.0) throw std::invalid_argument("|v2| must be < 1");
    StabilizerRotation out;
    out.tilt_angle = kPi * v2 / 2.0;
    out.corrective_pulse_area = -kPi * v2 / 2.0;
    return out;
}

} // namespace laceprep
