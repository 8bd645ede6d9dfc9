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

#include "laceprep/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace laceprep {

PulseSchedule PulseSchedule::single() {
    PulseSchedule s;
    s.segments.push_back({Rational(1), {}});
    return s;
}

Rational PulseSchedule::total_duration() const {
    Rational t(0);
    for (const auto& seg : segments) t = t + seg.duration;
    return t;
}

namespace {

// Flip state of every class during every segment.
std::map<std::string, std::vector<bool>> flip_states(const PulseSchedule& sched) {
    std::map<std::string, std::vector<bool>> state;
    std::set<std::string> flipped;
    std::size_t k = 0;
    for (const auto& seg : sched.segments) {
        for (const auto& c : seg.toggles) {
            if (flipped.count(c)) flipped.erase(c); else flipped.insert(c);
        }
        for (const auto& c : flipped) {
            auto& v = state[c];
            v.resize(sched.segments.size(), false);
            v[k] = true;
        }
        ++k;
    }
    for (auto& [c, v] : state) v.resize(sched.segments.size(), false);
    return state;
}

} // namespace

Rational net_duration(const PulseSchedule& sched, const std::string& c1,
                      const std::string& c2) {
    auto states = flip_states(sched);
    const auto* s1 = states.count(c1) ? &states[c1] : nullptr;
    const auto* s2 = states.count(c2) ? &states[c2] : nullptr;
    Rational net(0);
    for (std::size_t k = 0; k < sched.segments.size(); ++k) {
        bool f1 = s1 && (*s1)[k];
        bool f2 = s2 && (*s2)[k];
        net = (f1 == f2) ? net + sched.segments[k].duration
                         : net - sched.segments[k].duration;
    }
    return net;
}

EffectiveCouplings effective_couplings(const PulseSchedule& sched,
                                       const CouplingModel& model) {
    std::set<std::string> known(model.site_class.begin(), model.site_class.end());
    for (const auto& seg : sched.segments)
        for (const auto& c : seg.toggles)
            if (!known.count(c))
                throw UnknownSublattice("flip class not in lattice: " + c);

    // Nets depend only on the flip-class pair; cache them.
    std::map<std::pair<std::string, std::string>, Rational> cache;
    EffectiveCouplings out;
    out.theta.reserve(model.pairs.size());
    out.net.reserve(model.pairs.size());
    for (const auto& p : model.pairs) {
        auto key = std::minmax(model.site_class[p.i], model.site_class[p.j]);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, net_duration(sched, key.first, key.second)).first;
        out.net.push_back(it->second);
        out.theta.push_back(std::numbers::pi / 4.0 * p.v * it->second.value());
    }
    return out;
}

SchemeName scheme_from_string(const std::string& s) {
    if (s == "chain_fig1d") return SchemeName::chain_fig1d;
    if (s == "xu_moore_abcd") return SchemeName::xu_moore_abcd;
    if (s == "fracton_tripartite") return SchemeName::fracton_tripartite;
    throw std::invalid_argument("unknown scheme: " + s);
}

PulseSchedule named_scheme(SchemeName name) {
    PulseSchedule s;
    const Rational half(1, 2), quarter(1, 4);
    switch (name) {
        case SchemeName::chain_fig1d:
            // X2 X3 U(t/2) X1 X3 U(t/2) X1 X2 U(t), right to left.
            s.segments.push_back({Rational(1), {}});
            s.segments.push_back({half, {"P1", "P2"}});
            s.segments.push_back({half, {"P1", "P3"}});
            break;
        case SchemeName::xu_moore_abcd:
            // XA XC U(t/2) XA XD U(t/2) XC XD U(t), right to left.
            s.segments.push_back({Rational(1), {}});
            s.segments.push_back({half, {"C", "D"}});
            s.segments.push_back({half, {"A", "D"}});
            break;
        case SchemeName::fracton_tripartite: {
            // Eight quarter-length segments.  Column class i (measured sites
            // A_i together with the vertical gauge sites V_i) is inverted
            // during window W(A_i), W(V_i):
            //   A1:{0,1} A2:{2,3} A3:{4,5}  V1:{1,6} V2:{3,7} V3:{5,6}
            // Net evolution: 1 for A_i-V_i and A_i-T (all protocol edges),
            // 0 for every cross pair A_i-V_j and A_i-A_j.
            const std::vector<std::set<std::string>> states = {
                {"A1"},       {"A1", "V1"}, {"A2"},       {"A2", "V2"},
                {"A3"},       {"A3", "V3"}, {"V1", "V3"}, {"V2"},
            };
            std::set<std::string> prev;
            for (const auto& st : states) {
                std::set<std::string> toggle;
                std::set_symmetric_difference(st.begin(), st.end(), prev.begin(),
                                              prev.end(),
                                              std::inserter(toggle, toggle.begin()));
                s.segments.push_back({quarter, toggle});
                prev = st;
            }
            break;
        }
    }
    return s;
}

namespace {

SchemeReport check_nets(const PulseSchedule& sched,
                        const std::vector<ResidualRow>& expectations) {
    SchemeReport rep;
    rep.pass = true;
    for (ResidualRow row : expectations) {
        row.net = net_duration(sched, row.c1, row.c2);
        row.constrained = true;
        if (!(row.net == row.expected)) rep.pass = false;
        rep.residuals.push_back(row);
    }
    return rep;
}

} // namespace

SchemeReport verify_scheme(SchemeName name, const CouplingModel& model) {
    PulseSchedule sched = named_scheme(name);
    std::set<std::string> classes(model.site_class.begin(), model.site_class.end());
    auto expect = [](const std::string& a, const std::string& b, Rational r) {
        ResidualRow row;
        row.c1 = a;
        row.c2 = b;
        row.expected = r;
        return row;
    };
    std::vector<ResidualRow> rows;
    switch (name) {
        case SchemeName::chain_fig1d: {
            if (!classes.count("P4"))
                throw std::invalid_argument("chain_fig1d needs a chain with 4 classes");
            rows = {expect("P1", "P2", 1), expect("P2", "P3", 1), expect("P3", "P4", 1),
                    expect("P4", "P1", 1), expect("P1", "P3", 0), expect("P2", "P4", 0),
                    expect("P1", "P1", 2), expect("P2", "P2", 2), expect("P3", "P3", 2),
                    expect("P4", "P4", 2)};
            break;
        }
        case SchemeName::xu_moore_abcd: {
            if (!classes.count("D"))
                throw std::invalid_argument("xu_moore_abcd needs the checkerboard lattice");
            rows = {expect("A", "B", 1), expect("A", "C", 1), expect("C", "D", 1),
                    expect("B", "D", 1), expect("A", "D", 0), expect("B", "C", 0),
                    expect("A", "A", 2), expect("B", "B", 2), expect("C", "C", 2),
                    expect("D", "D", 2)};
            break;
        }
        case SchemeName::fracton_tripartite: {
            if (!classes.count("T"))
                throw std::invalid_argument(
                    "fracton_tripartite needs the hex_prism_fracton lattice");
            for (int i = 1; i <= 3; ++i) {
                rows.push_back(expect("A" + std::to_string(i), "V" + std::to_string(i), 1));
                rows.push_back(expect("A" + std::to_string(i), "T", 1));
                for (int j = 1; j <= 3; ++j) {
                    if (i == j) continue;
                    rows.push_back(
                        expect("A" + std::to_string(i), "V" + std::to_string(j), 0));
                    if (i < j)
                        rows.push_back(
                            expect("A" + std::to_string(i), "A" + std::to_string(j), 0));
                }
            }
            break;
        }
    }
    SchemeReport rep = check_nets(sched, rows);
    if (!rep.pass) rep.detail = "scheme nets do not match the documented cancellations";
    return rep;
}

std::vector<CancelTarget> resolve_targets(const Lattice& lat, const CouplingModel& model,
                                          double r, bool out_of_plane_only) {
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& p : model.pairs) {
        for (const Vec3& d : lat.images_within(p.i, p.j, r + 1e-6)) {
            if (std::abs(d.norm2() - r * r) > kShellTol2) continue;
            if (out_of_plane_only && std::abs(d.z) < 1e-9) continue;
            auto key = std::minmax(model.site_class[p.i], model.site_class[p.j]);
            pairs.insert(key);
        }
    }
    std::vector<CancelTarget> out;
    for (const auto& [a, b] : pairs) out.push_back({a, b});
    return out;
}

namespace {

// Class-pair constraints extracted from the model: protocol pairs must keep
// net 1, target pairs must reach net 0.
struct SearchProblem {
    std::vector<std::string> classes;
    // index pairs into `classes`; value: required net (0 or 1)
    std::vector<std::tuple<int, int, int>> constraints;
};

std::optional<SearchProblem> build_problem(const CouplingModel& model,
                                           const std::vector<CancelTarget>& targets) {
    std::set<std::string> class_set(model.site_class.begin(), model.site_class.end());
    std::vector<std::string> classes(class_set.begin(), class_set.end());
    auto index_of = [&](const std::string& c) {
        return int(std::find(classes.begin(), classes.end(), c) - classes.begin());
    };
    std::map<std::pair<int, int>, int> req;
    for (const auto& e : model.protocol_edges) {
        auto key = std::minmax({index_of(model.site_class[e.first]),
                                index_of(model.site_class[e.second])});
        req[key] = 1;
    }
    for (const auto& t : targets) {
        if (!class_set.count(t.c1) || !class_set.count(t.c2))
            throw UnknownSublattice("target class not in lattice: " + t.c1 + "/" + t.c2);
        auto key = std::minmax({index_of(t.c1), index_of(t.c2)});
        auto it = req.find(key);
        if (it != req.end() && it->second == 1) return std::nullopt; // contradiction
        req[key] = 0;
    }
    SearchProblem p;
    p.classes = classes;
    for (const auto& [key, val] : req) p.constraints.emplace_back(key.first, key.second, val);
    return p;
}

PulseSchedule schedule_from_words(const std::vector<std::string>& classes,
                                  const std::vector<std::uint32_t>& words, int n,
                                  const std::vector<Rational>& durations) {
    PulseSchedule sched;
    for (int s = 0; s < n; ++s) {
        if (durations[s].is_zero()) continue;
        std::set<std::string> toggle;
        for (std::size_t c = 0; c < classes.size(); ++c) {
            bool now = (words[c] >> s) & 1u;
            bool before = s > 0 && ((words[c] >> (s - 1)) & 1u);
            if (now != before) toggle.insert(classes[c]);
        }
        sched.segments.push_back({durations[s], toggle});
    }
    return sched;
}

// Solve sum_s d_s * sign_s = rhs for all constraint rows with d >= 0, by
// enumerating support subsets (every feasible system has a basic feasible
// solution supported on at most rank-many columns).
std::optional<std::vector<Rational>> solve_durations(
    const std::vector<std::vector<int>>& signs, const std::vector<Rational>& rhs, int n) {
    const int rows = static_cast<int>(signs.size());
    for (int size = 1; size <= n; ++size) {
        std::vector<int> idx(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            // Gaussian elimination on the restricted columns.
            std::vector<std::vector<Rational>> A(rows, std::vector<Rational>(size + 1));
            for (int r = 0; r < rows; ++r) {
                for (int c = 0; c < size; ++c) A[r][c] = Rational(signs[r][idx[c]]);
                A[r][size] = rhs[r];
            }
            int rank = 0;
            bool inconsistent = false;
            for (int col = 0; col < size && rank < rows; ++col) {
                int piv = -1;
                for (int r = rank; r < rows; ++r)
                    if (!A[r][col].is_zero()) { piv = r; break; }
                if (piv < 0) continue;
                std::swap(A[rank], A[piv]);
                for (int r = 0; r < rows; ++r) {
                    if (r == rank || A[r][col].is_zero()) continue;
                    Rational f(A[r][col].num * A[rank][col].den,
                               A[r][col].den * A[rank][col].num);
                    for (int c = col; c <= size; ++c) A[r][c] = A[r][c] - f * A[rank][c];
                }
                ++rank;
            }
            for (int r = rank; r < rows; ++r)
                if (!A[r][size].is_zero()) inconsistent = true;
            if (!inconsistent && rank == size) {
                // back-substitute the reduced echelon form
                std::vector<Rational> d(n, Rational(0));
                bool ok = true;
                for (int r = 0; r < rank; ++r) {
                    int lead = -1;
                    for (int c = 0; c < size; ++c)
                        if (!A[r][c].is_zero()) { lead = c; break; }
                    if (lead < 0) continue;
                    Rational val(A[r][size].num * A[r][lead].den,
                                 A[r][size].den * A[r][lead].num);
                    if (val.num < 0) { ok = false; break; }
                    d[idx[lead]] = val;
                }
                if (ok) return d;
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int k = i + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
        }
    }
    return std::nullopt;
}

} // namespace

SearchResult search_schedule(const CouplingModel& model,
                             const std::vector<CancelTarget>& targets,
                             int max_segments, int max_partitions) {
    SearchResult res;
    auto problem = build_problem(model, targets);
    if (!problem) {
        res.note = "target conflicts with a protocol class pair";
        return res;
    }
    const auto& classes = problem->classes;
    const int C = static_cast<int>(classes.size());
    if (C > max_partitions) {
        res.note = "lattice has more flip classes than allowed_partitions";
        return res;
    }
    // Constraint lookup per class pair.
    std::map<std::pair<int, int>, int> req;
    for (auto [a, b, v] : problem->constraints) req[{a, b}] = v;
    for (int c = 0; c < C; ++c) {
        auto it = req.find({c, c});
        if (it != req.end() && it->second == 0) {
            res.note = "self class pair cannot be cancelled";
            return res;
        }
    }

    for (int n = 1; n <= max_segments; ++n) {
        const std::uint32_t mask = (n >= 32) ? 0xffffffffu : ((1u << n) - 1u);
        const bool rational_branch = n * (C - 1) <= 16;
        if (rational_branch) {
            // Enumerate sign words (class 0 gauge-fixed to all-plus), then
            // solve the duration system exactly.
            std::vector<std::uint32_t> words(C, 0);
            const std::uint64_t total = 1ull << (std::uint64_t(n) * (C - 1));
            for (std::uint64_t enc = 0; enc < total; ++enc) {
                ++res.candidates_examined;
                std::uint64_t e = enc;
                for (int c = 1; c < C; ++c) {
                    words[c] = static_cast<std::uint32_t>(e & mask);
                    e >>= n;
                }
                std::vector<std::vector<int>> signs;
                std::vector<Rational> rhs;
                for (const auto& [key, v] : req) {
                    std::vector<int> row(n);
                    for (int s = 0; s < n; ++s) {
                        bool f1 = (words[key.first] >> s) & 1u;
                        bool f2 = (words[key.second] >> s) & 1u;
                        row[s] = (f1 == f2) ? 1 : -1;
                    }
                    signs.push_back(row);
                    rhs.push_back(Rational(v));
                }
                if (auto d = solve_durations(signs, rhs, n)) {
                    res.found = true;
                    res.schedule = schedule_from_words(classes, words, n, *d);
                    return res;
                }
            }
            continue;
        }
        // Equal-duration search: per-class inversion windows W_c over n
        // segments, net(c,c') = (n - 2|W_c xor W_c'|) * u.  Protocol pairs
        // pin q = 1/u = n - 2|xor| > 0 shared across all of them; target
        // pairs need |xor| = n/2.
        for (int q = (n % 2 == 0 ? 2 : 1); q <= n; q += 2) {
            std::vector<std::uint32_t> words(C, 0);
            std::uint64_t examined = 0;
            auto consistent = [&](int c) {
                auto self = req.find({c, c});
                if (self != req.end() && self->second == 1 && q != n) return false;
                for (int d = 0; d < c; ++d) {
                    auto it = req.find(std::minmax({d, c}));
                    if (it == req.end()) continue;
                    int diff = __builtin_popcount((words[c] ^ words[d]) & mask);
                    int net_q = n - 2 * diff;
                    if (it->second == 1 && net_q != q) return false;
                    if (it->second == 0 && net_q != 0) return false;
                }
                return true;
            };
            if (C == 1) {
                if (q == n) {
                    res.found = true;
                    res.schedule = schedule_from_words(
                        classes, words, n, std::vector<Rational>(n, Rational(1, q)));
                    return res;
                }
                continue;
            }
            std::function<bool(int)> dfs = [&](int c) -> bool {
                if (c == C) return true;
                for (std::uint64_t w = 0; w <= mask; ++w) {
                    words[c] = static_cast<std::uint32_t>(w);
                    ++examined;
                    if (!consistent(c)) continue;
                    if (dfs(c + 1)) return true;
                }
                return false;
            };
            if (dfs(1)) {
                res.found = true;
                res.candidates_examined += examined;
                res.schedule = schedule_from_words(
                    classes, words, n, std::vector<Rational>(n, Rational(1, q)));
                return res;
            }
            res.candidates_examined += examined;
        }
    }
    res.note = "exhausted sign words up to " + std::to_string(max_segments) +
               " segments";
    return res;
}

} // namespace laceprep
