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
#include <set>
#include <string>
#include <vector>

#include "laceprep/coupling.hpp"
#include "laceprep/rational.hpp"

namespace laceprep {

struct UnknownSublattice : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Durations are in units of t_SPT.  `toggles` are the sublattice flip sets
// applied before the segment; a class is inverted during a segment when it
// has been toggled an odd number of times so far.
struct PulseSegment {
    Rational duration;
    std::set<std::string> toggles;
};

struct PulseSchedule {
    std::vector<PulseSegment> segments;

    // Plain evolution U(t_SPT).
    static PulseSchedule single();
    Rational total_duration() const;
};

// theta[k] = (pi/4) * v_k * net_k for model pair k; net in t_SPT units.
struct EffectiveCouplings {
    std::vector<double> theta;
    std::vector<Rational> net;
};

EffectiveCouplings effective_couplings(const PulseSchedule& sched,
                                       const CouplingModel& model);

// Net sign-weighted duration for a flip-class pair.
Rational net_duration(const PulseSchedule& sched, const std::string& c1,
                      const std::string& c2);

enum class SchemeName { chain_fig1d, xu_moore_abcd, fracton_tripartite };
SchemeName scheme_from_string(const std::string& s);

PulseSchedule named_scheme(SchemeName name);

struct ResidualRow {
    std::string c1, c2;
    Rational net;
    Rational expected;
    bool constrained = false;
};

struct SchemeReport {
    bool pass = false;
    std::vector<ResidualRow> residuals;
    std::string detail;
};

SchemeReport verify_scheme(SchemeName name, const CouplingModel& model);

struct CancelTarget {
    std::string c1, c2;
};

// Flip-class pairs carrying couplings at distance r (to kShellTol2), with an
// optional out-of-plane filter on |dz| of the closest image.
std::vector<CancelTarget> resolve_targets(const Lattice& lat, const CouplingModel& model,
                                          double r, bool out_of_plane_only);

struct SearchResult {
    bool found = false;
    PulseSchedule schedule;
    std::uint64_t candidates_examined = 0;
    std::string note;
};

// Exhaustive search over sublattice sign words (equal-duration segments for
// many classes, exact-rational durations for <= 4 classes) for a schedule
// cancelling every target class pair while keeping protocol pairs at net 1.
SearchResult search_schedule(const CouplingModel& model,
                             const std::vector<CancelTarget>& targets,
                             int max_segments, int max_partitions);

} // namespace laceprep
