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

#include <string>
#include <vector>

#include "laceprep/lattice.hpp"

namespace laceprep {

enum class Species { single, dual };

// One Ising pair.  v sums 1/r^6 over all periodic images within r_max, in
// units where the protocol edge has v = 1.
struct Coupling {
    SiteId i = 0, j = 0;
    double v = 0.0;
    double r_min = 0.0;   // closest image distance
    bool protocol = false;
};

struct CouplingModel {
    Species species = Species::single;
    double r_max = 6.0;
    int num_sites = 0;
    std::vector<Coupling> pairs;
    std::vector<std::string> site_class;   // flip class per site
    std::vector<char> site_species;        // 'A' measured / 'B' retained
    std::vector<Vec3> site_pos;
    std::vector<std::pair<SiteId, SiteId>> protocol_edges;

    const Coupling* find(SiteId a, SiteId b) const;
};

CouplingModel coupling_model(const Lattice& lat, Species species, double r_max = 6.0);

// 1D model from an explicit coupling list v[k] = strength at distance k+1
// (v[0] is the protocol edge), open or periodic ring of n sites.
CouplingModel chain_model(const std::vector<double>& v_by_distance, int n, bool periodic);

} // namespace laceprep
