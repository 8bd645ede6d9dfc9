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

#include "laceprep/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace laceprep {

const Coupling* CouplingModel::find(SiteId a, SiteId b) const {
    if (a > b) std::swap(a, b);
    for (const auto& c : pairs)
        if (c.i == a && c.j == b) return &c;
    return nullptr;
}

CouplingModel coupling_model(const Lattice& lat, Species species, double r_max) {
    if (r_max < 1.0) throw std::invalid_argument("r_max must be >= 1");
    CouplingModel m;
    m.species = species;
    m.r_max = r_max;
    m.num_sites = static_cast<int>(lat.num_sites());
    m.protocol_edges = lat.protocol_edges;
    m.site_class.reserve(lat.num_sites());
    for (const auto& s : lat.sites) {
        m.site_class.push_back(s.flip_class);
        m.site_species.push_back(lat.species_of(s.id));
        m.site_pos.push_back(s.pos);
    }
    std::set<std::pair<SiteId, SiteId>> protocol(lat.protocol_edges.begin(),
                                                 lat.protocol_edges.end());
    const auto n = static_cast<SiteId>(lat.num_sites());
    for (SiteId i = 0; i < n; ++i) {
        for (SiteId j = i + 1; j < n; ++j) {
            if (species == Species::dual && m.site_species[i] == m.site_species[j])
                continue;
            double v = 0.0, rmin = 0.0;
            for (const Vec3& d : lat.images_within(i, j, r_max)) {
                double r2 = d.norm2();
                v += 1.0 / (r2 * r2 * r2);
                if (rmin == 0.0 || r2 < rmin * rmin) rmin = std::sqrt(r2);
            }
            if (v == 0.0) continue;
            Coupling c;
            c.i = i;
            c.j = j;
            c.v = v;
            c.r_min = rmin;
            c.protocol = protocol.count({i, j}) > 0;
            m.pairs.push_back(c);
        }
    }
    return m;
}

CouplingModel chain_model(const std::vector<double>& v_by_distance, int n, bool periodic) {
    CouplingModel m;
    m.species = Species::single;
    m.r_max = static_cast<double>(v_by_distance.size());
    m.num_sites = n;
    for (int i = 0; i < n; ++i) {
        m.site_class.push_back("P" + std::to_string(i % 4 + 1));
        m.site_species.push_back(i % 2 == 0 ? 'A' : 'B');
        m.site_pos.push_back({double(i), 0, 0});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double v = 0.0, rmin = 0.0;
            int d = j - i;
            auto add = [&](int dist) {
                if (dist >= 1 && dist <= static_cast<int>(v_by_distance.size()) &&
                    v_by_distance[dist - 1] != 0.0) {
                    v += v_by_distance[dist - 1];
                    if (rmin == 0.0 || dist < rmin) rmin = dist;
                }
            };
            add(d);
            if (periodic) add(n - d);
            if (v == 0.0) continue;
            Coupling c;
            c.i = i;
            c.j = j;
            c.v = v;
            c.r_min = rmin;
            c.protocol = (d == 1) || (periodic && n - d == 1);
            m.pairs.push_back(c);
            if (c.protocol) m.protocol_edges.push_back({i, j});
        }
    }
    return m;
}

} // namespace laceprep
