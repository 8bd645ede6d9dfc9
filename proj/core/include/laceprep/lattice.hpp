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
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "laceprep/geometry.hpp"

namespace laceprep {

using SiteId = std::int32_t;

enum class LatticeKind {
    chain,
    honeycomb_tc,
    lieb,
    dice,
    checkerboard_square,
    diamond_tc,
    hex_prism_fracton,
    fcc_xcube,
    lieb_disclination,
};

LatticeKind lattice_kind_from_string(const std::string& s);
std::string to_string(LatticeKind k);

enum class Boundary { open, periodic };

struct UnsupportedBoundary : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExtentTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AmbiguousReference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Site {
    SiteId id = 0;
    Vec3 pos;                 // units of the protocol spacing a
    std::string sublattice;   // A, B, C, D, A1..A3, V1..V3, T
    std::string flip_class;   // local-addressing class; defaults to sublattice
};

// Equivalence class of site pairs at fixed distance and ordered
// (from, to) class; multiplicity counts partners per reference site,
// including periodic images.
struct Shell {
    double r = 0.0;
    std::string from_class;
    std::string to_class;   // species letter: A (measured) or B (retained)
    int multiplicity = 0;
};

struct Lattice {
    LatticeKind kind = LatticeKind::chain;
    std::vector<Site> sites;
    std::vector<int> extents;                 // unit cells per direction
    std::vector<Boundary> boundary;           // per direction
    std::vector<std::pair<SiteId, SiteId>> protocol_edges;
    std::set<std::string> measured;           // sublattice labels measured
    Vec3 a1, a2, a3;                          // primitive vectors (unscaled)
    int dims = 0;
    int basis_count = 1;                      // sites per unit cell

    std::size_t num_sites() const { return sites.size(); }

    // Site id by cell indices (wrapped on periodic directions) and basis
    // slot; -1 when the cell falls outside an open boundary.
    SiteId cell_site(int m0, int m1, int m2, int b) const;
    bool is_measured(SiteId i) const { return measured.count(sites[i].sublattice) > 0; }
    char species_of(SiteId i) const { return is_measured(i) ? 'A' : 'B'; }

    // Displacement from site i to the nearest periodic image of site j.
    Vec3 min_image(SiteId i, SiteId j) const;

    // All periodic images of (j - i) with |d| <= r_max.
    std::vector<Vec3> images_within(SiteId i, SiteId j, double r_max) const;

    std::vector<SiteId> neighbors(SiteId i) const;  // via protocol edges
    std::vector<SiteId> sites_with_label(const std::string& label) const;
};

Lattice build_lattice(LatticeKind kind, const std::vector<int>& extents,
                      const std::vector<Boundary>& boundary);

// Shell table up to r_max.  Periodic lattices use one bulk reference per
// sublattice orbit; open lattices need an explicit reference site.
std::vector<Shell> coupling_shells(const Lattice& lat, double r_max,
                                   SiteId reference = -1);

// Shell table restricted to partners of a single site (used by the
// translation-invariance checks).
std::vector<Shell> shells_from_site(const Lattice& lat, SiteId ref, double r_max);

} // namespace laceprep
