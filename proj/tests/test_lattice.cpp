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

#include <algorithm>
#include <cmath>
#include <map>

#include "laceprep/lattice.hpp"

using namespace laceprep;

namespace {

const std::vector<Boundary> kPer2 = {Boundary::periodic, Boundary::periodic};
const std::vector<Boundary> kPer3 = {Boundary::periodic, Boundary::periodic,
                                     Boundary::periodic};

int find_mult(const std::vector<Shell>& shells, const std::string& from,
              const std::string& to, double r) {
    for (const auto& s : shells)
        if (s.from_class == from && s.to_class == to && std::abs(s.r - r) < 1e-6)
            return s.multiplicity;
    return 0;
}

int degree(const Lattice& lat, SiteId i) {
    int d = 0;
    for (const auto& [a, b] : lat.protocol_edges)
        if (a == i || b == i) ++d;
    return d;
}

} // namespace

TEST_SUITE_BEGIN("lattice");

TEST_CASE("chain ring basics") {
    auto lat = build_lattice(LatticeKind::chain, {4}, {Boundary::periodic});
    CHECK(lat.num_sites() == 4);
    CHECK(lat.protocol_edges.size() == 4);
    for (int i = 0; i < 4; ++i)
        CHECK(lat.sites[i].sublattice == (i % 2 == 0 ? "A" : "B"));
    CHECK_THROWS_AS(build_lattice(LatticeKind::chain, {5}, {Boundary::periodic}),
                    ExtentTooSmall);
    auto shells = coupling_shells(build_lattice(LatticeKind::chain, {20},
                                                {Boundary::periodic}),
                                  6.0);
    // single-species union view: both classes together give mult 2 at every
    // integer distance
    for (int k = 1; k <= 6; ++k) {
        int m = find_mult(shells, "A", k % 2 ? "B" : "A", double(k));
        CHECK(m == 2);
    }
}

TEST_CASE("honeycomb shell table matches the quoted corrections") {
    auto lat = build_lattice(LatticeKind::honeycomb_tc, {6, 6}, kPer2);
    const int L = 6;
    CHECK(int(lat.num_sites()) == 5 * L * L);
    int nA = 0, nB = 0;
    for (const auto& s : lat.sites) (s.sublattice == "A" ? nA : nB)++;
    CHECK(nA == 2 * L * L);
    CHECK(nB == 3 * L * L);
    CHECK(int(lat.protocol_edges.size()) == 6 * L * L);
    for (const auto& s : lat.sites)
        if (s.sublattice == "A") CHECK(degree(lat, s.id) == 3);

    auto shells = coupling_shells(lat, 6.0);
    CHECK(find_mult(shells, "A", "B", 1.0) == 3);
    CHECK(find_mult(shells, "A", "B", std::sqrt(7.0)) == 6);
    CHECK(find_mult(shells, "A", "B", std::sqrt(13.0)) == 6);
    // retained side (enters multi-leg plaquette exponents)
    CHECK(find_mult(shells, "B", "A", 1.0) == 2);
    CHECK(find_mult(shells, "B", "A", std::sqrt(7.0)) == 4);
    CHECK(find_mult(shells, "B", "A", std::sqrt(13.0)) == 4);
}

TEST_CASE("lieb and checkerboard shells") {
    auto lieb = build_lattice(LatticeKind::lieb, {6, 6}, kPer2);
    auto s1 = coupling_shells(lieb, 6.0);
    CHECK(find_mult(s1, "A", "B", 1.0) == 4);
    CHECK(find_mult(s1, "A", "B", std::sqrt(5.0)) == 8);
    CHECK(find_mult(s1, "A", "B", 3.0) == 4);

    auto cb = build_lattice(LatticeKind::checkerboard_square, {6, 6}, kPer2);
    auto s2 = coupling_shells(cb, 6.0);
    CHECK(find_mult(s2, "A", "B", 1.0) == 4);
    CHECK(find_mult(s2, "A", "B", std::sqrt(5.0)) == 8);
    CHECK(find_mult(s2, "A", "B", 3.0) == 4);
    CHECK(find_mult(s2, "A", "A", std::sqrt(2.0)) == 4);
    CHECK(find_mult(s2, "A", "A", 2.0) == 4);
}

TEST_CASE("dice lattice (color code geometry)") {
    auto lat = build_lattice(LatticeKind::dice, {6, 6}, kPer2);
    for (const auto& s : lat.sites)
        if (s.sublattice == "A") CHECK(degree(lat, s.id) == 6);
    auto shells = coupling_shells(lat, 6.0);
    CHECK(find_mult(shells, "A", "B", 1.0) == 6);
    CHECK(find_mult(shells, "A", "B", 2.0) == 6);
    CHECK(find_mult(shells, "B", "A", 1.0) == 3);
    CHECK(find_mult(shells, "B", "A", 2.0) == 3);
    CHECK(find_mult(shells, "B", "A", std::sqrt(7.0)) == 6);
}

TEST_CASE("fcc xcube shells match the quoted exponents") {
    auto lat = build_lattice(LatticeKind::fcc_xcube, {4, 4, 4}, kPer3);
    const int L = 4;
    int nA = 0, nB = 0;
    for (const auto& s : lat.sites) (s.sublattice == "A" ? nA : nB)++;
    CHECK(nA == L * L * L);
    CHECK(nB == 3 * L * L * L);
    for (const auto& s : lat.sites)
        if (s.sublattice == "A") CHECK(degree(lat, s.id) == 12);
    auto shells = coupling_shells(lat, 4.0);
    CHECK(find_mult(shells, "A", "B", 1.0) == 12);
    CHECK(find_mult(shells, "A", "B", std::sqrt(3.0)) == 24);
    CHECK(find_mult(shells, "A", "B", std::sqrt(5.0)) == 24);
    CHECK(find_mult(shells, "B", "A", std::sqrt(3.0)) == 8);
    CHECK(find_mult(shells, "B", "A", std::sqrt(5.0)) == 8);
}

TEST_CASE("hex prism fracton shells: 15 at r=2 (12 out of plane), 6 at sqrt5") {
    auto lat = build_lattice(LatticeKind::hex_prism_fracton, {6, 6, 3}, kPer3);
    // measured sites have 5 protocol neighbors: 3 in-plane + 2 vertical
    for (const auto& s : lat.sites)
        if (lat.is_measured(s.id)) CHECK(degree(lat, s.id) == 5);
    auto shells = coupling_shells(lat, 3.0);
    CHECK(find_mult(shells, "A", "B", 1.0) == 5);
    CHECK(find_mult(shells, "A", "B", 2.0) == 15);
    CHECK(find_mult(shells, "A", "B", std::sqrt(5.0)) == 6);
    // vertical-gauge and triangle-gauge sites have different tables, so the
    // retained side is reported per label
    CHECK(find_mult(shells, "V1", "A", 2.0) == 12);
    CHECK(find_mult(shells, "T", "A", 2.0) == 3);
    CHECK(find_mult(shells, "T", "A", std::sqrt(5.0)) == 6);
}

TEST_CASE("diamond shells: enumeration for the quoted radii") {
    auto lat = build_lattice(LatticeKind::diamond_tc, {3, 3, 3}, kPer3);
    for (const auto& s : lat.sites)
        if (s.sublattice == "A") CHECK(degree(lat, s.id) == 4);
    auto shells = coupling_shells(lat, 5.0);
    CHECK(find_mult(shells, "A", "B", 1.0) == 4);
    CHECK(find_mult(shells, "A", "B", std::sqrt(19.0 / 3.0)) == 12);
    CHECK(find_mult(shells, "A", "B", std::sqrt(35.0 / 3.0)) == 24);
    CHECK(find_mult(shells, "A", "B", std::sqrt(51.0 / 3.0)) == 24);
    // per-leg counts for the 6-bond ring operator
    CHECK(find_mult(shells, "B", "A", std::sqrt(19.0 / 3.0)) == 6);
    CHECK(find_mult(shells, "B", "A", std::sqrt(35.0 / 3.0)) == 12);
    CHECK(find_mult(shells, "B", "A", std::sqrt(51.0 / 3.0)) == 12);
}

TEST_CASE("translation invariance of shell tables") {
    auto lat = build_lattice(LatticeKind::honeycomb_tc, {5, 5}, kPer2);
    std::vector<SiteId> a_sites = lat.sites_with_label("A");
    auto ref = shells_from_site(lat, a_sites[0], 5.0);
    for (std::size_t k = 1; k < a_sites.size(); k += 7) {
        auto other = shells_from_site(lat, a_sites[k], 5.0);
        REQUIRE(other.size() == ref.size());
        for (std::size_t i = 0; i < ref.size(); ++i) {
            CHECK(other[i].r == doctest::Approx(ref[i].r).epsilon(1e-9));
            CHECK(other[i].multiplicity == ref[i].multiplicity);
        }
    }
}

TEST_CASE("shell completeness: sum of multiplicities counts all pairs") {
    auto lat = build_lattice(LatticeKind::lieb, {5, 5}, kPer2);
    const double rmax = 4.0;
    auto shells = coupling_shells(lat, rmax);
    // total pair slots from per-site tables
    std::map<std::string, int> label_count;
    for (const auto& s : lat.sites) label_count[std::string(1, lat.species_of(s.id))]++;
    double slot_sum = 0;
    for (const auto& sh : shells) slot_sum += double(sh.multiplicity) * label_count[sh.from_class];
    // direct pair count (ordered, image-resolved)
    double pairs = 0;
    for (SiteId i = 0; i < SiteId(lat.num_sites()); ++i)
        for (SiteId j = 0; j < SiteId(lat.num_sites()); ++j) {
            if (i == j) continue;
            pairs += double(lat.images_within(i, j, rmax).size());
        }
    CHECK(slot_sum == doctest::Approx(pairs));
}

TEST_CASE("disclination patch: coordination-3 core, open boundary only") {
    CHECK_THROWS_AS(build_lattice(LatticeKind::lieb_disclination, {4}, {Boundary::periodic}),
                    UnsupportedBoundary);
    auto lat = build_lattice(LatticeKind::lieb_disclination, {5},
                             {Boundary::open, Boundary::open});
    // the origin vertex has three bonds instead of four
    SiteId origin = -1;
    for (const auto& s : lat.sites)
        if (s.sublattice == "A" && s.pos.norm2() < 1e-12) origin = s.id;
    REQUIRE(origin >= 0);
    CHECK(degree(lat, origin) == 3);
    // bulk vertices keep coordination 4
    SiteId bulk = -1;
    for (const auto& s : lat.sites)
        if (s.sublattice == "A" && std::abs(s.pos.x + 4) < 1e-9 &&
            std::abs(s.pos.y - 4) < 1e-9)
            bulk = s.id;
    REQUIRE(bulk >= 0);
    CHECK(degree(lat, bulk) == 4);
    CHECK_THROWS_AS(coupling_shells(lat, 3.0), AmbiguousReference);
    CHECK(shells_from_site(lat, bulk, 2.5).size() > 0);
}

TEST_SUITE_END();
