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

#include "laceprep/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace laceprep {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

struct BasisSite {
    std::string label;
    Vec3 pos;
};

// Solve M f = d for the 3x3 matrix with columns c0,c1,c2.
Vec3 solve3(const Vec3& c0, const Vec3& c1, const Vec3& c2, const Vec3& d) {
    double det = c0.x * (c1.y * c2.z - c1.z * c2.y) -
                 c1.x * (c0.y * c2.z - c0.z * c2.y) +
                 c2.x * (c0.y * c1.z - c0.z * c1.y);
    auto det3 = [](const Vec3& a, const Vec3& b, const Vec3& c) {
        return a.x * (b.y * c.z - b.z * c.y) - b.x * (a.y * c.z - a.z * c.y) +
               c.x * (a.y * b.z - a.z * b.y);
    };
    return {det3(d, c1, c2) / det, det3(c0, d, c2) / det, det3(c0, c1, d) / det};
}

} // namespace

LatticeKind lattice_kind_from_string(const std::string& s) {
    if (s == "chain") return LatticeKind::chain;
    if (s == "honeycomb_tc") return LatticeKind::honeycomb_tc;
    if (s == "lieb") return LatticeKind::lieb;
    if (s == "dice") return LatticeKind::dice;
    if (s == "checkerboard_square") return LatticeKind::checkerboard_square;
    if (s == "diamond_tc") return LatticeKind::diamond_tc;
    if (s == "hex_prism_fracton") return LatticeKind::hex_prism_fracton;
    if (s == "fcc_xcube") return LatticeKind::fcc_xcube;
    if (s == "lieb_disclination") return LatticeKind::lieb_disclination;
    throw std::invalid_argument("unknown lattice kind: " + s);
}

std::string to_string(LatticeKind k) {
    switch (k) {
        case LatticeKind::chain: return "chain";
        case LatticeKind::honeycomb_tc: return "honeycomb_tc";
        case LatticeKind::lieb: return "lieb";
        case LatticeKind::dice: return "dice";
        case LatticeKind::checkerboard_square: return "checkerboard_square";
        case LatticeKind::diamond_tc: return "diamond_tc";
        case LatticeKind::hex_prism_fracton: return "hex_prism_fracton";
        case LatticeKind::fcc_xcube: return "fcc_xcube";
        case LatticeKind::lieb_disclination: return "lieb_disclination";
    }
    return "?";
}

Vec3 Lattice::min_image(SiteId i, SiteId j) const {
    Vec3 d = sites[j].pos - sites[i].pos;
    if (std::none_of(boundary.begin(), boundary.end(),
                     [](Boundary b) { return b == Boundary::periodic; }))
        return d;
    const Vec3 c0 = a1 * double(extents.size() > 0 ? extents[0] : 1);
    const Vec3 c1 = dims > 1 ? a2 * double(extents[1]) : Vec3{0, 1, 0};
    const Vec3 c2 = dims > 2 ? a3 * double(extents[2]) : Vec3{0, 0, 1};
    Vec3 f = solve3(c0, c1, c2, d);
    auto wrap = [&](double v, int dim) {
        if (dim < dims && boundary[dim] == Boundary::periodic) return v - std::round(v);
        return v;
    };
    f = {wrap(f.x, 0), wrap(f.y, 1), wrap(f.z, 2)};
    Vec3 best = c0 * f.x + c1 * f.y + c2 * f.z;
    double bn = best.norm2();
    for (int n0 = -1; n0 <= 1; ++n0)
        for (int n1 = -1; n1 <= 1; ++n1)
            for (int n2 = -1; n2 <= 1; ++n2) {
                if (dims < 1 || boundary[0] != Boundary::periodic) { if (n0 != 0) continue; }
                if (dims < 2 || boundary[1] != Boundary::periodic) { if (n1 != 0) continue; }
                if (dims < 3 || boundary[2] != Boundary::periodic) { if (n2 != 0) continue; }
                Vec3 cand = best + c0 * double(n0) + c1 * double(n1) + c2 * double(n2);
                if (cand.norm2() < bn) { bn = cand.norm2(); best = cand; }
            }
    return best;
}

std::vector<Vec3> Lattice::images_within(SiteId i, SiteId j, double r_max) const {
    Vec3 base = min_image(i, j);
    std::vector<Vec3> out;
    const Vec3 c0 = a1 * double(extents.size() > 0 ? extents[0] : 1);
    const Vec3 c1 = dims > 1 ? a2 * double(extents[1]) : Vec3{0, 1, 0};
    const Vec3 c2 = dims > 2 ? a3 * double(extents[2]) : Vec3{0, 0, 1};
    int K0 = 0, K1 = 0, K2 = 0;
    if (dims > 0 && boundary[0] == Boundary::periodic)
        K0 = 1 + static_cast<int>(std::ceil(r_max / c0.norm()));
    if (dims > 1 && boundary[1] == Boundary::periodic)
        K1 = 1 + static_cast<int>(std::ceil(r_max / c1.norm()));
    if (dims > 2 && boundary[2] == Boundary::periodic)
        K2 = 1 + static_cast<int>(std::ceil(r_max / c2.norm()));
    for (int n0 = -K0; n0 <= K0; ++n0)
        for (int n1 = -K1; n1 <= K1; ++n1)
            for (int n2 = -K2; n2 <= K2; ++n2) {
                Vec3 d = base + c0 * double(n0) + c1 * double(n1) + c2 * double(n2);
                if (i == j && n0 == 0 && n1 == 0 && n2 == 0) continue; // self
                if (d.norm2() <= r_max * r_max + kShellTol2) out.push_back(d);
            }
    return out;
}

SiteId Lattice::cell_site(int m0, int m1, int m2, int b) const {
    const int L0 = extents.empty() ? 1 : extents[0];
    const int L1 = dims > 1 ? extents[1] : 1;
    const int L2 = dims > 2 ? extents[2] : 1;
    auto wrap = [&](int m, int L, int dim) {
        if (dim < dims && boundary[dim] == Boundary::periodic)
            return ((m % L) + L) % L;
        return m;
    };
    m0 = wrap(m0, L0, 0);
    m1 = wrap(m1, L1, 1);
    m2 = wrap(m2, L2, 2);
    if (m0 < 0 || m0 >= L0 || m1 < 0 || m1 >= L1 || m2 < 0 || m2 >= L2 || b < 0 ||
        b >= basis_count)
        return -1;
    return static_cast<SiteId>(((std::size_t(m0) * L1 + m1) * L2 + m2) * basis_count + b);
}

std::vector<SiteId> Lattice::neighbors(SiteId i) const {
    std::vector<SiteId> out;
    for (const auto& [u, v] : protocol_edges) {
        if (u == i) out.push_back(v);
        if (v == i) out.push_back(u);
    }
    return out;
}

std::vector<SiteId> Lattice::sites_with_label(const std::string& label) const {
    std::vector<SiteId> out;
    for (const auto& s : sites)
        if (s.sublattice == label) out.push_back(s.id);
    return out;
}

namespace {

// Wrapping shifts n1*L1*a1 + n2*L2*a2 + n3*L3*a3 for all image copies a
// base-coordinate pair may see within reach R.
std::vector<Vec3> periodic_shifts(const Lattice& lat, double R) {
    const Vec3 c0 = lat.a1 * double(lat.extents.empty() ? 1 : lat.extents[0]);
    const Vec3 c1 = lat.dims > 1 ? lat.a2 * double(lat.extents[1]) : Vec3{0, 1, 0};
    const Vec3 c2 = lat.dims > 2 ? lat.a3 * double(lat.extents[2]) : Vec3{0, 0, 1};
    int K0 = 0, K1 = 0, K2 = 0;
    if (lat.dims > 0 && lat.boundary[0] == Boundary::periodic)
        K0 = 1 + static_cast<int>(std::ceil(R / c0.norm()));
    if (lat.dims > 1 && lat.boundary[1] == Boundary::periodic)
        K1 = 1 + static_cast<int>(std::ceil(R / c1.norm()));
    if (lat.dims > 2 && lat.boundary[2] == Boundary::periodic)
        K2 = 1 + static_cast<int>(std::ceil(R / c2.norm()));
    std::vector<Vec3> shifts;
    for (int n0 = -K0; n0 <= K0; ++n0)
        for (int n1 = -K1; n1 <= K1; ++n1)
            for (int n2 = -K2; n2 <= K2; ++n2)
                shifts.push_back(c0 * double(n0) + c1 * double(n1) + c2 * double(n2));
    return shifts;
}

struct SpatialGrid {
    double cell;
    std::unordered_map<std::int64_t, std::vector<std::pair<SiteId, Vec3>>> bins;

    explicit SpatialGrid(double c) : cell(c) {}
    std::int64_t key(int kx, int ky, int kz) const {
        // exact packing so no two cells share a key
        const std::int64_t off = 1 << 20;
        return ((std::int64_t(kx) + off) << 42) | ((std::int64_t(ky) + off) << 21) |
               (std::int64_t(kz) + off);
    }
    std::int64_t key_of(const Vec3& p) const {
        return key(int(std::floor(p.x / cell)), int(std::floor(p.y / cell)),
                   int(std::floor(p.z / cell)));
    }
    void insert(SiteId id, const Vec3& p) { bins[key_of(p)].push_back({id, p}); }
    template <class F>
    void for_near(const Vec3& p, F&& f) const {
        int kx = int(std::floor(p.x / cell)), ky = int(std::floor(p.y / cell)),
            kz = int(std::floor(p.z / cell));
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    auto it = bins.find(key(kx + dx, ky + dy, kz + dz));
                    if (it == bins.end()) continue;
                    for (const auto& [id, q] : it->second) f(id, q);
                }
    }
};

void scan_protocol_edges(Lattice& lat) {
    // Nearest-neighbor measured<->retained pairs at distance 1.  A pair seen
    // through two periodic images would double the entangling angle, which
    // signals an unusably small torus.
    const double R = 1.0 + 1e-7;
    SpatialGrid grid(1.5);
    const auto shifts = periodic_shifts(lat, R);
    for (const auto& s : lat.sites)
        for (const Vec3& sh : shifts) grid.insert(s.id, s.pos + sh);

    std::map<std::pair<SiteId, SiteId>, int> seen;
    for (const auto& s : lat.sites) {
        grid.for_near(s.pos, [&](SiteId j, const Vec3& q) {
            if (lat.species_of(s.id) == lat.species_of(j)) return;
            if (std::abs((q - s.pos).norm2() - 1.0) < kShellTol2) {
                auto e = std::minmax(s.id, j);
                seen[{e.first, e.second}]++;
            }
        });
    }
    for (const auto& [edge, count] : seen) {
        // each edge is seen once from each endpoint
        if (count != 2)
            throw ExtentTooSmall("protocol edge " + std::to_string(edge.first) + "-" +
                                 std::to_string(edge.second) +
                                 " appears through multiple periodic images");
        lat.protocol_edges.push_back(edge);
    }
}

Lattice build_from_cell(LatticeKind kind, const Vec3& a1, const Vec3& a2, const Vec3& a3,
                        int dims, const std::vector<BasisSite>& basis,
                        const std::vector<int>& extents,
                        const std::vector<Boundary>& boundary,
                        const std::set<std::string>& measured) {
    if (static_cast<int>(extents.size()) != dims)
        throw std::invalid_argument("extents must have " + std::to_string(dims) +
                                    " entries for " + to_string(kind));
    for (int e : extents)
        if (e < 1) throw ExtentTooSmall("extents must be >= 1");
    Lattice lat;
    lat.kind = kind;
    lat.extents = extents;
    lat.boundary = boundary;
    lat.a1 = a1;
    lat.a2 = a2;
    lat.a3 = a3;
    lat.dims = dims;
    lat.measured = measured;
    lat.basis_count = static_cast<int>(basis.size());
    const int L0 = extents[0];
    const int L1 = dims > 1 ? extents[1] : 1;
    const int L2 = dims > 2 ? extents[2] : 1;
    for (int m0 = 0; m0 < L0; ++m0)
        for (int m1 = 0; m1 < L1; ++m1)
            for (int m2 = 0; m2 < L2; ++m2)
                for (const auto& b : basis) {
                    Site s;
                    s.id = static_cast<SiteId>(lat.sites.size());
                    s.pos = b.pos + a1 * double(m0) + a2 * double(m1) + a3 * double(m2);
                    s.sublattice = b.label;
                    if (kind == LatticeKind::hex_prism_fracton &&
                        (b.label == "A" || b.label == "V")) {
                        int c = ((m0 - m1) % 3 + 3) % 3;
                        s.sublattice = b.label + std::to_string(c + 1);
                    }
                    s.flip_class = s.sublattice;
                    lat.sites.push_back(s);
                }
    if (kind == LatticeKind::hex_prism_fracton) {
        lat.measured = {"A1", "A2", "A3"};
    }
    scan_protocol_edges(lat);
    return lat;
}

Lattice build_chain(const std::vector<int>& extents, const std::vector<Boundary>& boundary) {
    if (extents.size() != 1) throw std::invalid_argument("chain takes one extent");
    const int L = extents[0];
    if (L < 2) throw ExtentTooSmall("chain needs at least 2 sites");
    const bool periodic = boundary.at(0) == Boundary::periodic;
    if (periodic && L % 2 != 0)
        throw ExtentTooSmall("periodic chain needs an even number of sites");
    Lattice lat;
    lat.kind = LatticeKind::chain;
    lat.extents = extents;
    lat.boundary = boundary;
    lat.a1 = {1, 0, 0};
    lat.a2 = {0, 1, 0};
    lat.a3 = {0, 0, 1};
    lat.dims = 1;
    lat.measured = {"A"};
    for (int i = 0; i < L; ++i) {
        Site s;
        s.id = i;
        s.pos = {double(i), 0, 0};
        s.sublattice = (i % 2 == 0) ? "A" : "B";
        s.flip_class = "P" + std::to_string(i % 4 + 1);
        lat.sites.push_back(s);
    }
    scan_protocol_edges(lat);
    return lat;
}

Lattice build_disclination(const std::vector<int>& extents,
                           const std::vector<Boundary>& boundary) {
    for (Boundary b : boundary)
        if (b == Boundary::periodic)
            throw UnsupportedBoundary("lieb_disclination supports open boundaries only");
    if (extents.empty() || extents[0] < 2)
        throw ExtentTooSmall("lieb_disclination needs radius >= 2");
    const int R = extents[0];

    // Square lattice with one quadrant removed and its boundary rays
    // identified: vertices live in the upper half plane plus the lower-left
    // quadrant; the ray (0,-t) is represented by (t,0).  The origin has
    // coordination 3, which is the disclination.
    auto kept = [&](int x, int y) {
        if (x * x + y * y > R * R) return false;
        if (y >= 0) return true;
        return x <= -1; // lower-left interior; ray (0,-t) removed (identified)
    };
    auto redirect = [&](int x, int y) -> std::pair<int, int> {
        if (x == 0 && y < 0) return {-y, 0};
        return {x, y};
    };

    Lattice lat;
    lat.kind = LatticeKind::lieb_disclination;
    lat.extents = extents;
    lat.boundary = {Boundary::open, Boundary::open};
    lat.a1 = {2, 0, 0};
    lat.a2 = {0, 2, 0};
    lat.a3 = {0, 0, 1};
    lat.dims = 2;
    lat.measured = {"A"};

    std::map<std::pair<int, int>, SiteId> vid;
    for (int x = -R; x <= R; ++x)
        for (int y = -R; y <= R; ++y) {
            if (!kept(x, y)) continue;
            Site s;
            s.id = static_cast<SiteId>(lat.sites.size());
            s.pos = {2.0 * x, 2.0 * y, 0};
            s.sublattice = "A";
            s.flip_class = "A";
            vid[{x, y}] = s.id;
            lat.sites.push_back(s);
        }
    // Bond qubits at edge midpoints.  Seam bonds keep the chart of their
    // lower-left endpoint, so stored positions of those B sites are not at
    // unit distance from the x-axis representative of the identified vertex.
    auto add_bond = [&](int x, int y, int dx, int dy) {
        auto [nx, ny] = redirect(x + dx, y + dy);
        if (x + dx == 0 && y + dy < 0 && !kept(nx, ny)) return;
        if (!(x + dx == 0 && y + dy < 0) && !kept(x + dx, y + dy)) return;
        auto it = vid.find({nx, ny});
        if (it == vid.end()) return;
        Site b;
        b.id = static_cast<SiteId>(lat.sites.size());
        b.pos = {2.0 * x + dx, 2.0 * y + dy, 0};
        b.sublattice = "B";
        b.flip_class = "B";
        lat.sites.push_back(b);
        lat.protocol_edges.emplace_back(vid[{x, y}], b.id);
        lat.protocol_edges.emplace_back(it->second, b.id);
    };
    for (const auto& [xy, id] : vid) {
        add_bond(xy.first, xy.second, 1, 0);
        add_bond(xy.first, xy.second, 0, 1);
    }
    return lat;
}

} // namespace

Lattice build_lattice(LatticeKind kind, const std::vector<int>& extents,
                      const std::vector<Boundary>& boundary) {
    switch (kind) {
        case LatticeKind::chain:
            return build_chain(extents, boundary);
        case LatticeKind::honeycomb_tc:
            return build_from_cell(kind, {3, kSqrt3, 0}, {3, -kSqrt3, 0}, {0, 0, 1}, 2,
                                   {{"A", {0, 0, 0}},
                                    {"A", {2, 0, 0}},
                                    {"B", {1, 0, 0}},
                                    {"B", {2.5, kSqrt3 / 2, 0}},
                                    {"B", {2.5, -kSqrt3 / 2, 0}}},
                                   extents, boundary, {"A"});
        case LatticeKind::lieb:
            return build_from_cell(kind, {2, 0, 0}, {0, 2, 0}, {0, 0, 1}, 2,
                                   {{"A", {0, 0, 0}}, {"B", {1, 0, 0}}, {"B", {0, 1, 0}}},
                                   extents, boundary, {"A"});
        case LatticeKind::dice:
            return build_from_cell(kind, {1.5, kSqrt3 / 2, 0}, {1.5, -kSqrt3 / 2, 0},
                                   {0, 0, 1}, 2,
                                   {{"A", {0, 0, 0}}, {"B", {1, 0, 0}}, {"B", {2, 0, 0}}},
                                   extents, boundary, {"A"});
        case LatticeKind::checkerboard_square: {
            // Tilted cell so the retained checkerboard wraps as a standard
            // L x L torus.  Addressing classes A..D follow the coordinate
            // parities; the 4-class split is seam-consistent for even L.
            Lattice lat = build_from_cell(kind, {1, 1, 0}, {1, -1, 0}, {0, 0, 1}, 2,
                                          {{"C", {0, 0, 0}}, {"D", {1, 0, 0}}},
                                          extents, boundary, {"A", "D"});
            for (auto& s : lat.sites) {
                int x = static_cast<int>(std::llround(s.pos.x));
                int y = static_cast<int>(std::llround(s.pos.y));
                bool xe = ((x % 2) + 2) % 2 == 0;
                bool ye = ((y % 2) + 2) % 2 == 0;
                s.sublattice = xe ? (ye ? "C" : "A") : (ye ? "D" : "B");
                s.flip_class = s.sublattice;
            }
            return lat;
        }
        case LatticeKind::diamond_tc: {
            const double s = 8.0 / kSqrt3; // bond length 2, vertex-midpoint 1
            std::vector<BasisSite> basis;
            const Vec3 fcc[4] = {{0, 0, 0}, {0, .5, .5}, {.5, 0, .5}, {.5, .5, 0}};
            for (const Vec3& f : fcc) {
                basis.push_back({"A", f * s});
                basis.push_back({"A", (f + Vec3{.25, .25, .25}) * s});
                basis.push_back({"B", (f + Vec3{.125, .125, .125}) * s});
                basis.push_back({"B", (f + Vec3{.125, .375, .375}) * s});
                basis.push_back({"B", (f + Vec3{.375, .125, .375}) * s});
                basis.push_back({"B", (f + Vec3{.375, .375, .125}) * s});
            }
            return build_from_cell(kind, {s, 0, 0}, {0, s, 0}, {0, 0, s}, 3, basis,
                                   extents, boundary, {"A"});
        }
        case LatticeKind::hex_prism_fracton:
            // Triangular columns (spacing sqrt(3)): measured sites at even
            // heights, vertical gauge sites above them at odd heights, and
            // triangle gauge sites at the down-triangle centroids.  Every
            // protocol edge has length 1.
            return build_from_cell(kind, {kSqrt3, 0, 0}, {kSqrt3 / 2, 1.5, 0}, {0, 0, 2},
                                   3,
                                   {{"A", {0, 0, 0}},
                                    {"V", {0, 0, 1}},
                                    {"T", {kSqrt3 / 2, 0.5, 0}}},
                                   extents, boundary, {"A1", "A2", "A3"});
        case LatticeKind::fcc_xcube: {
            const double s = std::sqrt(2.0); // center-to-edge distance 1
            return build_from_cell(kind, {s, 0, 0}, {0, s, 0}, {0, 0, s}, 3,
                                   {{"A", {s / 2, s / 2, s / 2}},
                                    {"B", {s / 2, 0, 0}},
                                    {"B", {0, s / 2, 0}},
                                    {"B", {0, 0, s / 2}}},
                                   extents, boundary, {"A"});
        }
        case LatticeKind::lieb_disclination:
            return build_disclination(extents, boundary);
    }
    throw std::invalid_argument("unsupported lattice kind");
}

std::vector<Shell> shells_from_site(const Lattice& lat, SiteId ref, double r_max) {
    // r^2 -> (to-species -> count), merged within kShellTol2.
    std::map<long long, std::map<char, int>> buckets;
    auto key = [](double r2) { return llround(r2 * 1e6); };
    for (SiteId j = 0; j < static_cast<SiteId>(lat.num_sites()); ++j) {
        for (const Vec3& d : lat.images_within(ref, j, r_max)) {
            double r2 = d.norm2();
            if (r2 < kShellTol2) continue;
            buckets[key(r2)][lat.species_of(j)]++;
        }
    }
    std::vector<Shell> out;
    const std::string from(1, lat.species_of(ref));
    for (const auto& [k, per] : buckets)
        for (const auto& [sp, count] : per)
            out.push_back({std::sqrt(double(k) / 1e6), from, std::string(1, sp), count});
    std::sort(out.begin(), out.end(), [](const Shell& a, const Shell& b) {
        return a.r < b.r || (a.r == b.r && a.to_class < b.to_class);
    });
    return out;
}

std::vector<Shell> coupling_shells(const Lattice& lat, double r_max, SiteId reference) {
    const bool open = std::any_of(lat.boundary.begin(), lat.boundary.end(),
                                  [](Boundary b) { return b == Boundary::open; });
    if (open) {
        if (reference < 0)
            throw AmbiguousReference("open boundary: pass a bulk reference site");
        return shells_from_site(lat, reference, r_max);
    }
    // One reference per sublattice orbit; orbits whose tables agree and share
    // a species are reported once under the species letter.
    std::map<std::string, SiteId> refs;
    for (const auto& s : lat.sites)
        refs.emplace(s.sublattice, s.id);
    std::map<std::string, std::vector<Shell>> per_label;
    for (const auto& [label, id] : refs) per_label[label] = shells_from_site(lat, id, r_max);

    // Group labels by species and check whether their tables coincide.
    std::map<char, std::vector<std::string>> by_species;
    for (const auto& [label, id] : refs) by_species[lat.species_of(id)].push_back(label);
    std::vector<Shell> out;
    auto same_table = [](const std::vector<Shell>& a, const std::vector<Shell>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::abs(a[i].r - b[i].r) > 1e-9 || a[i].to_class != b[i].to_class ||
                a[i].multiplicity != b[i].multiplicity)
                return false;
        return true;
    };
    for (const auto& [sp, labels] : by_species) {
        bool uniform = true;
        for (std::size_t i = 1; i < labels.size(); ++i)
            uniform = uniform && same_table(per_label[labels[0]], per_label[labels[i]]);
        if (uniform) {
            for (Shell sh : per_label[labels[0]]) {
                sh.from_class = std::string(1, sp);
                out.push_back(sh);
            }
        } else {
            for (const auto& label : labels)
                for (Shell sh : per_label[label]) {
                    sh.from_class = label;
                    out.push_back(sh);
                }
        }
    }
    std::sort(out.begin(), out.end(), [](const Shell& a, const Shell& b) {
        if (a.from_class != b.from_class) return a.from_class < b.from_class;
        if (a.r != b.r) return a.r < b.r;
        return a.to_class < b.to_class;
    });
    return out;
}

} // namespace laceprep
