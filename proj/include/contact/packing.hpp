#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "contact/geometry.hpp"

namespace contact {

struct overlap_error : std::runtime_error {
    int i, j;
    overlap_error(int i_, int j_, double d)
        : std::runtime_error("packing is invalid: centers " + std::to_string(i_) + " and " +
                             std::to_string(j_) + " are at distance " + std::to_string(d) + " < 2"),
          i(i_), j(j_) {}
};

enum class Rep { fcc, real };

// A finite set of unit-ball centers, either on the fcc lattice (exact
// integer coordinates) or free real coordinates.
struct Packing {
    Rep rep = Rep::real;
    std::vector<FccPoint> fcc;
    std::vector<Vec3> real;

    std::size_t size() const { return rep == Rep::fcc ? fcc.size() : real.size(); }

    Vec3 center(std::size_t i) const {
        return rep == Rep::fcc ? fcc_to_real(fcc[i]) : real[i];
    }

    static Packing from_fcc(std::vector<FccPoint> pts) {
        Packing p;
        p.rep = Rep::fcc;
        p.fcc = std::move(pts);
        for (const auto& q : p.fcc)
            if (!q.parity_ok())
                throw std::domain_error("Packing: fcc coordinate sum must be even");
        return p;
    }

    static Packing from_real(std::vector<Vec3> pts) {
        Packing p;
        p.rep = Rep::real;
        p.real = std::move(pts);
        for (const auto& q : p.real)
            if (!q.finite())
                throw std::domain_error("Packing: non-finite center");
        return p;
    }
};

struct ValidityReport {
    bool valid = true;
    std::size_t n = 0;
    std::vector<std::pair<int, int>> duplicates;
    std::vector<std::tuple<int, int, double>> overlaps;  // (i, j, distance)
};

struct ContactGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;  // i < j, sorted
    std::vector<int> degree;

    int contact_number() const { return static_cast<int>(edges.size()); }
};

// m: balls with exactly 12 touching neighbours, k: balls with at most 9,
// rest: balls with 10 or 11.
struct DegreePartition {
    int m = 0;
    int k = 0;
    int rest = 0;
};

namespace detail {

// the 12 fcc neighbour offsets: sum-even permutations of (+-1, +-1, 0)
inline const std::array<FccPoint, 12>& fcc_neighbor_offsets() {
    static const std::array<FccPoint, 12> offs = {{
        {-1, -1, 0}, {-1, 0, -1}, {-1, 0, 1}, {-1, 1, 0},
        {0, -1, -1}, {0, -1, 1},  {0, 1, -1}, {0, 1, 1},
        {1, -1, 0},  {1, 0, -1},  {1, 0, 1},  {1, 1, 0},
    }};
    return offs;
}

struct CellKey {
    int x, y, z;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& c) const {
        return std::hash<long long>()((static_cast<long long>(c.x) * 73856093LL) ^
                                      (static_cast<long long>(c.y) * 19349663LL) ^
                                      (static_cast<long long>(c.z) * 83492791LL));
    }
};

// Uniform grid with cell side 2 over real centers: touching pairs always
// fall in the same or adjacent cells, so collection is O(n) expected.
inline std::unordered_map<CellKey, std::vector<int>, CellKeyHash> real_grid(const std::vector<Vec3>& pts) {
    std::unordered_map<CellKey, std::vector<int>, CellKeyHash> grid;
    grid.reserve(pts.size());
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        const CellKey key{static_cast<int>(std::floor(pts[i].x / 2.0)),
                          static_cast<int>(std::floor(pts[i].y / 2.0)),
                          static_cast<int>(std::floor(pts[i].z / 2.0))};
        grid[key].push_back(i);
    }
    return grid;
}

template <typename PairFn>
inline void for_near_pairs_real(const std::vector<Vec3>& pts, PairFn&& fn) {
    const auto grid = real_grid(pts);
    for (const auto& [key, cell] : grid) {
        for (int dx = -1; dx <= 1; ++dx)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dz = -1; dz <= 1; ++dz) {
                    const auto it = grid.find(CellKey{key.x + dx, key.y + dy, key.z + dz});
                    if (it == grid.end()) continue;
                    for (int i : cell)
                        for (int j : it->second)
                            if (i < j) fn(i, j);
                }
    }
}

}  // namespace detail

// Reports duplicates and overlapping pairs; never throws.
inline ValidityReport validate(const Packing& p) {
    ValidityReport rep;
    rep.n = p.size();
    if (p.rep == Rep::fcc) {
        std::unordered_map<FccPoint, int, FccPointHash> seen;
        for (int i = 0; i < static_cast<int>(p.fcc.size()); ++i) {
            auto [it, inserted] = seen.emplace(p.fcc[i], i);
            if (!inserted) rep.duplicates.emplace_back(it->second, i);
        }
        // integer squared distance 1 is impossible by parity, so any
        // non-duplicate pair is automatically at real distance >= 2
    } else {
        detail::for_near_pairs_real(p.real, [&](int i, int j) {
            const double d = dist(p.real[i], p.real[j]);
            if (d <= kTolerance)
                rep.duplicates.emplace_back(i, j);
            else if (d < 2.0 - kTolerance)
                rep.overlaps.emplace_back(i, j, d);
        });
    }
    std::sort(rep.duplicates.begin(), rep.duplicates.end());
    std::sort(rep.overlaps.begin(), rep.overlaps.end());
    rep.valid = rep.duplicates.empty() && rep.overlaps.empty();
    return rep;
}

// Exact contact graph. fcc packings use the integer predicate
// (da)^2+(db)^2+(dc)^2 == 2; real packings use |dist - 2| <= tol with a
// grid of cells of side 2. Throws overlap_error on an invalid packing.
inline ContactGraph contact_graph(const Packing& p, double tol = kTolerance) {
    const auto rep = validate(p);
    if (!rep.valid) {
        if (!rep.overlaps.empty()) {
            const auto& [i, j, d] = rep.overlaps.front();
            throw overlap_error(i, j, d);
        }
        const auto& [i, j] = rep.duplicates.front();
        throw overlap_error(i, j, 0.0);
    }

    ContactGraph g;
    g.n = static_cast<int>(p.size());
    g.degree.assign(g.n, 0);

    if (p.rep == Rep::fcc) {
        std::unordered_map<FccPoint, int, FccPointHash> index;
        index.reserve(p.fcc.size());
        for (int i = 0; i < g.n; ++i) index.emplace(p.fcc[i], i);
        for (int i = 0; i < g.n; ++i) {
            for (const auto& off : detail::fcc_neighbor_offsets()) {
                const FccPoint q{p.fcc[i].a + off.a, p.fcc[i].b + off.b, p.fcc[i].c + off.c};
                const auto it = index.find(q);
                if (it != index.end() && it->second > i) g.edges.emplace_back(i, it->second);
            }
        }
    } else {
        detail::for_near_pairs_real(p.real, [&](int i, int j) {
            if (std::abs(dist(p.real[i], p.real[j]) - 2.0) <= tol) g.edges.emplace_back(i, j);
        });
    }

    std::sort(g.edges.begin(), g.edges.end());
    for (const auto& [i, j] : g.edges) {
        ++g.degree[i];
        ++g.degree[j];
    }
    for (int i = 0; i < g.n; ++i)
        if (g.degree[i] > 12)
            throw std::runtime_error("contact_graph(): center " + std::to_string(i) +
                                     " has " + std::to_string(g.degree[i]) +
                                     " touching neighbours; 12 is the kissing number, so the "
                                     "packing must be invalid");
    return g;
}

inline DegreePartition degree_partition(const ContactGraph& g) {
    DegreePartition part;
    for (int d : g.degree) {
        if (d == 12)
            ++part.m;
        else if (d <= 9)
            ++part.k;
        else
            ++part.rest;
    }
    return part;
}

// Unit directions u_ij = (c_j - c_i)/2 from center i to each touching neighbour.
inline std::vector<Vec3> contact_directions(const ContactGraph& g, const Packing& p, int i) {
    if (i < 0 || i >= g.n) throw std::out_of_range("contact_directions(): vertex out of range");
    std::vector<Vec3> dirs;
    const Vec3 ci = p.center(i);
    for (const auto& [a, b] : g.edges) {
        if (a != i && b != i) continue;
        const int j = (a == i) ? b : a;
        dirs.push_back((p.center(j) - ci) / 2.0);
    }
    return dirs;
}

// Octahedral fcc cluster with k lattice points along each edge:
// n(k) = k(2k^2+1)/3 centers whose hull is a regular octahedron of edge
// 2(k-1). The cluster is the L1 ball of radius k-1 about (0,0,0) for odd k
// and about (1,0,0) for even k, intersected with the sum-even lattice; the
// center parity makes the six octahedron vertices lattice points for every k.
inline Packing gen_fcc_octahedron(int k) {
    if (k < 2) throw std::domain_error("gen_fcc_octahedron(): k must be at least 2");
    const int cx = (k % 2 == 0) ? 1 : 0;
    const int r = k - 1;
    std::vector<FccPoint> pts;
    pts.reserve(static_cast<std::size_t>(k) * (2 * k * k + 1) / 3);
    for (int a = cx - r; a <= cx + r; ++a)
        for (int b = -r; b <= r; ++b)
            for (int c = -r; c <= r; ++c)
                if (((a + b + c) & 1) == 0 && std::abs(a - cx) + std::abs(b) + std::abs(c) <= r)
                    pts.push_back({a, b, c});
    return Packing::from_fcc(std::move(pts));
}

inline long long fcc_octahedron_count(long long k) { return k * (2 * k * k + 1) / 3; }

namespace detail {

// reflection through the plane x + y + z = sqrt(2) (the shared-face plane)
inline Vec3 reflect_face_plane(const Vec3& p) {
    const double t = (p.x + p.y + p.z - std::numbers::sqrt2) / 3.0;
    return {p.x - 2.0 * t, p.y - 2.0 * t, p.z - 2.0 * t};
}

// Intersection of three spheres of radius `rad` about p1, p2, p3: the two
// candidate points, or nothing when the configuration is degenerate.
inline std::vector<Vec3> three_sphere_intersection(const Vec3& p1, const Vec3& p2,
                                                   const Vec3& p3, double rad) {
    const Vec3 ex = normalized(p2 - p1);
    const double i = dot(ex, p3 - p1);
    const Vec3 ey = normalized((p3 - p1) - ex * i);
    const Vec3 ez = cross(ex, ey);
    const double d = norm(p2 - p1);
    const double j = dot(ey, p3 - p1);
    if (std::abs(j) < kTolerance) return {};  // colinear sphere centers

    const double x = d / 2.0;  // equal radii
    const double y = (i * i + j * j - 2.0 * i * x) / (2.0 * j);
    const double z2 = rad * rad - x * x - y * y;
    if (z2 < -kTolerance) return {};
    const double z = std::sqrt(std::max(0.0, z2));
    return {p1 + ex * x + ey * y + ez * z, p1 + ex * x + ey * y - ez * z};
}

}  // namespace detail

// Nine unit balls on the vertices of two regular octahedra of edge 2 glued
// along a shared triangular face: 21 touching pairs.
inline Packing gen_double_octahedron() {
    const double s = std::numbers::sqrt2;
    std::vector<Vec3> pts = {
        {s, 0, 0}, {0, s, 0}, {0, 0, s},     // shared face
        {-s, 0, 0}, {0, -s, 0}, {0, 0, -s},  // far vertices of the first octahedron
    };
    for (int i = 3; i < 6; ++i) pts.push_back(detail::reflect_face_plane(pts[i]));
    return Packing::from_real(std::move(pts));
}

// Adds, for each of the first `extra` sides of the shared face, the unique
// exterior point at distance 2 from the four vertices flanking that side.
// The point is located by intersecting three spheres of radius 2 and
// keeping the root that yields a valid packing; its distance to the fourth
// flanking vertex is then checked.
inline Packing gen_augmented_double_octahedron(int extra) {
    if (extra < 1 || extra > 3)
        throw std::domain_error("gen_augmented_double_octahedron(): extra must be 1, 2 or 3");

    Packing p = gen_double_octahedron();
    // sides of the shared face {T0, T1, T2}, ordered lexicographically by
    // the coordinates of their endpoints; pts[i+3] is the far vertex
    // opposite T_i and pts[i+6] its mirror image
    struct Side { int u, v, far, mirrored; };
    const std::array<Side, 3> sides = {{{1, 2, 3, 6}, {0, 2, 4, 7}, {0, 1, 5, 8}}};

    for (int s = 0; s < extra; ++s) {
        const auto& [u, v, far, mir] = sides[s];
        const auto roots = detail::three_sphere_intersection(p.real[u], p.real[v],
                                                             p.real[far], 2.0);
        const Vec3* apex = nullptr;
        for (const Vec3& r : roots) {
            bool clear = true;
            for (const Vec3& c : p.real)
                if (dist(r, c) < 2.0 - kTolerance) { clear = false; break; }
            if (clear) { apex = &r; break; }
        }
        if (apex == nullptr || std::abs(dist(*apex, p.real[mir]) - 2.0) > kTolerance)
            throw std::runtime_error("gen_augmented_double_octahedron(): failed to locate the "
                                     "exterior apex within tolerance");
        p.real.push_back(*apex);
    }
    return p;
}

// The twelve vertices of a cuboctahedron of edge 2 around the origin, plus
// the center: 36 contacts (12 at the center, 24 cuboctahedron edges).
inline Packing gen_cuboctahedron_13() {
    std::vector<FccPoint> pts = {{0, 0, 0}};
    for (const auto& off : detail::fcc_neighbor_offsets()) pts.push_back(off);
    return Packing::from_fcc(std::move(pts));
}

}  // namespace contact
