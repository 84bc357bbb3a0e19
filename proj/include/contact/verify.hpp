#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "contact/geometry.hpp"
#include "contact/packing.hpp"
#include "contact/rng.hpp"

namespace contact {

// ---------------------------------------------------------------------------
// deterministic sampling

struct SphereSample {
    std::vector<Vec3> points;
    std::string scheme = "fibonacci-spiral";
};

// Fibonacci spiral: near-uniform, fully deterministic point set on S^2.
inline SphereSample fibonacci_sample(int n) {
    if (n < 1) throw std::domain_error("fibonacci_sample(): need at least one point");
    SphereSample s;
    s.points.reserve(n);
    const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * i;
        s.points.push_back({rho * std::cos(phi), rho * std::sin(phi), z});
    }
    return s;
}

namespace detail {

inline double min_angular_distance(const Vec3& u, const std::vector<Vec3>& dirs) {
    double best = -1.0;
    for (const Vec3& d : dirs) best = std::max(best, dot(u, d));
    return std::acos(clamp_unit(best));
}

// index-ordered parallel for over [0, count): results must not depend on the
// worker count, so each chunk writes only to its own slot
template <typename Fn>
inline void parallel_chunks(long long count, int workers, long long chunk_size, Fn&& fn) {
    const long long n_chunks = (count + chunk_size - 1) / chunk_size;
    if (workers <= 1 || n_chunks <= 1) {
        for (long long c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
        return;
    }
    std::atomic<long long> next{0};
    auto work = [&] {
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// spherical cap machinery

// Contact directions of one ball together with a cap angular radius.
struct CapConfiguration {
    std::vector<Vec3> directions;
    double cap_angle;

    double min_pairwise_angle() const {
        double best = kPi;
        for (std::size_t i = 0; i < directions.size(); ++i)
            for (std::size_t j = i + 1; j < directions.size(); ++j)
                best = std::min(best, angular_distance(directions[i], directions[j]));
        return best;
    }
};

// Covering radius of a direction set: the largest angular distance from any
// point of the sphere to its nearest direction. Estimated on a Fibonacci
// grid and sharpened by hill-climbing around the worst sample point; the
// base estimate is monotone in the sample density and the refinement only
// increases it.
inline double covering_radius(const std::vector<Vec3>& directions, int samples = 200000,
                              bool refine = true) {
    if (directions.empty())
        throw std::domain_error("covering_radius(): need at least one direction");
    for (const Vec3& d : directions)
        if (!is_unit(d)) throw std::domain_error("covering_radius(): directions must be unit vectors");

    const SphereSample grid = fibonacci_sample(samples);
    Vec3 worst = grid.points.front();
    double best = -1.0;
    for (const Vec3& u : grid.points) {
        const double g = detail::min_angular_distance(u, directions);
        if (g > best) {
            best = g;
            worst = u;
        }
    }
    if (!refine) return best;

    // local ascent: step toward 8 tangent compass directions, halving the
    // step when no move improves
    double step = 2.0 * std::sqrt(4.0 * kPi / samples);
    for (int round = 0; round < 60 && step > 1e-13; ++round) {
        const Vec3 helper = std::abs(worst.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        const Vec3 e1 = normalized(cross(worst, helper));
        const Vec3 e2 = cross(worst, e1);
        bool moved = false;
        for (int t = 0; t < 8; ++t) {
            const double th = 2.0 * kPi * t / 8.0;
            const Vec3 cand = normalized(worst * std::cos(step) +
                                         (e1 * std::cos(th) + e2 * std::sin(th)) * std::sin(step));
            const double g = detail::min_angular_distance(cand, directions);
            if (g > best) {
                best = g;
                worst = cand;
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return best;
}

struct CoveringCheck {
    bool covered = false;
    double covering_radius = 0.0;
    double cap_angle = 0.0;  // arccos(1/r)
    double margin = 0.0;     // cap_angle - covering_radius
};

// Do caps of angular radius arccos(1/r) about the directions cover the
// sphere? Equivalently: is the covering radius at most arccos(1/r)?
inline CoveringCheck covering_check(const std::vector<Vec3>& directions, double enlargement,
                                    int samples = 200000) {
    if (!(enlargement > 1.0))
        throw std::domain_error("covering_check(): enlargement factor must exceed 1");
    CoveringCheck out;
    out.covering_radius = covering_radius(directions, samples);
    out.cap_angle = std::acos(1.0 / enlargement);
    out.margin = out.cap_angle - out.covering_radius;
    out.covered = out.covering_radius <= out.cap_angle + 1e-6;
    return out;
}

struct AreaEstimate {
    double area = 0.0;
    double stderr_est = 0.0;
    int samples = 0;
};

// Area of the union of caps of angular radius `cap_angle` about the
// directions, as the covered fraction of a Fibonacci grid times 4*pi.
// Deterministic for a given sample count; the reported standard error is
// the binomial heuristic for the same count of independent samples.
inline AreaEstimate cap_union_area(const CapConfiguration& config, int samples = 200000) {
    if (config.directions.empty())
        throw std::domain_error("cap_union_area(): need at least one direction");
    if (!(config.cap_angle > 0.0) || !(config.cap_angle < kPi))
        throw std::domain_error("cap_union_area(): cap angle must lie in (0, pi)");
    const double c = std::cos(config.cap_angle);
    const SphereSample grid = fibonacci_sample(samples);
    long long hit = 0;
    for (const Vec3& u : grid.points) {
        for (const Vec3& d : config.directions)
            if (dot(u, d) > c) {
                ++hit;
                break;
            }
    }
    AreaEstimate est;
    est.samples = samples;
    const double p = static_cast<double>(hit) / samples;
    est.area = 4.0 * kPi * p;
    est.stderr_est = 4.0 * kPi * std::sqrt(std::max(0.0, p * (1.0 - p) / samples));
    return est;
}

// Ratio (sum of pi/6 cap areas) / (area of the union of cap_angle caps).
// Requires pairwise direction separation of at least pi/3, which makes the
// pi/6 caps disjoint; that is automatic for contact directions of a packing.
inline double molnar_ratio(const CapConfiguration& config, int samples = 200000) {
    if (config.directions.size() > 1 && config.min_pairwise_angle() < kPi / 3.0 - kTolerance)
        throw std::domain_error("molnar_ratio(): directions closer than pi/3; the pi/6 caps "
                                "would overlap");
    const double numerator = static_cast<double>(config.directions.size()) * cap_area(kPi / 6.0);
    return numerator / cap_union_area(config, samples).area;
}

// ---------------------------------------------------------------------------
// Monte Carlo estimates for unions of enlarged balls

namespace detail {

// dense cell grid over the bounding box of the union, cell side = r
struct UnionGrid {
    std::vector<Vec3> centers;
    double r, r2, cell;
    Vec3 lo, hi;
    int nx, ny, nz;
    std::vector<std::vector<int>> cells;

    UnionGrid(const Packing& p, double radius) : r(radius), r2(radius * radius), cell(radius) {
        centers.reserve(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) centers.push_back(p.center(i));
        lo = hi = centers.front();
        for (const Vec3& c : centers) {
            lo.x = std::min(lo.x, c.x); lo.y = std::min(lo.y, c.y); lo.z = std::min(lo.z, c.z);
            hi.x = std::max(hi.x, c.x); hi.y = std::max(hi.y, c.y); hi.z = std::max(hi.z, c.z);
        }
        lo -= {r, r, r};
        hi += {r, r, r};
        nx = static_cast<int>(std::ceil((hi.x - lo.x) / cell)) + 1;
        ny = static_cast<int>(std::ceil((hi.y - lo.y) / cell)) + 1;
        nz = static_cast<int>(std::ceil((hi.z - lo.z) / cell)) + 1;
        cells.assign(static_cast<std::size_t>(nx) * ny * nz, {});
        for (int i = 0; i < static_cast<int>(centers.size()); ++i)
            cells[index_of(centers[i])].push_back(i);
    }

    std::size_t index_of(const Vec3& q) const {
        const int ix = std::clamp(static_cast<int>((q.x - lo.x) / cell), 0, nx - 1);
        const int iy = std::clamp(static_cast<int>((q.y - lo.y) / cell), 0, ny - 1);
        const int iz = std::clamp(static_cast<int>((q.z - lo.z) / cell), 0, nz - 1);
        return (static_cast<std::size_t>(ix) * ny + iy) * nz + iz;
    }

    bool contains(const Vec3& q) const {
        const int ix = std::clamp(static_cast<int>((q.x - lo.x) / cell), 0, nx - 1);
        const int iy = std::clamp(static_cast<int>((q.y - lo.y) / cell), 0, ny - 1);
        const int iz = std::clamp(static_cast<int>((q.z - lo.z) / cell), 0, nz - 1);
        for (int dx = std::max(0, ix - 1); dx <= std::min(nx - 1, ix + 1); ++dx)
            for (int dy = std::max(0, iy - 1); dy <= std::min(ny - 1, iy + 1); ++dy)
                for (int dz = std::max(0, iz - 1); dz <= std::min(nz - 1, iz + 1); ++dz)
                    for (int i : cells[(static_cast<std::size_t>(dx) * ny + dy) * nz + dz])
                        if (norm2(q - centers[i]) <= r2) return true;
        return false;
    }

    double box_volume() const {
        return (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
    }
};

}  // namespace detail

struct VolumeEstimate {
    double volume = 0.0;
    double stderr_volume = 0.0;
    double density_ratio = 0.0;   // n * vol(unit ball) / volume
    double stderr_ratio = 0.0;
    long long samples = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo volume of the union of balls of radius r about the centers,
// sampled uniformly over the bounding box. Samples are drawn in fixed-size
// chunks with per-chunk generators derived from (seed, chunk), and hit
// counts are integers, so the estimate is identical for any worker count.
inline VolumeEstimate union_volume_mc(const Packing& p, double r, long long samples = 10000000,
                                      std::uint64_t seed = 0, int workers = 1) {
    if (p.size() == 0) throw std::domain_error("union_volume_mc(): empty packing");
    if (!(r >= 1.0)) throw std::domain_error("union_volume_mc(): enlargement must be at least 1");
    if (samples <= 0) throw std::domain_error("union_volume_mc(): need a positive sample count");

    const detail::UnionGrid grid(p, r);
    const Vec3 span = grid.hi - grid.lo;

    constexpr long long kChunk = 1 << 20;
    const long long n_chunks = (samples + kChunk - 1) / kChunk;
    std::vector<long long> hits(n_chunks, 0);
    detail::parallel_chunks(samples, workers, kChunk, [&](long long chunk, long long b, long long e) {
        std::uint64_t mix = seed;
        detail::splitmix64(mix);
        detail::Rng rng(mix ^ (0xa0761d6478bd642fULL * static_cast<std::uint64_t>(chunk + 1)));
        long long h = 0;
        for (long long i = b; i < e; ++i) {
            const Vec3 q{grid.lo.x + span.x * rng.uniform01(),
                         grid.lo.y + span.y * rng.uniform01(),
                         grid.lo.z + span.z * rng.uniform01()};
            if (grid.contains(q)) ++h;
        }
        hits[chunk] = h;
    });

    long long hit = 0;
    for (long long h : hits) hit += h;

    VolumeEstimate est;
    est.samples = samples;
    est.seed = seed;
    const double box = grid.box_volume();
    const double frac = static_cast<double>(hit) / samples;
    est.volume = box * frac;
    est.stderr_volume = box * std::sqrt(std::max(0.0, frac * (1.0 - frac) / samples));
    const double balls = static_cast<double>(p.size()) * (4.0 / 3.0) * kPi;
    est.density_ratio = balls / est.volume;
    est.stderr_ratio = est.density_ratio * est.stderr_volume / est.volume;
    return est;
}

struct SurfaceEstimate {
    double area = 0.0;
    int per_ball_samples = 0;
};

// Surface area of the boundary of the union of balls of radius r: each
// sphere is sampled with a Fibonacci grid and a point is exposed when it
// lies strictly outside every other enlarged ball. Deterministic for a
// given sample count and independent of the worker count.
inline SurfaceEstimate union_surface(const Packing& p, double r, int per_ball_samples = 50000,
                                     int workers = 1) {
    if (p.size() == 0) throw std::domain_error("union_surface(): empty packing");
    if (!(r >= 1.0)) throw std::domain_error("union_surface(): enlargement must be at least 1");

    const int n = static_cast<int>(p.size());
    std::vector<Vec3> centers(n);
    for (int i = 0; i < n; ++i) centers[i] = p.center(i);

    // only balls within 2r can shadow a sphere
    std::vector<std::vector<int>> near(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i && norm2(centers[i] - centers[j]) < 4.0 * r * r) near[i].push_back(j);

    const SphereSample sphere = fibonacci_sample(per_ball_samples);
    std::vector<long long> exposed(n, 0);
    detail::parallel_chunks(n, workers, 1, [&](long long ball, long long, long long) {
        const int i = static_cast<int>(ball);
        long long count = 0;
        for (const Vec3& u : sphere.points) {
            const Vec3 q = centers[i] + u * r;
            bool out = true;
            for (int j : near[i])
                if (norm2(q - centers[j]) < r * r) {
                    out = false;
                    break;
                }
            if (out) ++count;
        }
        exposed[i] = count;
    });

    SurfaceEstimate est;
    est.per_ball_samples = per_ball_samples;
    double area = 0.0;
    for (int i = 0; i < n; ++i)
        area += 4.0 * kPi * r * r * static_cast<double>(exposed[i]) / per_ball_samples;
    est.area = area;
    return est;
}

// 36*pi*V^2 <= A^3, with a relative slack for estimated inputs.
inline bool isoperimetric_check(double volume, double area, double rel_tol = 0.0) {
    if (!(volume > 0.0) || !(area > 0.0))
        throw std::domain_error("isoperimetric_check(): volume and area must be positive");
    return 36.0 * kPi * volume * volume <= area * area * area * (1.0 + rel_tol);
}

// ---------------------------------------------------------------------------
// octahedral cluster contact identity

struct OctahedralIdentity {
    long long k = 0, n = 0;
    long long counted = 0;        // brute-force pair count
    long long cubic_form = 0;     // 4k^3 - 6k^2 + 2k
    long long cluster_form = 0;   // 6n(k) - 6k^2
    long long breakdown_form = 0; // by-degree census
    bool pass = false;
};

// Builds the octahedral cluster, counts contacts by brute force over all
// pairs (independently of the grid-based counter), and compares against the
// closed forms and the by-degree breakdown.
inline OctahedralIdentity check_octahedral_identity(long long k) {
    if (k < 2) throw std::domain_error("check_octahedral_identity(): k must be at least 2");
    OctahedralIdentity rep;
    rep.k = k;
    rep.n = fcc_octahedron_count(k);

    const Packing p = gen_fcc_octahedron(static_cast<int>(k));
    if (static_cast<long long>(p.size()) != rep.n)
        throw std::runtime_error("check_octahedral_identity(): cluster size mismatch");

    long long counted = 0;
    for (std::size_t i = 0; i < p.fcc.size(); ++i)
        for (std::size_t j = i + 1; j < p.fcc.size(); ++j)
            if (fcc_touch(p.fcc[i], p.fcc[j])) ++counted;
    rep.counted = counted;

    rep.cubic_form = 4 * k * k * k - 6 * k * k + 2 * k;
    rep.cluster_form = 6 * rep.n - 6 * k * k;
    // interior balls have 12 neighbours, face-interior 9, edge-interior 7,
    // vertices 4; summing degree/2 over the census:
    rep.breakdown_form = 6 * (2 * (k - 2) * (k - 2) * (k - 2) + (k - 2)) / 3 +
                         36 * ((k - 3) * (k - 3) + (k - 3)) / 2 +
                         42 * (k - 2) + 12;
    rep.pass = rep.counted == rep.cubic_form && rep.counted == rep.cluster_form &&
               rep.counted == rep.breakdown_form;
    if (!rep.pass)
        throw std::runtime_error("check_octahedral_identity(): counted " +
                                 std::to_string(rep.counted) + " contacts but the closed forms give " +
                                 std::to_string(rep.cubic_form) + " / " +
                                 std::to_string(rep.cluster_form));
    return rep;
}

}  // namespace contact
