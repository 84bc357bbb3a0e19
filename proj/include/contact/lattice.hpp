#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "contact/geometry.hpp"

namespace contact {

struct non_convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct assignment_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LatticeBasis {
    Vec3 b1, b2, b3;

    double det() const {
        return dot(b1, cross(b2, b3));
    }

    std::array<std::array<double, 3>, 3> gram() const {
        const Vec3 b[3] = {b1, b2, b3};
        std::array<std::array<double, 3>, 3> g{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g[i][j] = dot(b[i], b[j]);
        return g;
    }

    void validate() const {
        if (!b1.finite() || !b2.finite() || !b3.finite())
            throw std::domain_error("LatticeBasis: non-finite basis vector");
        const double d = std::abs(det());
        if (d <= kTolerance)
            throw std::domain_error("LatticeBasis: basis vectors are (near-)dependent");
    }

    // Basis from a symmetric positive definite Gram matrix, via Cholesky.
    // The returned vectors realize the Gram matrix in a fixed frame.
    static LatticeBasis from_gram(const std::array<std::array<double, 3>, 3>& g) {
        double l[3][3] = {};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j <= i; ++j) {
                double s = g[i][j];
                for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
                if (i == j) {
                    if (s <= 0.0)
                        throw std::domain_error("LatticeBasis: Gram matrix is not positive definite");
                    l[i][i] = std::sqrt(s);
                } else {
                    l[i][j] = s / l[j][j];
                }
            }
        }
        return {{l[0][0], 0.0, 0.0}, {l[1][0], l[1][1], 0.0}, {l[2][0], l[2][1], l[2][2]}};
    }
};

// Four vectors summing to zero whose pairwise inner products (the Selling
// parameters) are all non-positive once reduced. v[1], v[2], v[3] form an
// integral basis of the lattice; v[0] = -(v[1]+v[2]+v[3]).
struct Superbase {
    std::array<Vec3, 4> v;

    // the six inner products v_i . v_j, 0 <= i < j <= 3
    std::array<double, 6> selling() const {
        std::array<double, 6> p{};
        int t = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) p[t++] = dot(v[i], v[j]);
        return p;
    }

    bool reduced(double eps = kTolerance) const {
        for (double p : selling())
            if (p > eps) return false;
        return true;
    }

    double basis_det() const { return dot(v[1], cross(v[2], v[3])); }
};

// The 14 candidate vectors (7 up to sign) that contain every strict
// Voronoi vector of a lattice given by an obtuse superbase:
//   +-v1, +-(v0+v1), +-(v1+v2), +-(v1+v3),
//   +-(v0+v1+v2), +-(v0+v1+v3), +-(v1+v2+v3).
struct VoronoiVectorList {
    std::array<Vec3, 14> vectors;
    std::array<double, 14> sq_lengths;

    int count_length(double length, double tol = kTolerance) const {
        int c = 0;
        for (double s : sq_lengths)
            if (std::abs(std::sqrt(s) - length) <= tol) ++c;
        return c;
    }

    double min_length() const {
        double m = sq_lengths[0];
        for (double s : sq_lengths) m = std::min(m, s);
        return std::sqrt(m);
    }
};

namespace detail {

// (alpha, beta, gamma) coefficients of the 7 canonical combinations in the
// superbase, indexed v0..v3. Signs are added when the list is expanded.
inline constexpr int kComboCoeff[7][4] = {
    {0, 1, 0, 0},  // v1
    {1, 1, 0, 0},  // v0+v1
    {0, 1, 1, 0},  // v1+v2
    {0, 1, 0, 1},  // v1+v3
    {1, 1, 1, 0},  // v0+v1+v2
    {1, 1, 0, 1},  // v0+v1+v3
    {0, 1, 1, 1},  // v1+v2+v3
};

inline Vec3 combo(const Superbase& sb, int m) {
    Vec3 r{};
    for (int i = 0; i < 4; ++i)
        if (kComboCoeff[m][i]) r += sb.v[i];
    return r;
}

}  // namespace detail

// Selling reduction: while some pair has positive inner product, flip that
// pair. One step replaces (v_i, v_j, v_k, v_l) by (-v_i, v_j, v_k + v_i,
// v_l + v_i), which keeps the sum zero and decreases sum |v|^2 by 2*p_ij.
// Pivot choice: the largest positive p_ij, ties broken by smallest (i, j),
// so runs are deterministic. Integer Gram matrices stay integer throughout,
// making the sign tests exact for inputs within double range.
inline Superbase selling_reduce(const LatticeBasis& basis, int max_steps = 10000) {
    basis.validate();

    // positive definiteness of the Gram matrix (leading principal minors)
    const auto g = basis.gram();
    const double m1 = g[0][0];
    const double m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const double m3 = basis.det() * basis.det();
    if (m1 <= 0.0 || m2 <= 0.0 || m3 <= 0.0)
        throw std::domain_error("selling_reduce(): Gram matrix is not positive definite");

    Superbase sb;
    sb.v[1] = basis.b1;
    sb.v[2] = basis.b2;
    sb.v[3] = basis.b3;
    sb.v[0] = -(basis.b1 + basis.b2 + basis.b3);

    for (int step = 0; step < max_steps; ++step) {
        int bi = -1, bj = -1;
        double best = kTolerance;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                const double p = dot(sb.v[i], sb.v[j]);
                if (p > best) {
                    best = p;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) return sb;

        int others[2], t = 0;
        for (int k = 0; k < 4; ++k)
            if (k != bi && k != bj) others[t++] = k;
        const Vec3 vi = sb.v[bi];
        sb.v[bi] = -vi;
        sb.v[others[0]] += vi;
        sb.v[others[1]] += vi;
    }
    throw non_convergence_error("selling_reduce(): step limit exceeded (degenerate or ill-conditioned lattice)");
}

inline VoronoiVectorList voronoi_vectors(const Superbase& sb) {
    if (!sb.reduced())
        throw std::domain_error("voronoi_vectors(): superbase is not reduced");
    VoronoiVectorList out;
    for (int m = 0; m < 7; ++m) {
        const Vec3 w = detail::combo(sb, m);
        out.vectors[2 * m] = w;
        out.vectors[2 * m + 1] = -w;
        out.sq_lengths[2 * m] = out.sq_lengths[2 * m + 1] = norm2(w);
    }
    return out;
}

inline double min_vector_length(const LatticeBasis& basis) {
    // For a first-kind-reduced superbase all strict Voronoi vectors, in
    // particular all shortest vectors, are among the 14 candidates.
    return voronoi_vectors(selling_reduce(basis)).min_length();
}

namespace detail {

// Fixed obtuse superbase of the fcc lattice in sum-even integer coordinates
// (real vectors are sqrt(2) times these). All four have real length 2; the
// only canonical combination of greater length is w0+w1 = (2,0,0).
inline constexpr int kFccSuperbase[4][3] = {
    {1, 1, 0},   // w0
    {1, -1, 0},  // w1
    {-1, 0, 1},  // w2
    {-1, 0, -1}, // w3
};

// which of the 7 canonical combinations have real length 2 in the fcc superbase
inline constexpr bool kFccComboLen2[7] = {true, false, true, true, true, true, true};

struct IntMat3 {
    long long m[3][3];

    static IntMat3 identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

    long long det() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }

    // inverse of a unimodular matrix (det = +-1), via the adjugate
    IntMat3 unimodular_inverse() const {
        const long long d = det();
        if (d != 1 && d != -1)
            throw std::logic_error("IntMat3: matrix is not unimodular");
        IntMat3 adj{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
                const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
                adj.m[j][i] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
            }
        if (d == -1)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) adj.m[i][j] = -adj.m[i][j];
        return adj;
    }
};

}  // namespace detail

// Contact-preserving map from a lattice with minimum vector length 2 into
// the fcc lattice. Points are integer coordinates in the basis
// (v1, v2, v3) of the reduced superbase; the image of a*v1 + b*v2 + c*v3
// is a*w1 + b*w2 + c*w3 for a matching assignment of the fcc superbase.
//
// The assignment is found constructively: over the 24 permutations of the
// superbase indices, accept the first (lexicographically) under which every
// canonical combination of real length 2 lands on an fcc combination of
// real length 2. Since every minimum vector is a strict Voronoi vector and
// hence one of the 14 candidates, the accepted assignment maps every
// distance-2 pair of lattice points to a distance-2 fcc pair.
inline std::vector<FccPoint> map_to_fcc(const Superbase& sb,
                                        const std::vector<std::array<long long, 3>>& points) {
    if (!sb.reduced())
        throw std::domain_error("map_to_fcc(): superbase is not reduced");

    const VoronoiVectorList vv = voronoi_vectors(sb);
    if (vv.min_length() < 2.0 - kTolerance)
        throw std::domain_error("map_to_fcc(): lattice has a nonzero vector shorter than 2, "
                                "so its points do not form a unit-ball packing");

    std::array<int, 4> perm = {0, 1, 2, 3};
    std::optional<std::array<int, 4>> accepted;
    do {
        bool ok = true;
        for (int m = 0; m < 7 && ok; ++m) {
            Vec3 w{};
            for (int i = 0; i < 4; ++i)
                if (detail::kComboCoeff[m][i]) w += sb.v[perm[i]];
            const bool len2 = std::abs(norm(w) - 2.0) <= kTolerance;
            if (len2 && !detail::kFccComboLen2[m]) ok = false;
        }
        if (ok) {
            accepted = perm;
            break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));

    if (!accepted)
        throw assignment_error("map_to_fcc(): no superbase permutation matches the fcc length "
                               "pattern; the lattice cannot be aligned with the fcc superbase");

    const auto& s = *accepted;
    // columns: coordinates of v_{s[1]}, v_{s[2]}, v_{s[3]} in the basis (v1, v2, v3);
    // v0 has coordinates (-1, -1, -1).
    detail::IntMat3 basis_change{};
    for (int col = 0; col < 3; ++col) {
        const int idx = s[col + 1];
        for (int row = 0; row < 3; ++row)
            basis_change.m[row][col] = (idx == 0) ? -1 : (idx == row + 1 ? 1 : 0);
    }
    const detail::IntMat3 inv = basis_change.unimodular_inverse();

    std::vector<FccPoint> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        long long q[3];
        for (int r = 0; r < 3; ++r)
            q[r] = inv.m[r][0] * p[0] + inv.m[r][1] * p[1] + inv.m[r][2] * p[2];
        FccPoint img{};
        for (int t = 0; t < 3; ++t) {
            const long long coord = q[0] * detail::kFccSuperbase[1][t] +
                                    q[1] * detail::kFccSuperbase[2][t] +
                                    q[2] * detail::kFccSuperbase[3][t];
            (t == 0 ? img.a : t == 1 ? img.b : img.c) = static_cast<int>(coord);
        }
        out.push_back(img);
    }
    return out;
}

}  // namespace contact
