#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

namespace contact {

// Default tolerance for geometric predicates on real coordinates.
// Constructions are computed to full double precision, so 1e-9 cleanly
// separates true contacts (distance exactly 2) from near-misses.
inline constexpr double kTolerance = 1e-9;
inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kPi = std::numbers::pi;

struct Vec3 {
    double x{0.0}, y{0.0}, z{0.0};

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y,
            a.z * b.x - a.x * b.z,
            a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec3& a, const Vec3& b) { return norm(a - b); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (n < kUnitTolerance)
        throw std::domain_error("normalized(): zero-length vector");
    return v / n;
}

inline bool is_unit(const Vec3& v, double tol = kTolerance) {
    return std::abs(norm(v) - 1.0) <= tol;
}

inline double clamp_unit(double t) { return t < -1.0 ? -1.0 : (t > 1.0 ? 1.0 : t); }

// Lattice point of the face-centered cubic lattice in sum-even integer
// coordinates. The real position is sqrt(2) * (a, b, c), so the squared
// real distance between two points is 2*((da)^2+(db)^2+(dc)^2) and two
// unit balls touch exactly when that integer sum of squares equals 2.
// Contact detection on the lattice is therefore exact integer arithmetic.
struct FccPoint {
    int a{0}, b{0}, c{0};

    bool parity_ok() const { return ((a + b + c) & 1) == 0; }

    friend bool operator==(const FccPoint& p, const FccPoint& q) {
        return p.a == q.a && p.b == q.b && p.c == q.c;
    }
    friend auto operator<=>(const FccPoint& p, const FccPoint& q) = default;
};

inline long long fcc_sq_int(const FccPoint& p, const FccPoint& q) {
    const long long da = p.a - q.a, db = p.b - q.b, dc = p.c - q.c;
    return da * da + db * db + dc * dc;
}

// squared real distance = 2 * integer square
inline bool fcc_touch(const FccPoint& p, const FccPoint& q) { return fcc_sq_int(p, q) == 2; }

struct FccPointHash {
    std::size_t operator()(const FccPoint& p) const {
        std::size_t h = std::hash<long long>()(static_cast<long long>(p.a) * 73856093LL ^
                                               static_cast<long long>(p.b) * 19349663LL ^
                                               static_cast<long long>(p.c) * 83492791LL);
        return h;
    }
};

inline Vec3 fcc_to_real(const FccPoint& p) {
    if (!p.parity_ok())
        throw std::domain_error("fcc_to_real(): coordinate sum must be even, got (" +
                                std::to_string(p.a) + "," + std::to_string(p.b) + "," +
                                std::to_string(p.c) + ")");
    const double s = std::numbers::sqrt2;
    return {s * p.a, s * p.b, s * p.c};
}

// Area of a spherical cap of the given angular radius on the unit sphere.
// Defined on (0, pi]; the full value at pi is the whole sphere, 4*pi.
inline double cap_area(double angular_radius) {
    if (!(angular_radius > 0.0) || angular_radius > kPi)
        throw std::domain_error("cap_area(): angular radius must lie in (0, pi]");
    return 2.0 * kPi * (1.0 - std::cos(angular_radius));
}

inline double angular_distance(const Vec3& u, const Vec3& v) {
    if (!is_unit(u) || !is_unit(v))
        throw std::domain_error("angular_distance(): inputs must be unit vectors");
    return std::acos(clamp_unit(dot(u, v)));
}

struct SphericalCap {
    Vec3 center;            // unit direction
    double angular_radius;  // radians in (0, pi)

    SphericalCap(const Vec3& c, double rho) : center(c), angular_radius(rho) {
        if (std::abs(norm(c) - 1.0) > kUnitTolerance)
            throw std::domain_error("SphericalCap: center must be a unit vector");
        if (!(rho > 0.0) || !(rho < kPi))
            throw std::domain_error("SphericalCap: angular radius must lie in (0, pi)");
    }

    bool contains(const Vec3& u) const {
        return std::acos(clamp_unit(dot(center, u))) < angular_radius;
    }
};

// Ball enlargement factor r > 1 together with the angular radius of the
// cap cut out on an enlarged sphere by an enlarged neighbour at center
// distance 2: cos(alpha) = 1/r.
struct CapGeometry {
    double enlargement;  // r
    double cap_angle;    // alpha = arccos(1/r)

    explicit CapGeometry(double r) : enlargement(r), cap_angle(std::acos(1.0 / r)) {
        if (!(r > 1.0))
            throw std::domain_error("CapGeometry: enlargement factor must exceed 1");
    }
};

}  // namespace contact
