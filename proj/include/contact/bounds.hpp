#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "contact/geometry.hpp"
#include "contact/packing.hpp"

namespace contact {

// Input constants of the bound chains. The first block are trusted values
// taken from the literature; everything downstream is recomputed from its
// defining expression (see derive_constants) rather than hard-coded.
struct BoundParams {
    double tau3 = 12.0;                      // kissing number in 3-space
    double delta3 = kPi / std::sqrt(18.0);   // densest packing density
    double molnar = 0.89332;                 // cap-density bound on S^2
    double bs_distance = 2.205279217705;     // 13th-ball distance bound
    double hales_distance = 2.52;            // improved 13th-ball distance bound
    double r_hat_i = 1.81383;                // enlargement for the base chain
    double r_hat_improved = 1.58731;         // enlargement for the improved chain
    double density_i = 0.7785;               // truncated-Voronoi density bound
    double density_improved = 0.7547;        // improved Voronoi density bound

    // the covering arguments need 4/r < (13th-ball distance); fail loudly
    // if someone edits the parameters into an infeasible combination
    void check_feasible() const {
        if (!(4.0 / r_hat_i < bs_distance) || !(4.0 / r_hat_improved < hales_distance))
            throw std::logic_error("BoundParams: enlargement radius is infeasible for the "
                                   "covering argument");
    }
};

struct BoundReport {
    std::string formula_id;
    long long n = 0;
    double value = 0.0;
    double coefficient = 0.0;  // value = 6n - coefficient * n^(2/3) for the 3D bounds
    std::vector<std::pair<std::string, double>> intermediates;
    bool conjectural = false;
};

namespace detail {

inline double cap_area_pi6() { return 2.0 * kPi * (1.0 - std::sqrt(3.0) / 2.0); }

// per-ball exposed-surface bound at enlargement r when at least `caps`
// disjoint contact caps are present: 4*pi*r^2 - caps * cap6 * r^2 / molnar
inline double surface_upper_per_ball(double r, int caps, double molnar) {
    return 4.0 * kPi * r * r - caps * cap_area_pi6() * r * r / molnar;
}

inline double surface_lower_coeff(double density) {
    return 4.0 * kPi / std::pow(density, 2.0 / 3.0);
}

struct Chain {
    double lower;     // surface area lower coefficient (per n^(2/3))
    double upper3;    // per-ball surface bound with 3 caps
    double upper10;   // per-ball surface bound with 10 caps
    double counting;  // 3 * lower / upper3
    double coeff;     // counting / 2
};

inline Chain chain(double r, double density, double molnar) {
    Chain c{};
    c.lower = surface_lower_coeff(density);
    c.upper3 = surface_upper_per_ball(r, 3, molnar);
    c.upper10 = surface_upper_per_ball(r, 10, molnar);
    c.counting = 3.0 * c.lower / c.upper3;
    c.coeff = c.counting / 2.0;
    return c;
}

}  // namespace detail

// Exact maximum number of touching pairs for n congruent disks in the
// plane: floor(3n - sqrt(12n - 3)). Perfect squares are detected with
// integer arithmetic so the floor is never off by an ulp.
inline long long harborth_2d(long long n) {
    if (n < 2) throw std::domain_error("harborth_2d(): n must be at least 2");
    const long long m = 12 * n - 3;
    long long s = static_cast<long long>(std::sqrt(static_cast<double>(m)));
    while (s * s > m) --s;
    while ((s + 1) * (s + 1) <= m) ++s;
    // s = floor(sqrt(m)); if m is not a square, floor(3n - sqrt(m)) = 3n - s - 1
    return (s * s == m) ? 3 * n - s : 3 * n - s - 1;
}

// Touching-pair bound for n unit balls in dimension d:
// tau_d * n / 2 - (1/2^d) * delta_d^{-(d-1)/d} * n^{(d-1)/d}
inline double general_dim_bound(long long n, double tau_d, double delta_d, int d) {
    if (n < 2) throw std::domain_error("general_dim_bound(): n must be at least 2");
    if (d < 3) throw std::domain_error("general_dim_bound(): d must be at least 3");
    if (!(tau_d > 0.0)) throw std::domain_error("general_dim_bound(): tau_d must be positive");
    if (!(delta_d > 0.0) || !(delta_d < 1.0))
        throw std::domain_error("general_dim_bound(): delta_d must lie in (0, 1)");
    const double e = static_cast<double>(d - 1) / d;
    return 0.5 * tau_d * n - std::pow(2.0, -d) * std::pow(delta_d, -e) * std::pow(static_cast<double>(n), e);
}

// Upper bound for the contact number of any packing of n unit balls:
// 6n - c * n^(2/3), with c derived from the base chain.
inline BoundReport bound_i(long long n, const BoundParams& params = {}) {
    if (n < 2) throw std::domain_error("bound_i(): n must be at least 2");
    params.check_feasible();
    const auto ch = detail::chain(params.r_hat_i, params.density_i, params.molnar);
    BoundReport r;
    r.formula_id = "i";
    r.n = n;
    r.coefficient = ch.coeff;
    r.value = 6.0 * n - r.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0);
    r.intermediates = {{"surface_lower_coeff", ch.lower},
                       {"surface_upper_3caps", ch.upper3},
                       {"surface_upper_10caps", ch.upper10},
                       {"counting_coeff", ch.counting}};
    return r;
}

// Upper bound for lattice packings with minimum vector length 2:
// 6n - (3 * cbrt(18 pi) / pi) * n^(2/3).
inline BoundReport bound_ii(long long n) {
    if (n < 2) throw std::domain_error("bound_ii(): n must be at least 2");
    BoundReport r;
    r.formula_id = "ii";
    r.n = n;
    r.coefficient = 3.0 * std::cbrt(18.0 * kPi) / kPi;
    r.value = 6.0 * n - r.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0);
    r.intermediates = {{"surface_lower_coeff", 4.0 * std::cbrt(18.0 * kPi)}};
    return r;
}

// Lower bound attained by octahedral fcc clusters, valid at n = k(2k^2+1)/3:
// 6n - cbrt(486) * n^(2/3) < C.
inline BoundReport bound_iii_lower(long long n, long long k) {
    if (k < 2) throw std::domain_error("bound_iii_lower(): k must be at least 2");
    if (n != fcc_octahedron_count(k))
        throw std::domain_error("bound_iii_lower(): n must equal k(2k^2+1)/3");
    BoundReport r;
    r.formula_id = "iii-lower";
    r.n = n;
    r.coefficient = std::cbrt(486.0);
    r.value = 6.0 * n - r.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0);
    r.intermediates = {{"k", static_cast<double>(k)},
                       {"cluster_contacts", static_cast<double>(6 * n - 6 * k * k)}};
    return r;
}

// Improved unrestricted upper bound from the sharper distance and density
// inputs: 6n - 0.9266... * n^(2/3).
inline BoundReport bound_improved(long long n, const BoundParams& params = {}) {
    if (n < 2) throw std::domain_error("bound_improved(): n must be at least 2");
    params.check_feasible();
    const auto ch = detail::chain(params.r_hat_improved, params.density_improved, params.molnar);
    BoundReport r;
    r.formula_id = "improved";
    r.n = n;
    r.coefficient = ch.coeff;
    r.value = 6.0 * n - r.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0);
    r.intermediates = {{"surface_lower_coeff", ch.lower},
                       {"surface_upper_3caps", ch.upper3},
                       {"counting_coeff", ch.counting}};
    return r;
}

// Conditional bound 6n - (3 cbrt(18 pi) / (2 pi)) n^(2/3): valid only if the
// open cap-density conjecture for caps of angular radius pi/3 holds. Always
// flagged conjectural; never asserted by the verification suite.
inline BoundReport bound_conjectural(long long n) {
    if (n < 2) throw std::domain_error("bound_conjectural(): n must be at least 2");
    BoundReport r;
    r.formula_id = "conjectural";
    r.n = n;
    r.coefficient = 3.0 * std::cbrt(18.0 * kPi) / (2.0 * kPi);
    r.value = 6.0 * n - r.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0);
    r.conjectural = true;
    return r;
}

// One recomputed constant compared against its published decimal value.
// `comparison` is "absolute" when the published value carries enough digits
// for a 1e-5 absolute comparison, "prefix" when only a truncated prefix is
// published (then `diff` compares the truncated recomputed value).
struct ConstantEntry {
    std::string name;
    double recomputed = 0.0;
    double published = 0.0;
    double diff = 0.0;
    std::string comparison;  // "absolute" | "prefix"
    int prefix_decimals = 0;
};

// Recomputes every named constant of the bound chains from its defining
// expression and reports the distance to the published digits. Doubles as
// a regression test of the whole arithmetic chain.
inline std::vector<ConstantEntry> derive_constants(const BoundParams& params = {}) {
    params.check_feasible();
    std::vector<ConstantEntry> out;

    const auto absolute = [&out](const std::string& name, double value, double published) {
        out.push_back({name, value, published, std::abs(value - published), "absolute", 0});
    };
    const auto prefix = [&out](const std::string& name, double value, double published, int decimals) {
        const double scale = std::pow(10.0, decimals);
        const double truncated = std::floor(value * scale) / scale;
        out.push_back({name, value, published, std::abs(truncated - published), "prefix", decimals});
    };

    const auto base = detail::chain(params.r_hat_i, params.density_i, params.molnar);
    const auto improved = detail::chain(params.r_hat_improved, params.density_improved, params.molnar);

    absolute("surface_lower_coeff_base", base.lower, 14.849236);
    absolute("surface_upper_10caps_base", base.upper10, 10.34119);
    absolute("surface_upper_3caps_base", base.upper3, 32.04253);
    absolute("counting_coeff_base", base.counting, 1.39026);
    absolute("contact_coeff_unrestricted", base.coeff, 0.69513);

    // closed form of the truncated-Voronoi density ratio
    const double s6 = std::sqrt(6.0), s2 = std::numbers::sqrt2;
    const double at = std::atan(s2 / 2.0);
    const double voronoi_ratio =
        (20.0 * s6 * at - 2.0 * (2.0 * s6 - 1.0) * kPi) / (5.0 * s2 + 3.0 * kPi - 15.0 * at);
    absolute("voronoi_density_ratio", voronoi_ratio, 0.77842);

    absolute("trig_feasibility_base", 4.0 / params.r_hat_i, 2.205278333691);
    prefix("surface_lower_coeff_sqrt2", 4.0 * std::cbrt(18.0 * kPi), 15.3532, 4);
    prefix("cap_density_cuboctahedral", 6.0 * (1.0 - std::sqrt(3.0) / 2.0), 0.8038, 4);
    prefix("contact_coeff_lattice", 3.0 * std::cbrt(18.0 * kPi) / kPi, 3.665, 3);
    prefix("fcc_gap_coeff", std::cbrt(486.0), 7.862, 3);

    absolute("surface_lower_coeff_improved", improved.lower, 15.159805);
    absolute("surface_upper_3caps_improved", improved.upper3, 24.53902);
    absolute("counting_coeff_improved", improved.counting, 1.85335);
    absolute("contact_coeff_improved", improved.coeff, 0.926675);

    prefix("contact_coeff_conjectural", 3.0 * std::cbrt(18.0 * kPi) / (2.0 * kPi), 1.8326, 4);
    prefix("trig_feasibility_improved", 4.0 / params.r_hat_improved, 2.51998, 5);
    prefix("dodecahedron_circumradius", std::sqrt(3.0) * std::tan(kPi / 5.0), 1.2584, 4);
    absolute("fcc_packing_density", kPi / std::sqrt(18.0), 0.740480);
    prefix("dimension_coeff_3d", std::pow(kPi / std::sqrt(18.0), -2.0 / 3.0) / 8.0, 0.152, 3);

    return out;
}

// Regression check of a counted contact graph against the closed-form
// upper bounds. Violation means a bug in counting or in the constants.
struct ScanReport {
    long long n = 0;
    int contacts = 0;
    double margin_unrestricted = 0.0;             // bound_i(n) - C
    std::optional<double> margin_lattice;         // bound_ii(n) - C, fcc packings only
};

inline ScanReport bound_violation_scan(const ContactGraph& g, Rep rep) {
    ScanReport rep_out;
    rep_out.n = g.n;
    rep_out.contacts = g.contact_number();
    if (g.n < 2) return rep_out;  // bounds are stated for n >= 2; C is 0 here anyway

    const double bi = bound_i(g.n).value;
    rep_out.margin_unrestricted = bi - rep_out.contacts;
    if (!(rep_out.contacts < bi))
        throw std::runtime_error("bound_violation_scan(): contact count " +
                                 std::to_string(rep_out.contacts) +
                                 " violates the unrestricted upper bound " + std::to_string(bi));
    if (rep == Rep::fcc) {
        const double bii = bound_ii(g.n).value;
        rep_out.margin_lattice = bii - rep_out.contacts;
        if (!(rep_out.contacts < bii))
            throw std::runtime_error("bound_violation_scan(): contact count " +
                                     std::to_string(rep_out.contacts) +
                                     " violates the lattice upper bound " + std::to_string(bii));
    }
    return rep_out;
}

}  // namespace contact
