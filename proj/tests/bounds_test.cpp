#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "contact/bounds.hpp"
#include "contact/packing.hpp"

using namespace contact;

TEST(Harborth, SmallValues) {
    EXPECT_EQ(harborth_2d(2), 1);   // floor(6 - sqrt(21))
    EXPECT_EQ(harborth_2d(3), 3);   // floor(9 - sqrt(33))
    EXPECT_EQ(harborth_2d(4), 5);   // floor(12 - sqrt(45))
    EXPECT_THROW(harborth_2d(1), std::domain_error);
}

TEST(Harborth, PerfectSquareGuard) {
    // 12*7 - 3 = 81 is a perfect square; the floor must use sqrt exactly
    EXPECT_EQ(harborth_2d(7), 12);
    // next perfect squares of the form 12n - 3: n = 19 (15^2), n = 37 (21^2)
    EXPECT_EQ(harborth_2d(19), 3 * 19 - 15);
    EXPECT_EQ(harborth_2d(37), 3 * 37 - 21);
}

TEST(Harborth, MonotoneIncreasing) {
    long long prev = harborth_2d(2);
    for (long long n = 3; n <= 4000; ++n) {
        const long long v = harborth_2d(n);
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(Harborth, AsymptoticRatio) {
    // (3n - c(n))/sqrt(n) = ceil(sqrt(12n-3))/sqrt(n) -> sqrt(12) from above
    const double limit = std::sqrt(12.0);
    for (long long n : {100LL, 10000LL, 1000000LL}) {
        const double ratio = (3.0 * n - harborth_2d(n)) / std::sqrt(static_cast<double>(n));
        EXPECT_GT(ratio, 3.0);
        EXPECT_LE(ratio, limit + 1.0 / std::sqrt(static_cast<double>(n)));
    }
    const double ratio6 = (3e6 - harborth_2d(1000000)) / 1000.0;
    EXPECT_NEAR(ratio6, limit, 0.05);
}

TEST(GeneralDimBound, ThreeDimensionalSpecialization) {
    const double delta3 = kPi / std::sqrt(18.0);
    const double v1000 = general_dim_bound(1000, 12.0, delta3, 3);
    const double coeff = std::pow(delta3, -2.0 / 3.0) / 8.0;
    EXPECT_NEAR(coeff, 0.152721764, 1e-8);
    EXPECT_NEAR(v1000, 6000.0 - coeff * 100.0, 1e-9);
    EXPECT_NEAR(general_dim_bound(8, 12.0, delta3, 3), 48.0 - coeff * 4.0, 1e-9);
    EXPECT_NEAR(general_dim_bound(8, 12.0, delta3, 3), 47.389, 5e-4);
}

TEST(GeneralDimBound, CoefficientDecreasesWithDensity) {
    // delta^{-(d-1)/d} decreases in delta, so the subtracted term shrinks
    const double at_07 = 0.5 * 12 * 100 - general_dim_bound(100, 12.0, 0.7, 3);
    const double at_09 = 0.5 * 12 * 100 - general_dim_bound(100, 12.0, 0.9, 3);
    EXPECT_LT(at_09, at_07);
}

TEST(GeneralDimBound, DomainErrors) {
    EXPECT_THROW(general_dim_bound(1, 12.0, 0.7, 3), std::domain_error);
    EXPECT_THROW(general_dim_bound(10, 12.0, 0.7, 2), std::domain_error);
    EXPECT_THROW(general_dim_bound(10, -1.0, 0.7, 3), std::domain_error);
    EXPECT_THROW(general_dim_bound(10, 12.0, 1.5, 3), std::domain_error);
}

TEST(BoundFamilies, CoefficientsMatchPublishedDigits) {
    EXPECT_NEAR(bound_i(2).coefficient, 0.69513, 1e-5);
    EXPECT_NEAR(bound_improved(2).coefficient, 0.926675, 1e-5);
    // prefix-published coefficients
    EXPECT_NEAR(bound_ii(2).coefficient, 3.665, 5e-4);
    EXPECT_NEAR(bound_iii_lower(6, 2).coefficient, 7.862, 5e-4);
    EXPECT_NEAR(bound_conjectural(2).coefficient, 1.8326, 1e-4);
}

TEST(BoundFamilies, KnownValues) {
    EXPECT_NEAR(bound_i(2).value, 10.8965, 1e-3);
    EXPECT_GT(bound_i(2).value, 1.0);  // consistency with C(2) = 1
    const BoundReport ii100 = bound_ii(100);
    EXPECT_NEAR(ii100.value, 600.0 - ii100.coefficient * std::pow(100.0, 2.0 / 3.0), 1e-9);
}

TEST(BoundFamilies, ValueCoefficientRelationIsExact) {
    for (long long n : {2LL, 10LL, 100LL, 1000LL}) {
        for (const BoundReport& r :
             {bound_i(n), bound_ii(n), bound_improved(n), bound_conjectural(n)}) {
            EXPECT_EQ(r.value, 6.0 * n - r.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0));
        }
    }
}

TEST(BoundFamilies, MonotoneInN) {
    for (long long n = 2; n < 2000; ++n) {
        EXPECT_LT(bound_i(n).value, bound_i(n + 1).value);
        EXPECT_LT(bound_ii(n).value, bound_ii(n + 1).value);
        EXPECT_LT(bound_improved(n).value, bound_improved(n + 1).value);
        EXPECT_LT(bound_conjectural(n).value, bound_conjectural(n + 1).value);
    }
}

TEST(BoundFamilies, ChainConsistency) {
    // halving the counting inequality reproduces the final coefficient
    const auto report = bound_i(10);
    double counting = 0.0;
    for (const auto& [name, v] : report.intermediates)
        if (name == "counting_coeff") counting = v;
    ASSERT_GT(counting, 0.0);
    for (long long n : {10LL, 100LL, 1000LL}) {
        const double via_chain =
            0.5 * (12.0 * n - counting * std::pow(static_cast<double>(n), 2.0 / 3.0));
        EXPECT_NEAR(via_chain, bound_i(n).value, 1e-9);
    }
}

TEST(BoundFamilies, ClusterLowerBoundIsBelowClusterContacts) {
    for (long long k = 2; k <= 8; ++k) {
        const long long n = fcc_octahedron_count(k);
        const BoundReport lower = bound_iii_lower(n, k);
        const long long contacts = 6 * n - 6 * k * k;
        EXPECT_LT(lower.value, static_cast<double>(contacts));
        // equivalently 6k^2 < cbrt(486) n^(2/3)
        EXPECT_LT(6.0 * k * k, lower.coefficient * std::pow(static_cast<double>(n), 2.0 / 3.0));
    }
}

TEST(BoundFamilies, ClusterBoundRejectsOtherSizes) {
    EXPECT_THROW(bound_iii_lower(7, 2), std::domain_error);
    EXPECT_THROW(bound_iii_lower(20, 3), std::domain_error);
    EXPECT_THROW(bound_iii_lower(6, 1), std::domain_error);
}

TEST(BoundFamilies, ConjecturalIsFlagged) {
    EXPECT_TRUE(bound_conjectural(10).conjectural);
    EXPECT_FALSE(bound_i(10).conjectural);
    EXPECT_FALSE(bound_ii(10).conjectural);
}

TEST(ConstantsLedger, AllEntriesMatchPublishedDigits) {
    const auto ledger = derive_constants();
    EXPECT_GE(ledger.size(), 15u);
    for (const auto& e : ledger)
        EXPECT_LT(e.diff, 1e-5) << e.name << " recomputed " << e.recomputed << " vs published "
                                << e.published;
}

TEST(ConstantsLedger, SpotValues) {
    const auto ledger = derive_constants();
    std::map<std::string, ConstantEntry> by_name;
    for (const auto& e : ledger) by_name[e.name] = e;

    EXPECT_NEAR(by_name.at("surface_lower_coeff_base").recomputed, 14.84923634, 1e-7);
    EXPECT_NEAR(by_name.at("voronoi_density_ratio").recomputed, 0.77842, 1e-5);
    EXPECT_NEAR(by_name.at("trig_feasibility_base").recomputed, 2.205278333691, 1e-11);
    EXPECT_NEAR(by_name.at("surface_upper_10caps_base").recomputed, 10.34119, 1e-5);
    EXPECT_NEAR(by_name.at("surface_upper_3caps_base").recomputed, 32.04253, 1e-5);
    EXPECT_NEAR(by_name.at("counting_coeff_base").recomputed, 1.39026, 1e-5);
    EXPECT_NEAR(by_name.at("surface_lower_coeff_improved").recomputed, 15.159805, 1e-5);
    EXPECT_NEAR(by_name.at("surface_upper_3caps_improved").recomputed, 24.53902, 1e-5);
    EXPECT_NEAR(by_name.at("counting_coeff_improved").recomputed, 1.85335, 1e-5);
    EXPECT_NEAR(by_name.at("fcc_packing_density").recomputed, kPi / std::sqrt(18.0), 1e-15);

    // strict feasibility of the trig checks against the distance inputs
    const BoundParams params;
    EXPECT_LT(by_name.at("trig_feasibility_base").recomputed, params.bs_distance);
    EXPECT_LT(by_name.at("trig_feasibility_improved").recomputed, params.hales_distance);
}

TEST(BoundViolationScan, GeneratedPackings) {
    const ContactGraph cub = contact_graph(gen_cuboctahedron_13());
    const ScanReport r1 = bound_violation_scan(cub, Rep::fcc);
    EXPECT_EQ(r1.contacts, 36);
    EXPECT_NEAR(bound_i(13).value, 74.157, 1e-3);
    EXPECT_NEAR(bound_ii(13).value, 57.735, 1e-3);
    EXPECT_GT(r1.margin_unrestricted, 0.0);
    ASSERT_TRUE(r1.margin_lattice.has_value());
    EXPECT_GT(*r1.margin_lattice, 0.0);

    const ContactGraph oct = contact_graph(gen_fcc_octahedron(2));
    const ScanReport r2 = bound_violation_scan(oct, Rep::fcc);
    EXPECT_EQ(r2.contacts, 12);
    EXPECT_NEAR(*r2.margin_lattice, bound_ii(6).value - 12.0, 1e-12);
    EXPECT_NEAR(bound_ii(6).value, 23.897, 1e-3);

    const ContactGraph pair = contact_graph(Packing::from_real({{0, 0, 0}, {2, 0, 0}}));
    const ScanReport r3 = bound_violation_scan(pair, Rep::real);
    EXPECT_EQ(r3.contacts, 1);
    EXPECT_NEAR(r3.margin_unrestricted, bound_i(2).value - 1.0, 1e-12);
}

TEST(BoundParamsTest, InfeasibleEnlargementIsRejected) {
    BoundParams params;
    params.bs_distance = 2.0;  // below 4/r_hat_i = 2.2052..., so the covering argument breaks
    EXPECT_THROW(params.check_feasible(), std::logic_error);
    EXPECT_THROW(bound_i(10, params), std::logic_error);
    EXPECT_NO_THROW(BoundParams{}.check_feasible());
}

TEST(BoundViolationScan, ThrowsOnImpossibleCounts) {
    ContactGraph fake;
    fake.n = 2;
    fake.degree = {12, 12};
    for (int e = 0; e < 12; ++e) fake.edges.emplace_back(0, 1);  // nonsense on purpose
    EXPECT_THROW(bound_violation_scan(fake, Rep::fcc), std::runtime_error);
}
