#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace rmiso;
using namespace testing_support;

namespace {

/// Class number of the quadratic order of conductor f in the field of fundamental discriminant dK < 0.
long form_class_number(long dK, long f) { return reduced_form_count(dK * f * f); }

}  // namespace

TEST(CountReport, Examples) {
    WeilPolynomial h = weil(kOrdinary, 3);
    EXPECT_EQ(count_report(h, 1).N, 1);

    auto r3 = count_report(h, 3);
    EXPECT_EQ(r3.N, 4);
    EXPECT_EQ(r3.index, 2);
    ASSERT_EQ(r3.divisor_table.size(), 2u);
    EXPECT_EQ(r3.divisor_table[0].d, 1);
    EXPECT_EQ(r3.divisor_table[0].disc, -44);
    EXPECT_EQ(r3.divisor_table[0].h, 3);
    EXPECT_EQ(r3.divisor_table[1].d, 2);
    EXPECT_EQ(r3.divisor_table[1].disc, -11);
    EXPECT_EQ(r3.divisor_table[1].h, 1);

    WeilPolynomial s = weil(kSupersingular, 3);
    auto s1 = count_report(s, 1);
    EXPECT_EQ(s1.N, 2);
    EXPECT_EQ(s1.lift_profile.num_canonical_lifts, 2);
    EXPECT_EQ(s1.lift_profile.num_subcategories, 1);
    EXPECT_TRUE(count_report(s, 2).degenerate);
}

TEST(CountReport, MatchesConductorSum) {
    // N = sum over conductors f | i_n of h(-11 f^2), computed from forms
    WeilPolynomial h = weil(kOrdinary, 3);
    for (long n = 1; n <= 10; ++n) {
        auto r = count_report(h, n);
        ASSERT_FALSE(r.degenerate);
        long i = r.index.get_si();
        long expected = 0;
        for (long f = 1; f <= i; ++f)
            if (i % f == 0) expected += form_class_number(-11, f);
        EXPECT_EQ(r.N, expected) << n;
        EXPECT_EQ(r.N_min, form_class_number(-11, i)) << n;
        EXPECT_GE(r.N, r.N_min);
        EXPECT_EQ(r.N == r.N_min, r.index == 1);
        EXPECT_EQ(r.kernel_size, r.N_min);
        // i_n^2 * (-11) = t_n^2 - 4 * 3^n
        auto tr = power_traces(1, 3, n);
        Int tn = tr[static_cast<std::size_t>(n)];
        EXPECT_EQ(r.index * r.index * -11, tn * tn - 4 * ipow(3, n)) << n;
    }
}

TEST(CountReport, EightTable) {
    auto r = count_report(weil(kOrdinary, 3), 8);
    EXPECT_EQ(r.N, 45);
    EXPECT_EQ(r.index, 35);
    std::map<Int, Int> by_conductor;
    for (const auto& row : r.divisor_table) by_conductor[r.index / row.d] = row.h;
    EXPECT_EQ(by_conductor, (std::map<Int, Int>{{1, 1}, {5, 4}, {7, 8}, {35, 32}}));
    EXPECT_NEAR(r.exponent, 2.0 * std::log(45.0) / (8.0 * std::log(3.0)), 1e-12);
}

TEST(AsymptoticTable, Rows) {
    auto t = asymptotic_table(weil(kOrdinary, 3), 8);
    ASSERT_EQ(t.size(), 8u);
    EXPECT_EQ(t[7].N, 45);
    EXPECT_NEAR(t[7].exponent, 0.866, 1e-3);
    EXPECT_NEAR(t[0].exponent, 0.0, 1e-12);
    auto s = asymptotic_table(weil(kSupersingular, 3), 2);
    EXPECT_FALSE(s[0].degenerate);
    EXPECT_TRUE(s[1].degenerate);
    EXPECT_THROW(asymptotic_table(weil(kOrdinary, 3), 0), InvalidInput);
}

TEST(DiscGrowth, ExactAndSineProduct) {
    WeilPolynomial h = weil(kOrdinary, 3);
    auto rows = disc_growth_table(h, 14);
    auto tr = power_traces(1, 3, 14);
    for (const auto& row : rows) {
        Int tn = tr[static_cast<std::size_t>(row.n)];
        EXPECT_EQ(row.disc, tn * tn - 4 * ipow(3, row.n)) << row.n;
        EXPECT_LT(row.sine_deviation, 1e-6) << row.n;
    }
    EXPECT_EQ(rows[0].disc, -11);
    EXPECT_EQ(rows[7].disc, -13475);
    EXPECT_NEAR(rows[7].log_ratio, 1.082, 1e-3);
    EXPECT_EQ(rows[11].disc, -281600);
    EXPECT_NEAR(rows[11].log_ratio, 0.952, 1e-3);
}

TEST(DiscGrowth, SupersingularZeroes) {
    auto rows = disc_growth_table(weil(kSupersingular, 3), 4);
    EXPECT_EQ(rows[0].disc, -12);
    EXPECT_EQ(rows[1].disc, 0);
    EXPECT_EQ(rows[3].disc, 0);
}

TEST(DensityFilter, Flags) {
    auto s = density_filter(weil(kSupersingular, 3), 1, 12);
    for (long n = 2; n <= 12; n += 2) EXPECT_NE(std::find(s.begin(), s.end(), n), s.end()) << n;
    for (long n = 1; n <= 12; n += 2) EXPECT_EQ(std::find(s.begin(), s.end(), n), s.end()) << n;
    EXPECT_TRUE(density_filter(weil(kOrdinary, 3), 5, 1).empty());
    // every flagged n for the ordinary class really has a small sine
    WeilPolynomial h = weil(kOrdinary, 3);
    const double theta = std::acos(1.0 / (2.0 * std::sqrt(3.0)));
    for (long n : density_filter(h, 1, 40)) EXPECT_LT(std::abs(std::sin(n * theta)), 1.0 / n) << n;
}

TEST(CountReport, QuarticPipeline) {
    WeilPolynomial h = weil(kQuartic, 11);
    auto r = count_report(h, 1);
    EXPECT_FALSE(r.degenerate);
    EXPECT_GE(r.N, 1);
    EXPECT_EQ(r.kernel_size, r.N_min);
    EXPECT_EQ(r.k_ramified, 1);
    EXPECT_EQ(r.lift_profile.num_canonical_lifts, 2);
}

TEST(CountReport, LiftMultiplicityNotFolded) {
    // the supersingular class has 2 lifts but N is still the plain class-number sum
    auto r = count_report(weil(kSupersingular, 3), 3);
    EXPECT_EQ(r.lift_profile.num_canonical_lifts, 2);
    long i = r.index.get_si();
    long expected = 0;
    for (long f = 1; f <= i; ++f)
        if (i % f == 0) expected += form_class_number(-3, f);
    EXPECT_EQ(r.N, expected);
}
