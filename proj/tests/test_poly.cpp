#include <gtest/gtest.h>

#include "support.hpp"

using namespace rmiso;
using namespace testing_support;

namespace {

IntPoly P(const char* s) { return parse_poly(s); }

}  // namespace

TEST(ParsePoly, SymbolicAndListForms) {
    IntPoly a = P("x^2-x+3");
    ASSERT_EQ(a.degree(), 2);
    EXPECT_EQ(a.coeff(0), 3);
    EXPECT_EQ(a.coeff(1), -1);
    EXPECT_EQ(a.coeff(2), 1);
    EXPECT_EQ(P("3,-1,1"), a);
    EXPECT_EQ(P("3*x^2 - 2x + 1"), IntPoly({Int(1), Int(-2), Int(3)}));
}

TEST(ParsePoly, RejectsNonInteger) {
    EXPECT_THROW(P("x^2-0.5"), InvalidInput);
    EXPECT_THROW(P("x^^2"), InvalidInput);
    EXPECT_THROW(P(""), InvalidInput);
}

TEST(ParsePoly, PrinterRoundTrip) {
    for (const char* s : {"x^2-x+3", "x^4-x^3+11*x^2-11*x+121", "x^2+3", "-2*x^3+x", "7"}) {
        IntPoly f = P(s);
        EXPECT_EQ(P(to_string(f).c_str()), f) << s;
    }
    EXPECT_EQ(to_string(P(kQuartic)), "x^4-x^3+11*x^2-11*x+121");
}

TEST(ValidateWeil, AcceptsAndRejects) {
    WeilPolynomial h = weil(kOrdinary, 3);
    EXPECT_EQ(h.g, 1);
    EXPECT_EQ(h.e, 1);
    EXPECT_EQ(h.q, 3);
    WeilPolynomial h4 = weil(kQuartic, 11);
    EXPECT_EQ(h4.g, 2);
    EXPECT_EQ(h4.e, 1);
    EXPECT_THROW(weil("x^2-4x+3", 3), InvalidInput);
    EXPECT_THROW(weil("x^3+1", 3), InvalidInput);
    EXPECT_THROW(weil("x^2+3", 4), InvalidInput);
    EXPECT_THROW(weil("x^2+4", 2, 2), InvalidInput);
}

TEST(ValidateWeil, PowersAndMixedFactors) {
    WeilPolynomial h = weil("x^4-2x^3+7x^2-6x+9", 3);  // (x^2-x+3)^2
    EXPECT_EQ(h.e, 2);
    EXPECT_EQ(h.base, P(kOrdinary));
    // (x^2-x+3)(x^2+x+3): distinct factors
    EXPECT_THROW(weil("x^4+5x^2+9", 3), InvalidInput);
}

TEST(RealCounterpart, Examples) {
    EXPECT_EQ(real_counterpart(weil(kOrdinary, 3)), P("x-1"));
    EXPECT_EQ(real_counterpart(weil(kQuartic, 11)), P("x^2-x-11"));
    EXPECT_EQ(real_counterpart(weil(kSupersingular, 3)), P("x"));
}

TEST(CharPolyOfPower, Examples) {
    WeilPolynomial h = weil(kOrdinary, 3);
    auto r1 = char_poly_of_power(h, 1);
    EXPECT_EQ(r1.poly, h.poly);
    EXPECT_FALSE(r1.degenerate);
    auto r2 = char_poly_of_power(h, 2);
    EXPECT_EQ(r2.poly, P("x^2+5x+9"));
    EXPECT_FALSE(r2.degenerate);
    auto s2 = char_poly_of_power(weil(kSupersingular, 3), 2);
    EXPECT_EQ(s2.poly, P("x^2+6x+9"));
    EXPECT_TRUE(s2.degenerate);
    EXPECT_THROW(char_poly_of_power(h, 0), InvalidInput);
}

TEST(CharPolyOfPower, TracesFollowRecurrence) {
    WeilPolynomial h = weil(kOrdinary, 3);
    auto tr = power_traces(1, 3, 24);
    for (long n = 1; n <= 12; ++n) {
        IntPoly hn = char_poly_of_power(h, n).poly;
        const Int tn = -hn.coeff(1);
        EXPECT_EQ(tn, tr[static_cast<std::size_t>(n)]) << n;
        EXPECT_EQ(hn.coeff(0), ipow(3, n));
        // Newton identity on doubling
        IntPoly h2n = char_poly_of_power(h, 2 * n).poly;
        EXPECT_EQ(-h2n.coeff(1), tn * tn - 2 * ipow(3, n)) << n;
        EXPECT_EQ(discriminant(hn), tn * tn - 4 * ipow(3, n)) << n;
    }
}

TEST(Discriminant, Examples) {
    EXPECT_EQ(discriminant(P("x^2-x+3")), -11);
    EXPECT_EQ(discriminant(P("x^2+8x+27")), -44);
    EXPECT_EQ(discriminant(P("x^2+6x+9")), 0);
    // cubic cross-check against the closed form -4a^3 - 27b^2 for x^3 + a x + b
    EXPECT_EQ(discriminant(P("x^3+2x+5")), -4 * 8 - 27 * 25);
}

TEST(SearchWeil, Examples) {
    auto ord = search_weil(1, Int(3), 1, 3, 0);
    bool found = false;
    for (const auto& h : ord) {
        found = found || h.poly == P(kOrdinary);
        EXPECT_EQ(newton_slopes(h.poly, h.p, h.m).a, 0);
    }
    EXPECT_TRUE(found);

    auto quart = search_weil(2, Int(11), 1, 12, 1);
    found = false;
    for (const auto& h : quart) found = found || h.poly == P(kQuartic);
    EXPECT_TRUE(found);

    auto zero = search_weil(1, Int(3), 1, 0);
    ASSERT_EQ(zero.size(), 1u);
    EXPECT_EQ(zero[0].poly, P(kSupersingular));
}

TEST(SearchWeil, OutputsSatisfyFunctionalEquation) {
    for (const auto& h : search_weil(2, Int(3), 1, 6)) {
        const Int q = h.q;
        // q^{g-i} a_{2g-i}... coefficientwise: a_i = q^{g-i} a_{2g-i} for i <= g
        for (long i = 0; i <= h.g; ++i) {
            Int lhs = h.poly.coeff(static_cast<std::size_t>(i));
            Int rhs = pow_int(q, static_cast<unsigned long>(h.g - i)) * h.poly.coeff(static_cast<std::size_t>(2 * h.g - i));
            EXPECT_EQ(lhs, rhs) << to_string(h.poly);
        }
    }
}

TEST(RealRoots, SturmIsolationIsExact) {
    // roots of y^2 - y - 11 are (1 +- 3 sqrt 5) / 2
    auto ivs = isolate_real_roots(P("x^2-x-11"));
    ASSERT_EQ(ivs.size(), 2u);
    EXPECT_NEAR(approx_root(P("x^2-x-11"), ivs[0]), (1 - 3 * std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_NEAR(approx_root(P("x^2-x-11"), ivs[1]), (1 + 3 * std::sqrt(5.0)) / 2, 1e-12);
    EXPECT_EQ(count_roots_in_weil_interval(P("x^2-x-11"), Int(11)), 2);
    EXPECT_EQ(count_roots_in_weil_interval(P("x-4"), Int(3)), 0);
    // sign of y - 1 at the two roots
    EXPECT_EQ(sign_at_root(P("x^2-x-11"), ivs[0], P("x-1")), -1);
    EXPECT_EQ(sign_at_root(P("x^2-x-11"), ivs[1], P("x-1")), 1);
}
