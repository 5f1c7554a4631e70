#include <gtest/gtest.h>

#include "support.hpp"

using namespace rmiso;
using namespace testing_support;

namespace {

// Schoolbook product of polynomials with coefficients reduced into [0, mod).
std::vector<Int> mul_mod(const std::vector<Int>& a, const std::vector<Int>& b, const Int& mod) {
    std::vector<Int> c(a.size() + b.size() - 1, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    for (auto& x : c) {
        x %= mod;
        if (x < 0) x += mod;
    }
    return c;
}

std::vector<Int> coeffs_mod(const IntPoly& f, const Int& mod) { return mul_mod(f.coeffs(), {Int(1)}, mod); }

void expect_reconstructs(const WeilPolynomial& h, const LocalFactorization& lf) {
    std::vector<Int> prod{Int(1)};
    for (const auto& f : lf.ordinary_unit_part) prod = mul_mod(prod, f.coeffs(), lf.modulus);
    for (const auto& f : lf.ordinary_val1_part) prod = mul_mod(prod, f.coeffs(), lf.modulus);
    for (const auto& f : lf.ss_factors) prod = mul_mod(prod, f.poly.coeffs(), lf.modulus);
    std::vector<Int> full{Int(1)};
    for (int i = 0; i < lf.multiplicity; ++i) full = mul_mod(full, prod, lf.modulus);
    EXPECT_EQ(full, coeffs_mod(h.poly, lf.modulus)) << to_string(h.poly);
}

}  // namespace

TEST(NewtonPolygon, Examples) {
    auto n1 = newton_polygon(weil(kOrdinary, 3));
    EXPECT_EQ(n1.p_rank, 1);
    EXPECT_EQ(n1.a, 0);
    EXPECT_EQ(n1.multiplicity(Rat(0)), 1);
    EXPECT_EQ(n1.multiplicity(Rat(1)), 1);

    auto n2 = newton_polygon(weil(kSupersingular, 3));
    EXPECT_EQ(n2.p_rank, 0);
    EXPECT_EQ(n2.a, 1);
    EXPECT_EQ(n2.multiplicity(Rat(1, 2)), 2);

    auto n3 = newton_polygon(weil(kQuartic, 11));
    EXPECT_EQ(n3.p_rank, 1);
    EXPECT_EQ(n3.a, 1);
    EXPECT_EQ(n3.multiplicity(Rat(0)), 1);
    EXPECT_EQ(n3.multiplicity(Rat(1, 2)), 2);
    EXPECT_EQ(n3.multiplicity(Rat(1)), 1);
}

TEST(NewtonPolygon, RejectsOtherSlopes) {
    // x^6 + 3x^3 + 27 over q = 3: hull through (0,3), (3,1), (6,0) gives slopes 1/3 and 2/3
    WeilPolynomial h;
    h.poly = parse_poly("x^6+3x^3+27");
    h.base = h.poly;
    h.p = 3;
    h.q = 3;
    h.m = 1;
    h.g = 3;
    EXPECT_THROW(newton_polygon(h), UnsupportedStratum);
    NewtonProfile np = newton_slopes(h.poly, h.p, h.m);
    EXPECT_EQ(np.multiplicity(Rat(1, 3)), 3);
    EXPECT_EQ(np.multiplicity(Rat(2, 3)), 3);
}

TEST(NewtonPolygon, SymmetryAndMultiplicities) {
    for (long g : {1L, 2L})
        for (const auto& h : search_weil(g, Int(5), 1, 8)) {
            NewtonProfile np = newton_slopes(h.poly, h.p, h.m);
            EXPECT_TRUE(np.symmetric()) << to_string(h.poly);
            long total = 0;
            for (const auto& [s, k] : np.slopes) {
                EXPECT_EQ(k, np.multiplicity(Rat(1) - s)) << to_string(h.poly);
                total += k;
            }
            EXPECT_EQ(total, 2 * h.g);
        }
}

TEST(CheckTotallySplit, Examples) {
    EXPECT_TRUE(check_totally_split(parse_poly("x^2-x-1"), Int(11)));
    EXPECT_FALSE(check_totally_split(parse_poly("x^2-x-4"), Int(3)));
    EXPECT_TRUE(check_totally_split(parse_poly("x"), Int(7)));
    // y^2 - y - 11 has disc 45 = 5 * 3^2: index 3 over O_L, split at 11
    EXPECT_TRUE(check_totally_split(parse_poly("x^2-x-11"), Int(11), Int(5)));
    EXPECT_FALSE(check_totally_split(parse_poly("x^2-x-11"), Int(3), Int(5)));
}

TEST(HenselFactor, OrdinaryUnitRoot) {
    WeilPolynomial h = weil(kOrdinary, 3);
    LocalFactorization lf = hensel_factor(h, 6);
    ASSERT_EQ(lf.ordinary_unit_part.size(), 1u);
    ASSERT_EQ(lf.ordinary_val1_part.size(), 1u);
    EXPECT_TRUE(lf.ss_factors.empty());
    const Int u = -lf.ordinary_unit_part[0].coeff(0);
    EXPECT_EQ(mod(u, Int(3)), 1);
    // u is a root of h mod 3^6
    EXPECT_EQ(mod(u * u - u + 3, Int(729)), 0);
    expect_reconstructs(h, lf);
}

TEST(HenselFactor, SupersingularAndQuartic) {
    WeilPolynomial s = weil(kSupersingular, 3);
    LocalFactorization ls = local_factorization(s);
    ASSERT_EQ(ls.ss_factors.size(), 1u);
    EXPECT_EQ(ls.ss_factors[0].type, SsType::Ramified);
    EXPECT_EQ(mod(ls.ss_factors[0].poly.coeff(0), ls.modulus), 3);
    EXPECT_EQ(mod(ls.ss_factors[0].poly.coeff(1), ls.modulus), 0);

    WeilPolynomial h = weil(kQuartic, 11);
    LocalFactorization lf = hensel_factor(h, 6);
    EXPECT_EQ(lf.ordinary_unit_part.size(), 1u);
    EXPECT_EQ(lf.ordinary_val1_part.size(), 1u);
    EXPECT_EQ(lf.ss_factors.size(), 1u);
    EXPECT_EQ(lf.k_ramified(), 1);
    expect_reconstructs(h, lf);
}

TEST(HenselFactor, ReconstructsOnSearchOutputs) {
    for (long g : {1L, 2L})
        for (const auto& h : search_weil(g, Int(5), 1, 10)) {
            // bases like x^2 - q (real Weil numbers) have no real counterpart
            if (!satisfies_functional_equation(h.base, h.q)) continue;
            IntPoly hr = real_counterpart_of(h.base, h.q);
            if (!check_totally_split(hr, h.p)) continue;
            LocalFactorization lf;
            try {
                lf = local_factorization(h);
            } catch (const UnsupportedStratum&) {
                continue;
            }
            expect_reconstructs(h, lf);
            // m odd forces ramification
            for (const auto& f : lf.ss_factors) EXPECT_EQ(f.type, SsType::Ramified) << to_string(h.poly);
            // stable under doubling the precision
            LocalFactorization lf2 = hensel_factor(h, 2 * lf.precision);
            ASSERT_EQ(lf2.ss_factors.size(), lf.ss_factors.size());
            for (std::size_t i = 0; i < lf.ss_factors.size(); ++i) EXPECT_EQ(lf.ss_factors[i].type, lf2.ss_factors[i].type);
        }
}

TEST(HenselFactor, RequiresSplitPrime) {
    // real counterpart y^2 - y - 4 has no roots mod 3
    WeilPolynomial h = weil("x^4-x^3+2x^2-3x+9", 3);
    EXPECT_THROW(local_factorization(h), PreconditionViolation);
}

TEST(ClassifySsFactor, Examples) {
    EXPECT_EQ(classify_ss_factor(parse_poly("x^2+3"), Int(3), 1, 6), SsType::Ramified);
    EXPECT_EQ(classify_ss_factor(parse_poly("x^2+9"), Int(3), 2, 6), SsType::Unramified);
    EXPECT_THROW(classify_ss_factor(parse_poly("x^2-x+3"), Int(3), 1, 6), PreconditionViolation);
    // stable in precision
    for (long M : {4L, 8L, 16L}) EXPECT_EQ(classify_ss_factor(parse_poly("x^2+9"), Int(3), 2, M), SsType::Unramified);
}

TEST(ClassifySsFactor, UnramifiedThroughPipeline) {
    WeilPolynomial h = weil("x^2+9", 3, 2);
    LocalFactorization lf = local_factorization(h);
    ASSERT_EQ(lf.ss_factors.size(), 1u);
    EXPECT_EQ(lf.ss_factors[0].type, SsType::Unramified);
    EXPECT_EQ(lf.k_ramified(), 0);
}

TEST(LiftProfile, Examples) {
    auto a = lift_profile(1, 1);
    EXPECT_EQ(a.num_canonical_lifts, 2);
    EXPECT_EQ(a.num_subcategories, 1);
    auto b = lift_profile(2, 0);
    EXPECT_EQ(b.num_canonical_lifts, 1);
    EXPECT_EQ(b.num_subcategories, 4);
    auto c = lift_profile(3, 1);
    EXPECT_EQ(c.num_canonical_lifts, 2);
    EXPECT_EQ(c.num_subcategories, 4);
    EXPECT_THROW(lift_profile(1, 2), PreconditionViolation);
}

TEST(Analyze, ClassificationReports) {
    AnalysisReport o = analyze(weil(kOrdinary, 3));
    EXPECT_EQ(o.newton.p_rank, 1);
    EXPECT_EQ(o.newton.a, 0);
    ASSERT_TRUE(o.lifts);
    EXPECT_EQ(o.lifts->num_canonical_lifts, 1);

    AnalysisReport s = analyze(weil(kSupersingular, 3));
    EXPECT_EQ(s.newton.a, 1);
    EXPECT_EQ(s.k_ramified, 1);
    ASSERT_TRUE(s.lifts);
    EXPECT_EQ(s.lifts->num_canonical_lifts, 2);
    EXPECT_EQ(s.lifts->num_subcategories, 1);

    AnalysisReport q = analyze(weil(kQuartic, 11));
    EXPECT_EQ(q.rm_disc, 5);
    EXPECT_TRUE(q.p_split);
    ASSERT_EQ(q.ss_types.size(), 1u);
    EXPECT_EQ(q.ss_types[0], SsType::Ramified);
}
