#include <gtest/gtest.h>

#include "support.hpp"

using namespace rmiso;
using namespace testing_support;

namespace {

/// Equation order of discriminant D < 0.
Order order_of_disc(long D) {
    IntPoly r = (D % 4 == 0) ? IntPoly({Int(-D / 4), Int(0), Int(1)}) : IntPoly({Int((1 - D) / 4), Int(-1), Int(1)});
    return equation_order(quadratic_field(r));
}

struct OrdinaryField {
    FieldPtr K = frobenius_field(weil(kOrdinary, 3));
    Order Za = equation_order(K);
    Elem one = const_elem(*K, Rat(1));
    Elem a = alpha_elem(*K);
    Elem abar = conj(*K, a);
    Elem c(long v) const { return const_elem(*K, Rat(v)); }
};

}  // namespace

TEST(IdealArithmetic, ProductInverseNorm) {
    OrdinaryField f;
    FractionalIdeal P = ideal_from_generators(f.Za, {f.c(3), f.a});
    FractionalIdeal Pbar = ideal_from_generators(f.Za, {f.c(3), f.abar});
    EXPECT_EQ(ideal_norm(P), 3);
    EXPECT_EQ(ideal_product(P, Pbar), ideal_from_generators(f.Za, {f.c(3)}));
    EXPECT_EQ(ideal_product(P, unit_ideal(f.Za)), P);

    FractionalIdeal A = ideal_from_generators(f.Za, {f.a});
    FractionalIdeal Ainv = ideal_inverse(A);
    EXPECT_EQ(Ainv, ideal_from_generators(f.Za, {scale(Rat(1, 3), f.abar)}));
    EXPECT_EQ(ideal_product(A, Ainv), unit_ideal(f.Za));
    EXPECT_EQ(ideal_norm(ideal_product(P, A)), ideal_norm(P) * ideal_norm(A));
}

TEST(MultiplicatorRing, Examples) {
    OrdinaryField f;
    Order OK = maximal_order(f.K);
    EXPECT_EQ(multiplicator_ring(f.K, OK.lat), OK);
    Elem a3 = pow(*f.K, f.a, 3);
    Order R3 = order_from_generators(f.K, {a3});
    FractionalIdeal I = ideal_from_generators(R3, {f.c(3), sub(a3, f.one)});
    EXPECT_EQ(multiplicator_ring(f.K, I.lat), R3);
    // an R3-ideal always has multiplicator ring containing R3
    FractionalIdeal J = ideal_from_generators(R3, {f.c(2), add(f.one, f.a)});
    EXPECT_TRUE(contains(multiplicator_ring(f.K, J.lat).lat, R3.lat));
}

TEST(IsPrincipal, Examples) {
    OrdinaryField f;
    FractionalIdeal A = ideal_from_generators(f.Za, {f.a});
    auto g = is_principal(A);
    ASSERT_TRUE(g);
    EXPECT_EQ(abs_rat(norm(*f.K, *g)), 3);

    FractionalIdeal P = ideal_from_generators(f.Za, {f.c(3), f.a});
    auto gp = is_principal(P);
    ASSERT_TRUE(gp);
    EXPECT_EQ(ideal_from_generators(f.Za, {*gp}), P);

    // form (3, 2, 4) of disc -44: 3Z + (-1 + sqrt(-11))Z inside Z[sqrt(-11)] = Z[alpha^3]
    Order R3 = order_from_generators(f.K, {pow(*f.K, f.a, 3)});
    Elem w = sub(scale(Rat(2), f.a), f.c(2));
    FractionalIdeal Q = ideal_from_generators(R3, {f.c(3), w});
    EXPECT_EQ(ideal_norm(Q), 3);
    EXPECT_FALSE(is_principal(Q));
}

TEST(ClassGroup, Examples) {
    OrdinaryField f;
    ClassGroup c1 = class_group(f.Za);
    EXPECT_EQ(c1.h, 1);
    ClassGroup c3 = class_group(order_from_generators(f.K, {pow(*f.K, f.a, 3)}));
    EXPECT_EQ(c3.h, 3);
    EXPECT_EQ(c3.invariants, std::vector<Int>{3});
    ClassGroup cs = class_group(maximal_order(frobenius_field(weil(kSupersingular, 3))));
    EXPECT_EQ(cs.h, 1);
}

TEST(ClassGroup, RepresentativesAreDistinctAndInvertible) {
    for (long D : {-44L, -56L, -84L, -104L, -231L}) {
        Order R = order_of_disc(D);
        ClassGroup cg = class_group(R);
        Int prod = 1;
        for (const auto& d : cg.invariants) prod *= d;
        EXPECT_EQ(prod, cg.h);
        ASSERT_EQ(Int(static_cast<long>(cg.representatives.size())), cg.h);
        for (std::size_t i = 0; i < cg.representatives.size(); ++i) {
            const auto& I = cg.representatives[i];
            EXPECT_EQ(ideal_product(I, ideal_inverse(I)), unit_ideal(R));
            for (std::size_t j = 0; j < i; ++j)
                EXPECT_FALSE(is_principal(ideal_product(I, ideal_inverse(cg.representatives[j])))) << D << " " << i << " " << j;
        }
    }
}

TEST(ClassGroup, MatchesReducedFormCount) {
    for (long D = -3; D >= -700; --D) {
        if (((D % 4) + 4) % 4 > 1) continue;
        EXPECT_EQ(class_group(order_of_disc(D)).h, reduced_form_count(D)) << D;
    }
}

TEST(BqfClassNumber, Examples) {
    EXPECT_EQ(bqf_class_number(Int(-11)), 1);
    EXPECT_EQ(bqf_class_number(Int(-44)), 3);
    EXPECT_EQ(bqf_class_number(Int(-3)), 1);
    EXPECT_EQ(bqf_class_number(Int(-13475)), 32);
    EXPECT_THROW(bqf_class_number(Int(-5)), InvalidInput);
    EXPECT_THROW(bqf_class_number(Int(5)), InvalidInput);
    for (long D = -3; D >= -2000; --D)
        if (((D % 4) + 4) % 4 <= 1) ASSERT_EQ(bqf_class_number(Int(D)), reduced_form_count(D)) << D;
}

TEST(NarrowClassGroup, RealQuadratic) {
    Order O5 = maximal_order(quadratic_field(parse_poly("x^2-x-1")));
    EXPECT_EQ(narrow_class_group(O5).h, 1);
    EXPECT_EQ(fundamental_unit(Int(5)).norm, -1);
    Order O3 = maximal_order(quadratic_field(parse_poly("x^2-3")));
    EXPECT_EQ(class_group(O3).h, 1);
    EXPECT_EQ(narrow_class_group(O3).h, 2);
    EXPECT_EQ(fundamental_unit(Int(12)).norm, 1);
    // Q(sqrt 10): h = 2, unit 3 + sqrt 10 of norm -1, so h+ = h
    Order O10 = maximal_order(quadratic_field(parse_poly("x^2-10")));
    EXPECT_EQ(class_group(O10).h, 2);
    EXPECT_EQ(narrow_class_group(O10).h, 2);
}

TEST(NormMapKernel, Examples) {
    OrdinaryField f;
    ClassGroup c3 = class_group(order_from_generators(f.K, {pow(*f.K, f.a, 3)}));
    NormKernel k3 = norm_map_kernel_trivial_target(c3);
    EXPECT_EQ(k3.size, c3.h);
    NormKernel k1 = norm_map_kernel_trivial_target(class_group(f.Za));
    EXPECT_EQ(k1.size, 1);

    WeilPolynomial h = weil(kQuartic, 11);
    FieldPtr K = frobenius_field(h);
    RealSubfield rs = real_subfield(K);
    ClassGroup cl = class_group(maximal_order(K), {}, rs);
    ClassGroup narrow = narrow_class_group(rs.OL);
    EXPECT_EQ(narrow.h, 1);
    NormKernel kq = norm_map_kernel(cl, rs, narrow);
    EXPECT_EQ(kq.size, cl.h);
}
