#include <gtest/gtest.h>

#include "support.hpp"

using namespace rmiso;
using namespace testing_support;

TEST(SmallFieldArithmetic, FieldAxioms) {
    for (int q : {9, 25, 27, 49}) {
        SmallField F(q);
        ASSERT_EQ(F.size(), q);
        int squares = 0;
        for (int x = 0; x < q; ++x) {
            EXPECT_EQ(F.add(x, F.neg(x)), 0);
            int inverses = 0;
            for (int y = 0; y < q; ++y) {
                EXPECT_EQ(F.mul(x, y), F.mul(y, x));
                if (F.mul(x, y) == 1) ++inverses;
            }
            EXPECT_EQ(inverses, x == 0 ? 0 : 1);
            if (x != 0 && F.chi(x) == 1) ++squares;
        }
        EXPECT_EQ(squares, (q - 1) / 2);
    }
}

TEST(EnumerateEcClasses, Examples) {
    EXPECT_EQ(enumerate_ec_classes(3, 1).count, 1);
    EXPECT_EQ(enumerate_ec_classes(5, 2).count, 2);
    EXPECT_THROW(enumerate_ec_classes(5, 5), PreconditionViolation);
    EXPECT_THROW(curve_census(4), InvalidInput);
    EXPECT_THROW(curve_census(53), InvalidInput);
}

TEST(EnumerateEcClasses, MatchesNaivePrimeCensus) {
    for (int p : {5, 7, 11, 13}) {
        CurveCensus cs = curve_census(p);
        auto naive = naive_prime_census(p);
        EXPECT_EQ(cs.classes_by_trace, naive) << p;
    }
}

TEST(EnumerateEcClasses, TwistSymmetryAndMass) {
    for (int q : {3, 5, 7, 9, 11, 13, 25, 27}) {
        CurveCensus cs = curve_census(q);
        long total = 0;
        Rat mass = 0;
        for (const auto& [t, c] : cs.classes_by_trace) {
            auto it = cs.classes_by_trace.find(-t);
            ASSERT_NE(it, cs.classes_by_trace.end()) << q << " " << t;
            EXPECT_EQ(it->second, c) << q << " " << t;
            EXPECT_LE(Int(t) * t, 4 * q);
            total += c;
            mass += cs.mass_by_trace.at(t);
        }
        EXPECT_EQ(total, cs.total_classes);
        // sum of 1/#Aut over all curves over F_q is q
        EXPECT_EQ(mass, Rat(q)) << q;
    }
}

TEST(Crosscheck, Examples) {
    auto r31 = crosscheck_ordinary(3, 1);
    EXPECT_TRUE(r31.equal);
    EXPECT_EQ(r31.enumerated, 1);
    auto r52 = crosscheck_ordinary(5, 2);
    EXPECT_TRUE(r52.equal);
    EXPECT_EQ(r52.enumerated, 2);
    auto r71 = crosscheck_ordinary(7, 1);
    EXPECT_TRUE(r71.equal);
    EXPECT_EQ(r71.enumerated, 2);
    EXPECT_EQ(count_report(weil("x^2-x+7", 7), 1).index, 3);
    EXPECT_THROW(crosscheck_ordinary(5, 5), PreconditionViolation);
}

TEST(Crosscheck, AllOrdinaryTracesSmallPrimes) {
    for (int q : {3, 5, 7, 11, 13}) {
        CurveCensus cs = curve_census(q);
        for (long t : hasse_traces(q)) {
            if (t % q == 0) continue;
            auto rec = crosscheck(q, t, cs);
            EXPECT_TRUE(rec.ordinary);
            EXPECT_TRUE(rec.equal) << "q=" << q << " t=" << t << " predicted=" << (rec.predicted ? rec.predicted->get_str() : rec.predicted_error)
                                   << " enumerated=" << rec.enumerated;
        }
    }
}

TEST(Crosscheck, SupersingularIsInformational) {
    auto rec = crosscheck(5, 0);
    EXPECT_FALSE(rec.ordinary);
    EXPECT_GT(rec.enumerated, 0);
}
