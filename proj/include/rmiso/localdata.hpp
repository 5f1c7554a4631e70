#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmiso/weil.hpp"

namespace rmiso {

/// Newton polygon of a validated Weil polynomial; only slopes 0, 1/2, 1 are supported.
inline NewtonProfile newton_polygon(const WeilPolynomial& h) {
    NewtonProfile prof = newton_slopes(h.poly, h.p, h.m);
    for (const auto& [s, k] : prof.slopes)
        if (s != 0 && s != 1 && s != Rat(1, 2)) throw UnsupportedStratum("unsupported Newton stratum: slope " + s.get_str());
    return prof;
}

/// True iff f splits into distinct linear factors mod p and p does not divide disc(f)/disc_OL.
/// Degree <= 1 (the field Q) is always split.
inline bool check_totally_split(const IntPoly& f, const Int& p, std::optional<Int> disc_OL = {}) {
    if (f.degree() <= 1) return true;
    if (disc_OL) {
        Int ratio = discriminant(f) / *disc_OL;
        if (ratio % p == 0) return false;
    }
    IntPoly fm = modpoly::reduce(f, p);
    if (fm.degree() != f.degree()) return false;
    if (modpoly::gcd(fm, fm.derivative(), p).degree() > 0) return false;
    return static_cast<long>(modpoly::roots(fm, p).size()) == f.degree();
}

enum class SsType { Ramified, Unramified };

inline const char* to_string(SsType t) { return t == SsType::Ramified ? "ramified" : "unramified"; }

struct SsFactor {
    IntPoly poly;  ///< x^2 - b x + q reduced mod p^M
    SsType type = SsType::Ramified;
};

struct LocalFactorization {
    Int p;
    long m = 1;
    long precision = 0;  ///< M
    Int modulus;         ///< p^M
    int multiplicity = 1;  ///< e: the factors below are those of the irreducible base r, h = r^e
    std::vector<Int> real_roots;          ///< p-adic roots of the real counterpart of r, mod p^M
    std::vector<IntPoly> ordinary_unit_part;  ///< linear factors x - u with u a unit
    std::vector<IntPoly> ordinary_val1_part;  ///< linear factors x - q/u
    std::vector<SsFactor> ss_factors;

    long a() const { return static_cast<long>(ss_factors.size()); }
    long k_ramified() const {
        long k = 0;
        for (const auto& f : ss_factors)
            if (f.type == SsType::Ramified) ++k;
        return k;
    }
    /// Product of all factors raised to e, reduced mod p^M.
    IntPoly product() const {
        IntPoly prod = IntPoly::constant(Int(1));
        for (const auto& f : ordinary_unit_part) prod = modpoly::mul(prod, f, modulus);
        for (const auto& f : ordinary_val1_part) prod = modpoly::mul(prod, f, modulus);
        for (const auto& f : ss_factors) prod = modpoly::mul(prod, f.poly, modulus);
        IntPoly out = IntPoly::constant(Int(1));
        for (int i = 0; i < multiplicity; ++i) out = modpoly::mul(out, prod, modulus);
        return out;
    }
};

/// Classifies a supersingular quadratic x^2 + c1 x + c0 (coefficients mod p^M) as ramified or unramified over Q_p.
inline SsType classify_ss_factor(const IntPoly& f, const Int& p, long m, long precision) {
    if (p == 2) throw PreconditionViolation("p = 2 is not supported");
    if (f.degree() != 2 || !f.is_monic()) throw PreconditionViolation("expected a monic quadratic factor");
    const Int pm = pow_int(p, static_cast<unsigned long>(precision));
    const Int c0 = mod(f.coeff(0), pm), c1 = mod(f.coeff(1), pm);
    // both roots of valuation m/2: v(c0) = m and 2 v(c1) >= m
    long v0 = c0 == 0 ? precision : valuation(c0, p);
    long v1 = c1 == 0 ? precision : valuation(c1, p);
    if (v0 != m || 2 * v1 < m) throw PreconditionViolation("factor is not supersingular (roots of valuation 1/2 required)");
    Int d = mod(c1 * c1 - 4 * c0, pm);
    if (d == 0) throw PrecisionError("discriminant vanishes modulo p^M");
    long v = valuation(d, p);
    if (v % 2 == 1) return SsType::Ramified;
    Int unit = d / pow_int(p, static_cast<unsigned long>(v));
    if (legendre(mod(unit, p), p) == -1) return SsType::Unramified;
    throw PreconditionViolation("factor splits over Q_p");
}

inline long default_precision(const WeilPolynomial& h) {
    Int d = discriminant(squarefree_part(h.poly));
    long v = d == 0 ? 0 : valuation(d, h.p);
    return v + 2 * h.g + 4;
}

/// p-adic factorization of the irreducible base of h into ordinary linear factors and supersingular quadratics.
inline LocalFactorization hensel_factor(const WeilPolynomial& h, long precision) {
    if (precision < 1) throw PreconditionViolation("precision must be positive");
    const Int& p = h.p;
    const Int& q = h.q;
    if (!satisfies_functional_equation(h.base, q)) throw UnsupportedStratum("irreducible base is not a Weil q-polynomial of its own degree");
    newton_polygon(h);
    IntPoly hr = real_counterpart_of(h.base, q);
    LocalFactorization lf;
    lf.p = p;
    lf.m = h.m;
    lf.precision = precision;
    lf.modulus = pow_int(p, static_cast<unsigned long>(precision));
    lf.multiplicity = h.e;
    lf.real_roots = padic_integer_roots(hr, p, precision);
    if (static_cast<long>(lf.real_roots.size()) != hr.degree()) throw PreconditionViolation("p is not totally split in the real subfield");
    const Int& pm = lf.modulus;
    for (const Int& b : lf.real_roots) {
        IntPoly quad({q, Int(-b), Int(1)});
        if (b % p != 0) {
            Int u = detail::hensel_simple_root(quad, mod(b, p), p, precision);
            Int w = mod(q * inv_mod(u, pm), pm);
            lf.ordinary_unit_part.push_back(IntPoly({mod(Int(-u), pm), Int(1)}));
            lf.ordinary_val1_part.push_back(IntPoly({mod(Int(-w), pm), Int(1)}));
            continue;
        }
        long vb = b == 0 ? precision : valuation(b, p);
        if (2 * vb < h.m) throw UnsupportedStratum("root valuation strictly between 0 and 1/2");
        IntPoly f = modpoly::reduce(quad, pm);
        lf.ss_factors.push_back({f, classify_ss_factor(f, p, h.m, precision)});
    }
    std::sort(lf.ordinary_unit_part.begin(), lf.ordinary_unit_part.end());
    std::sort(lf.ordinary_val1_part.begin(), lf.ordinary_val1_part.end());
    std::sort(lf.ss_factors.begin(), lf.ss_factors.end(), [](const SsFactor& x, const SsFactor& y) { return x.poly < y.poly; });
    if (lf.product() != modpoly::reduce(h.poly, pm)) throw PrecisionError("local factors do not reconstruct h");
    return lf;
}

/// hensel_factor at the default precision, doubling on precision failure.
inline LocalFactorization local_factorization(const WeilPolynomial& h, std::optional<long> precision = {}) {
    long M = precision ? *precision : default_precision(h);
    for (int attempt = 0; attempt < 8; ++attempt, M *= 2) {
        try {
            return hensel_factor(h, M);
        } catch (const PrecisionError&) {
        }
    }
    throw ResourceLimit("p-adic precision doubling limit reached");
}

struct LiftProfile {
    long a = 0;
    long k = 0;
    Int num_canonical_lifts = 1;
    Int num_subcategories = 1;
};

inline LiftProfile lift_profile(long a, long k) {
    if (a < 0 || k < 0 || k > a) throw PreconditionViolation("lift profile needs 0 <= k <= a");
    LiftProfile lp;
    lp.a = a;
    lp.k = k;
    lp.num_canonical_lifts = pow_int(Int(2), static_cast<unsigned long>(k));
    lp.num_subcategories = pow_int(Int(2), static_cast<unsigned long>(a - k));
    return lp;
}

}  // namespace rmiso
