#pragma once

#include <optional>
#include <vector>

#include "rmiso/ideals.hpp"
#include "rmiso/localdata.hpp"

namespace rmiso {

/// The order R_n of the CM field K = Q(alpha) with its construction data.
struct RnData {
    WeilPolynomial h;
    long n = 1;
    IntPoly hn;                      ///< characteristic polynomial of alpha^n on K
    FieldPtr K;
    Order OK;
    std::optional<RealSubfield> real;  ///< g = 2 only
    std::vector<Elem> OL_generators;   ///< O_L basis embedded in K (empty for g = 1)
    Order S;                           ///< generated by O_L, alpha^n, q^n / alpha^n
    Order R;
    Int index = 1;                     ///< [O_K : R]
    bool saturated = false;            ///< the supersingular block was enlarged at p
    long saturation_precision = 0;
    Elem ss_idempotent;                ///< approximate idempotent of the supersingular block (when saturated)
};

/// Frobenius field: K = Q[x]/(r) for the irreducible base r of h with conjugation alpha -> q/alpha.
inline FieldPtr frobenius_field(const WeilPolynomial& h) { return weil_field(h.base, h.q); }

namespace detail {

/// s, t with s a + t b = 1 over Q (a, b coprime).
inline std::pair<RatPoly, RatPoly> rat_xgcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b, s0 = RatPoly::constant(Rat(1)), s1, t0, t1 = RatPoly::constant(Rat(1));
    while (!r1.is_zero()) {
        auto [qt, rm] = divmod(r0, r1);
        RatPoly s2 = s0 - qt * s1, t2 = t0 - qt * t1;
        r0 = r1;
        r1 = rm;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw PrecisionError("local factor approximants are not coprime over Q");
    Rat inv = Rat(1) / r0.coeff(0);
    return {inv * s0, inv * t0};
}

inline Elem poly_elem(const FieldData& K, const RatPoly& f) {
    RatPoly red = divmod(f, to_rat(K.r)).second;
    Elem e = zero_elem(K);
    for (std::size_t i = 0; i < K.n; ++i) e[i] = red.coeff(i);
    return e;
}

/// Idempotent of the supersingular block of O_K (x) Z_p, correct modulo p^M O_K, or nothing if the
/// p-adic factors were not precise enough.
inline std::optional<Elem> ss_idempotent(const FieldData& K, const Order& OK, const LocalFactorization& lf, long M) {
    const Int& p = lf.p;
    const Int pM = pow_int(p, static_cast<unsigned long>(M));
    IntPoly fss = IntPoly::constant(Int(1)), ford = IntPoly::constant(Int(1));
    for (const auto& f : lf.ss_factors) fss = fss * f.poly;
    for (const auto& f : lf.ordinary_unit_part) ford = ford * f;
    for (const auto& f : lf.ordinary_val1_part) ford = ford * f;
    auto [s, t] = rat_xgcd(to_rat(fss), to_rat(ford));
    Elem approx = poly_elem(K, t * to_rat(ford));  // = 1 on the ss block, 0 on the ordinary block
    std::vector<Rat> coords = solve_left(OK.lat.basis_matrix(), approx);
    auto ob = OK.basis();
    Elem e = zero_elem(K);
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const Rat& c = coords[i];
        Int den = c.get_den();
        if (den % p == 0) return std::nullopt;
        Int ci = mod(Int(c.get_num() * inv_mod(mod(den, pM), pM)), pM);
        e = add(e, scale(Rat(ci), ob[i]));
    }
    // e^2 = e and fss(alpha) e = 0 modulo p^Mc O_K; the second test pins down the ss block
    const long Mc = std::max(M, lf.m * lf.a() + 1);
    const Rat inv_pM = frac(Int(1), pM);
    if (!contains(OK, scale(inv_pM, sub(mul(K, e, e), e)))) return std::nullopt;
    Elem fa = poly_elem(K, to_rat(fss));
    if (!contains(OK, scale(frac(Int(1), pow_int(p, static_cast<unsigned long>(Mc))), mul(K, fa, e)))) return std::nullopt;
    Rat tr = trace(K, e);
    if (tr.get_den() != 1 || mod(Int(tr.get_num() - 2 * lf.a()), pM) != 0) return std::nullopt;
    return e;
}

}  // namespace detail

/// Smallest order containing O_L, alpha^n, q^n/alpha^n whose completion at p contains the maximal order of
/// the supersingular block.
inline RnData construct_Rn(const WeilPolynomial& h, long n, std::optional<LocalFactorization> local = {}) {
    if (n < 1) throw InvalidInput("n must be positive");
    WeilPolynomial base = h;
    base.poly = h.base;
    base.e = 1;
    PowerCharPoly pc = char_poly_of_power(base, n);
    if (pc.degenerate) throw InvalidInput("alpha^" + std::to_string(n) + " is degenerate (h_n not squarefree or has a root +-q^{n/2})");
    RnData d;
    d.h = h;
    d.n = n;
    d.hn = pc.poly;
    d.K = frobenius_field(h);
    const FieldData& K = *d.K;
    d.OK = maximal_order(d.K);
    const long g = static_cast<long>(K.n / 2);
    if (g == 2) {
        d.real = real_subfield(d.K);
        for (const auto& w : d.real->OL.basis()) d.OL_generators.push_back(embed_real(K, *d.real, w));
    } else if (g != 1) {
        throw UnsupportedStratum("only g = 1 and g = 2 are supported");
    }
    Elem an = pow(K, alpha_elem(K), static_cast<unsigned long>(n));
    Elem bn = conj(K, an);
    std::vector<Elem> gens = d.OL_generators;
    gens.push_back(an);
    gens.push_back(bn);
    d.S = order_from_generators(d.K, gens);
    d.R = d.S;
    LocalFactorization lf = local ? *local : local_factorization(h);
    const Int i = index(d.S, d.OK);
    const long v = valuation(i, h.p);
    if (lf.a() > 0 && v > 0) {
        const Int prime_to_p = i / pow_int(h.p, static_cast<unsigned long>(v));
        long M = v + 1;
        for (int attempt = 0; attempt < 8; ++attempt, M *= 2) {
            std::optional<Elem> e;
            if (lf.a() == g) {
                e = const_elem(K, Rat(1));
            } else {
                LocalFactorization lfm = lf;
                long P = std::max(lf.precision, 2 * M + 4);
                for (int j = 0; j < 6 && !e; ++j, P *= 2) {
                    lfm = hensel_factor(base, P);
                    e = detail::ss_idempotent(K, d.OK, lfm, M);
                }
            }
            if (!e) continue;
            const Int pM = pow_int(h.p, static_cast<unsigned long>(M));
            std::vector<Elem> span = d.S.basis();
            for (const auto& w : d.OK.basis()) {
                span.push_back(scale(Rat(prime_to_p), mul(K, *e, w)));
                span.push_back(scale(Rat(prime_to_p * pM), w));
            }
            Lattice lat = lattice_from_generators(span, K.n);
            if (!is_ring(K, lat)) continue;
            d.R = Order{d.K, lat};
            d.saturated = true;
            d.saturation_precision = M;
            d.ss_idempotent = *e;
            break;
        }
        if (!d.saturated) throw ResourceLimit("supersingular idempotent precision retries exhausted");
    }
    d.index = index(d.R, d.OK);
    return d;
}

}  // namespace rmiso
