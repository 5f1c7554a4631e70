#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "rmiso/polynomial.hpp"

namespace rmiso {

/// Arithmetic in (Z/N)[x] on IntPoly values with coefficients kept in [0, N).
namespace modpoly {

inline IntPoly reduce(const IntPoly& f, const Int& n) {
    std::vector<Int> c;
    for (const auto& v : f.coeffs()) c.push_back(mod(v, n));
    return IntPoly(std::move(c));
}

inline IntPoly add(const IntPoly& a, const IntPoly& b, const Int& n) { return reduce(a + b, n); }
inline IntPoly sub(const IntPoly& a, const IntPoly& b, const Int& n) { return reduce(a - b, n); }
inline IntPoly mul(const IntPoly& a, const IntPoly& b, const Int& n) { return reduce(a * b, n); }
inline IntPoly scale(const Int& s, const IntPoly& a, const Int& n) { return reduce(s * a, n); }

/// Division with remainder; the leading coefficient of b must be a unit mod n.
inline std::pair<IntPoly, IntPoly> divmod(const IntPoly& a, const IntPoly& b, const Int& n) {
    IntPoly bb = reduce(b, n);
    if (bb.is_zero()) throw PreconditionViolation("modular division by zero polynomial");
    Int inv = inv_mod(bb.leading(), n);
    std::vector<Int> r = reduce(a, n).coeffs();
    const long db = bb.degree();
    if (static_cast<long>(r.size()) - 1 < db) return {IntPoly(), IntPoly(r)};
    std::vector<Int> q(r.size() - static_cast<std::size_t>(db), Int(0));
    for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
        Int f = mod(r[static_cast<std::size_t>(i)] * inv, n);
        if (f == 0) continue;
        q[static_cast<std::size_t>(i - db)] = f;
        for (long j = 0; j <= db; ++j) {
            auto& t = r[static_cast<std::size_t>(i - db + j)];
            t = mod(t - f * bb.coeff(static_cast<std::size_t>(j)), n);
        }
    }
    return {IntPoly(std::move(q)), IntPoly(std::move(r))};
}

inline IntPoly rem(const IntPoly& a, const IntPoly& b, const Int& n) { return divmod(a, b, n).second; }

inline IntPoly monic(const IntPoly& a, const Int& n) {
    if (a.is_zero()) return a;
    return scale(inv_mod(a.leading(), n), a, n);
}

/// Monic gcd over F_p.
inline IntPoly gcd(IntPoly a, IntPoly b, const Int& p) {
    a = reduce(a, p);
    b = reduce(b, p);
    while (!b.is_zero()) {
        IntPoly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, p);
}

/// Extended gcd over F_p: returns (g, s, t) with s*a + t*b = g monic.
inline std::tuple<IntPoly, IntPoly, IntPoly> xgcd(const IntPoly& a, const IntPoly& b, const Int& p) {
    IntPoly r0 = reduce(a, p), r1 = reduce(b, p);
    IntPoly s0 = IntPoly::constant(Int(1)), s1, t0, t1 = IntPoly::constant(Int(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1, p);
        r0 = std::move(r1);
        r1 = std::move(r);
        IntPoly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Int inv = inv_mod(r0.leading(), p);
    return {scale(inv, r0, p), scale(inv, s0, p), scale(inv, t0, p)};
}

inline IntPoly powmod(IntPoly base, Int e, const IntPoly& m, const Int& n) {
    IntPoly r = rem(IntPoly::constant(Int(1)), m, n);
    base = rem(base, m, n);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(mul(r, base, n), m, n);
        base = rem(mul(base, base, n), m, n);
        e >>= 1;
    }
    return r;
}

/// Equal-degree splitting of a monic squarefree f over F_p whose irreducible factors all have degree d.
inline void equal_degree_split(const IntPoly& f, long d, const Int& p, std::mt19937_64& rng, std::vector<IntPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    const Int e = (pow_int(p, static_cast<unsigned long>(d)) - 1) / 2;
    while (true) {
        std::vector<Int> c;
        for (long i = 0; i < f.degree(); ++i) c.push_back(Int(static_cast<unsigned long>(rng())) % p);
        IntPoly a(std::move(c));
        if (a.degree() <= 0) continue;
        IntPoly b;
        if (p == 2) {
            // trace map a + a^2 + ... + a^{2^{d-1}}
            IntPoly t = rem(a, f, p);
            b = t;
            for (long i = 1; i < d; ++i) {
                t = rem(mul(t, t, p), f, p);
                b = add(b, t, p);
            }
        } else {
            b = sub(powmod(a, e, f, p), IntPoly::constant(Int(1)), p);
        }
        IntPoly g = gcd(f, b, p);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, p, rng, out);
            equal_degree_split(modpoly::divmod(f, g, p).first, d, p, rng, out);
            return;
        }
    }
}

/// Irreducible monic factors of a monic polynomial squarefree mod p, sorted.
inline std::vector<IntPoly> factor_squarefree(const IntPoly& f_in, const Int& p) {
    IntPoly f = monic(reduce(f_in, p), p);
    std::vector<IntPoly> out;
    std::mt19937_64 rng(12345);
    IntPoly x = IntPoly::x();
    IntPoly h = rem(x, f, p);
    long d = 0;
    while (f.degree() > 0) {
        ++d;
        if (2 * d > f.degree()) {
            out.push_back(f);
            break;
        }
        h = powmod(h, p, f, p);
        IntPoly g = gcd(f, sub(h, x, p), p);
        if (g.degree() > 0) {
            equal_degree_split(g, d, p, rng, out);
            f = modpoly::divmod(f, g, p).first;
            h = rem(h, f, p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Distinct roots in F_p of f (nonzero mod p), ascending.
inline std::vector<Int> roots(const IntPoly& f_in, const Int& p) {
    IntPoly f = reduce(f_in, p);
    std::vector<Int> out;
    if (f.degree() <= 0) return out;
    if (p < 200) {
        for (Int r = 0; r < p; ++r)
            if (mod(f.eval(r), p) == 0) out.push_back(r);
        return out;
    }
    f = monic(f, p);
    IntPoly x = IntPoly::x();
    IntPoly g = gcd(f, sub(powmod(x, p, f, p), x, p), p);
    if (g.degree() <= 0) return out;
    std::vector<IntPoly> lin;
    std::mt19937_64 rng(777);
    equal_degree_split(g, 1, p, rng, lin);
    for (const auto& l : lin) out.push_back(mod(-l.coeff(0), p));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace modpoly

/// g(a + b t) as a polynomial in t.
inline IntPoly compose_linear(const IntPoly& g, const Int& a, const Int& b) {
    IntPoly lin({a, b});
    IntPoly r;
    for (std::size_t i = g.coeffs().size(); i-- > 0;) r = r * lin + IntPoly::constant(g.coeffs()[i]);
    return r;
}

/// Lifts f = G*H (mod p) with G, H monic and coprime mod p to a factorization mod p^k.
inline std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& f, IntPoly g, IntPoly h, const Int& p, long k) {
    if (!f.is_monic()) throw PreconditionViolation("Hensel lifting needs a monic polynomial");
    auto [one, s, t] = modpoly::xgcd(g, h, p);
    if (one.degree() != 0) throw PrecisionError("Hensel factors not coprime modulo p");
    Int pj = p;
    for (long j = 1; j < k; ++j) {
        IntPoly err = f - g * h;
        std::vector<Int> e;
        for (const auto& v : err.coeffs()) {
            if (v % pj != 0) throw PreconditionViolation("Hensel invariant broken");
            e.push_back(mod(v / pj, p));
        }
        IntPoly ep(std::move(e));
        IntPoly rr = modpoly::rem(modpoly::mul(ep, s, p), h, p);
        IntPoly tau_g = modpoly::divmod(modpoly::sub(ep, modpoly::mul(g, rr, p), p), h, p).first;
        g = g + pj * tau_g;
        h = h + pj * rr;
        pj *= p;
    }
    return {modpoly::reduce(g, pj), modpoly::reduce(h, pj)};
}

/// Lifts a complete factorization of monic f into pairwise coprime monic factors mod p to mod p^k.
inline std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<IntPoly>& factors, const Int& p, long k) {
    std::vector<IntPoly> out;
    IntPoly rest = f;
    const Int pk = pow_int(p, static_cast<unsigned long>(k));
    for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
        IntPoly cof = IntPoly::constant(Int(1));
        for (std::size_t j = i + 1; j < factors.size(); ++j) cof = modpoly::mul(cof, factors[j], p);
        // rest is only known mod p^k; the pair lift needs an exact integer polynomial
        auto [g, h] = hensel_lift_pair(rest, modpoly::reduce(factors[i], p), cof, p, k);
        out.push_back(g);
        rest = h;
    }
    out.push_back(modpoly::reduce(rest, pk));
    return out;
}

inline Int symmetric_mod(const Int& v, const Int& n) {
    Int r = mod(v, n);
    if (2 * r > n) r -= n;
    return r;
}

inline IntPoly symmetric_reduce(const IntPoly& f, const Int& n) {
    std::vector<Int> c;
    for (const auto& v : f.coeffs()) c.push_back(symmetric_mod(v, n));
    return IntPoly(std::move(c));
}

/// Irreducible factors over Z of a monic squarefree integer polynomial (Zassenhaus), sorted.
inline std::vector<IntPoly> factor_squarefree_monic(const IntPoly& f) {
    if (!f.is_monic()) throw PreconditionViolation("factorization expects a monic polynomial");
    if (f.degree() <= 1) return {f};
    Int disc = discriminant(f);
    if (disc == 0) throw PreconditionViolation("factorization expects a squarefree polynomial");
    Int p = 0;
    std::vector<IntPoly> modular;
    int tried = 0;
    for (Int cand = 3; tried < 8; ++cand) {
        if (!is_prime(cand) || disc % cand == 0) continue;
        ++tried;
        auto fac = modpoly::factor_squarefree(f, cand);
        if (p == 0 || fac.size() < modular.size()) {
            p = cand;
            modular = fac;
        }
        if (modular.size() == 1) return {f};
    }
    // coefficient bound for factors: 2^deg * ||f||_2
    Int norm2 = 0;
    for (const auto& v : f.coeffs()) norm2 += v * v;
    Int bound = pow_int(Int(2), static_cast<unsigned long>(f.degree())) * (isqrt(norm2) + 1);
    long k = 1;
    Int pk = p;
    while (pk <= 2 * bound) {
        pk *= p;
        ++k;
    }
    std::vector<IntPoly> lifted = hensel_lift(f, modular, p, k);
    std::vector<IntPoly> result;
    IntPoly rest = f;
    std::size_t s = 1;
    while (2 * s <= lifted.size()) {
        bool found = false;
        std::vector<std::size_t> idx(s);
        for (std::size_t i = 0; i < s; ++i) idx[i] = i;
        while (true) {
            IntPoly cand = IntPoly::constant(Int(1));
            for (auto i : idx) cand = modpoly::mul(cand, lifted[i], pk);
            cand = symmetric_reduce(cand, pk);
            auto [q, r] = rmiso::divmod(to_rat(rest), to_rat(cand));
            bool integral = r.is_zero();
            if (integral)
                for (const auto& v : q.coeffs())
                    if (v.get_den() != 1) integral = false;
            if (integral) {
                result.push_back(cand);
                rest = primitive_part(q);
                std::vector<IntPoly> remaining;
                for (std::size_t i = 0; i < lifted.size(); ++i)
                    if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(lifted[i]);
                lifted.swap(remaining);
                found = true;
                break;
            }
            // next combination
            long pos = static_cast<long>(s) - 1;
            while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == lifted.size() - s + static_cast<std::size_t>(pos)) --pos;
            if (pos < 0) break;
            ++idx[static_cast<std::size_t>(pos)];
            for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
        }
        if (!found) ++s;
    }
    if (rest.degree() > 0) result.push_back(rest);
    std::sort(result.begin(), result.end());
    return result;
}

/// Factorization of a monic integer polynomial into irreducible monic factors with multiplicities.
inline std::vector<std::pair<IntPoly, int>> factor_monic(const IntPoly& f) {
    if (!f.is_monic()) throw PreconditionViolation("factorization expects a monic polynomial");
    std::vector<std::pair<IntPoly, int>> out;
    for (const auto& [mult, part] : squarefree_decomposition(f))
        for (const auto& irr : factor_squarefree_monic(part)) out.emplace_back(irr, mult);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

inline bool is_irreducible(const IntPoly& f) {
    if (f.degree() <= 0) return false;
    IntPoly m = primitive_part(f);
    if (!m.is_monic()) throw PreconditionViolation("irreducibility test expects a monic polynomial");
    if (!is_squarefree(m)) return false;
    return factor_squarefree_monic(m).size() == 1;
}

namespace detail {

inline Int hensel_simple_root(const IntPoly& g, Int r, const Int& p, long k) {
    // Newton iteration with doubling precision
    IntPoly dg = g.derivative();
    long prec = 1;
    while (prec < k) {
        prec = std::min(2 * prec, k);
        Int n = pow_int(p, static_cast<unsigned long>(prec));
        Int val = mod(g.eval(r), n), der = mod(dg.eval(r), n);
        r = mod(r - val * inv_mod(der, n), n);
    }
    return r;
}

inline void padic_roots_rec(const IntPoly& g, const Int& base, const Int& scale, long scale_val, const Int& p, long precision,
                            std::vector<Int>& out, int depth) {
    if (depth > 10000) throw ResourceLimit("p-adic root recursion too deep");
    for (const Int& r : modpoly::roots(g, p)) {
        Int d = mod(g.derivative().eval(r), p);
        if (d != 0) {
            long need = precision - scale_val;
            Int t = need <= 1 ? r : hensel_simple_root(g, r, p, need);
            out.push_back(mod(base + scale * t, pow_int(p, static_cast<unsigned long>(precision))));
            continue;
        }
        IntPoly g2 = compose_linear(g, r, p);
        Int c = content(g2);
        long v = valuation(c, p);
        Int pv = pow_int(p, static_cast<unsigned long>(v));
        std::vector<Int> coeffs;
        for (const auto& x : g2.coeffs()) coeffs.push_back(x / pv);
        padic_roots_rec(IntPoly(std::move(coeffs)), base + scale * r, scale * p, scale_val + 1, p, precision, out, depth + 1);
    }
}

}  // namespace detail

/// Roots in Z_p of a squarefree integer polynomial, returned modulo p^precision in ascending order.
/// Roots are separated exactly, so coincidences modulo p^precision appear with multiplicity.
inline std::vector<Int> padic_integer_roots(const IntPoly& f, const Int& p, long precision) {
    if (!is_squarefree(f)) throw PreconditionViolation("p-adic root finding expects a squarefree polynomial");
    Int c = content(f);
    long v = valuation(c, p);
    Int pv = pow_int(p, static_cast<unsigned long>(v));
    std::vector<Int> coeffs;
    for (const auto& x : f.coeffs()) coeffs.push_back(x / pv);
    std::vector<Int> out;
    detail::padic_roots_rec(IntPoly(std::move(coeffs)), Int(0), Int(1), 0, p, precision, out, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace rmiso
