#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmiso/error.hpp"

namespace rmiso {

using Int = mpz_class;
using Rat = mpq_class;

/// Canonical fraction num/den (den != 0).
inline Rat frac(const Int& num, const Int& den) {
    if (den == 0) throw PreconditionViolation("zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Rat abs_rat(const Rat& a) { return a < 0 ? Rat(-a) : a; }

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r = 1;
    for (unsigned long i = 0; i < e; ++i) r *= base;
    return r;
}

/// Floor division (rounds toward negative infinity).
inline Int fdiv(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Nonnegative residue of a modulo m (m > 0).
inline Int mod(const Int& a, const Int& m) {
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline Int cdiv(const Int& a, const Int& b) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int isqrt(const Int& a) {
    if (a < 0) throw InvalidInput("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

inline bool is_square(const Int& a) {
    return a >= 0 && mpz_perfect_square_p(a.get_mpz_t()) != 0;
}

/// Inverse of a modulo m; throws when gcd(a, m) != 1.
inline Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw PreconditionViolation("element not invertible modulo " + m.get_str());
    return r;
}

inline Int powm(const Int& base, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline bool is_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

/// p-adic valuation of a nonzero integer. Returns -1 for zero.
inline long valuation(const Int& a, const Int& p) {
    if (a == 0) return -1;
    Int x = abs_int(a);
    return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

/// p-adic valuation of a nonzero rational.
inline long valuation(const Rat& a, const Int& p) {
    if (a == 0) throw PreconditionViolation("valuation of zero rational");
    return valuation(Int(a.get_num()), p) - valuation(Int(a.get_den()), p);
}

/// Legendre symbol (a / p) for odd prime p.
inline int legendre(const Int& a, const Int& p) {
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

/// Kronecker symbol (a / n).
inline int kronecker(const Int& a, const Int& n) {
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

inline Rat floor_rat_to_rat(const Rat& r) { return Rat(fdiv(r.get_num(), r.get_den())); }

inline Int floor_rat(const Rat& r) { return fdiv(r.get_num(), r.get_den()); }

inline Int ceil_rat(const Rat& r) { return cdiv(r.get_num(), r.get_den()); }

/// Nearest integer, ties rounded up.
inline Int round_rat(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

inline int sign(const Int& a) { return sgn(a); }
inline int sign(const Rat& a) { return sgn(a); }

/// Largest integer k with k <= sqrt(r), r >= 0 rational.
inline Int floor_sqrt(const Rat& r) {
    if (r < 0) throw InvalidInput("floor_sqrt of negative rational");
    Int k = isqrt(floor_rat(r));
    while (Rat(k + 1) * Rat(k + 1) <= r) ++k;
    while (k > 0 && Rat(k) * Rat(k) > r) --k;
    return k;
}

/// Integer factorization by trial division and Pollard-Brent rho.
namespace detail {

inline Int pollard_brent(const Int& n, std::uint64_t seed) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Int y = Int(static_cast<unsigned long>(rng() % 1000003u)) % n;
        Int c = Int(static_cast<unsigned long>(rng() % 1000003u + 1u)) % n;
        Int g = 1, r = 1, qprod = 1, x, ys;
        const long m = 128;
        auto f = [&](const Int& v) { return mod(v * v + c, n); };
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = f(y);
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                for (long i = 0; i < m && k + i < r; ++i) {
                    y = f(y);
                    qprod = mod(qprod * abs_int(x - y), n);
                }
                g = gcd(qprod, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(abs_int(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
    throw ResourceLimit("integer factorization failed for " + n.get_str());
}

inline void factor_into(const Int& n, std::map<Int, long>& out, std::uint64_t seed) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_brent(n, seed);
    factor_into(d, out, seed + 1);
    factor_into(n / d, out, seed + 2);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0) as a sorted map prime -> exponent.
inline std::map<Int, long> factorize(const Int& n) {
    if (n == 0) throw InvalidInput("cannot factor zero");
    std::map<Int, long> out;
    Int m = abs_int(n);
    for (unsigned long p = 2; p < 10000 && Int(p) * Int(p) <= m; p += (p == 2 ? 1 : 2)) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            out[Int(p)] += 1;
            m /= p;
        }
    }
    if (m > 1) detail::factor_into(m, out, 0x9e3779b97f4a7c15ULL);
    return out;
}

/// All positive divisors of n > 0, ascending.
inline std::vector<Int> divisors(const Int& n) {
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factorize(n)) {
        std::vector<Int> next;
        for (const auto& d : divs) {
            Int pk = 1;
            for (long k = 0; k <= e; ++k) {
                next.push_back(d * pk);
                pk *= p;
            }
        }
        divs.swap(next);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// If n = p^m for a prime p, returns (p, m); otherwise (0, 0).
inline std::pair<Int, long> prime_power_decompose(const Int& n) {
    if (n < 2) return {0, 0};
    auto f = factorize(n);
    if (f.size() != 1) return {0, 0};
    return {f.begin()->first, f.begin()->second};
}

}  // namespace rmiso
