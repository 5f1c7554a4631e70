#pragma once

// Shared fixtures and independent reference computations for the tests. Nothing here calls into the library
// routines it is used to check.

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rmiso.hpp"

namespace testing_support {

using rmiso::Int;

inline rmiso::WeilPolynomial weil(const std::string& text, long p, long m = 1) {
    return rmiso::validate_weil(rmiso::parse_poly(text), Int(p), m);
}

inline const char* kOrdinary = "x^2-x+3";
inline const char* kSupersingular = "x^2+3";
inline const char* kQuartic = "x^4-x^3+11x^2-11x+121";

/// Primitive reduced positive definite forms (a, b, c) of discriminant D < 0.
inline long reduced_form_count(long D) {
    long count = 0;
    for (long a = 1; 3 * a * a <= -D; ++a)
        for (long b = -a + 1; b <= a; ++b) {
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            long g = std::gcd(std::gcd(a, std::labs(b)), c);
            if (g == 1) ++count;
        }
    return count;
}

/// Traces t_n = alpha^n + conj(alpha)^n of x^2 - t x + q by the linear recurrence.
inline std::vector<Int> power_traces(long t, long q, long n_max) {
    std::vector<Int> tr{Int(2), Int(t)};
    for (long n = 2; n <= n_max; ++n) tr.push_back(Int(t) * tr[static_cast<std::size_t>(n - 1)] - Int(q) * tr[static_cast<std::size_t>(n - 2)]);
    return tr;
}

inline Int ipow(long b, long e) {
    Int r = 1;
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

/// Divisor count of a positive integer by trial division.
inline long divisor_count(Int n) {
    long count = 0;
    for (Int d = 1; d * d <= n; ++d)
        if (n % d == 0) count += (d * d == n) ? 1 : 2;
    return count;
}

/// Naive census over a prime field p >= 5: curves y^2 = x^3 + a x + b up to (a, b) ~ (u^4 a, u^6 b), keyed by
/// trace. Uses plain integer arithmetic modulo p and a set of canonical minima.
inline std::map<long, long> naive_prime_census(long p) {
    auto md = [p](long v) { return ((v % p) + p) % p; };
    std::set<std::pair<long, long>> seen;
    std::map<long, long> out;
    for (long a = 0; a < p; ++a)
        for (long b = 0; b < p; ++b) {
            if (md(4 * a * a * a + 27 * b * b) == 0) continue;
            std::pair<long, long> canon{p, p};
            for (long u = 1; u < p; ++u) {
                long u2 = md(u * u), u4 = md(u2 * u2), u6 = md(u4 * u2);
                canon = std::min(canon, std::pair<long, long>{md(u4 * a), md(u6 * b)});
            }
            if (!seen.insert(canon).second) continue;
            long pts = 1;
            for (long x = 0; x < p; ++x) {
                long f = md(x * x * x + a * x + b);
                for (long y = 0; y < p; ++y)
                    if (md(y * y) == f) ++pts;
            }
            out[p + 1 - pts] += 1;
        }
    return out;
}

}  // namespace testing_support
