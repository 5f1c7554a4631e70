#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmiso/modp.hpp"

namespace rmiso {

/// Newton slopes of an integer polynomial: valuations of its roots divided by m, with multiplicities.
struct NewtonProfile {
    std::vector<std::pair<Rat, long>> slopes;  ///< ascending
    long g = 0;
    long p_rank = 0;  ///< multiplicity of slope 0
    long a = 0;       ///< half the multiplicity of slope 1/2

    long multiplicity(const Rat& s) const {
        for (const auto& [v, k] : slopes)
            if (v == s) return k;
        return 0;
    }
    bool symmetric() const {
        for (const auto& [v, k] : slopes)
            if (multiplicity(1 - v) != k) return false;
        return true;
    }
    std::string describe() const {
        std::string out = "{";
        bool first = true;
        for (const auto& [v, k] : slopes)
            for (long i = 0; i < k; ++i) {
                if (!first) out += ",";
                out += v.get_str();
                first = false;
            }
        return out + "}";
    }
};

/// Lower convex hull of (i, v_p(a_i)); slopes normalized by m. Does not restrict the slope set.
inline NewtonProfile newton_slopes(const IntPoly& h, const Int& p, long m) {
    if (h.degree() < 1) throw PreconditionViolation("Newton polygon of a constant");
    std::vector<std::pair<long, long>> pts;
    for (long i = 0; i <= h.degree(); ++i) {
        const Int& c = h.coeffs()[static_cast<std::size_t>(i)];
        if (c != 0) pts.emplace_back(i, valuation(c, p));
    }
    if (pts.front().first != 0) throw PreconditionViolation("Newton polygon needs a nonzero constant term");
    std::vector<std::pair<long, long>> hull;
    for (const auto& pt : pts) {
        while (hull.size() >= 2) {
            auto [x1, y1] = hull[hull.size() - 2];
            auto [x2, y2] = hull.back();
            // drop the middle point if it lies on or above the segment from x1 to pt
            if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1))
                hull.pop_back();
            else
                break;
        }
        hull.push_back(pt);
    }
    NewtonProfile prof;
    prof.g = h.degree() / 2;
    std::map<Rat, long> acc;
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        long len = hull[i + 1].first - hull[i].first;
        Rat root_val = frac(Int(hull[i].second - hull[i + 1].second), Int(len * m));
        acc[root_val] += len;
    }
    for (const auto& kv : acc) prof.slopes.push_back(kv);
    prof.p_rank = prof.multiplicity(Rat(0));
    prof.a = prof.multiplicity(Rat(1, 2)) / 2;
    return prof;
}

/// Validated Weil q-polynomial h = r^e with r irreducible.
struct WeilPolynomial {
    IntPoly poly;
    Int p;
    long m = 1;
    Int q;
    long g = 0;
    IntPoly base;  ///< irreducible r with poly = r^e
    int e = 1;
};

/// Coefficient form of x^{2g} h(q/x) = q^g h(x).
inline bool satisfies_functional_equation(const IntPoly& h, const Int& q) {
    if (h.degree() < 0 || h.degree() % 2 != 0) return false;
    const long d = h.degree(), g = d / 2;
    // a_i = q^{g-i} a_{2g-i} for i <= g
    for (long i = 0; i <= g; ++i) {
        const Int& ai = h.coeffs()[static_cast<std::size_t>(i)];
        const Int& aj = h.coeffs()[static_cast<std::size_t>(d - i)];
        if (ai != pow_int(q, static_cast<unsigned long>(g - i)) * aj) return false;
    }
    return true;
}

/// Real counterpart h_r of degree g with h(x) = x^g h_r(x + q/x); requires the functional equation.
inline IntPoly real_counterpart_of(const IntPoly& h, const Int& q) {
    const long d = h.degree();
    if (d % 2 != 0) throw PreconditionViolation("real counterpart needs even degree");
    const long g = d / 2;
    // Solve x^{-g} h(x) = sum_k c_k y^k triangularly, y = x + q/x, on Laurent coefficients of x^j, |j| <= g.
    std::vector<Rat> target(static_cast<std::size_t>(2 * g + 1));
    for (long j = -g; j <= g; ++j) target[static_cast<std::size_t>(j + g)] = Rat(h.coeffs()[static_cast<std::size_t>(j + g)]);
    std::vector<Rat> result(static_cast<std::size_t>(g + 1), Rat(0));
    // powers of y as Laurent coefficient vectors
    std::vector<std::vector<Rat>> ypow(static_cast<std::size_t>(g + 1), std::vector<Rat>(static_cast<std::size_t>(2 * g + 1), Rat(0)));
    ypow[0][static_cast<std::size_t>(g)] = 1;
    for (long k = 1; k <= g; ++k) {
        for (long j = -g; j <= g; ++j) {
            const Rat& c = ypow[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j + g)];
            if (c == 0) continue;
            if (j + 1 <= g) ypow[static_cast<std::size_t>(k)][static_cast<std::size_t>(j + 1 + g)] += c;
            if (j - 1 >= -g) ypow[static_cast<std::size_t>(k)][static_cast<std::size_t>(j - 1 + g)] += c * Rat(q);
        }
    }
    for (long k = g; k >= 0; --k) {
        Rat coef = target[static_cast<std::size_t>(k + g)];  // y^k has x^k coefficient 1
        result[static_cast<std::size_t>(k)] = coef;
        for (long j = -g; j <= g; ++j) target[static_cast<std::size_t>(j + g)] -= coef * ypow[static_cast<std::size_t>(k)][static_cast<std::size_t>(j + g)];
    }
    for (const auto& t : target)
        if (t != 0) throw PreconditionViolation("polynomial is not of the form x^g h_r(x + q/x)");
    std::vector<Int> c;
    for (const auto& v : result) {
        if (v.get_den() != 1) throw PreconditionViolation("real counterpart has non-integral coefficients");
        c.emplace_back(v.get_num());
    }
    return IntPoly(std::move(c));
}

inline IntPoly real_counterpart(const WeilPolynomial& h) { return real_counterpart_of(h.poly, h.q); }

/// Validates h as a Weil q-polynomial with q = p^m, p odd prime, h = r^e with r irreducible.
inline WeilPolynomial validate_weil(const IntPoly& h, const Int& p, long m) {
    if (m < 1) throw InvalidInput("exponent m must be positive");
    if (!is_prime(p)) throw InvalidInput("p = " + p.get_str() + " is not prime");
    if (p == 2) throw InvalidInput("p = 2 is not supported");
    if (!h.is_monic()) throw InvalidInput("Weil polynomial must be monic");
    if (h.degree() < 2 || h.degree() % 2 != 0) throw InvalidInput("Weil polynomial must have even positive degree");
    WeilPolynomial w;
    w.poly = h;
    w.p = p;
    w.m = m;
    w.q = pow_int(p, static_cast<unsigned long>(m));
    w.g = h.degree() / 2;
    if (!satisfies_functional_equation(h, w.q)) throw InvalidInput("functional equation x^{2g} h(q/x) = q^g h(x) fails");
    IntPoly hr = real_counterpart_of(h, w.q);
    IntPoly s = squarefree_part(hr);
    if (count_roots_in_weil_interval(s, w.q) != s.degree())
        throw InvalidInput("some root does not have absolute value sqrt(q)");
    auto factors = factor_monic(h);
    if (factors.size() != 1) throw InvalidInput("polynomial has distinct irreducible factors");
    w.base = factors.front().first;
    w.e = factors.front().second;
    return w;
}

/// Companion matrix (columns: images of the power basis under multiplication by x).
inline IntMatrix companion_matrix(const IntPoly& h) {
    const std::size_t d = static_cast<std::size_t>(h.degree());
    IntMatrix c(d, d, Int(0));
    for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
    for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -h.coeffs()[i];
    return c;
}

inline IntMatrix matrix_power(IntMatrix base, unsigned long e) {
    IntMatrix r = IntMatrix::identity(base.rows());
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

struct PowerCharPoly {
    IntPoly poly;
    bool degenerate = false;
};

/// True when h_n is not squarefree or has +-q^{n/2} as a root.
inline bool is_degenerate_power(const IntPoly& hn, const Int& q, long n) {
    if (!is_squarefree(hn)) return true;
    Int qn = pow_int(q, static_cast<unsigned long>(n));
    if (is_square(qn)) {
        Int s = isqrt(qn);
        return hn.eval(s) == 0 || hn.eval(Int(-s)) == 0;
    }
    IntPoly quad({Int(-qn), Int(0), Int(1)});
    return divmod(to_rat(hn), to_rat(quad)).second.is_zero();
}

/// Characteristic polynomial of alpha^n via the n-th power of the companion matrix.
inline PowerCharPoly char_poly_of_power(const WeilPolynomial& h, long n) {
    if (n < 1) throw InvalidInput("n must be positive");
    IntMatrix cn = matrix_power(companion_matrix(h.poly), static_cast<unsigned long>(n));
    std::vector<Rat> cp = charpoly(to_rat(cn));
    std::vector<Int> c;
    for (const auto& v : cp) c.emplace_back(v.get_num());
    PowerCharPoly out;
    out.poly = IntPoly(std::move(c));
    out.degenerate = is_degenerate_power(out.poly, h.q, n);
    return out;
}

/// Exhaustive scan of Weil polynomials of degree 2g (g = 1, 2) with free coefficients bounded by coeff_bound.
/// When required_a is set, only polynomials whose slope-1/2 multiplicity is 2*required_a and whose slopes lie in
/// {0, 1/2, 1} are kept.
inline std::vector<WeilPolynomial> search_weil(long g, const Int& p, long m, long coeff_bound, std::optional<long> required_a = {}) {
    if (g != 1 && g != 2) throw InvalidInput("search supports g = 1 or 2");
    if (coeff_bound < 0) throw InvalidInput("coefficient bound must be nonnegative");
    const Int q = pow_int(p, static_cast<unsigned long>(m));
    std::vector<WeilPolynomial> out;
    auto consider = [&](const IntPoly& h) {
        try {
            WeilPolynomial w = validate_weil(h, p, m);
            if (required_a) {
                NewtonProfile prof = newton_slopes(h, p, m);
                for (const auto& [s, k] : prof.slopes)
                    if (s != 0 && s != 1 && s != Rat(1, 2)) return;
                if (prof.a != *required_a) return;
            }
            out.push_back(std::move(w));
        } catch (const InvalidInput&) {
        }
    };
    for (long c1 = -coeff_bound; c1 <= coeff_bound; ++c1) {
        if (g == 1) {
            consider(IntPoly({q, Int(c1), Int(1)}));
            continue;
        }
        for (long c2 = -coeff_bound; c2 <= coeff_bound; ++c2) consider(IntPoly({q * q, q * c1, Int(c2), Int(c1), Int(1)}));
    }
    return out;
}

}  // namespace rmiso
