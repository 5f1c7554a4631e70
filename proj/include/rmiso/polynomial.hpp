#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "rmiso/bigint.hpp"
#include "rmiso/matrix.hpp"

namespace rmiso {

/// Dense univariate polynomial, constant term first. The zero polynomial has no coefficients.
template <class T>
class Poly {
public:
    Poly() = default;
    Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { normalize(); }
    Poly(std::initializer_list<long> coeffs) {
        for (long v : coeffs) c_.push_back(T(v));
        normalize();
    }

    static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
    static Poly monomial(const T& v, std::size_t k) {
        std::vector<T> c(k + 1, T(0));
        c[k] = v;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(T(1), 1); }

    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    template <class U>
    U eval(const U& x) const {
        U r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * x + U(c_[i]);
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<T> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
        return Poly(std::move(d));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a) { return Poly() - a; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> r = a.c_;
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
        return false;
    }

    Poly pow(unsigned long e) const {
        Poly r = constant(T(1)), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntPoly = Poly<Int>;
using RatPoly = Poly<Rat>;

inline RatPoly to_rat(const IntPoly& p) {
    std::vector<Rat> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v);
    return RatPoly(std::move(c));
}

inline Int content(const IntPoly& p) {
    Int g = 0;
    for (const auto& v : p.coeffs()) g = gcd(g, v);
    return g;
}

/// Scales a rational polynomial to a primitive integer polynomial with positive leading coefficient.
inline IntPoly primitive_part(const RatPoly& p) {
    if (p.is_zero()) return IntPoly();
    Int den = 1;
    for (const auto& v : p.coeffs()) den = lcm(den, Int(v.get_den()));
    std::vector<Int> c;
    for (const auto& v : p.coeffs()) c.emplace_back(v * den);
    IntPoly r(std::move(c));
    Int g = content(r);
    if (r.leading() < 0) g = -g;
    std::vector<Int> d;
    for (const auto& v : r.coeffs()) d.emplace_back(v / g);
    return IntPoly(std::move(d));
}

inline IntPoly primitive_part(const IntPoly& p) { return primitive_part(to_rat(p)); }

/// Quotient and remainder over a field (or exact division when the divisor is monic over Z).
template <class T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
    if (b.is_zero()) throw PreconditionViolation("polynomial division by zero");
    std::vector<T> r = a.coeffs();
    const long db = b.degree();
    if (a.degree() < db) return {Poly<T>(), a};
    std::vector<T> q(static_cast<std::size_t>(a.degree() - db + 1), T(0));
    const T lb = b.leading();
    for (long i = a.degree(); i >= db; --i) {
        const T& ri = r[static_cast<std::size_t>(i)];
        if (ri == 0) continue;
        T f;
        if constexpr (std::is_same_v<T, Int>) {
            if (ri % lb != 0) throw PreconditionViolation("inexact integer polynomial division");
            f = ri / lb;
        } else {
            f = ri / lb;
        }
        q[static_cast<std::size_t>(i - db)] = f;
        for (long j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(static_cast<std::size_t>(j));
    }
    return {Poly<T>(std::move(q)), Poly<T>(std::move(r))};
}

/// Monic gcd over the rationals.
inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return (Rat(1) / a.leading()) * a;
}

/// Primitive gcd of integer polynomials (positive leading coefficient).
inline IntPoly gcd(const IntPoly& a, const IntPoly& b) { return primitive_part(gcd(to_rat(a), to_rat(b))); }

inline bool is_squarefree(const IntPoly& f) {
    if (f.degree() <= 0) return true;
    return gcd(f, f.derivative()).degree() == 0;
}

/// Squarefree part of a nonzero integer polynomial, made primitive.
inline IntPoly squarefree_part(const IntPoly& f) {
    IntPoly g = gcd(f, f.derivative());
    return primitive_part(divmod(to_rat(f), to_rat(g)).first);
}

/// Resultant via the Sylvester determinant.
inline Int resultant(const IntPoly& f, const IntPoly& g) {
    const long m = f.degree(), n = g.degree();
    if (m < 0 || n < 0) return 0;
    if (m == 0 && n == 0) return 1;
    const std::size_t size = static_cast<std::size_t>(m + n);
    IntMatrix s(size, size, Int(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j <= m; ++j) s(static_cast<std::size_t>(i), static_cast<std::size_t>(i + j)) = f.coeff(static_cast<std::size_t>(m - j));
    for (long i = 0; i < m; ++i)
        for (long j = 0; j <= n; ++j)
            s(static_cast<std::size_t>(n + i), static_cast<std::size_t>(i + j)) = g.coeff(static_cast<std::size_t>(n - j));
    return determinant(s);
}

/// Discriminant with the convention disc(x^2 + bx + c) = b^2 - 4c.
inline Int discriminant(const IntPoly& f) {
    const long n = f.degree();
    if (n < 1) throw PreconditionViolation("discriminant of a constant polynomial");
    if (n == 1) return 1;
    Int r = resultant(f, f.derivative());
    Int d = r / f.leading();
    if (((n * (n - 1)) / 2) % 2 == 1) d = -d;
    return d;
}

/// Yun squarefree decomposition over Q: f = lc * prod s_i^i; returns (i, s_i) for nonconstant s_i.
inline std::vector<std::pair<int, IntPoly>> squarefree_decomposition(const IntPoly& f) {
    std::vector<std::pair<int, IntPoly>> out;
    RatPoly a = to_rat(f);
    RatPoly b = gcd(a, a.derivative());
    RatPoly c = divmod(a, b).first;
    RatPoly d = divmod(a.derivative(), b).first - c.derivative();
    int i = 1;
    while (c.degree() > 0) {
        RatPoly s = gcd(c, d);
        if (s.degree() > 0) out.emplace_back(i, primitive_part(s));
        c = divmod(c, s).first;
        d = divmod(d, s).first - c.derivative();
        ++i;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Text form

/// Parses "x^2-x+3", "3*x^2 - 2x + 1" or a comma list "3,-1,1" (constant first).
inline IntPoly parse_poly(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw InvalidInput("empty polynomial text");
    auto parse_int = [](const std::string& tok) -> Int {
        std::string t = tok;
        if (!t.empty() && t[0] == '+') t.erase(0, 1);
        if (t.empty() || t == "-") throw InvalidInput("missing integer in '" + tok + "'");
        for (std::size_t i = (t[0] == '-' ? 1 : 0); i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) throw InvalidInput("non-integer coefficient '" + tok + "'");
        return Int(t);
    };
    if (s.find('x') == std::string::npos && s.find('X') == std::string::npos) {
        std::vector<Int> c;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = s.find(',', start);
            c.push_back(parse_int(s.substr(start, comma - start)));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return IntPoly(std::move(c));
    }
    std::vector<Int> c;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        Int sgn = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sgn = -1;
            ++i;
        } else if (!first) {
            throw InvalidInput("expected '+' or '-' at position " + std::to_string(i));
        }
        first = false;
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        Int coef = 1;
        bool has_digits = j > i;
        if (has_digits) coef = Int(s.substr(i, j - i));
        i = j;
        if (i < s.size() && (s[i] == '.' || s[i] == '/')) throw InvalidInput("non-integer coefficient in polynomial text");
        std::size_t power = 0;
        if (i < s.size() && s[i] == '*') {
            if (!has_digits) throw InvalidInput("dangling '*'");
            ++i;
            if (i >= s.size() || (s[i] != 'x' && s[i] != 'X')) throw InvalidInput("expected x after '*'");
        }
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t k = i;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                if (k == i) throw InvalidInput("missing exponent");
                power = std::stoul(s.substr(i, k - i));
                i = k;
            }
        } else if (!has_digits) {
            throw InvalidInput("malformed token at position " + std::to_string(i));
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-') throw InvalidInput("unexpected character '" + std::string(1, s[i]) + "'");
        if (c.size() <= power) c.resize(power + 1, Int(0));
        c[power] += sgn * coef;
    }
    return IntPoly(std::move(c));
}

/// Canonical symbolic form, descending powers, e.g. "x^4-x^3+11*x^2-11*x+121".
inline std::string to_string(const IntPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long k = p.degree(); k >= 0; --k) {
        Int v = p.coeff(static_cast<std::size_t>(k));
        if (v == 0) continue;
        Int a = abs_int(v);
        if (v < 0)
            out += "-";
        else if (!out.empty())
            out += "+";
        if (k == 0) {
            out += a.get_str();
            continue;
        }
        if (a != 1) out += a.get_str() + "*";
        out += "x";
        if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Real roots

/// Number a + b*sqrt(s) with rational a, b and a nonsquare-or-square integer s >= 0.
struct QuadSurd {
    Rat a, b;
    Int s;
};

inline int sign(const QuadSurd& v) {
    int sa = sgn(v.a), sb = sgn(v.b);
    if (sb == 0 || v.s == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 s
    Rat lhs = v.a * v.a, rhs = v.b * v.b * Rat(v.s);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

/// Evaluates f at t*sqrt(s) exactly for rational t.
inline QuadSurd eval_at_surd(const IntPoly& f, const Rat& t, const Int& s) {
    QuadSurd r{0, 0, s};
    // (t sqrt s)^k = t^k s^(k/2) [sqrt s if k odd]
    Rat tk = 1;
    Rat sk = 1;
    for (std::size_t k = 0; k < f.coeffs().size(); ++k) {
        Rat term = Rat(f.coeffs()[k]) * tk * sk;
        if (k % 2 == 0)
            r.a += term;
        else
            r.b += term;
        tk *= t;
        if (k % 2 == 1) sk *= Rat(s);
    }
    return r;
}

/// Sturm chain of a squarefree polynomial.
inline std::vector<RatPoly> sturm_chain(const IntPoly& f) {
    std::vector<RatPoly> chain{to_rat(f), to_rat(f.derivative())};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        RatPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

namespace detail {

inline int variations(const std::vector<int>& signs) {
    int v = 0, last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

}  // namespace detail

inline int sturm_variations_at(const std::vector<RatPoly>& chain, const Rat& x) {
    std::vector<int> s;
    for (const auto& p : chain) s.push_back(sgn(p.eval(x)));
    return detail::variations(s);
}

/// Sign variations at +inf (dir = +1) or -inf (dir = -1).
inline int sturm_variations_inf(const std::vector<RatPoly>& chain, int dir) {
    std::vector<int> s;
    for (const auto& p : chain) {
        int sl = sgn(p.leading());
        if (dir < 0 && p.degree() % 2 == 1) sl = -sl;
        s.push_back(sl);
    }
    return detail::variations(s);
}

inline int sturm_variations_at_surd(const std::vector<RatPoly>& chain, const Rat& t, const Int& s) {
    std::vector<int> signs;
    for (const auto& p : chain) {
        // p has rational coefficients; scale to integers without changing sign
        signs.push_back(sign(eval_at_surd(primitive_part(p), t, s)) * sgn(p.leading()));
    }
    return detail::variations(signs);
}

/// Number of distinct real roots of a squarefree f.
inline int count_real_roots(const IntPoly& f) {
    if (f.degree() <= 0) return 0;
    auto chain = sturm_chain(f);
    return sturm_variations_inf(chain, -1) - sturm_variations_inf(chain, +1);
}

/// Number of distinct roots of squarefree f in the half-open interval (lo, hi].
inline int count_roots_in(const IntPoly& f, const Rat& lo, const Rat& hi) {
    if (f.degree() <= 0) return 0;
    auto chain = sturm_chain(f);
    return sturm_variations_at(chain, lo) - sturm_variations_at(chain, hi);
}

/// Counts distinct real roots of squarefree f in the closed interval [-2 sqrt(q), 2 sqrt(q)], exactly.
inline int count_roots_in_weil_interval(const IntPoly& f, const Int& q) {
    if (f.degree() <= 0) return 0;
    // Divide out roots exactly at the endpoints (factors of y^2 - 4q, or y -/+ 2 sqrt q when q is a square).
    IntPoly g = f;
    int at_endpoints = 0;
    if (is_square(q)) {
        Int r = 2 * isqrt(q);
        for (Int e : {r, Int(-r)}) {
            IntPoly lin({Int(-e), Int(1)});
            if (g.eval(e) == 0) {
                g = primitive_part(divmod(to_rat(g), to_rat(lin)).first);
                ++at_endpoints;
            }
        }
        if (g.degree() <= 0) return at_endpoints;
        auto chain = sturm_chain(g);
        return at_endpoints + sturm_variations_at(chain, Rat(-r)) - sturm_variations_at(chain, Rat(r));
    }
    IntPoly quad({Int(-4 * q), Int(0), Int(1)});
    auto qr = divmod(to_rat(g), to_rat(quad));
    if (qr.second.is_zero()) {
        g = primitive_part(qr.first);
        at_endpoints = 2;
    }
    if (g.degree() <= 0) return at_endpoints;
    auto chain = sturm_chain(g);
    return at_endpoints + sturm_variations_at_surd(chain, Rat(-2), q) - sturm_variations_at_surd(chain, Rat(2), q);
}

/// Isolating intervals (lo, hi] for the real roots of a squarefree f, sorted ascending.
inline std::vector<std::pair<Rat, Rat>> isolate_real_roots(const IntPoly& f) {
    std::vector<std::pair<Rat, Rat>> out;
    if (f.degree() <= 0) return out;
    auto chain = sturm_chain(f);
    // Cauchy bound
    Rat bound = 1;
    for (long i = 0; i < f.degree(); ++i) bound = std::max(bound, Rat(Rat(abs_int(f.coeff(static_cast<std::size_t>(i)))) / Rat(abs_int(f.leading())) + 1));
    std::vector<std::pair<Rat, Rat>> stack{{-bound, bound}};
    while (!stack.empty()) {
        auto [lo, hi] = stack.back();
        stack.pop_back();
        int n = sturm_variations_at(chain, lo) - sturm_variations_at(chain, hi);
        if (n == 0) continue;
        if (n == 1) {
            out.emplace_back(lo, hi);
            continue;
        }
        Rat mid = (lo + hi) / 2;
        stack.emplace_back(lo, mid);
        stack.emplace_back(mid, hi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Halves an isolating interval (lo, hi] of f, keeping the root.
inline std::pair<Rat, Rat> refine_root(const IntPoly& f, std::pair<Rat, Rat> iv) {
    Rat mid = (iv.first + iv.second) / 2;
    if (count_roots_in(f, iv.first, mid) == 1) return {iv.first, mid};
    return {mid, iv.second};
}

/// Sign of g at the unique root of squarefree f in the isolating interval iv. Returns 0 iff g vanishes there.
inline int sign_at_root(const IntPoly& f, std::pair<Rat, Rat> iv, const IntPoly& g) {
    if (g.is_zero()) return 0;
    IntPoly common = gcd(f, g);
    if (common.degree() > 0 && count_roots_in(common, iv.first, iv.second) == 1) return 0;
    IntPoly gs = squarefree_part(g);
    for (int iter = 0; iter < 100000; ++iter) {
        if (count_roots_in(gs, iv.first, iv.second) == 0 && g.eval(iv.second) != 0) return sgn(g.eval(iv.second));
        iv = refine_root(f, iv);
    }
    throw ResourceLimit("root refinement did not separate sign");
}

inline double approx_root(const IntPoly& f, std::pair<Rat, Rat> iv, int bits = 60) {
    for (int i = 0; i < bits; ++i) iv = refine_root(f, iv);
    return Rat((iv.first + iv.second) / 2).get_d();
}

}  // namespace rmiso
