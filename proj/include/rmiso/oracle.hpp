#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rmiso/isocount.hpp"

namespace rmiso {

/// Finite field with q = p^k <= 49 elements (p odd) as lookup tables. Elements are 0..q-1, read as base-p digit
/// vectors of polynomials modulo a fixed irreducible of degree k.
class SmallField {
public:
    explicit SmallField(int q) : q_(q) {
        if (q < 3 || q > 49 || q % 2 == 0) throw InvalidInput("field size must be an odd prime power <= 49");
        p_ = 0;
        for (int d = 2; d <= q; ++d)
            if (q % d == 0) {
                p_ = d;
                break;
            }
        k_ = 0;
        for (int r = q; r > 1; r /= p_) {
            if (r % p_ != 0) throw InvalidInput("field size must be a prime power");
            ++k_;
        }
        modulus_ = find_irreducible();
        add_.assign(static_cast<std::size_t>(q * q), 0);
        mul_.assign(static_cast<std::size_t>(q * q), 0);
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                add_[idx(a, b)] = encode(poly_add(decode(a), decode(b)));
                mul_[idx(a, b)] = encode(poly_mulmod(decode(a), decode(b)));
            }
        is_square_.assign(static_cast<std::size_t>(q), false);
        for (int a = 0; a < q; ++a) is_square_[static_cast<std::size_t>(mul(a, a))] = true;
    }

    int size() const { return q_; }
    int characteristic() const { return p_; }
    int add(int a, int b) const { return add_[idx(a, b)]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int neg(int a) const {
        for (int b = 0; b < q_; ++b)
            if (add(a, b) == 0) return b;
        return 0;
    }
    int from_int(long v) const {
        long r = ((v % p_) + p_) % p_;
        return static_cast<int>(r);
    }
    /// Quadratic character: 0, 1 or -1.
    int chi(int a) const { return a == 0 ? 0 : (is_square_[static_cast<std::size_t>(a)] ? 1 : -1); }

private:
    int q_, p_, k_;
    std::vector<int> modulus_;  ///< monic, degree k, low to high
    std::vector<int> add_, mul_;
    std::vector<bool> is_square_;

    std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * q_ + b); }

    std::vector<int> decode(int a) const {
        std::vector<int> c(static_cast<std::size_t>(k_), 0);
        for (int i = 0; i < k_; ++i, a /= p_) c[static_cast<std::size_t>(i)] = a % p_;
        return c;
    }
    int encode(const std::vector<int>& c) const {
        int a = 0;
        for (int i = k_ - 1; i >= 0; --i) a = a * p_ + c[static_cast<std::size_t>(i)];
        return a;
    }
    std::vector<int> poly_add(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = (a[i] + b[i]) % p_;
        return c;
    }
    std::vector<int> poly_mulmod(const std::vector<int>& a, const std::vector<int>& b) const {
        std::vector<int> prod(static_cast<std::size_t>(2 * k_), 0);
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) prod[static_cast<std::size_t>(i + j)] = (prod[static_cast<std::size_t>(i + j)] + a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % p_;
        for (int d = 2 * k_ - 1; d >= k_; --d) {
            int c = prod[static_cast<std::size_t>(d)];
            if (c == 0) continue;
            for (int i = 0; i <= k_; ++i) {
                auto& slot = prod[static_cast<std::size_t>(d - k_ + i)];
                slot = ((slot - c * modulus_[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
            }
        }
        prod.resize(static_cast<std::size_t>(k_));
        return prod;
    }
    /// Monic irreducible of degree k <= 3: no roots suffices.
    std::vector<int> find_irreducible() const {
        if (k_ == 1) return {0, 1};
        int total = 1;
        for (int i = 0; i < k_; ++i) total *= p_;
        for (int code = 0; code < total; ++code) {
            std::vector<int> f(static_cast<std::size_t>(k_ + 1), 0);
            int c = code;
            for (int i = 0; i < k_; ++i, c /= p_) f[static_cast<std::size_t>(i)] = c % p_;
            f[static_cast<std::size_t>(k_)] = 1;
            bool root = false;
            for (int x = 0; x < p_ && !root; ++x) {
                long v = 0;
                for (int i = k_; i >= 0; --i) v = (v * x + f[static_cast<std::size_t>(i)]) % p_;
                root = v == 0;
            }
            if (!root) return f;
        }
        throw PreconditionViolation("no irreducible polynomial found");
    }
};

/// Isomorphism classes of elliptic curves over F_q, grouped by trace of Frobenius.
struct CurveCensus {
    int q = 0;
    std::map<long, long> classes_by_trace;
    std::map<long, Rat> mass_by_trace;  ///< sum of 1 / #Aut over the classes
    long total_classes = 0;
    long nonsingular_models = 0;
    long group_order = 0;  ///< size of the group of model changes acting on the family
};

namespace detail {

/// y^2 = x^3 + a2 x^2 + a4 x + a6 (a2 = 0 in characteristic >= 5). Returns #E(F_q), or -1 if singular.
inline long point_count(const SmallField& F, int a2, int a4, int a6) {
    const int q = F.size();
    // singular iff the cubic has a repeated root in the algebraic closure; test via the discriminant of the cubic
    // over F_q written with integer coefficients mapped into F_q
    auto c = [&](long v) { return F.from_int(v); };
    auto m = [&](int a, int b) { return F.mul(a, b); };
    auto ad = [&](int a, int b) { return F.add(a, b); };
    // disc(x^3 + b x^2 + c x + d) = b^2 c^2 - 4 c^3 - 4 b^3 d - 27 d^2 + 18 b c d
    int b2 = m(a2, a2), c2 = m(a4, a4);
    int disc = m(b2, c2);
    disc = ad(disc, m(c(-4), m(c2, a4)));
    disc = ad(disc, m(c(-4), m(m(b2, a2), a6)));
    disc = ad(disc, m(c(-27), m(a6, a6)));
    disc = ad(disc, m(c(18), m(m(a2, a4), a6)));
    if (disc == 0) return -1;
    long count = 1;
    for (int x = 0; x < q; ++x) {
        int x2 = m(x, x);
        int f = ad(ad(ad(m(x2, x), m(a2, x2)), m(a4, x)), a6);
        count += 1 + F.chi(f);
    }
    return count;
}

}  // namespace detail

/// Exhaustive census of isomorphism classes. Characteristic >= 5 uses y^2 = x^3 + a x + b with (a, b) ~ (u^4 a,
/// u^6 b); characteristic 3 uses y^2 = x^3 + a2 x^2 + a4 x + a6 with x -> u^2 x + r, y -> u^3 y.
inline CurveCensus curve_census(int q) {
    SmallField F(q);
    CurveCensus cs;
    cs.q = q;
    const bool char3 = F.characteristic() == 3;
    const int n2 = char3 ? q : 1;
    auto code = [&](int a2, int a4, int a6) { return static_cast<std::size_t>((a2 * q + a4) * q + a6); };
    std::vector<bool> seen(static_cast<std::size_t>(n2 * q * q), false);
    cs.group_order = char3 ? static_cast<long>(q - 1) * q : q - 1;
    for (int a2 = 0; a2 < n2; ++a2)
        for (int a4 = 0; a4 < q; ++a4)
            for (int a6 = 0; a6 < q; ++a6) {
                if (seen[code(a2, a4, a6)]) continue;
                long pts = detail::point_count(F, a2, a4, a6);
                if (pts < 0) {
                    seen[code(a2, a4, a6)] = true;
                    continue;
                }
                long orbit = 0;
                for (int u = 1; u < q; ++u) {
                    int u2 = F.mul(u, u), u4 = F.mul(u2, u2), u6 = F.mul(u4, u2);
                    int iu2 = 0;
                    for (int v = 1; v < q; ++v)
                        if (F.mul(v, u2) == 1) iu2 = v;
                    int iu4 = F.mul(iu2, iu2), iu6 = F.mul(iu4, iu2);
                    for (int r = 0; r < (char3 ? q : 1); ++r) {
                        // x -> u^2 x + r, y -> u^3 y: the new coefficients are those of f(u^2 x + r) / u^6
                        int b2, b4, b6;
                        if (char3) {
                            int r2 = F.mul(r, r), r3 = F.mul(r2, r);
                            int three_r = F.mul(F.from_int(3), r);
                            int c2 = F.add(a2, three_r);
                            int c4 = F.add(F.add(F.mul(F.from_int(3), r2), F.mul(F.from_int(2), F.mul(a2, r))), a4);
                            int c6 = F.add(F.add(F.add(r3, F.mul(a2, r2)), F.mul(a4, r)), a6);
                            b2 = F.mul(c2, iu2);
                            b4 = F.mul(c4, iu4);
                            b6 = F.mul(c6, iu6);
                        } else {
                            b2 = 0;
                            b4 = F.mul(u4, a4);
                            b6 = F.mul(u6, a6);
                        }
                        std::size_t cd = code(b2, b4, b6);
                        if (!seen[cd]) {
                            seen[cd] = true;
                            ++orbit;
                        }
                    }
                }
                long t = static_cast<long>(q) + 1 - pts;
                cs.classes_by_trace[t] += 1;
                cs.mass_by_trace[t] += frac(Int(orbit), Int(cs.group_order));
                cs.total_classes += 1;
                cs.nonsingular_models += orbit;
            }
    return cs;
}

struct CurveClassCount {
    int q = 0;
    long t = 0;
    long count = 0;
};

inline CurveClassCount enumerate_ec_classes(int q, long t) {
    if (Int(t) * t > 4 * q) throw PreconditionViolation("trace violates the Hasse bound");
    CurveCensus cs = curve_census(q);
    auto it = cs.classes_by_trace.find(t);
    return CurveClassCount{q, t, it == cs.classes_by_trace.end() ? 0 : it->second};
}

struct CrosscheckRecord {
    int q = 0;
    long t = 0;
    bool ordinary = true;
    std::optional<Int> predicted;  ///< N from the isogeny count at n = 1 (absent if that pipeline refused)
    std::string predicted_error;
    long enumerated = 0;
    bool equal = false;
};

/// Compares the class count of h = x^2 - t x + q at n = 1 against exhaustive enumeration. For supersingular
/// traces the record is informational only.
inline CrosscheckRecord crosscheck(int q, long t, const std::optional<CurveCensus>& census = {}) {
    CrosscheckRecord rec;
    rec.q = q;
    rec.t = t;
    SmallField F(q);
    const int p = F.characteristic();
    long m = 0;
    for (int r = q; r > 1; r /= p) ++m;
    rec.ordinary = t % p != 0;
    CurveCensus cs = census ? *census : curve_census(q);
    auto it = cs.classes_by_trace.find(t);
    rec.enumerated = it == cs.classes_by_trace.end() ? 0 : it->second;
    try {
        WeilPolynomial h = validate_weil(IntPoly({Int(q), Int(-t), Int(1)}), Int(p), m);
        rec.predicted = count_report(h, 1).N;
    } catch (const Error& e) {
        rec.predicted_error = e.what();
    }
    rec.equal = rec.predicted && *rec.predicted == rec.enumerated;
    return rec;
}

inline CrosscheckRecord crosscheck_ordinary(int q, long t) {
    SmallField F(q);
    if (t % F.characteristic() == 0) throw PreconditionViolation("trace is divisible by p (not ordinary)");
    if (Int(t) * t >= 4 * q) throw PreconditionViolation("trace violates the strict Hasse bound");
    return crosscheck(q, t);
}

/// All traces with t^2 <= 4q, in increasing order.
inline std::vector<long> hasse_traces(int q) {
    std::vector<long> out;
    for (long t = -2 * static_cast<long>(q); t <= 2 * static_cast<long>(q); ++t)
        if (t * t <= 4L * q) out.push_back(t);
    return out;
}

}  // namespace rmiso
