#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "rmiso/polynomial.hpp"

namespace rmiso {

/// Field element in power-basis coordinates (length = field degree).
using Elem = std::vector<Rat>;

/// Number field Q[x]/(r) with exact multiplication tables and a fixed involution (complex conjugation for CM
/// fields, the identity for totally real fields).
struct FieldData {
    IntPoly r;
    std::size_t n = 0;
    bool totally_real = false;
    RatMatrix conj;                            ///< row i: coordinates of conj(alpha^i)
    std::vector<Elem> reductions;              ///< alpha^k for k in [n, 2n-2]
    std::vector<Rat> power_traces;             ///< Tr(alpha^k) for k in [0, n-1]
    std::vector<std::complex<double>> roots;   ///< approximate complex roots, informational
};

using FieldPtr = std::shared_ptr<const FieldData>;

inline Elem zero_elem(const FieldData& K) { return Elem(K.n, Rat(0)); }

inline Elem const_elem(const FieldData& K, const Rat& c) {
    Elem e = zero_elem(K);
    e[0] = c;
    return e;
}

inline Elem alpha_elem(const FieldData& K) {
    Elem e = zero_elem(K);
    if (K.n == 1)
        e[0] = -Rat(K.r.coeff(0));
    else
        e[1] = 1;
    return e;
}

inline Elem add(const Elem& a, const Elem& b) {
    Elem r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

inline Elem sub(const Elem& a, const Elem& b) {
    Elem r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

inline Elem scale(const Rat& s, const Elem& a) {
    Elem r = a;
    for (auto& v : r) v *= s;
    return r;
}

inline bool is_zero(const Elem& a) {
    for (const auto& v : a)
        if (v != 0) return false;
    return true;
}

inline Elem mul(const FieldData& K, const Elem& a, const Elem& b) {
    const std::size_t n = K.n;
    std::vector<Rat> prod(2 * n - 1, Rat(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (b[j] != 0) prod[i + j] += a[i] * b[j];
    }
    Elem out(prod.begin(), prod.begin() + static_cast<long>(n));
    for (std::size_t k = n; k < 2 * n - 1; ++k) {
        if (prod[k] == 0) continue;
        const Elem& red = K.reductions[k - n];
        for (std::size_t j = 0; j < n; ++j) out[j] += prod[k] * red[j];
    }
    return out;
}

inline Elem pow(const FieldData& K, Elem base, unsigned long e) {
    Elem r = const_elem(K, Rat(1));
    while (e) {
        if (e & 1) r = mul(K, r, base);
        base = mul(K, base, base);
        e >>= 1;
    }
    return r;
}

/// Matrix of multiplication by a: row i holds the coordinates of alpha^i * a.
inline RatMatrix mult_matrix(const FieldData& K, const Elem& a) {
    RatMatrix m(K.n, K.n, Rat(0));
    Elem cur = a;
    Elem al = alpha_elem(K);
    for (std::size_t i = 0; i < K.n; ++i) {
        m.set_row(i, cur);
        if (i + 1 < K.n) cur = mul(K, cur, al);
    }
    return m;
}

inline Rat trace(const FieldData& K, const Elem& a) {
    Rat t = 0;
    for (std::size_t i = 0; i < K.n; ++i)
        if (a[i] != 0) t += a[i] * K.power_traces[i];
    return t;
}

inline Rat norm(const FieldData& K, const Elem& a) { return determinant(mult_matrix(K, a)); }

inline Elem inverse(const FieldData& K, const Elem& a) {
    if (is_zero(a)) throw PreconditionViolation("inverse of zero field element");
    // x * M_a = e_0 where M_a rows are alpha^i a; x is the coordinate vector of a^{-1}
    return solve_left(mult_matrix(K, a), const_elem(K, Rat(1)));
}

inline Elem conj(const FieldData& K, const Elem& a) {
    Elem r = zero_elem(K);
    for (std::size_t i = 0; i < K.n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < K.n; ++j) r[j] += a[i] * K.conj(i, j);
    }
    return r;
}

/// Positive-definite form Tr(x * conj(x)) (sum of squared absolute values over all embeddings).
inline Rat t2(const FieldData& K, const Elem& a) { return trace(K, mul(K, a, conj(K, a))); }

/// Characteristic polynomial of an element, constant term first.
inline RatPoly elem_charpoly(const FieldData& K, const Elem& a) { return RatPoly(charpoly(mult_matrix(K, a))); }

inline bool is_integral(const FieldData& K, const Elem& a) {
    RatPoly cp = elem_charpoly(K, a);
    for (const auto& c : cp.coeffs())
        if (c.get_den() != 1) return false;
    return true;
}

/// Evaluates a polynomial (in the field generator of another field) at the element x.
inline Elem eval_poly_at(const FieldData& K, const std::vector<Rat>& coeffs, const Elem& x) {
    Elem r = zero_elem(K);
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        r = mul(K, r, x);
        r[0] += coeffs[i];
    }
    return r;
}

namespace detail {

inline std::vector<std::complex<double>> approximate_roots(const IntPoly& r) {
    const long n = r.degree();
    std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
    if (n <= 0) return z;
    const std::complex<double> seed(0.4, 0.9);
    double radius = 1;
    for (long i = 0; i < n; ++i) radius = std::max(radius, 1 + std::abs(r.coeff(static_cast<std::size_t>(i)).get_d()));
    for (long i = 0; i < n; ++i) z[static_cast<std::size_t>(i)] = std::pow(seed, static_cast<double>(i)) * std::sqrt(radius);
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 0;
        for (long i = n; i >= 0; --i) v = v * x + r.coeff(static_cast<std::size_t>(i)).get_d();
        return v;
    };
    for (int iter = 0; iter < 500; ++iter) {
        double delta = 0;
        for (long i = 0; i < n; ++i) {
            std::complex<double> den = 1;
            for (long j = 0; j < n; ++j)
                if (j != i) den *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
            std::complex<double> step = eval(z[static_cast<std::size_t>(i)]) / den;
            z[static_cast<std::size_t>(i)] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-14) break;
    }
    std::sort(z.begin(), z.end(), [](auto x, auto y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
    return z;
}

}  // namespace detail

/// Builds the field Q[x]/(r) for monic irreducible r. conj_alpha is the image of alpha under the involution;
/// pass an empty vector for the identity (totally real fields).
inline FieldPtr make_field(const IntPoly& r, const Elem& conj_alpha = {}) {
    if (!r.is_monic() || r.degree() < 1) throw PreconditionViolation("field polynomial must be monic of positive degree");
    auto K = std::make_shared<FieldData>();
    K->r = r;
    K->n = static_cast<std::size_t>(r.degree());
    const std::size_t n = K->n;
    // alpha^n = -sum r_i alpha^i; higher powers by shifting
    Elem cur(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i) cur[i] = -Rat(r.coeff(i));
    for (std::size_t k = n; k + 1 < 2 * n; ++k) {
        K->reductions.push_back(cur);
        Elem next(n, Rat(0));
        for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] = cur[i];
        for (std::size_t i = 0; i < n; ++i) next[i] -= cur[n - 1] * Rat(r.coeff(i));
        cur = next;
    }
    // Newton sums
    K->power_traces.assign(n, Rat(0));
    K->power_traces[0] = Rat(static_cast<long>(n));
    for (std::size_t k = 1; k < n; ++k) {
        Rat s = -Rat(static_cast<long>(k)) * Rat(r.coeff(n - k));
        for (std::size_t i = 1; i < k; ++i) s -= Rat(r.coeff(n - i)) * K->power_traces[k - i];
        K->power_traces[k] = s;
    }
    K->totally_real = conj_alpha.empty();
    K->conj = RatMatrix::identity(n);
    if (!conj_alpha.empty()) {
        Elem c = const_elem(*K, Rat(1));
        for (std::size_t i = 0; i < n; ++i) {
            K->conj.set_row(i, c);
            c = mul(*K, c, conj_alpha);
        }
    }
    K->roots = detail::approximate_roots(r);
    return K;
}

/// Imaginary or real quadratic field from a monic quadratic; conjugation alpha -> Tr(alpha) - alpha when imaginary.
inline FieldPtr quadratic_field(const IntPoly& r) {
    if (r.degree() != 2) throw PreconditionViolation("quadratic field needs a quadratic polynomial");
    Int d = discriminant(r);
    if (d > 0) return make_field(r);
    return make_field(r, Elem{-Rat(r.coeff(1)), Rat(-1)});
}

/// CM field of a Weil q-number: conjugation alpha -> q/alpha.
inline FieldPtr weil_field(const IntPoly& r, const Int& q) {
    FieldPtr tmp = make_field(r);
    Elem c = scale(Rat(q), inverse(*tmp, alpha_elem(*tmp)));
    return make_field(r, c);
}

}  // namespace rmiso
