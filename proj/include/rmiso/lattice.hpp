#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmiso/field.hpp"

namespace rmiso {

/// Z-lattice in Q^n stored as (1/den) * rows with rows in Hermite normal form and gcd(den, entries) = 1.
struct Lattice {
    Int den = 1;
    IntMatrix rows;

    std::size_t rank() const { return rows.rows(); }
    std::size_t dim() const { return rows.cols(); }
    bool full_rank() const { return rank() == dim(); }

    Elem basis_vector(std::size_t i) const {
        Elem e(dim());
        for (std::size_t j = 0; j < dim(); ++j) e[j] = frac(rows(i, j), den);
        return e;
    }
    std::vector<Elem> basis() const {
        std::vector<Elem> b;
        for (std::size_t i = 0; i < rank(); ++i) b.push_back(basis_vector(i));
        return b;
    }
    RatMatrix basis_matrix() const {
        RatMatrix m(rank(), dim());
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) m(i, j) = frac(rows(i, j), den);
        return m;
    }
    /// Canonical text key; equal lattices have equal keys.
    std::string key() const {
        std::string s = den.get_str() + "|";
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) s += rows(i, j).get_str() + ",";
        return s;
    }
    friend bool operator==(const Lattice& a, const Lattice& b) { return a.den == b.den && a.rows == b.rows; }
    friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }
};

/// Lattice spanned by integer rows over a common denominator (any number of rows, possibly dependent).
inline Lattice lattice_from_int_rows(const IntMatrix& m, const Int& den) {
    Lattice L;
    IntMatrix h = m.rows() == 0 ? IntMatrix(0, m.cols()) : hermite(m, false).h;
    Int g = den;
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) g = gcd(g, h(i, j));
    if (g == 0) g = 1;
    L.den = den / g;
    if (L.den < 0) L.den = -L.den;
    if (g != 1)
        for (std::size_t i = 0; i < h.rows(); ++i)
            for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) /= g;
    L.rows = std::move(h);
    return L;
}

inline Lattice lattice_from_generators(const std::vector<Elem>& gens, std::size_t dim) {
    Int den = 1;
    for (const auto& v : gens)
        for (const auto& c : v) den = lcm(den, Int(c.get_den()));
    IntMatrix m(gens.size(), dim);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = Int(gens[i][j] * den);
    return lattice_from_int_rows(m, den);
}

/// Integer coordinates of v with respect to the lattice basis, or empty if v is not in the lattice.
inline std::optional<std::vector<Int>> lattice_coordinates(const Lattice& L, const Elem& v) {
    std::vector<Int> w(L.dim());
    for (std::size_t j = 0; j < L.dim(); ++j) {
        Rat s = v[j] * L.den;
        if (s.get_den() != 1) return std::nullopt;
        w[j] = s.get_num();
    }
    std::vector<Int> x(L.rank(), Int(0));
    std::size_t col = 0;
    for (std::size_t i = 0; i < L.rank(); ++i) {
        while (col < L.dim() && L.rows(i, col) == 0) {
            if (w[col] != 0) return std::nullopt;
            ++col;
        }
        if (col == L.dim()) break;
        const Int& piv = L.rows(i, col);
        if (w[col] % piv != 0) return std::nullopt;
        Int c = w[col] / piv;
        x[i] = c;
        if (c != 0)
            for (std::size_t j = col; j < L.dim(); ++j) w[j] -= c * L.rows(i, j);
        ++col;
    }
    for (const auto& r : w)
        if (r != 0) return std::nullopt;
    return x;
}

inline bool contains(const Lattice& L, const Elem& v) { return lattice_coordinates(L, v).has_value(); }

inline bool contains(const Lattice& big, const Lattice& small) {
    for (std::size_t i = 0; i < small.rank(); ++i)
        if (!contains(big, small.basis_vector(i))) return false;
    return true;
}

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    Int den = lcm(a.den, b.den);
    IntMatrix m(a.rank() + b.rank(), a.dim());
    for (std::size_t i = 0; i < a.rank(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m(i, j) = a.rows(i, j) * (den / a.den);
    for (std::size_t i = 0; i < b.rank(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j) m(a.rank() + i, j) = b.rows(i, j) * (den / b.den);
    return lattice_from_int_rows(m, den);
}

inline Lattice lattice_scale(const Lattice& a, const Rat& s) {
    Int num = s.get_num(), den = s.get_den();
    IntMatrix m = a.rows;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= num;
    return lattice_from_int_rows(m, a.den * den);
}

/// Dual lattice with respect to the standard dot product (full rank only).
inline Lattice standard_dual(const Lattice& a) {
    if (!a.full_rank()) throw PreconditionViolation("dual of a lattice that is not full rank");
    RatMatrix inv = inverse(a.basis_matrix());
    std::vector<Elem> gens;
    for (std::size_t j = 0; j < a.dim(); ++j) {
        Elem col(a.dim());
        for (std::size_t i = 0; i < a.dim(); ++i) col[i] = inv(i, j);
        gens.push_back(col);
    }
    return lattice_from_generators(gens, a.dim());
}

inline Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
    return standard_dual(lattice_sum(standard_dual(a), standard_dual(b)));
}

/// |det| of the basis, i.e. the covolume (full rank only).
inline Rat covolume(const Lattice& a) {
    if (!a.full_rank()) throw PreconditionViolation("covolume of a lattice that is not full rank");
    Int d = 1;
    for (std::size_t i = 0; i < a.rank(); ++i) d *= a.rows(i, i);
    return frac(abs_int(d), pow_int(a.den, static_cast<unsigned long>(a.dim())));
}

// ---------------------------------------------------------------------------
// Lattices inside a number field

inline Lattice lattice_product(const FieldData& K, const Lattice& a, const Lattice& b) {
    std::vector<Elem> gens;
    auto ba = a.basis(), bb = b.basis();
    for (const auto& x : ba)
        for (const auto& y : bb) gens.push_back(mul(K, x, y));
    return lattice_from_generators(gens, K.n);
}

inline Lattice lattice_times(const FieldData& K, const Lattice& a, const Elem& x) {
    std::vector<Elem> gens;
    for (const auto& y : a.basis()) gens.push_back(mul(K, x, y));
    return lattice_from_generators(gens, K.n);
}

/// (A : B) = {x in K : x B subset of A}.
inline Lattice lattice_colon(const FieldData& K, const Lattice& a, const Lattice& b) {
    std::optional<Lattice> acc;
    for (const auto& y : b.basis()) {
        Lattice part = lattice_times(K, a, inverse(K, y));
        acc = acc ? lattice_intersection(*acc, part) : part;
    }
    return *acc;
}

/// Trace dual {x : Tr(x L) subset of Z}.
inline Lattice trace_dual(const FieldData& K, const Lattice& a) {
    auto b = a.basis();
    const std::size_t n = b.size();
    RatMatrix gram(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) gram(i, j) = gram(j, i) = trace(K, mul(K, b[i], b[j]));
    RatMatrix ginv = inverse(gram);
    std::vector<Elem> gens;
    for (std::size_t i = 0; i < n; ++i) {
        Elem e = zero_elem(K);
        for (std::size_t j = 0; j < n; ++j) e = add(e, scale(ginv(i, j), b[j]));
        gens.push_back(e);
    }
    return lattice_from_generators(gens, K.n);
}

inline Lattice lattice_conj(const FieldData& K, const Lattice& a) {
    std::vector<Elem> gens;
    for (const auto& y : a.basis()) gens.push_back(conj(K, y));
    return lattice_from_generators(gens, K.n);
}

}  // namespace rmiso
