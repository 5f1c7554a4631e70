#pragma once

#include <algorithm>
#include <deque>
#include <set>
#include <vector>

#include "rmiso/lattice.hpp"

namespace rmiso {

/// Full-rank subring of a number field, as a lattice in the power basis.
struct Order {
    FieldPtr field;
    Lattice lat;

    const FieldData& K() const { return *field; }
    std::size_t degree() const { return field->n; }
    std::vector<Elem> basis() const { return lat.basis(); }
    friend bool operator==(const Order& a, const Order& b) { return a.lat == b.lat; }
    friend bool operator!=(const Order& a, const Order& b) { return !(a == b); }
};

inline bool contains(const Order& O, const Elem& x) { return contains(O.lat, x); }

inline bool is_ring(const FieldData& K, const Lattice& L) {
    if (!L.full_rank() || !contains(L, const_elem(K, Rat(1)))) return false;
    auto b = L.basis();
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j)
            if (!contains(L, mul(K, b[i], b[j]))) return false;
    return true;
}

/// Wraps a lattice known to be a ring; throws otherwise.
inline Order order_from_lattice(FieldPtr K, const Lattice& L) {
    if (!is_ring(*K, L)) throw PreconditionViolation("lattice is not an order");
    return Order{std::move(K), L};
}

/// Smallest order containing the given integral elements.
inline Order order_from_generators(FieldPtr K, const std::vector<Elem>& gens) {
    for (const auto& g : gens)
        if (!is_integral(*K, g)) throw PreconditionViolation("generator is not integral");
    std::vector<Elem> span{const_elem(*K, Rat(1))};
    for (const auto& g : gens) span.push_back(g);
    Lattice L = lattice_from_generators(span, K->n);
    for (int iter = 0; iter < 256; ++iter) {
        auto b = L.basis();
        std::vector<Elem> next = b;
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = i; j < b.size(); ++j) next.push_back(mul(*K, b[i], b[j]));
        Lattice L2 = lattice_from_generators(next, K->n);
        if (L2 == L) {
            if (!L.full_rank()) throw PreconditionViolation("generated ring is not of full rank");
            return Order{K, L};
        }
        L = L2;
    }
    throw ResourceLimit("order closure did not stabilize");
}

inline Order equation_order(FieldPtr K) { return order_from_generators(K, {alpha_elem(*K)}); }

inline RatMatrix trace_gram(const FieldData& K, const std::vector<Elem>& b) {
    RatMatrix g(b.size(), b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j) g(i, j) = g(j, i) = trace(K, mul(K, b[i], b[j]));
    return g;
}

/// Discriminant: determinant of the trace form on a basis.
inline Int disc_order(const Order& O) {
    Rat d = determinant(trace_gram(O.K(), O.basis()));
    if (d.get_den() != 1) throw PreconditionViolation("order discriminant not integral");
    return d.get_num();
}

/// [super : sub] for lattices sub inside super.
inline Int lattice_index(const Lattice& sub, const Lattice& super) {
    if (!contains(super, sub)) throw PreconditionViolation("lattice is not contained in the claimed superlattice");
    Rat r = covolume(sub) / covolume(super);
    if (r.get_den() != 1) throw PreconditionViolation("non-integral lattice index");
    return r.get_num();
}

inline Int index(const Order& sub, const Order& super) { return lattice_index(sub.lat, super.lat); }

/// Integer matrices of multiplication in the order's own basis: M[j] row i = coordinates of w_i * w_j.
inline std::vector<IntMatrix> structure_matrices(const Order& O) {
    auto b = O.basis();
    const std::size_t n = b.size();
    std::vector<IntMatrix> out(n, IntMatrix(n, n, Int(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            auto c = lattice_coordinates(O.lat, mul(O.K(), b[i], b[j]));
            if (!c) throw PreconditionViolation("lattice is not multiplicatively closed");
            for (std::size_t k = 0; k < n; ++k) {
                out[j](i, k) = (*c)[k];
                out[i](j, k) = (*c)[k];
            }
        }
    return out;
}

/// Coordinates (in the order basis) of x * y for coordinate vectors x, y, reduced mod n when n > 0.
inline std::vector<Int> coord_mul(const std::vector<IntMatrix>& table, const std::vector<Int>& x, const std::vector<Int>& y, const Int& n) {
    const std::size_t d = x.size();
    std::vector<Int> r(d, Int(0));
    for (std::size_t j = 0; j < d; ++j) {
        if (y[j] == 0) continue;
        for (std::size_t i = 0; i < d; ++i) {
            if (x[i] == 0) continue;
            Int c = x[i] * y[j];
            for (std::size_t k = 0; k < d; ++k) r[k] += c * table[j](i, k);
        }
    }
    if (n > 0)
        for (auto& v : r) v = mod(v, n);
    return r;
}

/// Basis of the left kernel {z : z A = 0} over F_p, entries in [0, p).
inline std::vector<std::vector<Int>> left_kernel_mod_p(const IntMatrix& a, const Int& p) {
    const std::size_t r = a.rows(), c = a.cols();
    // reduce the transpose system: columns of A^T
    IntMatrix t(c, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) t(j, i) = mod(a(i, j), p);
    std::vector<long> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r && row < c; ++col) {
        std::size_t piv = row;
        while (piv < c && t(piv, col) == 0) ++piv;
        if (piv == c) continue;
        t.swap_rows(row, piv);
        Int inv = inv_mod(t(row, col), p);
        for (std::size_t j = 0; j < r; ++j) t(row, j) = mod(t(row, j) * inv, p);
        for (std::size_t i = 0; i < c; ++i) {
            if (i == row || t(i, col) == 0) continue;
            Int f = t(i, col);
            for (std::size_t j = 0; j < r; ++j) t(i, j) = mod(t(i, j) - f * t(row, j), p);
        }
        pivot_col.push_back(static_cast<long>(col));
        ++row;
    }
    std::vector<std::vector<Int>> basis;
    std::vector<bool> is_pivot(r, false);
    for (auto pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = true;
    for (std::size_t f = 0; f < r; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Int> z(r, Int(0));
        z[f] = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) z[static_cast<std::size_t>(pivot_col[k])] = mod(-t(k, f), p);
        basis.push_back(z);
    }
    return basis;
}

/// Enlarges O until it is maximal at the prime l (round two: radical idealizers).
inline Order p_maximal_order(Order O, const Int& l) {
    const std::size_t n = O.degree();
    for (int iter = 0; iter < 64; ++iter) {
        auto table = structure_matrices(O);
        Int lj = l;
        while (lj < Int(static_cast<unsigned long>(n))) lj *= l;
        IntMatrix frob(n, n, Int(0));
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Int> e(n, Int(0));
            e[i] = 1;
            std::vector<Int> acc = *lattice_coordinates(O.lat, const_elem(O.K(), Rat(1)));
            std::vector<Int> base = e;
            Int ex = lj;
            while (ex > 0) {
                if (mpz_odd_p(ex.get_mpz_t())) acc = coord_mul(table, acc, base, l);
                base = coord_mul(table, base, base, l);
                ex >>= 1;
            }
            for (std::size_t k = 0; k < n; ++k) frob(i, k) = acc[k];
        }
        auto ker = left_kernel_mod_p(frob, l);
        auto b = O.basis();
        std::vector<Elem> gens;
        for (const auto& z : ker) {
            Elem e = zero_elem(O.K());
            for (std::size_t i = 0; i < n; ++i) e = add(e, scale(Rat(z[i]), b[i]));
            gens.push_back(e);
        }
        for (const auto& v : b) gens.push_back(scale(Rat(l), v));
        Lattice rad = lattice_from_generators(gens, n);
        Lattice ring = lattice_colon(O.K(), rad, rad);
        if (ring == O.lat) return O;
        O = Order{O.field, ring};
    }
    throw ResourceLimit("round two did not terminate");
}

/// Maximal order of the field.
inline Order maximal_order(FieldPtr K) {
    Order O = equation_order(K);
    Int d = disc_order(O);
    for (const auto& [l, e] : factorize(d))
        if (e >= 2) O = p_maximal_order(O, l);
    return O;
}

/// Coordinates of the basis of sub in the basis of super, as an integer matrix.
inline IntMatrix relative_basis(const Lattice& sub, const Lattice& super) {
    IntMatrix a(sub.rank(), super.rank());
    for (std::size_t i = 0; i < sub.rank(); ++i) {
        auto c = lattice_coordinates(super, sub.basis_vector(i));
        if (!c) throw PreconditionViolation("lattice is not contained in the claimed superlattice");
        for (std::size_t j = 0; j < super.rank(); ++j) a(i, j) = (*c)[j];
    }
    return a;
}

/// Invariant factors (> 1) of the finite abelian group super/sub.
inline std::vector<Int> quotient_invariants(const Lattice& sub, const Lattice& super) {
    std::vector<Int> out;
    for (const auto& d : smith(relative_basis(sub, super)).diagonal)
        if (d != 1) out.push_back(d);
    return out;
}

/// Cyclic quotient O_K / O.
inline bool is_bass(const Order& O, const Order& OK) { return quotient_invariants(O.lat, OK.lat).size() <= 1; }

/// The trace dual of O is invertible.
inline bool is_gorenstein(const Order& O) {
    const FieldData& K = O.K();
    Lattice dual = trace_dual(K, O.lat);
    Lattice colon = lattice_colon(K, O.lat, dual);
    return lattice_product(K, dual, colon) == O.lat;
}

namespace detail {

/// Elements of super whose l-multiple lies in sub, modulo sub: representatives of the l-torsion of super/sub.
inline std::vector<Elem> torsion_elements(const Lattice& sub, const Lattice& super, const Int& l, std::size_t cap) {
    Lattice tors = lattice_intersection(lattice_scale(sub, Rat(1) / Rat(l)), super);
    IntMatrix rel = relative_basis(sub, tors);  // sub inside tors; tors/sub is elementary abelian
    SmithResult s = smith(rel);
    // tors/sub generated by rows k of V^{-1} (in tors coordinates) for diagonal entries equal to l
    RatMatrix vinv = inverse(to_rat(s.right));
    auto tb = tors.basis();
    std::vector<Elem> gens;
    for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
        if (s.diagonal[k] == 1) continue;
        Elem e(tb[0].size(), Rat(0));
        for (std::size_t j = 0; j < tb.size(); ++j) e = add(e, scale(vinv(k, j), tb[j]));
        gens.push_back(e);
    }
    std::vector<Elem> out;
    std::size_t total = 1;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (total > cap / static_cast<std::size_t>(l.get_ui()) + 1) throw ResourceLimit("over-order search exceeds its cap");
        total *= l.get_ui();
    }
    std::vector<unsigned long> digits(gens.size(), 0);
    while (true) {
        std::size_t i = 0;
        while (i < digits.size() && digits[i] + 1 == l.get_ui()) digits[i++] = 0;
        if (i == digits.size()) break;
        ++digits[i];
        Elem e(tb[0].size(), Rat(0));
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (digits[k]) e = add(e, scale(Rat(static_cast<long>(digits[k])), gens[k]));
        out.push_back(e);
    }
    return out;
}

}  // namespace detail

/// All orders between R and OK. For cyclic OK/R one order per divisor d of the index (sorted by d);
/// otherwise an exhaustive search, limited to indices up to max_index.
inline std::vector<Order> over_orders(const Order& R, const Order& OK, const Int& max_index = Int(1000000)) {
    const FieldData& K = R.K();
    IntMatrix a = relative_basis(R.lat, OK.lat);
    SmithResult s = smith(a);
    std::vector<std::size_t> nontrivial;
    for (std::size_t k = 0; k < s.diagonal.size(); ++k)
        if (s.diagonal[k] != 1) nontrivial.push_back(k);
    auto ob = OK.basis();
    std::vector<Order> out;
    if (nontrivial.size() <= 1) {
        if (nontrivial.empty()) return {R};
        const std::size_t k = nontrivial.front();
        const Int i = s.diagonal[k];
        RatMatrix vinv = inverse(to_rat(s.right));
        Elem x = zero_elem(K);
        for (std::size_t j = 0; j < ob.size(); ++j) x = add(x, scale(vinv(k, j), ob[j]));
        for (const Int& d : divisors(i)) {
            Lattice L = lattice_sum(R.lat, lattice_from_generators({scale(Rat(i / d), x)}, K.n));
            if (!is_ring(K, L)) throw PreconditionViolation("intermediate lattice is not a ring");
            out.push_back(Order{R.field, L});
        }
        return out;
    }
    Int idx = index(R, OK);
    if (idx > max_index) throw ResourceLimit("non-cyclic over-order search beyond index cap");
    std::map<std::string, Order> seen;
    std::deque<Order> queue{R};
    seen.emplace(R.lat.key(), R);
    const std::size_t cap = static_cast<std::size_t>(max_index.get_ui());
    while (!queue.empty()) {
        Order O = queue.front();
        queue.pop_front();
        Int j = index(O, OK);
        if (j == 1) continue;
        for (const auto& [l, e] : factorize(j)) {
            for (const auto& x : detail::torsion_elements(O.lat, OK.lat, l, cap)) {
                std::vector<Elem> gens = O.basis();
                gens.push_back(x);
                Order next = order_from_generators(R.field, gens);
                if (seen.emplace(next.lat.key(), next).second) queue.push_back(next);
                if (seen.size() > cap) throw ResourceLimit("over-order search exceeds its cap");
            }
        }
    }
    for (auto& kv : seen) out.push_back(kv.second);
    std::sort(out.begin(), out.end(), [&](const Order& x, const Order& y) {
        Int ix = index(R, x), iy = index(R, y);
        if (ix != iy) return ix < iy;
        return x.lat.key() < y.lat.key();
    });
    return out;
}

/// Ring-theoretic Bass test on a precomputed over-order list: every order between R and O_K is Gorenstein.
/// Weaker than a cyclic quotient once the degree exceeds 2 (e.g. O_K / O_L[alpha] simple of order 9).
inline bool all_gorenstein(const std::vector<Order>& ovs) {
    return std::all_of(ovs.begin(), ovs.end(), [](const Order& O) { return is_gorenstein(O); });
}

}  // namespace rmiso
