#pragma once

#include <optional>
#include <vector>

#include "rmiso/enumerate.hpp"
#include "rmiso/orders.hpp"
#include "rmiso/units.hpp"

namespace rmiso {

/// Full-rank lattice in K together with its multiplicator ring {x : xI in I}.
struct FractionalIdeal {
    Order ring;
    Lattice lat;
    Rat norm;  ///< covol(I) / covol(ring)

    const FieldData& K() const { return ring.K(); }
    friend bool operator==(const FractionalIdeal& a, const FractionalIdeal& b) { return a.lat == b.lat; }
};

inline Order multiplicator_ring(FieldPtr K, const Lattice& lat) {
    if (!lat.full_rank()) throw PreconditionViolation("fractional ideal must have full rank");
    return Order{K, lattice_colon(*K, lat, lat)};
}

/// Lattice norm relative to an order: covol(L) / covol(O).
inline Rat relative_norm(const Lattice& lat, const Order& O) { return covolume(lat) / covolume(O.lat); }

inline FractionalIdeal ideal_from_lattice(FieldPtr K, const Lattice& lat) {
    Order ring = multiplicator_ring(K, lat);
    Rat n = relative_norm(lat, ring);
    return FractionalIdeal{std::move(ring), lat, n};
}

/// Ideal with a known multiplicator ring (no recomputation).
inline FractionalIdeal ideal_over(const Order& R, const Lattice& lat) { return FractionalIdeal{R, lat, relative_norm(lat, R)}; }

/// The R-module generated by gens; its multiplicator ring is computed and may contain R strictly.
inline FractionalIdeal ideal_from_generators(const Order& R, const std::vector<Elem>& gens) {
    std::vector<Elem> span;
    auto b = R.basis();
    for (const auto& g : gens)
        for (const auto& w : b) span.push_back(mul(R.K(), g, w));
    Lattice lat = lattice_from_generators(span, R.degree());
    if (!lat.full_rank()) throw PreconditionViolation("generators do not span a full-rank module");
    return ideal_from_lattice(R.field, lat);
}

inline FractionalIdeal unit_ideal(const Order& R) { return FractionalIdeal{R, R.lat, Rat(1)}; }

inline Rat ideal_norm(const FractionalIdeal& I) { return I.norm; }

inline FractionalIdeal ideal_product(const FractionalIdeal& a, const FractionalIdeal& b) {
    return ideal_from_lattice(a.ring.field, lattice_product(a.K(), a.lat, b.lat));
}

/// (R : I) for the multiplicator ring R; throws if I (R : I) != R.
inline FractionalIdeal ideal_inverse(const FractionalIdeal& I) {
    Lattice inv = lattice_colon(I.K(), I.ring.lat, I.lat);
    if (lattice_product(I.K(), I.lat, inv) != I.ring.lat) throw PreconditionViolation("ideal is not invertible over its multiplicator ring");
    return ideal_over(I.ring, inv);
}

inline bool is_invertible(const FractionalIdeal& I) {
    Lattice inv = lattice_colon(I.K(), I.ring.lat, I.lat);
    return lattice_product(I.K(), I.lat, inv) == I.ring.lat;
}

inline FractionalIdeal ideal_scale(const FractionalIdeal& I, const Elem& x) {
    Lattice lat = lattice_times(I.K(), I.lat, x);
    return FractionalIdeal{I.ring, lat, I.norm * abs_rat(norm(I.K(), x))};
}

// ---------------------------------------------------------------------------
// Field shapes and unit data for principality

enum class FieldShape { ImaginaryQuadratic, RealQuadratic, QuarticCM };

inline FieldShape field_shape(const FieldData& K) {
    if (K.n == 2) return K.totally_real ? FieldShape::RealQuadratic : FieldShape::ImaginaryQuadratic;
    if (K.n == 4 && !K.totally_real) return FieldShape::QuarticCM;
    throw UnsupportedStratum("ideal arithmetic supports quadratic fields and quartic CM fields only");
}

/// Maximal real subfield L of a quartic CM field, with its embedding y -> beta, and the fundamental unit of O_L.
struct RealSubfield {
    FieldPtr L;
    Order OL;
    Elem beta;          ///< image of the generator of L in K
    QuadraticUnit unit;
    Elem unit_in_L;
};

/// Fundamental unit of the maximal order of the real quadratic field L, as an element of L.
inline Elem unit_element(const FieldData& L, const QuadraticUnit& u) {
    // sqrt(disc m) = 2y - t for m = y^2 - t y + c; sqrt(D) = (2y - t)/f with disc m = D f^2
    const Int t = -L.r.coeff(1);
    const Int dm = discriminant(L.r);
    const Int f = isqrt(dm / u.D);
    const Int b = mpz_odd_p(u.D.get_mpz_t()) ? 1 : 0;
    Elem omega{(Rat(b) - frac(t, f)) / 2, frac(Int(1), f)};
    return add(const_elem(L, Rat(u.x)), scale(Rat(u.y), omega));
}

inline RealSubfield real_quadratic_data(FieldPtr L) {
    RealSubfield rs;
    rs.L = L;
    rs.OL = maximal_order(L);
    rs.unit = fundamental_unit(disc_order(rs.OL));
    rs.unit_in_L = unit_element(*L, rs.unit);
    rs.beta = alpha_elem(*L);
    return rs;
}

inline RealSubfield real_subfield(FieldPtr K) {
    if (field_shape(*K) != FieldShape::QuarticCM) throw PreconditionViolation("real subfield requested for a non-quartic CM field");
    Elem a = alpha_elem(*K);
    Elem ak = a;
    for (int k = 1; k <= 4; ++k, ak = mul(*K, ak, a)) {
        Elem beta = add(ak, conj(*K, ak));
        std::vector<Int> cp;
        for (const auto& c : charpoly(mult_matrix(*K, beta))) cp.push_back(c.get_num());
        IntPoly m = squarefree_part(IntPoly(cp));
        if (m.degree() != 2) continue;
        RealSubfield rs = real_quadratic_data(quadratic_field(m));
        rs.beta = beta;
        return rs;
    }
    throw UnsupportedStratum("could not find a generator of the real subfield");
}

/// Image of an element of L in K.
inline Elem embed_real(const FieldData& K, const RealSubfield& rs, const Elem& y) { return eval_poly_at(K, y, rs.beta); }

/// Data that makes the short-vector principality search complete for one order.
struct PrincipalityData {
    FieldShape shape = FieldShape::ImaginaryQuadratic;
    Rat unit_constant = 0;   ///< upper bound for u + 1/u, u > 1 the reducing unit's larger embedding
    long unit_power = 1;     ///< smallest k with eps^k in the order
    int unit_norm = 1;       ///< norm of eps^k from L to Q
};

namespace detail {

/// Bound for |u| + 1/|u| where u = eps^k, from the Lucas sequence of traces.
inline Rat unit_power_constant(const QuadraticUnit& u, long k) {
    Int t0 = 2, t1 = u.trace;
    const Int n = u.norm;
    for (long i = 1; i < k; ++i) {
        Int t2 = u.trace * t1 - n * t0;
        t0 = t1;
        t1 = t2;
    }
    int nk = (u.norm == -1 && (k % 2 == 1)) ? -1 : 1;
    if (nk == 1) return Rat(abs_int(t1));
    Int s = t1 * t1 + 4;
    Int r = isqrt(s);
    return Rat(is_square(s) ? r : Int(r + 1));
}

inline long smallest_unit_power(const FieldData& K, const Order& R, const Elem& eps, long limit = 10000) {
    if (!is_integral(K, eps)) throw PreconditionViolation("fundamental unit is not integral");
    Elem cur = eps;
    for (long k = 1; k <= limit; ++k) {
        if (contains(R, cur)) return k;
        cur = mul(K, cur, eps);
    }
    throw ResourceLimit("no power of the fundamental unit lies in the order");
}

}  // namespace detail

inline PrincipalityData principality_data(const Order& R, const std::optional<RealSubfield>& rs_in = {}) {
    PrincipalityData pd;
    pd.shape = field_shape(R.K());
    if (pd.shape == FieldShape::ImaginaryQuadratic) return pd;
    RealSubfield rs = rs_in ? *rs_in : (pd.shape == FieldShape::QuarticCM ? real_subfield(R.field) : real_quadratic_data(R.field));
    Elem eps = pd.shape == FieldShape::QuarticCM ? embed_real(R.K(), rs, rs.unit_in_L) : rs.unit_in_L;
    pd.unit_power = detail::smallest_unit_power(R.K(), R, eps);
    pd.unit_constant = detail::unit_power_constant(rs.unit, pd.unit_power);
    pd.unit_norm = (rs.unit.norm == -1 && pd.unit_power % 2 == 1) ? -1 : 1;
    return pd;
}

/// Upper bound on T2 that some generator of a principal ideal of norm N must satisfy.
inline Rat principality_bound(const PrincipalityData& pd, const Rat& N) {
    switch (pd.shape) {
        case FieldShape::ImaginaryQuadratic:
            return 2 * N;
        case FieldShape::RealQuadratic:
            return N * pd.unit_constant;
        case FieldShape::QuarticCM: {
            // sqrt(a/b) <= (isqrt(a b) + 1) / b
            Int a = N.get_num(), b = N.get_den();
            Rat root_up = frac(isqrt(a * b) + 1, b);
            return 2 * pd.unit_constant * root_up;
        }
    }
    return 0;
}

/// Gram matrix of Tr(x conj(y)) on a basis.
inline RatMatrix t2_gram(const FieldData& K, const std::vector<Elem>& b) {
    RatMatrix g(b.size(), b.size());
    std::vector<Elem> cb;
    for (const auto& v : b) cb.push_back(conj(K, v));
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i; j < b.size(); ++j) g(i, j) = g(j, i) = trace(K, mul(K, b[i], cb[j]));
    return g;
}

inline Elem combine(const std::vector<Elem>& basis, const std::vector<Int>& c) {
    Elem e(basis.front().size(), Rat(0));
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (c[i] != 0) e = add(e, scale(Rat(c[i]), basis[i]));
    return e;
}

/// Generator x of the lattice as a module over its multiplicator ring (N its norm relative to that ring), or nothing.
inline std::optional<Elem> find_generator(const FieldData& K, const Lattice& lat, const Rat& N, const PrincipalityData& pd,
                                          std::size_t budget = 50000000) {
    auto b = lat.basis();
    RatMatrix g = t2_gram(K, b);
    std::optional<Elem> found;
    enumerate_short_vectors(
        g, principality_bound(pd, N),
        [&](const std::vector<Int>& v, const Rat&) {
            Elem x = combine(b, v);
            if (abs_rat(norm(K, x)) != N) return true;
            found = x;
            return false;
        },
        budget);
    return found;
}

/// Generator of I over its multiplicator ring, or nothing when I is not principal.
inline std::optional<Elem> is_principal(const FractionalIdeal& I, const std::optional<PrincipalityData>& pd_in = {}) {
    PrincipalityData pd = pd_in ? *pd_in : principality_data(I.ring);
    return find_generator(I.K(), I.lat, I.norm, pd);
}

/// Short element of the lattice (first LLL vector for T2).
inline Elem short_element(const FieldData& K, const Lattice& lat) {
    auto b = lat.basis();
    IntMatrix t = lll_transform(t2_gram(K, b));
    return combine(b, t.row(0));
}

/// x^{-1} I for a short x in I; same class, small norm, contains the ring.
inline FractionalIdeal reduce_ideal(const FractionalIdeal& I) {
    Elem x = short_element(I.K(), I.lat);
    return ideal_scale(I, inverse(I.K(), x));
}

}  // namespace rmiso
