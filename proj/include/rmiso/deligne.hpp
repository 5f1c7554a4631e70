#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "rmiso/classgroup.hpp"
#include "rmiso/rn.hpp"

namespace rmiso {

/// Lattice T in K with Frobenius F = alpha^n, Verschiebung V = q^n / alpha^n and the O_L action, all as integer
/// matrices on a fixed basis of T (column j holds the coordinates of the image of the j-th basis vector).
struct DeligneModule {
    FractionalIdeal T;
    std::vector<Elem> basis;
    WeilPolynomial h;
    long n = 1;
    Int qn;
    IntPoly hn;
    IntMatrix F, V;
    std::vector<IntMatrix> rm_action;
    std::optional<Elem> polarization;
};

namespace detail {

/// Matrix of multiplication by x on the given basis, or nothing if x does not preserve the lattice.
inline std::optional<IntMatrix> action_matrix(const FieldData& K, const std::vector<Elem>& basis, const RatMatrix& basis_inv,
                                              const Elem& x) {
    const std::size_t d = basis.size();
    IntMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Elem y = mul(K, x, basis[j]);
        for (std::size_t i = 0; i < d; ++i) {
            Rat c = 0;
            for (std::size_t k = 0; k < d; ++k) c += y[k] * basis_inv(k, i);
            if (c.get_den() != 1) return std::nullopt;
            m(i, j) = c.get_num();
        }
    }
    return m;
}

inline RatMatrix basis_inverse(const std::vector<Elem>& basis) {
    RatMatrix b(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) b(i, j) = basis[i][j];
    return inverse(b);
}

/// Embedded O_L basis (g = 2) or {1} (g = 1).
inline std::vector<Elem> rm_generators(const FieldPtr& K, const std::optional<RealSubfield>& rs) {
    if (K->n == 2) return {const_elem(*K, Rat(1))};
    RealSubfield r = rs ? *rs : real_subfield(K);
    std::vector<Elem> out;
    for (const auto& w : r.OL.basis()) out.push_back(embed_real(*K, r, w));
    return out;
}

}  // namespace detail

/// Deligne module of the ideal I. The basis defaults to the HNF basis of I; an explicit basis must span I.
inline DeligneModule module_from_ideal(const FractionalIdeal& I, const WeilPolynomial& h, long n,
                                       std::optional<std::vector<Elem>> basis = {},
                                       const std::optional<RealSubfield>& rs = {}) {
    const FieldData& K = I.K();
    if (K.r != h.base) throw PreconditionViolation("ideal lives in a field other than Q[x]/(h)");
    if (n < 1) throw InvalidInput("n must be positive");
    DeligneModule M;
    M.T = I;
    M.h = h;
    M.n = n;
    M.qn = pow_int(h.q, static_cast<unsigned long>(n));
    WeilPolynomial base = h;
    base.poly = h.base;
    base.e = 1;
    M.hn = char_poly_of_power(base, n).poly;
    if (basis) {
        if (lattice_from_generators(*basis, K.n) != I.lat || basis->size() != K.n)
            throw PreconditionViolation("explicit basis does not span the ideal");
        M.basis = *basis;
    } else {
        M.basis = I.lat.basis();
    }
    RatMatrix binv = detail::basis_inverse(M.basis);
    Elem an = pow(K, alpha_elem(K), static_cast<unsigned long>(n));
    auto f = detail::action_matrix(K, M.basis, binv, an);
    auto v = detail::action_matrix(K, M.basis, binv, conj(K, an));
    if (!f || !v) throw PreconditionViolation("ideal is not stable under alpha^n and q^n/alpha^n");
    M.F = *f;
    M.V = *v;
    RatMatrix vq = inverse(to_rat(M.F)).scaled(Rat(M.qn));
    if (!is_integral(vq) || to_int(vq) != M.V) throw PreconditionViolation("q^n F^{-1} is not the Verschiebung matrix");
    for (const auto& w : detail::rm_generators(I.ring.field, rs)) {
        auto a = detail::action_matrix(K, M.basis, binv, w);
        if (!a) throw PreconditionViolation("ideal is not stable under O_L");
        M.rm_action.push_back(*a);
    }
    return M;
}

struct DeligneAxiomReport {
    bool fv_identity = false;   ///< F V = V F = q^n
    bool v_integral = false;    ///< q^n F^{-1} integral and equal to V
    bool char_poly = false;     ///< char(F) = h_n
    bool semisimple = false;    ///< h_n squarefree
    bool rm_commutes = false;
    bool slope_split = false;   ///< slopes of char(F) over q^n agree with those of h over q
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

inline DeligneAxiomReport check_deligne_axioms(const DeligneModule& M) {
    DeligneAxiomReport r;
    const std::size_t d = M.F.rows();
    IntMatrix qI = IntMatrix::identity(d);
    for (std::size_t i = 0; i < d; ++i) qI(i, i) = M.qn;
    r.fv_identity = M.F * M.V == qI && M.V * M.F == qI;
    RatMatrix fr = to_rat(M.F);
    bool invertible = determinant(fr) != 0;
    if (invertible) {
        RatMatrix vq = inverse(fr).scaled(Rat(M.qn));
        r.v_integral = is_integral(vq) && to_int(vq) == M.V;
    }
    std::vector<Int> cp;
    for (const auto& c : charpoly(fr)) cp.push_back(c.get_num());
    IntPoly chf(cp);
    r.char_poly = chf == M.hn;
    r.semisimple = is_squarefree(M.hn);
    r.rm_commutes = true;
    for (const auto& a : M.rm_action)
        if (a * M.F != M.F * a) r.rm_commutes = false;
    if (invertible) {
        NewtonProfile mine = newton_slopes(chf, M.h.p, M.h.m * M.n);
        NewtonProfile ref = newton_slopes(M.h.base, M.h.p, M.h.m);
        r.slope_split = mine.slopes == ref.slopes;
    }
    if (!r.fv_identity) r.failures.push_back("F V = V F = q^n fails");
    if (!r.v_integral) r.failures.push_back("q^n F^{-1} is not the integral matrix V");
    if (!r.char_poly) r.failures.push_back("characteristic polynomial of F differs from h_n");
    if (!r.semisimple) r.failures.push_back("h_n is not squarefree (F not semisimple)");
    if (!r.rm_commutes) r.failures.push_back("O_L action does not commute with F");
    if (!r.slope_split) r.failures.push_back("slope decomposition of F does not match the Newton polygon of h");
    return r;
}

/// x with x T1 = T2 and the matrix U of x in the two bases, so that U F1 = F2 U.
struct ModuleIsomorphism {
    Elem x;
    IntMatrix U;
};

inline std::optional<ModuleIsomorphism> find_isomorphism(const DeligneModule& M1, const DeligneModule& M2) {
    if (M1.T.K().r != M2.T.K().r || M1.n != M2.n || M1.h.q != M2.h.q)
        throw PreconditionViolation("modules have incompatible field data");
    if (M1.T.ring != M2.T.ring) return std::nullopt;
    const FieldData& K = M1.T.K();
    if (!is_invertible(M1.T) || !is_invertible(M2.T))
        throw UnsupportedStratum("isomorphism test needs ideals invertible over their multiplicator ring");
    FractionalIdeal J = ideal_product(M2.T, ideal_inverse(M1.T));
    auto x = is_principal(J);
    if (!x) return std::nullopt;
    // J = T2 T1^{-1} = x R, so x T1 = T2
    RatMatrix b2inv = detail::basis_inverse(M2.basis);
    const std::size_t d = M1.basis.size();
    IntMatrix U(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Elem y = mul(K, *x, M1.basis[j]);
        for (std::size_t i = 0; i < d; ++i) {
            Rat c = 0;
            for (std::size_t k = 0; k < d; ++k) c += y[k] * b2inv(k, i);
            if (c.get_den() != 1) throw PreconditionViolation("generator does not map T1 into T2");
            U(i, j) = c.get_num();
        }
    }
    return ModuleIsomorphism{*x, U};
}

inline bool are_isomorphic(const DeligneModule& M1, const DeligneModule& M2) { return find_isomorphism(M1, M2).has_value(); }

/// Isomorphism classes of Deligne modules for (h, n): the ideal classes of every over-order of R_n.
struct IcmResult {
    RnData rn;
    std::vector<Order> orders;          ///< R_n first, then by increasing index over R_n
    std::vector<Int> class_numbers;
    std::vector<DeligneModule> modules;
    std::vector<std::size_t> module_order;  ///< index into orders
};

inline IcmResult enumerate_icm(const WeilPolynomial& h, long n, const ClassGroupOptions& opts = {}) {
    IcmResult out;
    out.rn = construct_Rn(h, n);
    const RnData& rn = out.rn;
    std::vector<Order> ovs = over_orders(rn.R, rn.OK);
    if (!is_bass(rn.R, rn.OK) && !all_gorenstein(ovs))
        throw UnsupportedStratum("R_n is not Bass; ideal class monoid enumeration is not implemented");
    std::vector<std::pair<Int, std::string>> keys;
    std::vector<std::size_t> perm(ovs.size());
    for (std::size_t i = 0; i < ovs.size(); ++i) {
        perm[i] = i;
        keys.emplace_back(index(rn.R, ovs[i]), ovs[i].lat.key());
    }
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });
    for (std::size_t i : perm) {
        const Order& O = ovs[i];
        ClassGroup cg = class_group(O, opts, rn.real);
        out.class_numbers.push_back(cg.h);
        std::vector<FractionalIdeal> reps = cg.representatives;
        std::sort(reps.begin(), reps.end(), [](const FractionalIdeal& a, const FractionalIdeal& b) { return a.lat.key() < b.lat.key(); });
        for (const auto& I : reps) {
            out.modules.push_back(module_from_ideal(I, h, n, {}, rn.real));
            out.module_order.push_back(out.orders.size());
        }
        out.orders.push_back(O);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Polarizations

/// One sign per conjugate pair of complex embeddings: the selected embedding z has sign(Im z) = sign.
/// Pairs are ordered by the real number z + conj(z), ascending.
struct CMType {
    std::vector<int> signs;
};

inline CMType default_cm_type(long g) { return CMType{std::vector<int>(static_cast<std::size_t>(g), 1)}; }

inline std::vector<CMType> all_cm_types(long g) {
    std::vector<CMType> out;
    for (unsigned long mask = 0; mask < (1UL << g); ++mask) {
        CMType t;
        for (long i = 0; i < g; ++i) t.signs.push_back((mask >> i) & 1UL ? -1 : 1);
        out.push_back(t);
    }
    return out;
}

/// Signs of Im phi(lambda) over the embeddings selected by the CM type, for lambda with conj(lambda) = -lambda.
/// lambda = mu (alpha - conj alpha) with mu real; Im phi(alpha - conj alpha) has the sign chosen by the type, and
/// the sign of phi(mu) is decided exactly at the real roots of the minimal polynomial of alpha + conj(alpha).
inline std::vector<int> imaginary_signs(const FieldData& K, const Int& q, const Elem& lambda, const CMType& phi) {
    const long g = static_cast<long>(K.n / 2);
    if (static_cast<long>(phi.signs.size()) != g) throw PreconditionViolation("CM type has the wrong number of signs");
    Elem a = alpha_elem(K);
    Elem xi = sub(a, conj(K, a));
    Elem mu = mul(K, lambda, inverse(K, xi));
    if (conj(K, mu) != mu) throw PreconditionViolation("element is not purely imaginary");
    std::vector<int> out;
    if (g == 1) {
        out.push_back(sgn(mu[0]) * phi.signs[0]);
        return out;
    }
    Elem beta = add(a, conj(K, a));
    std::size_t j1 = 1;
    while (j1 < K.n && beta[j1] == 0) ++j1;
    Rat c1 = mu[j1] / beta[j1];
    Rat c0 = mu[0] - c1 * beta[0];
    if (add(const_elem(K, c0), scale(c1, beta)) != mu) throw PreconditionViolation("real part is not a polynomial in alpha + conj(alpha)");
    IntPoly m = real_counterpart_of(K.r, q);
    Int den = lcm(Int(c0.get_den()), Int(c1.get_den()));
    IntPoly lin({Int(c0 * den), Int(c1 * den)});
    auto ivs = isolate_real_roots(m);
    if (static_cast<long>(ivs.size()) != g) throw PreconditionViolation("real subfield polynomial is not totally real");
    for (long i = 0; i < g; ++i) out.push_back(sign_at_root(m, ivs[static_cast<std::size_t>(i)], lin) * phi.signs[static_cast<std::size_t>(i)]);
    return out;
}

/// Gram matrix of (x, y) -> Tr(lambda x conj(y)) on the module basis.
inline RatMatrix polarization_gram(const DeligneModule& M, const Elem& lambda) {
    const FieldData& K = M.T.K();
    const std::size_t d = M.basis.size();
    RatMatrix g(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        Elem li = mul(K, lambda, M.basis[i]);
        for (std::size_t j = 0; j < d; ++j) g(i, j) = trace(K, mul(K, li, conj(K, M.basis[j])));
    }
    return g;
}

struct PolarizationCheck {
    bool anti_invariant = false;  ///< conj(lambda) = -lambda
    bool integral = false;
    bool antisymmetric = false;
    bool unimodular = false;      ///< det of the pairing is +-1
    bool positive = false;        ///< Im phi(lambda) > 0 on the CM type

    bool ok() const { return anti_invariant && integral && antisymmetric && unimodular && positive; }
};

inline PolarizationCheck check_polarization(const DeligneModule& M, const Elem& lambda, const CMType& phi) {
    const FieldData& K = M.T.K();
    PolarizationCheck c;
    c.anti_invariant = !is_zero(lambda) && conj(K, lambda) == scale(Rat(-1), lambda);
    if (!c.anti_invariant) return c;
    RatMatrix g = polarization_gram(M, lambda);
    c.integral = is_integral(g);
    c.antisymmetric = g.transpose() == g.scaled(Rat(-1));
    Rat det = determinant(g);
    c.unimodular = det == 1 || det == -1;
    auto s = imaginary_signs(K, M.h.q, lambda, phi);
    c.positive = std::all_of(s.begin(), s.end(), [](int v) { return v > 0; });
    return c;
}

inline bool verify_polarization(const DeligneModule& M, const Elem& lambda, const CMType& phi) { return check_polarization(M, lambda, phi).ok(); }

/// Searches the purely imaginary part of the dual of T conj(T) for a principal polarization. Candidates are
/// enumerated up to bound_scale times the T2 bound under which a generator of that dual must appear (for g = 2,
/// enlarged by two unit factors so that every sign pattern of unit multiples is reached).
/// Returns nothing when no candidate in range works; throws ResourceLimit when the enumeration budget runs out.
inline std::optional<Elem> find_principal_polarization(const DeligneModule& M, const CMType& phi, long bound_scale = 1,
                                                       std::size_t budget = 5000000) {
    const FieldData& K = M.T.K();
    const std::size_t d = K.n;
    const long g = static_cast<long>(d / 2);
    Lattice D = trace_dual(K, lattice_product(K, M.T.lat, lattice_conj(K, M.T.lat)));
    auto db = D.basis();
    // rows: coordinates in D of d_i + conj(d_i)
    IntMatrix sym(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        auto c = lattice_coordinates(D, add(db[i], conj(K, db[i])));
        if (!c) throw PreconditionViolation("dual lattice is not stable under conjugation");
        for (std::size_t j = 0; j < d; ++j) sym(i, j) = (*c)[j];
    }
    IntMatrix ker = integer_left_kernel(sym);
    std::vector<Elem> minus;
    for (std::size_t i = 0; i < ker.rows(); ++i) minus.push_back(combine(db, ker.row(i)));
    if (static_cast<long>(minus.size()) != g) throw PreconditionViolation("purely imaginary part has unexpected rank");
    PrincipalityData pd = principality_data(M.T.ring);
    Rat bound = principality_bound(pd, relative_norm(D, M.T.ring)) * Rat(bound_scale);
    if (g == 2) bound *= pd.unit_constant * pd.unit_constant;
    std::optional<Elem> found;
    enumerate_short_vectors(
        t2_gram(K, minus), bound,
        [&](const std::vector<Int>& v, const Rat&) {
            Elem lam = combine(minus, v);
            RatMatrix gram = polarization_gram(M, lam);
            Rat det = determinant(gram);
            if (det != 1 && det != -1) return true;
            auto s = imaginary_signs(K, M.h.q, lam, phi);
            if (std::all_of(s.begin(), s.end(), [](int x) { return x > 0; })) {
                found = lam;
                return false;
            }
            if (std::all_of(s.begin(), s.end(), [](int x) { return x < 0; })) {
                found = scale(Rat(-1), lam);
                return false;
            }
            return true;
        },
        budget);
    return found;
}

}  // namespace rmiso
