#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rmiso/ideals.hpp"
#include "rmiso/modp.hpp"

namespace rmiso {

struct ClassGroupOptions {
    std::size_t max_group_elements = 200000;  ///< cap on the enumerated class list
    std::size_t max_sublattices = 200000;     ///< cap on candidate generator lattices per prime
};

namespace detail {

/// Row echelon form over F_p with pivots normalized to 1 and cleared above and below.
struct EchelonModP {
    std::vector<std::vector<Int>> rows;
    std::vector<std::size_t> pivots;
};

inline EchelonModP rref_mod_p(std::vector<std::vector<Int>> rows, const Int& p, std::size_t width) {
    EchelonModP e;
    for (auto& r : rows)
        for (auto& v : r) v = mod(v, p);
    std::size_t row = 0;
    for (std::size_t col = 0; col < width && row < rows.size(); ++col) {
        std::size_t piv = row;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[row], rows[piv]);
        Int inv = inv_mod(rows[row][col], p);
        for (auto& v : rows[row]) v = mod(v * inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == row || rows[i][col] == 0) continue;
            Int f = rows[i][col];
            for (std::size_t j = 0; j < width; ++j) rows[i][j] = mod(rows[i][j] - f * rows[row][j], p);
        }
        e.pivots.push_back(col);
        ++row;
    }
    rows.resize(row);
    e.rows = std::move(rows);
    return e;
}

inline std::string echelon_key(const EchelonModP& e) {
    std::string s;
    for (const auto& r : e.rows) {
        for (const auto& v : r) s += v.get_str() + ",";
        s += ";";
    }
    return s;
}

inline Elem from_coords(const std::vector<Elem>& basis, const std::vector<Int>& c) { return combine(basis, c); }

/// Radical of R/lR as coordinate vectors (kernel of a high enough Frobenius power).
inline std::vector<std::vector<Int>> radical_mod(const Order& R, const std::vector<IntMatrix>& table, const Int& l) {
    const std::size_t n = R.degree();
    Int lj = l;
    while (lj < Int(static_cast<unsigned long>(n))) lj *= l;
    const std::vector<Int> one = *lattice_coordinates(R.lat, const_elem(R.K(), Rat(1)));
    IntMatrix frob(n, n, Int(0));
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> base(n, Int(0));
        base[i] = 1;
        std::vector<Int> acc = one;
        Int ex = lj;
        while (ex > 0) {
            if (mpz_odd_p(ex.get_mpz_t())) acc = coord_mul(table, acc, base, l);
            base = coord_mul(table, base, base, l);
            ex >>= 1;
        }
        for (std::size_t k = 0; k < n; ++k) frob(i, k) = acc[k];
    }
    return left_kernel_mod_p(frob, l);
}

inline std::vector<Int> reduce_mod_echelon(std::vector<Int> v, const EchelonModP& e, const Int& p) {
    for (auto& x : v) x = mod(x, p);
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
        const Int f = v[e.pivots[k]];
        if (f == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = mod(v[j] - f * e.rows[k][j], p);
    }
    return v;
}

}  // namespace detail

/// Prime ideals of R above l, assuming R is maximal at l: maximal ideals of (R/lR)/radical, separated by the
/// factorization of the characteristic polynomial of a generating element. Returns (lattice, residue degree).
inline std::vector<std::pair<Lattice, long>> primes_above(const Order& R, const Int& l) {
    const FieldData& K = R.K();
    const std::size_t n = R.degree();
    auto table = structure_matrices(R);
    auto b = R.basis();
    auto rad = detail::rref_mod_p(detail::radical_mod(R, table, l), l, n);
    std::vector<std::size_t> comp;
    {
        std::set<std::size_t> piv(rad.pivots.begin(), rad.pivots.end());
        for (std::size_t j = 0; j < n; ++j)
            if (!piv.count(j)) comp.push_back(j);
    }
    const std::size_t d = comp.size();
    const std::vector<Int> one = *lattice_coordinates(R.lat, const_elem(K, Rat(1)));
    std::mt19937_64 rng(0x5eed + l.get_ui());
    for (int attempt = 0; attempt < 200; ++attempt) {
        std::vector<Int> gamma(n, Int(0));
        if (attempt < static_cast<int>(n))
            gamma[static_cast<std::size_t>(attempt)] = 1;
        else
            for (auto& v : gamma) v = Int(static_cast<long>(rng() % 7)) - 3;
        IntMatrix m(d, d, Int(0));
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<Int> e(n, Int(0));
            e[comp[i]] = 1;
            auto v = detail::reduce_mod_echelon(coord_mul(table, e, gamma, l), rad, l);
            for (std::size_t j = 0; j < d; ++j) m(i, j) = v[comp[j]];
        }
        std::vector<Int> cp;
        for (const auto& c : charpoly(to_rat(m))) cp.push_back(c.get_num());
        IntPoly chi = modpoly::reduce(IntPoly(cp), l);
        IntPoly dchi = modpoly::reduce(chi.derivative(), l);
        if (d > 1 && (dchi.is_zero() || modpoly::gcd(chi, dchi, l).degree() != 0)) continue;
        std::vector<std::pair<Lattice, long>> out;
        bool ok = true;
        for (const auto& f : modpoly::factor_squarefree(chi, l)) {
            // f(gamma) by Horner in coordinates
            std::vector<Int> val(n, Int(0));
            for (std::size_t k = static_cast<std::size_t>(f.degree()) + 1; k-- > 0;) {
                val = coord_mul(table, val, gamma, l);
                for (std::size_t j = 0; j < n; ++j) val[j] = mod(val[j] + f.coeff(k) * one[j], l);
            }
            std::vector<Elem> gens;
            Elem fg = detail::from_coords(b, val);
            for (const auto& w : b) {
                gens.push_back(scale(Rat(l), w));
                gens.push_back(mul(K, fg, w));
            }
            for (const auto& r : rad.rows) gens.push_back(detail::from_coords(b, r));
            Lattice P = lattice_from_generators(gens, n);
            if (lattice_index(P, R.lat) != pow_int(l, static_cast<unsigned long>(f.degree()))) {
                ok = false;
                break;
            }
            out.emplace_back(P, f.degree());
        }
        if (ok) return out;
    }
    throw ResourceLimit("could not separate the primes above " + l.get_str());
}

/// All R-stable sublattices of R of l-power index at most bound (excluding R itself), by descending through
/// submodules of M/lM.
inline std::vector<Lattice> prime_power_sublattices(const Order& R, const Int& l, const Int& bound, std::size_t cap) {
    const FieldData& K = R.K();
    const std::size_t n = R.degree();
    auto rb = R.basis();
    {
        Int points = pow_int(l, static_cast<unsigned long>(n));
        if (points > Int(4000000)) throw ResourceLimit("sublattice search over F_" + l.get_str() + "^n is too large");
    }
    std::map<std::string, std::pair<Lattice, Int>> seen;
    std::vector<std::pair<Lattice, Int>> queue{{R.lat, Int(1)}};
    std::vector<Lattice> out;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const Lattice M = queue[qi].first;
        const Int idx = queue[qi].second;
        if (idx * l > bound) continue;
        auto mb = M.basis();
        std::vector<IntMatrix> act;
        for (const auto& w : rb) {
            IntMatrix t(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                auto c = lattice_coordinates(M, mul(K, w, mb[i]));
                if (!c) throw PreconditionViolation("lattice is not stable under the order");
                for (std::size_t j = 0; j < n; ++j) t(i, j) = (*c)[j];
            }
            act.push_back(t);
        }
        auto closure = [&](std::vector<std::vector<Int>> rows) {
            auto e = detail::rref_mod_p(rows, l, n);
            while (true) {
                std::vector<std::vector<Int>> more = e.rows;
                for (const auto& r : e.rows)
                    for (const auto& t : act) {
                        std::vector<Int> v(n, Int(0));
                        for (std::size_t i = 0; i < n; ++i)
                            if (r[i] != 0)
                                for (std::size_t j = 0; j < n; ++j) v[j] += r[i] * t(i, j);
                        more.push_back(v);
                    }
                auto e2 = detail::rref_mod_p(more, l, n);
                if (e2.rows.size() == e.rows.size()) return e;
                e = e2;
            }
        };
        // cyclic submodules, then sums
        std::map<std::string, detail::EchelonModP> subs;
        subs.emplace("", detail::EchelonModP{});
        std::vector<Int> v(n, Int(0));
        const unsigned long lu = l.get_ui();
        std::vector<unsigned long> digits(n, 0);
        while (true) {
            std::size_t i = 0;
            while (i < n && digits[i] + 1 == lu) digits[i++] = 0;
            if (i == n) break;
            ++digits[i];
            // normalized: last nonzero digit equal to 1
            std::size_t last = n;
            for (std::size_t k = n; k-- > 0;)
                if (digits[k]) {
                    last = k;
                    break;
                }
            if (digits[last] != 1) continue;
            for (std::size_t k = 0; k < n; ++k) v[k] = Int(digits[k]);
            auto e = closure({v});
            if (e.rows.size() < n) subs.emplace(detail::echelon_key(e), e);
        }
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<detail::EchelonModP> cur;
            for (const auto& kv : subs) cur.push_back(kv.second);
            for (std::size_t a = 0; a < cur.size(); ++a)
                for (std::size_t c = a + 1; c < cur.size(); ++c) {
                    auto rows = cur[a].rows;
                    rows.insert(rows.end(), cur[c].rows.begin(), cur[c].rows.end());
                    auto e = detail::rref_mod_p(rows, l, n);
                    if (e.rows.size() < n && subs.emplace(detail::echelon_key(e), e).second) grew = true;
                }
            if (subs.size() > cap) throw ResourceLimit("too many submodules while enumerating sublattices");
        }
        for (const auto& kv : subs) {
            const std::size_t codim = n - kv.second.rows.size();
            Int nidx = idx * pow_int(l, static_cast<unsigned long>(codim));
            if (nidx > bound) continue;
            std::vector<Elem> gens;
            for (const auto& w : mb) gens.push_back(scale(Rat(l), w));
            for (const auto& r : kv.second.rows) gens.push_back(detail::from_coords(mb, r));
            Lattice N = lattice_from_generators(gens, n);
            if (seen.emplace(N.key(), std::make_pair(N, nidx)).second) {
                queue.emplace_back(N, nidx);
                out.push_back(N);
                if (out.size() > cap) throw ResourceLimit("too many sublattices of prime-power index");
            }
        }
    }
    return out;
}

/// Minkowski bound for the order's discriminant, rounded up with a margin.
inline Int minkowski_bound(const Order& R) {
    const double D = std::fabs(disc_order(R).get_d());
    double mb = 0;
    switch (field_shape(R.K())) {
        case FieldShape::ImaginaryQuadratic: mb = 2.0 / M_PI * std::sqrt(D); break;
        case FieldShape::RealQuadratic: mb = 0.5 * std::sqrt(D); break;
        case FieldShape::QuarticCM: mb = 3.0 / (2.0 * M_PI * M_PI) * std::sqrt(D); break;
    }
    return Int(static_cast<unsigned long>(std::floor(mb)) + 1);
}

/// Invertible integral ideals of prime-power norm up to the Minkowski bound; they generate Pic(R).
inline std::vector<FractionalIdeal> class_group_generators(const Order& R, const ClassGroupOptions& opts = {}) {
    const Int D = disc_order(R);
    const Int B = minkowski_bound(R);
    std::vector<FractionalIdeal> out;
    for (Int l = 2; l <= B; ++l) {
        if (!is_prime(l)) continue;
        bool maximal_at_l = (D % (l * l) != 0) || p_maximal_order(R, l) == R;
        if (maximal_at_l) {
            for (const auto& [P, f] : primes_above(R, l)) {
                if (pow_int(l, static_cast<unsigned long>(f)) > B) continue;
                if (P == lattice_scale(R.lat, Rat(l))) continue;  // lR is principal
                out.push_back(ideal_over(R, P));
            }
        } else {
            for (const auto& P : prime_power_sublattices(R, l, B, opts.max_sublattices)) {
                FractionalIdeal I = ideal_over(R, P);
                if (multiplicator_ring(R.field, P) != R || !is_invertible(I)) continue;
                out.push_back(I);
            }
        }
    }
    return out;
}

namespace detail {

/// Finds which stored class an ideal belongs to.
class ClassLocator {
public:
    ClassLocator(PrincipalityData pd, bool narrow) : pd_(pd), narrow_(narrow) {}

    std::optional<std::size_t> find(const FractionalIdeal& X) const {
        if (keyed()) {
            auto it = index_.find(canonical_key(X));
            if (it == index_.end()) return std::nullopt;
            return it->second;
        }
        for (std::size_t i = 0; i < inverses_.size(); ++i)
            if (equivalent_to_inverse(X, inverses_[i])) return i;
        return std::nullopt;
    }

    void add(const FractionalIdeal& X) {
        if (keyed())
            index_.emplace(canonical_key(X), count_);
        else
            inverses_.push_back(ideal_over(X.ring, lattice_colon(X.K(), X.ring.lat, X.lat)));
        ++count_;
    }

    const PrincipalityData& data() const { return pd_; }
    bool narrow() const { return narrow_; }

    /// Reduced ideal in the same class (for narrow classes the scaling element has positive norm).
    FractionalIdeal reduce(const FractionalIdeal& I) const {
        if (!narrow_ || pd_.unit_norm == -1) return reduce_ideal(I);
        const FieldData& K = I.K();
        auto b = I.lat.basis();
        RatMatrix g = t2_gram(K, b);
        IntMatrix t = lll_transform(g);
        Elem x0 = combine(b, t.row(0));
        Rat bound = 2 * t2(K, x0);
        for (int round = 0; round < 64; ++round, bound *= 2) {
            std::optional<Elem> pick;
            enumerate_short_vectors(g, bound, [&](const std::vector<Int>& v, const Rat&) {
                Elem x = combine(b, v);
                if (norm(K, x) > 0) {
                    pick = x;
                    return false;
                }
                return true;
            });
            if (pick) return ideal_scale(I, inverse(K, *pick));
        }
        return I;
    }

    static std::string canonical_key(const FractionalIdeal& X) {
        // x^{-1} X over the T2-minimal x in X; T2 is multiplicative in imaginary quadratic fields
        const FieldData& K = X.K();
        auto b = X.lat.basis();
        RatMatrix g = t2_gram(K, b);
        IntMatrix t = lll_transform(g);
        Rat best = t2(K, combine(b, t.row(0)));
        std::vector<Elem> minima;
        const Rat bound = best;
        enumerate_short_vectors(g, bound, [&](const std::vector<Int>& v, const Rat& val) {
            if (val < best) {
                best = val;
                minima.clear();
            }
            if (val == best) minima.push_back(combine(b, v));
            return true;
        });
        std::string key;
        for (const auto& x : minima) {
            std::string k = lattice_times(K, X.lat, inverse(K, x)).key();
            if (key.empty() || k < key) key = k;
        }
        return key;
    }

private:
    bool keyed() const { return pd_.shape == FieldShape::ImaginaryQuadratic && !narrow_; }

    bool equivalent_to_inverse(const FractionalIdeal& X, const FractionalIdeal& Einv) const {
        const FieldData& K = X.K();
        Lattice prod = lattice_product(K, X.lat, Einv.lat);
        Rat N = X.norm * Einv.norm;
        Elem x = short_element(K, prod);
        Rat nx = norm(K, x);
        Lattice red = lattice_times(K, prod, inverse(K, x));
        auto gen = find_generator(K, red, N / abs_rat(nx), pd_);
        if (!gen) return false;
        if (!narrow_ || pd_.unit_norm == -1) return true;
        return sign(norm(K, *gen)) * sign(nx) > 0;
    }

    PrincipalityData pd_;
    bool narrow_;
    std::size_t count_ = 0;
    std::map<std::string, std::size_t> index_;
    std::vector<FractionalIdeal> inverses_;
};

}  // namespace detail

/// Picard group of an order (invertible ideals modulo principal ones), or the narrow version.
struct ClassGroup {
    Order order;
    bool narrow = false;
    std::vector<Int> invariants;  ///< nontrivial invariant factors, d1 | d2 | ...
    Int h = 1;
    std::vector<FractionalIdeal> representatives;
    std::vector<std::vector<Int>> rep_exponents;  ///< in terms of generators
    std::vector<FractionalIdeal> generators;
    IntMatrix relations;                          ///< rows generate all relations among generators
    std::shared_ptr<detail::ClassLocator> locator;
};

/// Exponent vector (in the generators) of the class of an invertible ideal over the same order.
inline std::vector<Int> class_exponents(const ClassGroup& cg, const FractionalIdeal& I) {
    auto idx = cg.locator->find(cg.locator->reduce(I));
    if (!idx) throw PreconditionViolation("ideal class not found in the enumerated group");
    return cg.rep_exponents[*idx];
}

namespace detail {

inline ClassGroup build_group(const Order& R, std::vector<FractionalIdeal> gens, const PrincipalityData& pd, bool narrow,
                              const ClassGroupOptions& opts) {
    ClassGroup cg;
    cg.order = R;
    cg.narrow = narrow;
    cg.locator = std::make_shared<ClassLocator>(pd, narrow);
    const ClassLocator& loc = *cg.locator;
    const std::size_t k = gens.size();
    auto times = [&](const FractionalIdeal& a, const FractionalIdeal& b) {
        return loc.reduce(ideal_over(R, lattice_product(R.K(), a.lat, b.lat)));
    };
    std::vector<FractionalIdeal> elems{unit_ideal(R)};
    std::vector<std::vector<Int>> exps{std::vector<Int>(k, Int(0))};
    cg.locator->add(elems[0]);
    IntMatrix rel(k, k, Int(0));
    for (std::size_t j = 0; j < k; ++j) {
        FractionalIdeal P = loc.reduce(gens[j]);
        FractionalIdeal X = P;
        long c = 1;
        std::optional<std::size_t> idx;
        while (!(idx = loc.find(X))) {
            X = times(X, P);
            ++c;
            if (static_cast<std::size_t>(c) * elems.size() > opts.max_group_elements)
                throw ResourceLimit("class group enumeration exceeds its budget");
        }
        for (std::size_t i = 0; i < k; ++i) rel(j, i) = -exps[*idx][i];
        rel(j, j) += c;
        if (c == 1) continue;
        const std::size_t old = elems.size();
        FractionalIdeal Pi = unit_ideal(R);
        for (long i = 1; i < c; ++i) {
            Pi = times(Pi, P);
            for (std::size_t e = 0; e < old; ++e) {
                FractionalIdeal Y = times(elems[e], Pi);
                std::vector<Int> ex = exps[e];
                ex[j] += i;
                elems.push_back(Y);
                exps.push_back(ex);
                cg.locator->add(Y);
            }
        }
    }
    cg.generators = std::move(gens);
    cg.relations = rel;
    cg.representatives = std::move(elems);
    cg.rep_exponents = std::move(exps);
    cg.h = 1;
    if (k > 0)
        for (const auto& d : smith(rel).diagonal)
            if (d != 1) {
                cg.invariants.push_back(d);
                cg.h *= d;
            }
    if (cg.h != Int(static_cast<unsigned long>(cg.representatives.size())))
        throw PreconditionViolation("class group order disagrees with the enumerated classes");
    return cg;
}

}  // namespace detail

/// Picard group of an order in an imaginary quadratic, real quadratic or quartic CM field.
inline ClassGroup class_group(const Order& R, const ClassGroupOptions& opts = {}, const std::optional<RealSubfield>& rs = {}) {
    PrincipalityData pd = principality_data(R, rs);
    return detail::build_group(R, class_group_generators(R, opts), pd, false, opts);
}

/// Number of reduced primitive forms of discriminant D < 0.
inline Int bqf_class_number(const Int& D) {
    if (D >= 0 || (mod(D, Int(4)) != 0 && mod(D, Int(4)) != 1)) throw InvalidInput("discriminant must be negative and 0 or 1 mod 4");
    Int count = 0;
    const Int absD = -D;
    for (Int a = 1; 3 * a * a <= absD; ++a)
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (num % (4 * a) != 0) continue;
            Int c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            if (gcd(gcd(a, abs_int(b)), c) != 1) continue;
            ++count;
        }
    return count;
}

/// Narrow class group of an order in a real quadratic field: the ordinary generators plus a principal ideal
/// with a generator of negative norm.
inline ClassGroup narrow_class_group(const Order& R, const ClassGroupOptions& opts = {}) {
    if (field_shape(R.K()) != FieldShape::RealQuadratic) throw UnsupportedStratum("narrow class groups need a real quadratic order");
    PrincipalityData pd = principality_data(R);
    auto gens = class_group_generators(R, opts);
    const FieldData& L = R.K();
    const Int t = -L.r.coeff(1);
    // 2y - t has norm -disc(r) < 0; take a multiple inside R
    Elem s{Rat(-t), Rat(2)};
    Int mult = 1;
    while (!contains(R, scale(Rat(mult), s))) ++mult;
    gens.push_back(ideal_over(R, lattice_times(L, R.lat, scale(Rat(mult), s))));
    return detail::build_group(R, std::move(gens), pd, true, opts);
}

/// Kernel of the norm map Cl(R) -> Cl+(O_L).
struct NormKernel {
    Int size = 1;
    std::vector<Int> invariants;
    std::vector<std::vector<Int>> generator_images;  ///< narrow exponents of the norm of each generator
};

/// N_{K/L}(I) = (I conj(I)) cap L, in the coordinates of L.
inline Lattice relative_norm_lattice(const FractionalIdeal& I, const RealSubfield& rs) {
    const FieldData& K = I.K();
    Lattice P = lattice_product(K, I.lat, lattice_conj(K, I.lat));
    auto b = P.basis();
    const std::size_t n = b.size();
    IntMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        auto co = lattice_coordinates(P, conj(K, b[i]));
        if (!co) throw PreconditionViolation("norm lattice is not stable under conjugation");
        for (std::size_t j = 0; j < n; ++j) c(i, j) = (*co)[j] - (i == j ? 1 : 0);
    }
    IntMatrix ker = integer_left_kernel(c);
    // express fixed elements as c0 + c1 * beta
    const Elem& beta = rs.beta;
    std::size_t j1 = 1;
    while (j1 < n && beta[j1] == 0) ++j1;
    if (j1 == n) throw PreconditionViolation("real subfield generator is rational");
    std::vector<Elem> gens;
    for (std::size_t r = 0; r < ker.rows(); ++r) {
        Elem e = combine(b, ker.row(r));
        Rat c1 = e[j1] / beta[j1];
        Rat c0 = e[0] - c1 * beta[0];
        Elem check = add(const_elem(K, c0), scale(c1, beta));
        if (check != e) throw PreconditionViolation("conjugation-fixed element outside the real subfield");
        gens.push_back(Elem{c0, c1});
    }
    Lattice out = lattice_from_generators(gens, 2);
    if (!out.full_rank()) throw PreconditionViolation("norm ideal is not of full rank");
    return out;
}

/// Kernel of Cl(R) -> Cl+(O_L) for a quartic CM order R containing O_L.
inline NormKernel norm_map_kernel(const ClassGroup& cl, const RealSubfield& rs, const ClassGroup& narrow) {
    NormKernel nk;
    const std::size_t k = cl.generators.size();
    const std::size_t m = narrow.generators.size();
    if (k == 0) return nk;
    IntMatrix stack(k + m, m, Int(0));
    for (std::size_t j = 0; j < k; ++j) {
        Lattice N = relative_norm_lattice(cl.generators[j], rs);
        auto ex = m == 0 ? std::vector<Int>{} : class_exponents(narrow, ideal_over(narrow.order, N));
        nk.generator_images.push_back(ex);
        for (std::size_t i = 0; i < m; ++i) stack(j, i) = ex[i];
    }
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t i = 0; i < m; ++i) stack(k + r, i) = narrow.relations(r, i);
    IntMatrix lambda_rows;
    if (m == 0) {
        lambda_rows = IntMatrix::identity(k);
    } else {
        IntMatrix ker = integer_left_kernel(stack);
        IntMatrix proj(ker.rows(), k);
        for (std::size_t r = 0; r < ker.rows(); ++r)
            for (std::size_t i = 0; i < k; ++i) proj(r, i) = ker(r, i);
        lambda_rows = hermite(proj, false).h;
    }
    if (lambda_rows.rows() != k) throw PreconditionViolation("kernel lattice is not of full rank");
    RatMatrix a = to_rat(cl.relations) * inverse(to_rat(lambda_rows));
    if (!is_integral(a)) throw PreconditionViolation("relations do not lie in the kernel lattice");
    for (const auto& d : smith(to_int(a)).diagonal)
        if (d != 1) {
            nk.invariants.push_back(d);
            nk.size *= d;
        }
    return nk;
}

/// For L = Q the narrow class group is trivial and the kernel is the whole group.
inline NormKernel norm_map_kernel_trivial_target(const ClassGroup& cl) {
    NormKernel nk;
    nk.invariants = cl.invariants;
    nk.size = cl.h;
    for (std::size_t j = 0; j < cl.generators.size(); ++j) nk.generator_images.emplace_back();
    return nk;
}

}  // namespace rmiso
