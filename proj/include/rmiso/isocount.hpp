#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "rmiso/classgroup.hpp"
#include "rmiso/rn.hpp"

namespace rmiso {

/// One over-order O of R_n: d = [O : R_n].
struct DivisorRow {
    Int d;
    Int disc;
    Int h;
};

struct IsogenyCountReport {
    long n = 1;
    IntPoly hn;
    bool degenerate = false;
    // everything below is left empty for degenerate n
    Int index = 0;  ///< [O_K : R_n]
    std::vector<DivisorRow> divisor_table;
    Int N = 0;      ///< sum of the class numbers of all over-orders of R_n
    Int N_min = 0;  ///< h(R_n)
    Int kernel_size = 0;
    std::vector<Int> kernel_invariants;
    bool saturated = false;
    LiftProfile lift_profile;
    long k_ramified = 0;
    long k_inert = 0;
    double exponent = 0;  ///< 2 log_q N / n
};

inline double log_ratio(const Int& x, const Int& q) {
    // log|x| / log q, exact enough for reporting
    long ex = 0;
    double mant = mpz_get_d_2exp(&ex, Int(abs_int(x)).get_mpz_t());
    return (std::log(mant) + static_cast<double>(ex) * std::log(2.0)) / std::log(q.get_d());
}

inline IsogenyCountReport count_report(const WeilPolynomial& h, long n, const ClassGroupOptions& opts = {},
                                        std::optional<long> precision = {}) {
    IsogenyCountReport rep;
    rep.n = n;
    WeilPolynomial base = h;
    base.poly = h.base;
    base.e = 1;
    PowerCharPoly pc = char_poly_of_power(base, n);
    rep.hn = pc.poly;
    rep.degenerate = pc.degenerate;
    LocalFactorization lf = local_factorization(h, precision);
    rep.k_ramified = lf.k_ramified();
    rep.k_inert = lf.a() - lf.k_ramified();
    rep.lift_profile = lift_profile(lf.a(), lf.k_ramified());
    if (rep.degenerate) return rep;
    RnData rn = construct_Rn(h, n, lf);
    rep.index = rn.index;
    rep.saturated = rn.saturated;
    std::vector<Order> ovs = over_orders(rn.R, rn.OK);
    if (!is_bass(rn.R, rn.OK) && !all_gorenstein(ovs))
        throw UnsupportedStratum("R_n is not Bass; the over-order sum does not count all classes");
    std::vector<std::pair<Int, std::size_t>> order_idx;
    for (std::size_t i = 0; i < ovs.size(); ++i) order_idx.emplace_back(index(rn.R, ovs[i]), i);
    std::sort(order_idx.begin(), order_idx.end());
    std::optional<ClassGroup> cl_R;
    for (const auto& [d, i] : order_idx) {
        ClassGroup cg = class_group(ovs[i], opts, rn.real);
        rep.divisor_table.push_back(DivisorRow{d, disc_order(ovs[i]), cg.h});
        rep.N += cg.h;
        if (ovs[i] == rn.R) cl_R = std::move(cg);
    }
    rep.N_min = cl_R->h;
    NormKernel nk;
    if (rn.real) {
        ClassGroup narrow = narrow_class_group(rn.real->OL, opts);
        nk = norm_map_kernel(*cl_R, *rn.real, narrow);
    } else {
        nk = norm_map_kernel_trivial_target(*cl_R);
    }
    rep.kernel_size = nk.size;
    rep.kernel_invariants = nk.invariants;
    rep.exponent = 2.0 * log_ratio(rep.N, h.q) / static_cast<double>(n);
    return rep;
}

struct AsymptoticRow {
    long n = 1;
    bool degenerate = false;
    Int N = 0;
    double exponent = 0;
};

inline std::vector<AsymptoticRow> asymptotic_table(const WeilPolynomial& h, long n_max, const ClassGroupOptions& opts = {},
                                                   std::optional<long> precision = {}) {
    if (n_max < 1) throw InvalidInput("n_max must be at least 1");
    std::vector<AsymptoticRow> out;
    for (long n = 1; n <= n_max; ++n) {
        IsogenyCountReport r = count_report(h, n, opts, precision);
        out.push_back(AsymptoticRow{n, r.degenerate, r.N, r.exponent});
    }
    return out;
}

namespace detail {

/// Arguments theta_j in [0, pi] of the roots sqrt(q) e^{i theta_j} of the base of h, one per conjugate pair.
inline std::vector<double> frobenius_angles(const WeilPolynomial& h) {
    IntPoly m = real_counterpart_of(h.base, h.q);
    std::vector<double> out;
    const double sq = std::sqrt(h.q.get_d());
    for (const auto& iv : isolate_real_roots(squarefree_part(m))) {
        double y = approx_root(m, iv, 80);
        out.push_back(std::acos(std::clamp(y / (2.0 * sq), -1.0, 1.0)));
    }
    return out;
}

}  // namespace detail

struct DiscGrowthRow {
    long n = 1;
    Int disc;            ///< disc(O_L[alpha^n]); 0 when alpha^n does not generate K over L
    double log_ratio = 0;  ///< log_q |disc| / n
    double sine_deviation = 0;  ///< relative deviation of disc(O_L)^2 prod 4 q^n sin^2(n theta_j) from |disc|
};

inline std::vector<DiscGrowthRow> disc_growth_table(const WeilPolynomial& h, long n_max) {
    FieldPtr K = frobenius_field(h);
    const long g = static_cast<long>(K->n / 2);
    std::vector<Elem> OL;
    Int disc_OL = 1;
    if (g == 1) {
        OL.push_back(const_elem(*K, Rat(1)));
    } else if (g == 2) {
        RealSubfield rs = real_subfield(K);
        disc_OL = disc_order(rs.OL);
        for (const auto& w : rs.OL.basis()) OL.push_back(embed_real(*K, rs, w));
    } else {
        throw UnsupportedStratum("only g = 1 and g = 2 are supported");
    }
    std::vector<double> theta = detail::frobenius_angles(h);
    std::vector<DiscGrowthRow> out;
    for (long n = 1; n <= n_max; ++n) {
        DiscGrowthRow row;
        row.n = n;
        Elem an = pow(*K, alpha_elem(*K), static_cast<unsigned long>(n));
        std::vector<Elem> span = OL;
        for (const auto& w : OL) span.push_back(mul(*K, w, an));
        Lattice lat = lattice_from_generators(span, K->n);
        row.disc = lat.full_rank() ? disc_order(Order{K, lat}) : Int(0);
        // log |disc_OL^2 prod 4 q^n sin^2(n theta)|, evaluated term by term
        double log_approx = 2.0 * std::log(std::abs(disc_OL.get_d()));
        bool zero = false;
        for (double t : theta) {
            double s = std::sin(static_cast<double>(n) * t);
            if (s == 0.0) zero = true;
            log_approx += std::log(4.0) + static_cast<double>(n) * std::log(h.q.get_d()) + 2.0 * std::log(std::abs(s));
        }
        if (row.disc == 0) {
            row.sine_deviation = zero ? 0.0 : std::exp(log_approx);
        } else {
            row.log_ratio = log_ratio(row.disc, h.q) / static_cast<double>(n);
            double log_exact = log_ratio(row.disc, h.q) * std::log(h.q.get_d());
            row.sine_deviation = zero ? 1.0 : std::abs(std::expm1(log_approx - log_exact));
        }
        out.push_back(row);
    }
    return out;
}

/// n in [lo, hi] that are degenerate or have min_j |sin(n theta_j)| < 1/n.
inline std::vector<long> density_filter(const WeilPolynomial& h, long lo, long hi) {
    std::vector<long> out;
    if (lo > hi) return out;
    std::vector<double> theta = detail::frobenius_angles(h);
    WeilPolynomial base = h;
    base.poly = h.base;
    base.e = 1;
    for (long n = std::max(lo, 1L); n <= hi; ++n) {
        if (char_poly_of_power(base, n).degenerate) {
            out.push_back(n);
            continue;
        }
        double mn = 1.0;
        for (double t : theta) mn = std::min(mn, std::abs(std::sin(static_cast<double>(n) * t)));
        if (mn < 1.0 / static_cast<double>(n)) out.push_back(n);
    }
    return out;
}

}  // namespace rmiso
