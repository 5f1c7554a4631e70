#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmiso/localdata.hpp"
#include "rmiso/orders.hpp"

namespace rmiso {

/// Classification of the isogeny class attached to a Weil polynomial.
struct AnalysisReport {
    WeilPolynomial h;
    NewtonProfile newton;
    IntPoly real_poly;         ///< real counterpart of the irreducible base
    Int rm_disc = 1;           ///< discriminant of O_L (1 for g = 1)
    bool p_split = false;      ///< p totally split in O_L
    std::vector<SsType> ss_types;
    long k_ramified = 0;
    long k_inert = 0;
    std::optional<LiftProfile> lifts;
    std::vector<std::string> notes;
};

inline AnalysisReport analyze(const WeilPolynomial& h, std::optional<long> precision = {}) {
    AnalysisReport r;
    r.h = h;
    r.newton = newton_polygon(h);
    r.real_poly = real_counterpart_of(h.base, h.q);
    const long gb = h.base.degree() / 2;
    if (gb == 2) {
        Order OL = maximal_order(quadratic_field(r.real_poly));
        r.rm_disc = disc_order(OL);
    } else if (gb > 2) {
        throw UnsupportedStratum("only g = 1 and g = 2 bases are supported");
    }
    r.p_split = check_totally_split(r.real_poly, h.p, gb == 2 ? std::optional<Int>(r.rm_disc) : std::nullopt);
    if (h.e > 1) r.notes.push_back("h = r^" + std::to_string(h.e) + ": local data are those of the irreducible base r");
    r.notes.push_back("slope multiplicities (g-a, 2a, g-a) for slopes (0, 1/2, 1)");
    if (!r.p_split) {
        r.notes.push_back("p is not totally split in O_L: supersingular factors are not classified");
        return r;
    }
    LocalFactorization lf = local_factorization(h, precision);
    for (const auto& f : lf.ss_factors) r.ss_types.push_back(f.type);
    r.k_ramified = lf.k_ramified();
    r.k_inert = lf.a() - r.k_ramified;
    r.lifts = lift_profile(lf.a(), r.k_ramified);
    if (h.m % 2 == 1 && lf.a() > 0)
        r.notes.push_back("m odd: half-integral root valuations force every supersingular factor to be ramified");
    return r;
}

}  // namespace rmiso
