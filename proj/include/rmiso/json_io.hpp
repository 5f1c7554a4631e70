#pragma once

// JSON encodings of the reports. Integers and rationals are decimal strings; object keys are sorted by the
// underlying std::map, so dump() output is canonical.

#include <string>
#include <vector>

#include "json.hpp"
#include "rmiso/analysis.hpp"
#include "rmiso/deligne.hpp"
#include "rmiso/isocount.hpp"
#include "rmiso/oracle.hpp"

namespace rmiso::io {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json enc(const Int& v) { return v.get_str(); }
inline json enc(const Rat& v) { return v.get_str(); }

inline json enc(const IntPoly& p) {
    json c = json::array();
    for (const auto& x : p.coeffs()) c.push_back(x.get_str());
    return json{{"coeffs", c}, {"text", to_string(p)}};
}

inline json enc(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j).get_str());
        rows.push_back(r);
    }
    return rows;
}

inline json enc(const Elem& e) {
    json a = json::array();
    for (const auto& x : e) a.push_back(x.get_str());
    return a;
}

inline json enc(const Lattice& L) { return json{{"den", L.den.get_str()}, {"rows", enc(L.rows)}}; }

inline json enc(const NewtonProfile& np) {
    json s = json::array();
    for (const auto& [v, k] : np.slopes) s.push_back(json{{"slope", v.get_str()}, {"multiplicity", k}});
    return json{{"slopes", s}, {"text", np.describe()}, {"p_rank", np.p_rank}, {"a", np.a}, {"g", np.g}};
}

inline json enc(const LiftProfile& lp) {
    return json{{"a", lp.a}, {"k", lp.k}, {"canonical_lifts", lp.num_canonical_lifts.get_str()},
                {"subcategories", lp.num_subcategories.get_str()}};
}

inline json enc(const WeilPolynomial& h) {
    return json{{"poly", enc(h.poly)}, {"p", h.p.get_str()}, {"m", h.m}, {"q", h.q.get_str()}, {"g", h.g},
                {"base", enc(h.base)}, {"multiplicity", h.e}};
}

inline json with_schema(json j, const std::string& kind) {
    j["schema"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

inline json enc(const AnalysisReport& r) {
    json ss = json::array();
    for (auto t : r.ss_types) ss.push_back(to_string(t));
    json j{{"weil", enc(r.h)},
           {"newton", enc(r.newton)},
           {"real_poly", enc(r.real_poly)},
           {"rm_disc", r.rm_disc.get_str()},
           {"p_split", r.p_split},
           {"ss_factors", ss},
           {"k_ramified", r.k_ramified},
           {"k_inert", r.k_inert},
           {"notes", r.notes}};
    j["lifts"] = r.lifts ? enc(*r.lifts) : json(nullptr);
    return with_schema(j, "analysis");
}

inline json enc(const IsogenyCountReport& r) {
    json j{{"n", r.n}, {"h_n", enc(r.hn)}, {"degenerate", r.degenerate}, {"lift_profile", enc(r.lift_profile)},
           {"k_ramified", r.k_ramified}, {"k_inert", r.k_inert}};
    if (!r.degenerate) {
        json table = json::array();
        for (const auto& row : r.divisor_table) table.push_back(json{{"d", row.d.get_str()}, {"disc", row.disc.get_str()}, {"h", row.h.get_str()}});
        json inv = json::array();
        for (const auto& d : r.kernel_invariants) inv.push_back(d.get_str());
        j["index"] = r.index.get_str();
        j["divisor_table"] = table;
        j["N"] = r.N.get_str();
        j["N_min"] = r.N_min.get_str();
        j["kernel_size"] = r.kernel_size.get_str();
        j["kernel_invariants"] = inv;
        j["saturated"] = r.saturated;
        j["exponent"] = r.exponent;
    }
    return with_schema(j, "count");
}

inline json enc(const DeligneModule& M) {
    json rm = json::array();
    for (const auto& a : M.rm_action) rm.push_back(enc(a));
    json basis = json::array();
    for (const auto& b : M.basis) basis.push_back(enc(b));
    json j{{"lattice", enc(M.T.lat)}, {"ring", enc(M.T.ring.lat)}, {"basis", basis}, {"F", enc(M.F)}, {"V", enc(M.V)},
           {"rm_action", rm}, {"n", M.n}};
    j["lambda"] = M.polarization ? enc(*M.polarization) : json(nullptr);
    return j;
}

inline json enc(const CrosscheckRecord& r) {
    json j{{"q", r.q}, {"t", r.t}, {"ordinary", r.ordinary}, {"enumerated", r.enumerated}, {"equal", r.equal}};
    j["predicted"] = r.predicted ? json(r.predicted->get_str()) : json(nullptr);
    if (!r.predicted_error.empty()) j["predicted_error"] = r.predicted_error;
    j["status"] = r.ordinary ? (r.equal ? "equal" : "mismatch") : "informational";
    return j;
}

inline json enc(const DiscGrowthRow& r) {
    return json{{"n", r.n}, {"disc", r.disc.get_str()}, {"log_ratio", r.log_ratio}, {"sine_deviation", r.sine_deviation}};
}

}  // namespace rmiso::io
