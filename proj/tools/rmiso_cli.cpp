// rmiso: classify Weil polynomials with real multiplication and count their isogeny classes.
//
// Exit codes: 0 success, 1 crosscheck mismatch or internal error, 2 invalid input, 3 unsupported stratum,
// 4 resource or precision limit.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rmiso/json_io.hpp"
#include "rmiso.hpp"

namespace {

using rmiso::io::json;

struct RunConfig {
    std::string command;
    std::string poly;
    long p = 0;
    long m = 1;
    std::string n = "1";
    long precision = 0;  // 0: automatic
    long budget = 200000;
    bool json_out = false;
    std::string output;
    std::string config;
    int q = 0;
    long t = 0;
    bool have_t = false;
    long g = 1;
    long bound = 3;
    long a = -1;
    bool polarize = false;
};

/// "5", "1-8" or "1..8".
std::pair<long, long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    auto dash = s.find('-', 1);
    try {
        if (dots != std::string::npos) return {std::stol(s.substr(0, dots)), std::stol(s.substr(dots + 2))};
        if (dash != std::string::npos) return {std::stol(s.substr(0, dash)), std::stol(s.substr(dash + 1))};
        long v = std::stol(s);
        return {v, v};
    } catch (const std::exception&) {
        throw rmiso::InvalidInput("bad n or range: '" + s + "'");
    }
}

std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rmiso::InvalidInput("cannot read config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        std::string k = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
        if (!k.empty()) kv[k] = v;
    }
    return kv;
}

rmiso::WeilPolynomial weil_from(const RunConfig& c) {
    if (c.poly.empty()) throw rmiso::InvalidInput("--poly is required");
    if (c.p <= 0) throw rmiso::InvalidInput("--p is required");
    return rmiso::validate_weil(rmiso::parse_poly(c.poly), rmiso::Int(c.p), c.m);
}

std::optional<long> precision_of(const RunConfig& c) { return c.precision > 0 ? std::optional<long>(c.precision) : std::nullopt; }

rmiso::ClassGroupOptions options_of(const RunConfig& c) {
    if (c.budget <= 0) throw rmiso::InvalidInput("budget must be positive");
    rmiso::ClassGroupOptions o;
    o.max_group_elements = static_cast<std::size_t>(c.budget);
    return o;
}

void emit(const RunConfig& c, const json& j, const std::string& text) {
    std::string body = c.json_out ? j.dump(2) + "\n" : text;
    if (c.output.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream out(c.output);
    if (!out) throw rmiso::InvalidInput("cannot write " + c.output);
    out << body;
}

int run_analyze(const RunConfig& c) {
    auto h = weil_from(c);
    auto r = rmiso::analyze(h, precision_of(c));
    std::ostringstream os;
    os << "polynomial: " << rmiso::to_string(h.poly) << "  (q = " << h.q << ", g = " << h.g << ", e = " << h.e << ")\n";
    os << "slopes: " << r.newton.describe() << "\n";
    os << "p-rank: " << r.newton.p_rank << "\n";
    os << "a: " << r.newton.a << "\n";
    if (h.base.degree() == 4) os << "RM field discriminant: " << r.rm_disc << "\n";
    os << "p totally split in O_L: " << (r.p_split ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < r.ss_types.size(); ++i) os << "supersingular factor " << i + 1 << ": " << rmiso::to_string(r.ss_types[i]) << "\n";
    os << "k (ramified): " << r.k_ramified << "\n";
    os << "k (inert): " << r.k_inert << "\n";
    if (r.lifts) os << "canonical lifts: " << r.lifts->num_canonical_lifts << "\nsubcategories: " << r.lifts->num_subcategories << "\n";
    for (const auto& n : r.notes) os << "note: " << n << "\n";
    emit(c, rmiso::io::enc(r), os.str());
    return 0;
}

int run_count(const RunConfig& c) {
    auto h = weil_from(c);
    auto [lo, hi] = parse_range(c.n);
    if (lo < 1 || hi < lo) throw rmiso::InvalidInput("n range must satisfy 1 <= lo <= hi");
    json reports = json::array();
    std::ostringstream os;
    for (long n = lo; n <= hi; ++n) {
        auto r = rmiso::count_report(h, n, options_of(c), precision_of(c));
        reports.push_back(rmiso::io::enc(r));
        os << "n = " << n << ": h_n = " << rmiso::to_string(r.hn);
        if (r.degenerate) {
            os << "  degenerate\n";
            continue;
        }
        os << "\n  index [O_K:R_n] = " << r.index << "\n  N = " << r.N << "  (h(R_n) = " << r.N_min << ", norm-map kernel " << r.kernel_size
           << ")\n  exponent 2 log_q N / n = " << r.exponent << "\n  over-orders (d, disc, h):";
        for (const auto& row : r.divisor_table) os << " (" << row.d << ", " << row.disc << ", " << row.h << ")";
        os << "\n  lifts " << r.lift_profile.num_canonical_lifts << ", subcategories " << r.lift_profile.num_subcategories << "\n";
    }
    json j = lo == hi ? reports.front() : rmiso::io::with_schema(json{{"reports", reports}}, "count_table");
    if (lo != hi) {
        json growth = json::array();
        for (const auto& row : rmiso::disc_growth_table(h, hi))
            if (row.n >= lo) growth.push_back(rmiso::io::enc(row));
        j["disc_growth"] = growth;
        j["density_flagged"] = rmiso::density_filter(h, lo, hi);
    }
    emit(c, j, os.str());
    return 0;
}

int run_modules(const RunConfig& c) {
    auto h = weil_from(c);
    auto [lo, hi] = parse_range(c.n);
    if (lo != hi || lo < 1) throw rmiso::InvalidInput("modules needs a single n >= 1");
    auto icm = rmiso::enumerate_icm(h, lo, options_of(c));
    json mods = json::array();
    std::ostringstream os;
    os << icm.modules.size() << " isomorphism classes of Deligne modules (n = " << lo << ")\n";
    for (std::size_t i = 0; i < icm.modules.size(); ++i) {
        auto& M = icm.modules[i];
        if (c.polarize) M.polarization = rmiso::find_principal_polarization(M, rmiso::default_cm_type(h.base.degree() / 2));
        json mj = rmiso::io::enc(M);
        mj["order_index"] = rmiso::index(icm.rn.R, icm.orders[icm.module_order[i]]).get_str();
        mods.push_back(mj);
        os << "module " << i + 1 << ": [O:R_n] = " << mj["order_index"].get<std::string>() << ", F = " << mj["F"].dump();
        if (c.polarize) os << ", lambda = " << mj["lambda"].dump();
        os << "\n";
    }
    emit(c, rmiso::io::with_schema(json{{"modules", mods}, {"count", icm.modules.size()}, {"n", lo}}, "modules"), os.str());
    return 0;
}

int run_crosscheck(const RunConfig& c) {
    if (c.q <= 0) throw rmiso::InvalidInput("--q is required");
    auto census = rmiso::curve_census(c.q);
    std::vector<long> traces = c.have_t ? std::vector<long>{c.t} : rmiso::hasse_traces(c.q);
    json recs = json::array();
    std::ostringstream os;
    bool mismatch = false;
    for (long t : traces) {
        if (t * t > 4L * c.q) throw rmiso::InvalidInput("trace violates the Hasse bound");
        auto r = rmiso::crosscheck(c.q, t, census);
        recs.push_back(rmiso::io::enc(r));
        if (r.ordinary && !r.equal) mismatch = true;
        os << "t = " << t << ": enumerated " << r.enumerated << ", predicted " << (r.predicted ? r.predicted->get_str() : "n/a") << "  "
           << (r.ordinary ? (r.equal ? "equal" : "MISMATCH") : "informational") << "\n";
    }
    json j = rmiso::io::with_schema(json{{"q", c.q}, {"records", recs}, {"total_classes", census.total_classes}}, "crosscheck");
    emit(c, j, os.str());
    return mismatch ? 1 : 0;
}

int run_search(const RunConfig& c) {
    if (c.p <= 0) throw rmiso::InvalidInput("--p is required");
    std::optional<long> a = c.a >= 0 ? std::optional<long>(c.a) : std::nullopt;
    auto found = rmiso::search_weil(c.g, rmiso::Int(c.p), c.m, c.bound, a);
    json arr = json::array();
    std::ostringstream os;
    for (const auto& h : found) {
        arr.push_back(rmiso::io::enc(h));
        os << rmiso::to_string(h.poly) << "\n";
    }
    emit(c, rmiso::io::with_schema(json{{"polynomials", arr}, {"count", found.size()}}, "search"), os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Isogeny classes of abelian varieties with real multiplication"};
    app.require_subcommand(1);
    std::map<std::string, CLI::App*> subs;
    auto common = [&](CLI::App* s) {
        s->add_option("--config", cfg.config, "key=value file supplying defaults");
        s->add_flag("--json", cfg.json_out, "emit JSON");
        s->add_option("-o,--output", cfg.output, "write to a file instead of stdout");
    };
    auto weil = [&](CLI::App* s) {
        s->add_option("--poly", cfg.poly, "Weil polynomial, e.g. x^2-x+3 or 3,-1,1");
        s->add_option("--p", cfg.p, "prime p");
        s->add_option("--m", cfg.m, "q = p^m");
        s->add_option("--precision", cfg.precision, "p-adic precision override");
        s->add_option("--budget", cfg.budget, "cap on enumerated classes per class group");
    };
    auto* an = subs["analyze"] = app.add_subcommand("analyze", "Newton stratum, splitting and lift counts");
    auto* co = subs["count"] = app.add_subcommand("count", "exact isogeny-class sizes for n or a range a-b");
    auto* mo = subs["modules"] = app.add_subcommand("modules", "enumerate Deligne modules");
    auto* cr = subs["crosscheck"] = app.add_subcommand("crosscheck", "compare with elliptic-curve enumeration over F_q");
    auto* se = subs["search"] = app.add_subcommand("search", "scan Weil polynomials");
    for (auto* s : {an, co, mo, cr, se}) common(s);
    for (auto* s : {an, co, mo}) weil(s);
    co->add_option("--n", cfg.n, "n or range lo-hi");
    mo->add_option("--n", cfg.n, "n");
    mo->add_flag("--polarize", cfg.polarize, "search principal polarizations for the default CM type");
    cr->add_option("--q", cfg.q, "odd prime power <= 49");
    auto* topt = cr->add_option("--t", cfg.t, "single trace");
    se->add_option("--g", cfg.g, "dimension (1 or 2)");
    se->add_option("--p", cfg.p, "prime p");
    se->add_option("--m", cfg.m, "q = p^m");
    se->add_option("--bound", cfg.bound, "coefficient bound");
    se->add_option("--a", cfg.a, "required count of slope-1/2 pairs");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        CLI::App* used = nullptr;
        for (auto& [name, s] : subs)
            if (s->parsed()) {
                cfg.command = name;
                used = s;
            }
        if (!cfg.config.empty()) {
            for (const auto& [k, v] : read_config(cfg.config)) {
                CLI::Option* opt = used->get_option_no_throw("--" + k);
                if (opt == nullptr) throw rmiso::InvalidInput("unknown config key '" + k + "'");
                if (opt->count() > 0) continue;  // command line wins
                opt->add_result(v);
                opt->run_callback();
            }
        }
        cfg.have_t = topt->count() > 0;
        if (cfg.command == "analyze") return run_analyze(cfg);
        if (cfg.command == "count") return run_count(cfg);
        if (cfg.command == "modules") return run_modules(cfg);
        if (cfg.command == "crosscheck") return run_crosscheck(cfg);
        return run_search(cfg);
    } catch (const rmiso::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const rmiso::UnsupportedStratum& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const rmiso::PreconditionViolation& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return 3;
    } catch (const rmiso::ResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 4;
    } catch (const rmiso::PrecisionError& e) {
        std::cerr << "precision limit: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
