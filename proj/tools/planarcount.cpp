// planarcount: labelled planar graph enumeration toolkit.
//
// Subcommands: constants, series, curve, law {...}, verify. All numeric
// output uses decimal strings. The first output line is a timestamp comment
// unless --no-header is given; everything after it is deterministic for a
// fixed configuration. Exit codes: 0 success, 1 verification mismatch,
// 2 usage or domain error.

#include "planarcount/closedform.hpp"
#include "planarcount/gf.hpp"
#include "planarcount/laws.hpp"
#include "planarcount/oracle.hpp"
#include "planarcount/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace pc = planarcount;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
    long precision_bits = 256;
    int order = 20;
    int digits = 12;
    int oracle_nmax = 6;
    std::string format = "json";
    std::string out;
    bool no_header = false;
};

std::string iso_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int emit(const RunConfig& cfg, const std::string& body) {
    std::string text;
    if (!cfg.no_header) text += "# generated: " + iso_now() + "\n";
    text += body;
    if (!text.empty() && text.back() != '\n') text += '\n';
    if (cfg.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(cfg.out);
    if (!f) {
        std::cerr << "error: cannot open output path " << cfg.out << "\n";
        return 2;
    }
    f << text;
    return 0;
}

// ------------------------------------------------------------- constants

struct PaperEntry {
    const char* name;
    const char* formula;
    const char* paper;  // printed reference value, or nullptr
};

// Significant digits in a printed decimal literal.
int printed_sig_digits(const std::string& s) {
    int count = 0;
    bool leading = true;
    for (char ch : s) {
        if (ch == 'e' || ch == 'E') break;
        if (ch < '0' || ch > '9') continue;
        if (ch == '0' && leading) continue;
        leading = false;
        ++count;
    }
    return count;
}

// Place value of the last printed digit. The published expansions are
// truncated rather than rounded, so disagreement up to one full unit in the
// last place is expected even for an exact computation.
pc::HP printed_ulp(const std::string& s) {
    long frac = 0, exp10 = 0;
    size_t epos = s.find_first_of("eE");
    std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
    if (epos != std::string::npos) exp10 = std::stol(s.substr(epos + 1));
    size_t dot = mant.find('.');
    if (dot != std::string::npos) frac = (long)(mant.size() - dot - 1);
    return pow(pc::HP(10), exp10 - frac);
}

int agrees_to_digits(const pc::HP& value, const pc::HP& paper, int printed_sig) {
    pc::HP rel = abs(value - paper) / abs(paper);
    if (rel.is_zero()) return printed_sig;
    double lg = -std::log10(rel.to_double());
    int d = lg <= 0 ? 0 : (int)lg;
    return std::min(d, printed_sig);
}

int cmd_constants(const RunConfig& cfg) {
    pc::closedform::ConstantsBundle k = pc::closedform::constants(cfg.precision_bits);
    const std::vector<std::pair<PaperEntry, const pc::HP*>> entries = {
        {{"t0", "Y(t0) = 1", "0.6263716633"}, &k.t0},
        {{"R", "xi(t0)", "0.0381910976"}, &k.R},
        {{"B0", "B0(t0)", "0.7396995711e-3"}, &k.B0},
        {{"B2", "B2(t0)", "-0.1491431215e-2"}, &k.B2},
        {{"B4", "B4(t0)", "0.7671782851e-3"}, &k.B4},
        {{"B5", "B5(t0)", "-0.3501857790e-5"}, &k.B5},
        {{"rho", "R exp(B2/R)", nullptr}, &k.rho},
        {{"gamma", "1/rho", "27.2268777685"}, &k.gamma},
        {{"g", "exp(C0) C5 / Gamma(-5/2)", "0.4260938569e-5"}, &k.g},
        {{"c", "C5 / Gamma(-5/2)", "0.4104361100e-5"}, &k.c},
        {{"kappa", "-rho'(1)/rho(1)", "2.2132652385"}, &k.kappa},
        {{"lambda", "-rho''(1)/rho - rho'(1)/rho + (rho'(1)/rho)^2", "0.4303471697"}, &k.lambda},
        {{"zeta", "log(R/rho)", "0.0390518027"}, &k.zeta},
        {{"nu", "R + B0 + B2", "0.0374393660"}, &k.nu},
        {{"exp_neg_nu", "exp(-nu)", "0.9632528217"}, &k.exp_neg_nu},
        {{"B_rho", "B(rho, 1)", "0.0006837025"}, &k.B_at_rho},
        {{"tau", "1/y*, rho(y*) = 1", "6.03"}, &k.tau},
        {{"log2_tau", "log(tau)/log(2)", "2.59"}, &k.log2_tau},
    };
    bool all_agree = true;
    json rows = json::array();
    std::ostringstream csv;
    csv << "name,value,paper_value,agrees_to_digits,formula\n";
    for (const auto& [e, val] : entries) {
        json row;
        row["name"] = e.name;
        row["value"] = val->str(cfg.digits);
        csv << e.name << ',' << val->str(cfg.digits) << ',';
        if (e.paper) {
            pc::HP paper(e.paper);
            int sig = printed_sig_digits(e.paper);
            int ad = agrees_to_digits(*val, paper, sig);
            pc::HP tol = printed_ulp(e.paper);
            pc::HP reltol = abs(paper) / pc::HP(100000000);
            if (abs(*val - paper) > (tol > reltol ? tol : reltol)) all_agree = false;
            row["paper_value"] = e.paper;
            row["agrees_to_digits"] = ad;
            csv << e.paper << ',' << ad;
        } else {
            row["paper_value"] = nullptr;
            row["agrees_to_digits"] = nullptr;
            csv << ',';
        }
        row["formula"] = e.formula;
        csv << ',' << '"' << e.formula << '"' << '\n';
        rows.push_back(row);
    }
    std::string body;
    if (cfg.format == "json") {
        json doc;
        doc["precision_bits"] = cfg.precision_bits;
        doc["constants"] = rows;
        body = doc.dump(2);
    } else {
        body = csv.str();
    }
    int rc = emit(cfg, body);
    if (rc != 0) return rc;
    if (!all_agree) {
        std::cerr << "error: constants disagree with reference values beyond tolerance\n";
        return 1;
    }
    return 0;
}

// --------------------------------------------------------------- series

int cmd_series(const RunConfig& cfg, const std::string& which, bool bivariate) {
    pc::gf::Bundle bundle = pc::gf::build_bundle(cfg.order);
    const pc::BSeries* s = nullptr;
    if (which == "g") s = &bundle.G;
    else if (which == "c") s = &bundle.C;
    else if (which == "b") s = &bundle.B;
    else if (which == "d") s = &bundle.D;
    else throw std::invalid_argument("series: --which must be one of g, c, b, d");
    pc::CountTable table = pc::gf::extract_counts(*s, which, cfg.order);

    std::string body;
    if (cfg.format == "json") {
        json doc = pc::to_json(table);
        json egf = json::array();
        for (int n = 0; n <= table.nmax; ++n)
            for (int q = 0; q < (int)table.v[n].size(); ++q)
                egf.push_back({{"n", n}, {"q", q}, {"value", s->at(n, q).str()}});
        doc["egf_coefficients"] = egf;
        body = doc.dump(2);
    } else {
        std::ostringstream csv;
        if (bivariate) {
            csv << "n,q,count\n";
            for (int n = 0; n <= table.nmax; ++n)
                for (int q = 0; q < (int)table.v[n].size(); ++q)
                    csv << n << ',' << q << ',' << table.v[n][q].str() << '\n';
        } else {
            csv << "n,count\n";
            for (int n = 0; n <= table.nmax; ++n) csv << n << ',' << table.total(n).str() << '\n';
        }
        body = csv.str();
    }
    return emit(cfg, body);
}

// ---------------------------------------------------------------- curve

int cmd_curve(const RunConfig& cfg, const std::string& mu_min, const std::string& mu_max,
              int steps) {
    std::vector<pc::laws::LocalLawPoint> pts = pc::laws::growth_curve(
        pc::HP(mu_min.c_str()), pc::HP(mu_max.c_str()), steps, cfg.precision_bits);
    std::string body;
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& p : pts)
            rows.push_back({{"mu", p.mu.str(cfg.digits)},
                            {"u", p.u.str(cfg.digits)},
                            {"lambda_mu", p.lambda_mu.str(cfg.digits)},
                            {"growth_ratio", p.growth_ratio.str(cfg.digits)}});
        body = json{{"curve", rows}}.dump(2);
    } else {
        std::ostringstream csv;
        csv << "mu,u,lambda_mu,growth_ratio\n";
        for (const auto& p : pts)
            csv << p.mu.str(cfg.digits) << ',' << p.u.str(cfg.digits) << ','
                << p.lambda_mu.str(cfg.digits) << ',' << p.growth_ratio.str(cfg.digits) << '\n';
        body = csv.str();
    }
    return emit(cfg, body);
}

// ----------------------------------------------------------------- laws

using KV = std::vector<std::pair<std::string, std::string>>;

int emit_kv(const RunConfig& cfg, const KV& kv) {
    std::string body;
    if (cfg.format == "json") {
        json doc;
        for (const auto& [k, v] : kv) doc[k] = v;
        body = doc.dump(2);
    } else {
        std::ostringstream csv;
        csv << "name,value\n";
        for (const auto& [k, v] : kv) csv << k << ',' << v << '\n';
        body = csv.str();
    }
    return emit(cfg, body);
}

int cmd_law_edges(const RunConfig& cfg) {
    pc::laws::GaussLaw law = pc::laws::edges_law(cfg.precision_bits);
    return emit_kv(cfg, {{"law", "edges"},
                         {"mean_coeff", law.mean_coeff.str(cfg.digits)},
                         {"var_coeff", law.var_coeff.str(cfg.digits)}});
}

int cmd_law_local(const RunConfig& cfg, const std::string& mu) {
    pc::laws::LocalLawPoint p = pc::laws::local_law(pc::HP(mu.c_str()), cfg.precision_bits);
    return emit_kv(cfg, {{"law", "local"},
                         {"mu", p.mu.str(cfg.digits)},
                         {"u", p.u.str(cfg.digits)},
                         {"sigma2", p.sigma2.str(cfg.digits)},
                         {"lambda_mu", p.lambda_mu.str(cfg.digits)},
                         {"growth_ratio", p.growth_ratio.str(cfg.digits)}});
}

int cmd_law_appearances(const RunConfig& cfg, int h, const std::string& z) {
    pc::laws::AppearancesLaw law = pc::laws::appearances_law(h, cfg.precision_bits);
    KV kv = {{"law", "appearances"},
             {"h", std::to_string(h)},
             {"mean_coeff", law.mean_coeff.str(cfg.digits)},
             {"var_coeff", law.var_coeff.str(cfg.digits)},
             {"x_at_1", law.x_of_u(pc::HP(1)).str(cfg.digits)}};
    if (!z.empty()) {
        pc::laws::DeviationPoint p = law.deviation(pc::HP(z.c_str()));
        kv.emplace_back("z", p.z.str(cfg.digits));
        kv.emplace_back("u", p.u.str(cfg.digits));
        kv.emplace_back("x_u", p.x_u.str(cfg.digits));
        kv.emplace_back("bound_base", p.bound_base.str(cfg.digits));
    }
    return emit_kv(cfg, kv);
}

int cmd_law_blocks(const RunConfig& cfg) {
    pc::laws::GaussLaw law = pc::laws::blocks_law(cfg.precision_bits);
    return emit_kv(cfg, {{"law", "blocks"},
                         {"mean_coeff", law.mean_coeff.str(cfg.digits)},
                         {"var_coeff", law.var_coeff.str(cfg.digits)}});
}

int cmd_law_components(const RunConfig& cfg) {
    pc::laws::ComponentsLaw cl = pc::laws::components_law(cfg.precision_bits);
    KV kv = {{"law", "components"},
             {"nu", cl.nu.str(cfg.digits)},
             {"p_connected", cl.p_connected.str(cfg.digits)},
             {"mean", cl.mean.str(cfg.digits)}};
    for (long kk = 1; kk <= 6; ++kk)
        kv.emplace_back("pmf_" + std::to_string(kk), cl.law.pmf(kk).str(cfg.digits));
    return emit_kv(cfg, kv);
}

int cmd_law_family(const RunConfig& cfg, const std::string& family, int h, unsigned long aut) {
    pc::laws::PoissonLaw law;
    if (family == "vertex") law = pc::laws::family_law_vertex(cfg.precision_bits);
    else if (family == "edge") law = pc::laws::family_law_edge(cfg.precision_bits);
    else if (family == "blocks") law = pc::laws::family_law_blocks(cfg.precision_bits);
    else law = pc::laws::family_law_fixed(h, aut, cfg.precision_bits);
    KV kv = {{"law", "family"}, {"family", family}, {"parameter", law.parameter.str(cfg.digits)}};
    if (family == "fixed") {
        kv.emplace_back("h", std::to_string(h));
        kv.emplace_back("aut", std::to_string(aut));
    }
    return emit_kv(cfg, kv);
}

int cmd_law_tau(const RunConfig& cfg) {
    pc::closedform::TauResult t = pc::laws::edge_entropy_tau(cfg.precision_bits);
    return emit_kv(cfg, {{"law", "tau"},
                         {"tau", t.tau.str(cfg.digits)},
                         {"log2_tau", t.log2_tau.str(cfg.digits)},
                         {"y_star", t.y_star.str(cfg.digits)},
                         {"t_star", t.t_star.str(cfg.digits)}});
}

// --------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg) {
    pc::verify::Options opts;
    opts.order = cfg.order;
    opts.precision_bits = cfg.precision_bits;
    opts.oracle_nmax = cfg.oracle_nmax;
    std::vector<pc::verify::CheckResult> results = pc::verify::run_all(opts);
    bool pass = pc::verify::all_pass(results);
    std::string body;
    if (cfg.format == "json") {
        json rows = json::array();
        for (const auto& r : results)
            rows.push_back({{"name", r.name},
                            {"pass", r.pass},
                            {"detail", r.detail},
                            {"seconds", r.seconds}});
        body = json{{"checks", rows}, {"pass", pass}}.dump(2);
    } else {
        std::ostringstream os;
        int passed = 0;
        for (const auto& r : results) {
            char line[512];
            std::snprintf(line, sizeof line, "%-4s %-22s %s [%.2f s]\n", r.pass ? "PASS" : "FAIL",
                          r.name.c_str(), r.detail.c_str(), r.seconds);
            os << line;
            passed += r.pass ? 1 : 0;
        }
        os << "RESULT " << (pass ? "pass" : "fail") << " (" << passed << "/" << results.size()
           << ")\n";
        body = os.str();
    }
    int rc = emit(cfg, body);
    if (rc != 0) return rc;
    if (!pass) {
        for (const auto& r : results)
            if (!r.pass) std::cerr << "error: verification check failed: " << r.name << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"labelled planar graph enumeration: exact series, constants, limit laws"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--precision-bits", cfg.precision_bits, "working precision in bits")
        ->check(CLI::Range(128L, 65536L));
    app.add_option("--order", cfg.order, "series truncation order")->check(CLI::Range(5, 64));
    app.add_option("--digits", cfg.digits, "significant digits in output")
        ->check(CLI::Range(1, 120));
    app.add_option("--oracle-nmax", cfg.oracle_nmax, "brute-force comparison depth")
        ->check(CLI::Range(0, 7));
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", cfg.out, "output path (default: stdout)");
    app.add_flag("--no-header", cfg.no_header, "suppress the timestamp header line");

    CLI::App* c_constants = app.add_subcommand("constants", "analytic constants vs references");

    CLI::App* c_series = app.add_subcommand("series", "exact count tables from the GF pipeline");
    std::string which = "g";
    bool bivariate = false;
    c_series->add_option("--which", which, "series: g, c, b, or d")
        ->check(CLI::IsMember({"g", "c", "b", "d"}));
    c_series->add_flag("--bivariate", bivariate, "emit the (n,q) table instead of totals");

    CLI::App* c_curve = app.add_subcommand("curve", "growth-ratio curve over edge density mu");
    std::string mu_min = "1.1", mu_max = "2.9";
    int steps = 100;
    c_curve->add_option("--mu-min", mu_min, "lower edge density (exclusive bound 1)");
    c_curve->add_option("--mu-max", mu_max, "upper edge density (exclusive bound 3)");
    c_curve->add_option("--steps", steps, "number of samples")->check(CLI::Range(2, 100000));

    CLI::App* c_law = app.add_subcommand("law", "limit-law parameters");
    c_law->require_subcommand(1);
    c_law->fallthrough();
    CLI::App* l_edges = c_law->add_subcommand("edges", "Gaussian edge count law");
    CLI::App* l_local = c_law->add_subcommand("local", "local law at fixed edge density");
    std::string mu = "2";
    l_local->add_option("--mu", mu, "edge density in (1,3)")->required();
    CLI::App* l_appear = c_law->add_subcommand("appearances", "subgraph appearance law");
    int h = 1;
    std::string z;
    l_appear->add_option("--size", h, "vertices of the appearing subgraph")
        ->check(CLI::Range(1, 64));
    l_appear->add_option("--z", z, "deviation rate for the tail bound");
    CLI::App* l_blocks = c_law->add_subcommand("blocks", "Gaussian block count law");
    CLI::App* l_comp = c_law->add_subcommand("components", "Poisson component law");
    CLI::App* l_family = c_law->add_subcommand("family", "Poisson subgraph-copy law");
    std::string family = "vertex";
    unsigned long aut = 1;
    int fam_h = 1;
    l_family->add_option("--family", family, "vertex, edge, blocks, or fixed")
        ->check(CLI::IsMember({"vertex", "edge", "blocks", "fixed"}));
    l_family->add_option("--size", fam_h, "vertices of the fixed graph")->check(CLI::Range(1, 64));
    l_family->add_option("--aut", aut, "automorphism count of the fixed graph");
    CLI::App* l_tau = c_law->add_subcommand("tau", "growth constant per edge");

    CLI::App* c_verify = app.add_subcommand("verify", "run the verification battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    bool format_given = app.count("--format") > 0;

    try {
        if (c_curve->parsed() && !format_given) cfg.format = "csv";
        if (c_constants->parsed()) return cmd_constants(cfg);
        if (c_series->parsed()) return cmd_series(cfg, which, bivariate);
        if (c_curve->parsed()) return cmd_curve(cfg, mu_min, mu_max, steps);
        if (c_law->parsed()) {
            if (l_edges->parsed()) return cmd_law_edges(cfg);
            if (l_local->parsed()) return cmd_law_local(cfg, mu);
            if (l_appear->parsed()) return cmd_law_appearances(cfg, h, z);
            if (l_blocks->parsed()) return cmd_law_blocks(cfg);
            if (l_comp->parsed()) return cmd_law_components(cfg);
            if (l_family->parsed()) return cmd_law_family(cfg, family, fam_h, aut);
            if (l_tau->parsed()) return cmd_law_tau(cfg);
        }
        if (c_verify->parsed()) return cmd_verify(cfg);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
