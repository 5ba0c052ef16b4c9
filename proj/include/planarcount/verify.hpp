#pragma once

// Named verification battery: every structural identity the pipeline is
// supposed to satisfy, each as an independent pass/fail check. Setting
// PLANARCOUNT_INJECT_FAULT=<check-name> corrupts that check's input, which
// must flip it to fail; the harness uses this to prove the battery can see.

#include "planarcount/closedform.hpp"
#include "planarcount/gf.hpp"
#include "planarcount/laws.hpp"
#include "planarcount/oracle.hpp"

#include <chrono>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

namespace planarcount::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Options {
    int order = 10;            // series order for identity checks
    long precision_bits = 256; // scalar working precision
    int oracle_nmax = 6;       // brute-force comparison depth
    unsigned threads = thread_budget();
};

inline bool fault_requested(const std::string& name) {
    const char* e = std::getenv("PLANARCOUNT_INJECT_FAULT");
    return e != nullptr && name == e;
}

namespace detail {

template <class Body>
CheckResult timed(const std::string& name, Body&& body) {
    CheckResult r;
    r.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        auto [pass, detail] = body(fault_requested(name));
        r.pass = pass;
        r.detail = std::move(detail);
    } catch (const std::exception& e) {
        r.pass = false;
        r.detail = e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

using PassDetail = std::pair<bool, std::string>;

} // namespace detail

inline CheckResult check_oracle_vs_series(const Options& opts) {
    return detail::timed("oracle-vs-series", [&](bool fault) -> detail::PassDetail {
        int nmax = std::min(opts.oracle_nmax, 7);
        oracle::OracleTables tabs = oracle::enumerate_counts(nmax, opts.threads);
        if (fault) tabs.g.v[std::min(4, nmax)][3] += 1;
        gf::Bundle bundle = gf::build_bundle(std::max(nmax, 2));
        bool ok = gf::extract_counts(bundle.G, "g", nmax) == tabs.g &&
                  gf::extract_counts(bundle.C, "c", nmax) == tabs.c &&
                  gf::extract_counts(bundle.B, "b", nmax) == tabs.b;
        return {ok, "g, c, b tables vs brute force for n <= " + std::to_string(nmax)};
    });
}

inline CheckResult check_b_route_equality(int nx = 12, int ny = 36) {
    return detail::timed("b-route-equality", [&](bool fault) -> detail::PassDetail {
        BSeries d = gf::solve_d(nx, ny);
        BSeries closed = gf::series_b_closed(d);
        BSeries integral = gf::series_b_integral(d);
        if (fault) closed.c[2][1] += Rat(1, 1000000);
        return {closed == integral,
                "closed form == y-integral at order (" + std::to_string(nx) + "," +
                    std::to_string(ny) + ")"};
    });
}

inline CheckResult check_derivative_identity(int order = 10) {
    return detail::timed("derivative-identity", [&](bool fault) -> detail::PassDetail {
        int nx = order, ny = 3 * order + 1;
        BSeries d = gf::solve_d(nx, ny + 1);
        if (fault) d.c[3][2] += Rat(1, 1000);
        BSeries b = gf::series_b_closed(d);
        BSeries lhs = b.derive_y().resized(nx, ny);
        BSeries one = BSeries::one(nx, ny + 1);
        BSeries y = BSeries::monomial(nx, ny + 1, 0, 1);
        BSeries rhs = (Rat(1, 2) * ((one + d) / (one + y)).shift_mul(2, 0)).resized(nx, ny);
        return {lhs == rhs, "dB/dy == (x^2/2)(1+D)/(1+y)"};
    });
}

inline CheckResult check_psi_compose(int order = 10) {
    return detail::timed("psi-compose", [&](bool fault) -> detail::PassDetail {
        int nx = order, ny = 3 * order + 1;
        BSeries dbig = gf::solve_d(nx + 3, ny);
        BSeries bbig = gf::series_b_closed(dbig);
        BSeries f = gf::solve_f(bbig, nx, ny);
        if (fault) f.c[2][3] += Rat(1, 1000);
        BSeries psi = gf::psi_series(bbig.resized(nx + 1, ny));
        BSeries x = BSeries::monomial(nx, ny, 1, 0);
        return {ps_compose_x(psi.resized(nx, ny), f) == x, "psi(F(x,y), y) == x"};
    });
}

inline CheckResult check_d_residual(int order = 8) {
    return detail::timed("d-residual", [&](bool fault) -> detail::PassDetail {
        BSeries d = gf::solve_d(order, 3 * order + 1);
        if (fault) d.c[2][2] += Rat(1, 1000000);
        return {gf::d_residual(d).is_zero(), "network equation residual vanishes"};
    });
}

inline CheckResult check_f_residual(int order = 8) {
    return detail::timed("f-residual", [&](bool fault) -> detail::PassDetail {
        int nx = order, ny = 3 * order + 1;
        BSeries dbig = gf::solve_d(nx + 3, ny);
        BSeries bbig = gf::series_b_closed(dbig);
        BSeries f = gf::solve_f(bbig, nx, ny);
        if (fault) f.c[3][1] += Rat(1, 1000000);
        return {gf::f_residual(bbig, f).is_zero(), "rooted equation residual vanishes"};
    });
}

inline CheckResult check_constants_identities(const Options& opts) {
    return detail::timed("constants-identities", [&](bool fault) -> detail::PassDetail {
        closedform::ConstantsBundle k = closedform::constants(opts.precision_bits);
        HP gamma = k.gamma;
        if (fault) gamma = gamma * (1 + HP("1e-12"));
        HP tol = ldexp2(HP(1), -opts.precision_bits - 20);
        bool ok = abs(gamma * k.rho - 1) <= tol &&
                  abs(k.rho - k.rho_appendix) <= tol * k.rho &&
                  abs(k.zeta + k.B2 / k.R) <= tol * abs(k.zeta) &&
                  abs(k.C0 - (k.R + k.B0 + k.B2)) <= tol;
        return {ok, "gamma*rho = 1, rho two routes, zeta = -B2/R, C0 = R+B0+B2"};
    });
}

inline CheckResult check_c0_two_route(const Options& opts) {
    return detail::timed("c0-two-route", [&](bool fault) -> detail::PassDetail {
        HPPrecisionGuard guard(opts.precision_bits + 64);
        closedform::ConstantsBundle k = closedform::constants(opts.precision_bits);
        HP via_c = closedform::eval_c_num(k.rho);
        if (fault) via_c = via_c + HP("1e-9");
        HP diff = abs(via_c - k.C0);
        return {diff <= HP("1e-10"), "C(rho) vs R+B0+B2, |diff| = " + diff.str(3)};
    });
}

inline CheckResult check_dual_vs_fd(const Options& opts) {
    return detail::timed("dual-vs-fd", [&](bool fault) -> detail::PassDetail {
        HPPrecisionGuard guard(std::max(opts.precision_bits, 256L) + 64);
        laws::GaussLaw edges = laws::edges_law(std::max(opts.precision_bits, 256L));
        HP kappa = edges.mean_coeff;
        if (fault) kappa = kappa * (1 + HP("1e-9"));
        HP h("1e-8");
        HP lp = log(closedform::rho_of_y(1 + h));
        HP lm = log(closedform::rho_of_y(1 - h));
        HP l0 = log(closedform::rho_of_y(HP(1)));
        HP d1 = (lp - lm) / (2 * h);
        HP d2 = (lp - 2 * l0 + lm) / (h * h);
        HP kappa_fd = -d1;
        HP lambda_fd = -d2 - d1;
        bool ok = abs(kappa - kappa_fd) <= HP("1e-10") * abs(kappa) &&
                  abs(edges.var_coeff - lambda_fd) <= HP("1e-10") * abs(edges.var_coeff);
        return {ok, "kappa, lambda vs central differences at step 1e-8"};
    });
}

inline CheckResult check_psi_regular_grid(long gridsize = 10000) {
    return detail::timed("psi-regular-grid", [&](bool fault) -> detail::PassDetail {
        HPPrecisionGuard guard(192);
        closedform::PsiRegularReport rep = closedform::verify_psi_regular(gridsize);
        HP margin = fault ? rep.min_margin - 1 : rep.min_margin;
        return {margin.sign() > 0, "2B4(t) < xi(t) on " + std::to_string(gridsize) +
                                       "-point grid, min margin " + rep.min_margin.str(3)};
    });
}

inline CheckResult check_precision_stability(const Options& opts) {
    return detail::timed("precision-stability", [&](bool fault) -> detail::PassDetail {
        long bits = opts.precision_bits;
        closedform::ConstantsBundle k1 = closedform::constants(bits);
        closedform::ConstantsBundle k2 = closedform::constants(2 * bits);
        HPPrecisionGuard guard(2 * bits);
        HP tol = ldexp2(HP(1), -bits + 16);
        HP g1 = k1.gamma;
        if (fault) g1 = g1 * (1 + ldexp2(HP(1), -bits / 2));
        auto close = [&](const HP& a, const HP& b) { return abs(a - b) <= tol * abs(b); };
        bool ok = close(g1, k2.gamma) && close(k1.g, k2.g) && close(k1.c, k2.c) &&
                  close(k1.kappa, k2.kappa) && close(k1.lambda, k2.lambda) &&
                  close(k1.zeta, k2.zeta) && close(k1.nu, k2.nu) && close(k1.tau, k2.tau) &&
                  close(k1.B_at_rho, k2.B_at_rho) && close(k1.t0, k2.t0) && close(k1.R, k2.R);
        return {ok, "constants at " + std::to_string(bits) + " vs " + std::to_string(2 * bits) +
                        " bits"};
    });
}

inline std::vector<CheckResult> run_all(const Options& opts) {
    std::vector<CheckResult> out;
    out.push_back(check_oracle_vs_series(opts));
    out.push_back(check_b_route_equality());
    out.push_back(check_derivative_identity(std::min(opts.order, 10)));
    out.push_back(check_psi_compose(std::min(opts.order, 10)));
    out.push_back(check_d_residual());
    out.push_back(check_f_residual());
    out.push_back(check_constants_identities(opts));
    out.push_back(check_c0_two_route(opts));
    out.push_back(check_dual_vs_fd(opts));
    out.push_back(check_psi_regular_grid());
    out.push_back(check_precision_stability(opts));
    return out;
}

inline bool all_pass(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace planarcount::verify
