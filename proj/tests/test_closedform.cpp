// Singular analysis at high precision: published decimal expansions, internal
// identities, agreement with the exact power series, and error contracts.

#include "planarcount/closedform.hpp"
#include "planarcount/gf.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace planarcount;
namespace cf = planarcount::closedform;

namespace {

double rel(const HP& a, double printed) {
    return std::fabs(a.to_double() - printed) / std::fabs(printed);
}

// Some published expansions are truncated rather than rounded (R ends ...976
// while the next digit is 6), so agreement can never beat one unit in the
// last printed place. Accept the requested relative error or one such unit.
bool agrees(const HP& a, double printed, double rel_tol, double printed_ulp) {
    double diff = std::fabs(a.to_double() - printed);
    return diff <= rel_tol * std::fabs(printed) || diff <= printed_ulp;
}

// y = 1 collapses each x-row to an exact rational (finite y-support), so only
// the x-truncation contributes error.
HP eval_series_y1(const BSeries& s, const HP& x) {
    HP acc(0L);
    for (int k = s.nx; k >= 0; --k) {
        Rat row(0);
        for (int q = 0; q <= s.ny; ++q) row += s.at(k, q);
        acc = acc * x + HP(row);
    }
    return acc;
}

} // namespace

TEST_CASE("constants match their published decimal expansions") {
    cf::ConstantsBundle k = cf::constants(256);

    CHECK(rel(k.t0, 0.6263716633) < 1e-9);
    CHECK(agrees(k.R, 0.0381910976, 1e-9, 1e-10));
    CHECK(rel(k.gamma, 27.2268777685) < 1e-9);

    CHECK(rel(k.B0, 0.7396995711e-3) < 1e-8);
    CHECK(rel(k.B2, -0.1491431215e-2) < 1e-8);
    CHECK(rel(k.B4, 0.7671782851e-3) < 1e-8);
    CHECK(rel(k.B5, -0.3501857790e-5) < 1e-8);

    CHECK(rel(k.g, 0.4260938569e-5) < 1e-8);
    CHECK(rel(k.c, 0.4104361100e-5) < 1e-8);
    CHECK(rel(k.kappa, 2.2132652385) < 1e-8);
    CHECK(rel(k.lambda, 0.4303471697) < 1e-8);
    CHECK(rel(k.zeta, 0.0390518027) < 1e-8);
    CHECK(rel(k.nu, 0.0374393660) < 1e-8);
    CHECK(rel(k.exp_neg_nu, 0.9632528217) < 1e-8);
    CHECK(agrees(k.B_at_rho, 0.0006837025, 1e-8, 1e-10));

    CHECK(k.tau.to_double() > 6.02);
    CHECK(k.tau.to_double() < 6.04);
    CHECK(k.log2_tau.to_double() > 2.58);
    CHECK(k.log2_tau.to_double() < 2.60);

    SECTION("identities hold far beyond double precision") {
        HPPrecisionGuard guard(320);
        HP one_check = cf::eval_tpoint(k.t0).y - 1;
        CHECK(abs(one_check) < ldexp2(HP(1), -240));
        CHECK(abs(k.gamma * k.rho - 1) < ldexp2(HP(1), -240));
        CHECK(abs(k.rho - k.rho_appendix) < ldexp2(k.rho, -230));
        CHECK(abs(k.zeta + k.B2 / k.R) < ldexp2(abs(k.zeta), -230));
        // B evaluated at its own branch point equals the appendix B0.
        CHECK(abs(cf::eval_b_num(k.R, HP(1)) - k.B0) < ldexp2(abs(k.B0), -140));
        // B at the dominant singularity rho of G.
        CHECK(abs(cf::eval_b_num(k.rho, HP(1)) - k.B_at_rho) < ldexp2(k.B_at_rho, -140));
    }
}

TEST_CASE("t(y) inverts the rational parametrization") {
    for (const char* ys : {"0.5", "1", "2", "0.05", "17.5"}) {
        HP y(ys);
        HP t = cf::solve_t_of_y(y);
        REQUIRE(abs(cf::eval_tpoint(t).y - y) < ldexp2(y, -200));
    }
    SECTION("dual derivatives match finite differences") {
        HP h("1e-12");
        HPDual td = cf::t_dual_of_y(HP(1));
        HP tp = cf::solve_t_of_y(1 + h), tm = cf::solve_t_of_y(1 - h);
        HP fd1 = (tp - tm) / (2 * h);
        HP fd2 = (tp - 2 * td.v + tm) / (h * h);
        CHECK(abs(td.d1 - fd1) < ldexp2(abs(td.d1), -60));
        CHECK(abs(td.d2 - fd2) < ldexp2(abs(td.d2), -50));
    }
    SECTION("rho duals match finite differences") {
        HP h("1e-12");
        HPDual rd = cf::rho_of_y_dual(HP(1));
        HP rp = cf::rho_of_y(1 + h), rm = cf::rho_of_y(1 - h);
        CHECK(abs(rd.d1 - (rp - rm) / (2 * h)) < ldexp2(abs(rd.d1), -60));
        CHECK(abs(rd.d2 - (rp - 2 * rd.v + rm) / (h * h)) < ldexp2(abs(rd.d2), -50));
    }
}

TEST_CASE("scalar evaluators agree with the exact series") {
    gf::Bundle bun = gf::build_bundle(14);
    SECTION("network series D at y = 1") {
        HP x("0.005");
        HP series = eval_series_y1(bun.D, x);
        HP scalar = cf::solve_d_scalar(x, HP(1));
        REQUIRE(abs(series - scalar).to_double() < 1e-12);
    }
    SECTION("2-connected series B at y = 1") {
        HP x("0.02");
        HP series = eval_series_y1(bun.B, x);
        HP scalar = cf::eval_b_num(x, HP(1));
        REQUIRE(abs(series - scalar).to_double() < 1e-10);
    }
    SECTION("connected series C at y = 1") {
        HP x("0.015");
        HP series = eval_series_y1(bun.C, x);
        HP scalar = cf::eval_c_num(x);
        REQUIRE(abs(series - scalar).to_double() < 1e-10);
    }
    SECTION("B dual derivatives match finite differences") {
        HP x("0.02"), h("1e-10");
        HPDual b = cf::eval_b_dual(HPDual::variable(x), HPDual(HP(1)));
        HP bp = cf::eval_b_num(x + h, HP(1)), bm = cf::eval_b_num(x - h, HP(1));
        CHECK(abs(b.d1 - (bp - bm) / (2 * h)) < ldexp2(abs(b.d1), -50));
        CHECK(abs(b.d2 - (bp - 2 * b.v + bm) / (h * h)) < ldexp2(abs(b.d2), -40));
    }
}

TEST_CASE("network equation residual vanishes at the solved point") {
    HP x("0.03");
    HP d = cf::solve_d_scalar(x, HP(1));
    REQUIRE(abs(cf::phi_network_scalar(x, HP(1), d)) < ldexp2(HP(1), -240));
    SECTION("a hint accelerates but does not change the root") {
        HP again = cf::solve_d_scalar(x, HP(1), &d);
        REQUIRE(abs(again - d) < ldexp2(d, -240));
    }
}

TEST_CASE("psi stays regular past the branch point") {
    cf::PsiRegularReport rep = cf::verify_psi_regular(2000);
    REQUIRE(rep.gridsize == 2000);
    REQUIRE(rep.min_margin.sign() > 0);
    // psi is increasing where we invert it.
    for (const char* us : {"0.01", "0.02", "0.03"}) {
        cf::PsiPoint p = cf::psi_at(HP(us));
        REQUIRE(p.deriv.sign() > 0);
        REQUIRE(p.value <= HP(us));
    }
}

TEST_CASE("edge growth constant tau") {
    cf::TauResult t = cf::solve_tau();
    CHECK(t.tau.to_double() > 6.02);
    CHECK(t.tau.to_double() < 6.04);
    CHECK(t.log2_tau.to_double() > 2.58);
    CHECK(t.log2_tau.to_double() < 2.60);
    CHECK(abs(cf::rho_of_y(t.y_star) - 1) < ldexp2(HP(1), -200));
}

TEST_CASE("doubling the precision preserves every reported digit") {
    cf::ConstantsBundle a = cf::constants(128);
    cf::ConstantsBundle b = cf::constants(256);
    auto stable = [](const HP& lo, const HP& hi) {
        return abs(lo - hi) <= ldexp2(abs(hi), -112);
    };
    CHECK(stable(a.t0, b.t0));
    CHECK(stable(a.R, b.R));
    CHECK(stable(a.gamma, b.gamma));
    CHECK(stable(a.g, b.g));
    CHECK(stable(a.c, b.c));
    CHECK(stable(a.kappa, b.kappa));
    CHECK(stable(a.lambda, b.lambda));
    CHECK(stable(a.zeta, b.zeta));
    CHECK(stable(a.nu, b.nu));
    CHECK(stable(a.tau, b.tau));
    CHECK(stable(a.B_at_rho, b.B_at_rho));
}

TEST_CASE("domain contracts") {
    REQUIRE_THROWS_AS(cf::constants(64), std::invalid_argument);
    REQUIRE_THROWS_AS(cf::eval_tpoint(HP(1)), std::domain_error);
    REQUIRE_THROWS_AS(cf::eval_tpoint(HP(0L)), std::domain_error);
    REQUIRE_THROWS_AS(cf::solve_d_scalar(HP(1), HP(1)), std::runtime_error);
    REQUIRE_THROWS_AS(cf::eval_c_num(HP(1)), std::runtime_error);
    REQUIRE_THROWS_AS(cf::verify_psi_regular(10), std::runtime_error);
}
