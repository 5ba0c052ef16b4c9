// Limit laws: Gaussian edge/block counts, the local law over the whole
// admissible edge-density range, Poisson component and appearance laws, and
// the large-deviation companion.

#include "planarcount/laws.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace planarcount;
namespace cf = planarcount::closedform;

namespace {
double rel(const HP& a, double printed) {
    return std::fabs(a.to_double() - printed) / std::fabs(printed);
}

// The published expansion of B(rho) is truncated, not rounded, so agreement
// is capped at one unit in the last printed place.
bool agrees(const HP& a, double printed, double rel_tol, double printed_ulp) {
    double diff = std::fabs(a.to_double() - printed);
    return diff <= rel_tol * std::fabs(printed) || diff <= printed_ulp;
}
} // namespace

TEST_CASE("edge count is Gaussian with printed coefficients") {
    laws::GaussLaw law = laws::edges_law(256);
    CHECK(rel(law.mean_coeff, 2.2132652385) < 1e-8);
    CHECK(rel(law.var_coeff, 0.4303471697) < 1e-8);
}

TEST_CASE("block count is Gaussian with parameter zeta") {
    laws::GaussLaw law = laws::blocks_law(256);
    CHECK(rel(law.mean_coeff, 0.0390518027) < 1e-8);
    CHECK(law.var_coeff == law.mean_coeff);

    SECTION("zeta equals B'(R) by Richardson extrapolation toward the branch") {
        cf::ConstantsBundle k = cf::constants(256);
        auto bprime = [](const HP& x) {
            return cf::eval_b_dual(HPDual::variable(x), HPDual(HP(1))).d1;
        };
        // B'(R(1-eps)) = zeta + a eps + O(eps^{3/2}); one Richardson step in
        // eps = 4^{-j} removes the linear term.
        HP x5 = k.R * (1 - ldexp2(HP(1), -10));
        HP x6 = k.R * (1 - ldexp2(HP(1), -12));
        HP extrap = (4 * bprime(x6) - bprime(x5)) / 3;
        CHECK(std::fabs((extrap - law.mean_coeff).to_double()) < 1e-6);
    }
}

TEST_CASE("local law recovers the global regime at mu = kappa") {
    laws::GaussLaw edges = laws::edges_law(256);
    laws::LocalLawPoint p = laws::local_law(edges.mean_coeff, 256);
    CHECK(std::fabs(p.u.to_double() - 1.0) < 1e-10);
    CHECK(std::fabs((p.sigma2 - edges.var_coeff).to_double()) < 1e-10);
    CHECK(rel(p.growth_ratio, 27.2268777685) < 1e-8);
    CHECK(std::fabs((p.rho_u * p.growth_ratio - 1).to_double()) < 1e-10);
    HP est = p.log_estimate(100);
    CHECK(std::fabs(est.to_double()) < 1e6);
}

TEST_CASE("growth ratio interpolates between e and 256/27") {
    // The endpoint limits are approached like eps*log(1/eps), so the agreement
    // bands are relative: at mu = 3 - 1e-3 the gap is ~8.3e-3 of the limit.
    laws::LocalLawPoint lo = laws::local_law(1 + HP("1e-6"), 256);
    CHECK(std::fabs(lo.growth_ratio.to_double() / std::exp(1.0) - 1.0) < 1e-3);
    laws::LocalLawPoint hi = laws::local_law(3 - HP("1e-3"), 256);
    CHECK(std::fabs(hi.growth_ratio.to_double() / (256.0 / 27.0) - 1.0) < 1e-2);
}

TEST_CASE("mu(u) is increasing and lambda(mu) is concave") {
    HP prev(0L);
    for (long num : {1, 2, 4, 8, 32}) {
        HP u = HP(num) / 8;
        auto [m, mp] = laws::detail::mu_and_slope(u);
        REQUIRE(mp.sign() > 0);
        REQUIRE(m > prev);
        REQUIRE(m.to_double() > 1.0);
        REQUIRE(m.to_double() < 3.0);
        prev = m;
    }
    double l15 = laws::local_law(HP("1.5"), 192).lambda_mu.to_double();
    double l20 = laws::local_law(HP("2.0"), 192).lambda_mu.to_double();
    double l25 = laws::local_law(HP("2.5"), 192).lambda_mu.to_double();
    REQUIRE(2 * l20 > l15 + l25);
}

TEST_CASE("growth curve is deterministic across thread splits") {
    std::vector<laws::LocalLawPoint> a = laws::growth_curve(HP("1.2"), HP("2.8"), 9, 192, 1);
    std::vector<laws::LocalLawPoint> b = laws::growth_curve(HP("1.2"), HP("2.8"), 9, 192, 3);
    REQUIRE(a.size() == 9);
    REQUIRE(b.size() == 9);
    REQUIRE(a.front().mu == HP("1.2"));
    REQUIRE(abs(a.back().mu - HP("2.8")) <= ldexp2(HP("2.8"), -180));
    for (size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].mu == b[i].mu);
        REQUIRE(a[i].u == b[i].u);
        REQUIRE(a[i].lambda_mu == b[i].lambda_mu);
        REQUIRE(a[i].growth_ratio == b[i].growth_ratio);
    }
    // lambda'(mu) = -log u(mu), so lambda rises to a single peak at mu(1) and
    // falls afterwards; on this grid the peak lands on mu = 2.2.
    size_t peak = 0;
    for (size_t i = 1; i < a.size(); ++i)
        if (a[i].lambda_mu > a[peak].lambda_mu) peak = i;
    REQUIRE(std::fabs(a[peak].mu.to_double() - 2.2) < 1e-12);
    for (size_t i = 1; i <= peak; ++i) REQUIRE(a[i].lambda_mu > a[i - 1].lambda_mu);
    for (size_t i = peak + 1; i < a.size(); ++i) REQUIRE(a[i].lambda_mu < a[i - 1].lambda_mu);
}

TEST_CASE("appearances of a fixed subgraph") {
    laws::AppearancesLaw law = laws::appearances_law(1, 256);
    cf::ConstantsBundle k = cf::constants(256);

    SECTION("h = 1 degenerates to rho in both coefficients") {
        REQUIRE(law.mean_coeff == law.rho);
        REQUIRE(law.var_coeff == law.rho);
        REQUIRE(abs(law.rho - k.rho) < ldexp2(k.rho, -250));
        CHECK(std::fabs((law.mean_coeff - k.rho).to_double()) < 1e-10);
        CHECK(std::fabs((law.var_coeff - k.rho).to_double()) < 1e-10);
    }
    SECTION("x(u) at u = 1 is exactly rho") {
        REQUIRE(law.x_of_u(HP(1)) == law.rho);
        HPDual xd = law.x_dual_of_u(HP(1));
        REQUIRE(xd.v == law.rho);
        // -x'(1)/x(1) equals the mean coefficient rho^h/h!.
        CHECK(abs(-xd.d1 / xd.v - law.mean_coeff) < ldexp2(law.mean_coeff, -200));
    }
    SECTION("x(u) solves its defining equation away from u = 1") {
        for (const char* us : {"0.25", "0.5", "2", "4"}) {
            HP u(us);
            HP x = law.x_of_u(u);
            HP residual = x * exp((u - 1) * x / law.hfact) - law.rho;
            REQUIRE(abs(residual) < ldexp2(law.rho, -240));
        }
    }
    SECTION("deviation point at the mean sits at u = 1") {
        laws::DeviationPoint p = law.deviation(law.mean_coeff);
        CHECK(std::fabs(p.u.to_double() - 1.0) < 1e-10);
        CHECK(abs(p.x_u - law.rho) < ldexp2(law.rho, -100));
    }
    SECTION("deviation below the mean tilts to u < 1") {
        laws::DeviationPoint p = law.deviation(law.mean_coeff / 2);
        REQUIRE(p.u < HP(1));
        REQUIRE(p.u.sign() > 0);
        REQUIRE(p.bound_base.sign() > 0);
        // the tilt satisfies -u x'(u)/x(u) = z
        HPDual xd = law.x_dual_of_u(p.u);
        CHECK(abs(-p.u * xd.d1 / xd.v - law.mean_coeff / 2) <
              ldexp2(law.mean_coeff, -180));
    }
    SECTION("h = 2 mean is rho^2/2") {
        laws::AppearancesLaw law2 = laws::appearances_law(2, 256);
        CHECK(abs(law2.mean_coeff - k.rho * k.rho / 2) < ldexp2(law2.mean_coeff, -200));
        CHECK(law2.var_coeff == law2.rho);
    }
    SECTION("h must be positive") {
        REQUIRE_THROWS_AS(laws::appearances_law(0, 256), std::runtime_error);
    }
}

TEST_CASE("connected components follow a shifted Poisson law") {
    laws::ComponentsLaw cl = laws::components_law(256);
    CHECK(rel(cl.nu, 0.0374393660) < 1e-8);
    CHECK(rel(cl.p_connected, 0.9632528217) < 1e-8);
    REQUIRE(cl.law.shifted);
    REQUIRE(cl.law.pmf(0).is_zero());
    CHECK(abs(cl.law.pmf(1) - cl.p_connected) < ldexp2(cl.p_connected, -250));
    CHECK(abs(cl.mean - (1 + cl.nu)) < ldexp2(cl.mean, -250));
    HP sum(0L);
    for (long k = 1; k <= 60; ++k) sum = sum + cl.law.pmf(k);
    CHECK(abs(sum - 1) < ldexp2(HP(1), -120));
}

TEST_CASE("copies of a fixed subfamily follow Poisson laws") {
    laws::PoissonLaw v = laws::family_law_vertex(256);
    laws::PoissonLaw e = laws::family_law_edge(256);
    laws::PoissonLaw b = laws::family_law_blocks(256);
    laws::PoissonLaw t3 = laws::family_law_fixed(3, 6, 256);
    REQUIRE_FALSE(v.shifted);
    CHECK(std::fabs((v.parameter * HP("27.2268777685") - 1).to_double()) < 1e-8);
    CHECK(abs(e.parameter - v.parameter * v.parameter / 2) < ldexp2(e.parameter, -200));
    CHECK(agrees(b.parameter, 0.0006837025, 1e-8, 1e-10));
    CHECK(abs(t3.parameter - pow(v.parameter, 3) / 6) < ldexp2(t3.parameter, -200));
    HP sum(0L);
    for (long k = 0; k <= 50; ++k) sum = sum + v.pmf(k);
    CHECK(abs(sum - 1) < ldexp2(HP(1), -120));
}

TEST_CASE("growth constant per edge") {
    cf::TauResult t = laws::edge_entropy_tau(256);
    CHECK(t.tau.to_double() > 6.02);
    CHECK(t.tau.to_double() < 6.04);
    CHECK(t.log2_tau.to_double() > 2.58);
    CHECK(t.log2_tau.to_double() < 2.60);
}
