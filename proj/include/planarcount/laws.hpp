#pragma once

// Limit-law calculators on top of the closed-form machinery: the Gaussian
// edge law, the local law across the admissible edge-density range mu in
// (1,3), Poisson laws for components and subgraph copies, the Gaussian block
// law, the normal law for appearances with its large-deviation companion, and
// the growth constant per edge.

#include "planarcount/closedform.hpp"
#include "planarcount/parallel.hpp"

#include <utility>
#include <vector>

namespace planarcount::laws {

using closedform::require;

struct GaussLaw {
    long precision_bits = 0;
    HP mean_coeff, var_coeff;  // X_n ~ N(mean_coeff * n, var_coeff * n)
};

inline GaussLaw edges_law(long precision_bits = 256) {
    HPPrecisionGuard guard(precision_bits + 64);
    HPDual rd = closedform::rho_of_y_dual(HP(1));
    HP lr = rd.d1 / rd.v;
    GaussLaw law;
    law.precision_bits = precision_bits;
    law.mean_coeff = -lr;
    law.var_coeff = -rd.d2 / rd.v - lr + lr * lr;
    return law;
}

// ------------------------------------------------------------ local law

struct LocalLawPoint {
    long precision_bits = 0;
    HP mu, u;            // u > 0 with -u rho'(u)/rho(u) = mu
    HP sigma2;           // second eta-derivative of -log rho(e^eta) at eta = log u
    HP lambda_mu;        // -mu log u - log rho(u)
    HP growth_ratio;     // exp(lambda_mu)
    HP rho_u, g5_u, c5_u;
    HP gamma_m52;

    // log of the local-limit estimate for g_{n, floor(mu n)} / n!.
    HP log_estimate(long n) const {
        require(n >= 1, "log_estimate: n >= 1 required");
        long q = to_long(floor(mu * n));
        HP lead = g5_u / (gamma_m52 * sqrt(sigma2) * sqrt(2 * HP::pi()));
        require(lead.sign() > 0, "log_estimate: nonpositive leading factor");
        return log(lead) - n * log(rho_u) - q * log(u) - 4 * log(HP(n));
    }
};

namespace detail {

// mu(u) = -u rho'(u)/rho(u) and its u-derivative from one second-order dual.
inline std::pair<HP, HP> mu_and_slope(const HP& u) {
    HPDual rd = closedform::rho_of_y_dual(u);
    HP lr = rd.d1 / rd.v;
    HP m = -u * lr;
    HP mp = -lr - u * (rd.d2 / rd.v) + u * (lr * lr);
    return {std::move(m), std::move(mp)};
}

} // namespace detail

inline LocalLawPoint local_law(const HP& mu_in, long precision_bits = 256) {
    HPPrecisionGuard guard(precision_bits + 64);
    HP mu = mu_in;
    require(mu > HP(1) && mu < HP(3), "local_law: mu must lie in (1,3)");
    HP lo = HP(1) / 2, hi = HP(2);
    int expand = 0;
    while (detail::mu_and_slope(lo).first >= mu) {
        lo = lo / 2;
        require(++expand < 80, "local_law: bracket expansion failed below");
    }
    expand = 0;
    while (detail::mu_and_slope(hi).first <= mu) {
        hi = hi * 2;
        require(++expand < 80, "local_law: bracket expansion failed above");
    }
    for (int i = 0; i < 70; ++i) {
        HP mid = (lo + hi) / 2;
        if (detail::mu_and_slope(mid).first < mu)
            lo = mid;
        else
            hi = mid;
    }
    HP u = (lo + hi) / 2;
    HP tol = ldexp2(HP(1), -precision_bits - 40);
    HP slope;
    for (int i = 0; i < 40; ++i) {
        auto [m, mp] = detail::mu_and_slope(u);
        require(mp.sign() > 0, "local_law: mu(u) not increasing at iterate");
        HP step = (m - mu) / mp;
        u = u - step;
        slope = mp;
        if (abs(step) <= tol * abs(u)) break;
    }
    LocalLawPoint p;
    p.precision_bits = precision_bits;
    p.mu = mu;
    p.u = u;
    p.sigma2 = u * slope;  // sigma^2 = u mu'(u)
    p.rho_u = closedform::rho_of_y(u);
    p.lambda_mu = -mu * log(u) - log(p.rho_u);
    p.growth_ratio = exp(p.lambda_mu);
    p.c5_u = closedform::c5_of_y(u);
    p.g5_u = exp(closedform::c0_of_y(u)) * p.c5_u;
    p.gamma_m52 = sqrt(HP::pi());
    for (long i = 1; i <= 3; ++i) p.gamma_m52 = p.gamma_m52 / (HP(1) / 2 - i);
    return p;
}

inline std::vector<LocalLawPoint> growth_curve(const HP& mu_min, const HP& mu_max, int steps,
                                               long precision_bits = 256,
                                               unsigned threads = thread_budget()) {
    require(steps >= 2, "growth_curve: steps >= 2 required");
    require(mu_min > HP(1) && mu_max < HP(3) && mu_min < mu_max,
            "growth_curve: need 1 < mu_min < mu_max < 3");
    std::vector<LocalLawPoint> out(steps);
    parallel_ranges(steps, [&](size_t lo, size_t hi) {
        HPPrecisionGuard guard(precision_bits + 64);
        for (size_t i = lo; i < hi; ++i) {
            HP mu = mu_min + (mu_max - mu_min) * (long)i / (long)(steps - 1);
            out[i] = local_law(mu, precision_bits);
        }
    }, threads);
    return out;
}

// ------------------------------------------------------------ appearances

inline HP hp_factorial(long n) {
    HP r(1);
    for (long i = 2; i <= n; ++i) r = r * i;
    return r;
}

struct DeviationPoint {
    HP z, u, x_u, bound_base;  // bound: P{X_n <= zn} < const * bound_base^n
};

struct AppearancesLaw {
    long precision_bits = 0;
    int h = 1;
    HP rho, hfact;
    HP mean_coeff, var_coeff;

    // x(u) solves x e^{(u-1) x^h / h!} = rho; at u = 1 it degenerates to rho.
    HP x_of_u(const HP& u) const {
        if (u == HP(1)) return rho;
        HP logrho = log(rho);
        auto val = [&](const HP& x) {
            return log(x) + (u - 1) * pow(x, (long)h) / hfact - logrho;
        };
        HP lo = rho, hi = rho;
        int expand = 0;
        while (val(lo) >= HP(0L)) {
            lo = lo / 2;
            require(++expand < 80, "x_of_u: bracket expansion failed below");
        }
        expand = 0;
        while (val(hi) <= HP(0L)) {
            hi = hi * 2;
            require(++expand < 80, "x_of_u: bracket expansion failed above");
        }
        for (int i = 0; i < 40; ++i) {
            HP mid = (lo + hi) / 2;
            if (val(mid) < HP(0L))
                lo = mid;
            else
                hi = mid;
        }
        HP x = (lo + hi) / 2;
        HP tol = ldexp2(HP(1), -precision_bits - 40);
        for (int i = 0; i < 40; ++i) {
            HP jac = 1 / x + (u - 1) * h * pow(x, (long)h - 1) / hfact;
            require(jac.sign() > 0, "x_of_u: residual not increasing at iterate");
            HP step = val(x) / jac;
            x = x - step;
            if (abs(step) <= tol * abs(x)) return x;
        }
        throw std::runtime_error("x_of_u: no convergence");
    }

    // x(u) with u-derivatives via two dual corrections against the scalar
    // Jacobian of phi(X) = log X + (u-1) X^h/h! - log rho.
    HPDual x_dual_of_u(const HP& u) const {
        HP xv = x_of_u(u);
        HP jac = 1 / xv + (u - 1) * h * pow(xv, (long)h - 1) / hfact;
        HPDual ud = HPDual::variable(u);
        HPDual x(xv);
        for (int i = 0; i < 2; ++i) {
            HPDual res = log(x) + (ud - 1) * pow(x, (long)h) / hfact - log(rho);
            x = x - res / HPDual(jac);
        }
        return x;
    }

    // Solve -u x'(u)/x(u) = z, then report the printed bound base u^z/(x(u) rho).
    DeviationPoint deviation(const HP& z) const {
        HPPrecisionGuard guard(precision_bits + 64);
        require(z.sign() > 0, "deviation: z must be positive");
        auto m_and_slope = [&](const HP& u) {
            HPDual x = x_dual_of_u(u);
            HP lx = x.d1 / x.v;
            HP m = -u * lx;
            HP mp = -lx - u * (x.d2 / x.v) + u * (lx * lx);
            return std::pair<HP, HP>(m, mp);
        };
        HP lo = HP(1) / 2, hi = HP(2);
        int expand = 0;
        while (m_and_slope(lo).first >= z) {
            lo = lo / 2;
            require(++expand < 80, "deviation: bracket expansion failed below");
        }
        expand = 0;
        while (m_and_slope(hi).first <= z) {
            hi = hi * 2;
            require(++expand < 80, "deviation: bracket expansion failed above");
        }
        for (int i = 0; i < 60; ++i) {
            HP mid = (lo + hi) / 2;
            if (m_and_slope(mid).first < z)
                lo = mid;
            else
                hi = mid;
        }
        HP u = (lo + hi) / 2;
        HP tol = ldexp2(HP(1), -precision_bits - 30);
        for (int i = 0; i < 40; ++i) {
            auto [m, mp] = m_and_slope(u);
            require(mp.sign() > 0, "deviation: mean function not increasing");
            HP step = (m - z) / mp;
            u = u - step;
            if (abs(step) <= tol * abs(u)) break;
        }
        DeviationPoint p;
        p.z = z;
        p.u = u;
        p.x_u = x_of_u(u);
        p.bound_base = pow(u, z) / (p.x_u * rho);
        return p;
    }
};

inline AppearancesLaw appearances_law(int h, long precision_bits = 256) {
    require(h >= 1, "appearances_law: h >= 1 required");
    HPPrecisionGuard guard(precision_bits + 64);
    AppearancesLaw law;
    law.precision_bits = precision_bits;
    law.h = h;
    HP t0 = closedform::solve_t_of_y(HP(1));
    HP r = params::xi_of_t(t0);
    law.rho = r * exp(params::b2_of_t(t0) / r);
    law.hfact = hp_factorial(h);
    law.mean_coeff = pow(law.rho, (long)h) / law.hfact;
    law.var_coeff = law.rho;
    return law;
}

// ------------------------------------------------------------- blocks

inline GaussLaw blocks_law(long precision_bits = 256) {
    HPPrecisionGuard guard(precision_bits + 64);
    HP t0 = closedform::solve_t_of_y(HP(1));
    HP r = params::xi_of_t(t0);
    HP zeta = -params::b2_of_t(t0) / r;  // log(R/rho) = B'(R)
    GaussLaw law;
    law.precision_bits = precision_bits;
    law.mean_coeff = zeta;
    law.var_coeff = zeta;
    return law;
}

// ------------------------------------------------- Poisson-shaped laws

struct PoissonLaw {
    long precision_bits = 0;
    bool shifted = false;  // shifted: X - 1 ~ Poisson(parameter), support k >= 1
    HP parameter;

    HP pmf(long k) const {
        long j = shifted ? k - 1 : k;
        if (j < 0) return HP(0L);
        return exp(-parameter) * pow(parameter, j) / hp_factorial(j);
    }
};

struct ComponentsLaw {
    PoissonLaw law;            // shifted Poisson(nu) for the component count
    HP nu, p_connected, mean;  // P(connected) = e^{-nu}, E[X] -> 1 + nu
};

inline ComponentsLaw components_law(long precision_bits = 256) {
    HPPrecisionGuard guard(precision_bits + 64);
    HP t0 = closedform::solve_t_of_y(HP(1));
    HP nu = params::xi_of_t(t0) + params::b0_of_t(t0) + params::b2_of_t(t0);
    ComponentsLaw cl;
    cl.nu = nu;
    cl.p_connected = exp(-nu);
    cl.mean = 1 + nu;
    cl.law.precision_bits = precision_bits;
    cl.law.shifted = true;
    cl.law.parameter = nu;
    return cl;
}

// Number of copies of a fixed planar family in a random planar graph is
// asymptotically Poisson with the listed parameter.
inline PoissonLaw family_law_vertex(long precision_bits = 256) {
    HPPrecisionGuard guard(precision_bits + 64);
    HP t0 = closedform::solve_t_of_y(HP(1));
    HP r = params::xi_of_t(t0);
    PoissonLaw law;
    law.precision_bits = precision_bits;
    law.parameter = r * exp(params::b2_of_t(t0) / r);  // isolated vertices: rho
    return law;
}

inline PoissonLaw family_law_edge(long precision_bits = 256) {
    PoissonLaw law = family_law_vertex(precision_bits);
    HPPrecisionGuard guard(precision_bits + 64);
    law.parameter = law.parameter * law.parameter / 2;  // isolated edges: rho^2/2
    return law;
}

inline PoissonLaw family_law_blocks(long precision_bits = 256) {
    PoissonLaw law = family_law_vertex(precision_bits);
    HPPrecisionGuard guard(precision_bits + 64);
    law.parameter = closedform::eval_b_num(law.parameter, HP(1));  // B(rho)
    return law;
}

inline PoissonLaw family_law_fixed(int h, unsigned long aut, long precision_bits = 256) {
    require(h >= 1 && aut >= 1, "family_law_fixed: h >= 1 and aut >= 1 required");
    PoissonLaw law = family_law_vertex(precision_bits);
    HPPrecisionGuard guard(precision_bits + 64);
    law.parameter = pow(law.parameter, (long)h) / (long)aut;  // rho^h/|Aut|
    return law;
}

// -------------------------------------------------------------- tau

inline closedform::TauResult edge_entropy_tau(long precision_bits = 256) {
    HPPrecisionGuard guard(precision_bits + 64);
    return closedform::solve_tau();
}

} // namespace planarcount::laws
