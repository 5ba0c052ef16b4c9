#pragma once

// High-precision scalar side: root-finding for the t-parametrization, every
// named constant, and numeric evaluation of D, B, C at scalar points together
// with first and second derivatives.
//
// Derivatives through implicitly solved quantities use dual refinement: with
// the scalar solution X and the scalar Jacobian J = dPhi/dX in hand, two
// corrections X <- X - Phi(X)/J in dual arithmetic make d1 and then d2 exact,
// because the error after each step carries zero value (and, after the first,
// zero first-derivative) components.

#include "planarcount/dual.hpp"
#include "planarcount/hp.hpp"
#include "planarcount/params.hpp"

#include <stdexcept>
#include <string>

namespace planarcount::closedform {

inline void require(bool cond, const char* msg) {
    if (!cond) throw std::runtime_error(msg);
}

inline const HP& value_of(const HP& x) { return x; }
inline const HP& value_of(const HPDual& x) { return x.v; }

inline bool near_rel(const HP& a, const HP& b, long bits) {
    return abs(a - b) <= ldexp2(abs(b), -bits);
}

// ---------------------------------------------------------------- t-solving

struct TPoint {
    HP t, y, xi, d0, d2, d3, b0, b2, b4, b5, u0, u1, u2, rho_q;
};

inline TPoint eval_tpoint(const HP& t) {
    if (!(t > HP(0L) && t < HP(1))) throw std::domain_error("eval_tpoint: t outside (0,1)");
    TPoint p;
    p.t = t;
    p.y = params::y_of_t(t);
    p.xi = params::xi_of_t(t);
    p.d0 = params::d0_of_t(t);
    p.d2 = params::d2_of_t(t);
    p.d3 = params::d3_of_t(t);
    p.b0 = params::b0_of_t(t);
    p.b2 = params::b2_of_t(t);
    p.b4 = params::b4_of_t(t);
    p.b5 = params::b5_of_t(t);
    p.u0 = params::u0_of_t(t);
    p.u1 = params::u1_of_t(t);
    p.u2 = params::u2_of_t(t);
    p.rho_q = params::rho_of_t(t);
    return p;
}

namespace detail {
inline bool& y_grid_certified() {
    static thread_local bool b = false;
    return b;
}
} // namespace detail

// Unique root of Y(t) = y on (0,1). The first call per thread certifies that
// Y is strictly increasing on a 2048-point scan grid (hence at most one sign
// change for any y); afterwards bisection plus a Newton polish suffice.
inline HP solve_t_of_y(const HP& y) {
    const long grid = 2048;
    HP lo("1e-6");
    HP hi = 1 - lo;
    if (!detail::y_grid_certified()) {
        HP prev = params::y_of_t(lo);
        for (long i = 1; i <= grid; ++i) {
            HP ti = lo + (hi - lo) * i / grid;
            HP yi = params::y_of_t(ti);
            require(yi > prev, "solve_t_of_y: Y not monotone on scan grid");
            prev = yi;
        }
        detail::y_grid_certified() = true;
    }
    require(y > params::y_of_t(lo) && y < params::y_of_t(hi),
            "solve_t_of_y: root bracketing failed");
    HP a = lo, b = hi;
    for (int i = 0; i < 80; ++i) {
        HP mid = (a + b) / 2;
        if (params::y_of_t(mid) < y)
            a = mid;
        else
            b = mid;
    }
    HP t = (a + b) / 2;
    mpfr_prec_t prec = std::max(y.precision(), t.precision());
    // Y is evaluated through O(1)-sized intermediates, so the Newton step
    // bottoms out at an absolute noise floor near 2^-prec regardless of the
    // size of t; the stop test must be absolute with headroom above it.
    HP tol = ldexp2(HP(1), -(long)prec + 24);
    for (int i = 0; i < 60; ++i) {
        HPDual yd = params::y_of_t(HPDual::variable(t));
        if (yd.d1.is_zero()) throw std::runtime_error("solve_t_of_y: parametrization singular");
        HP step = (yd.v - y) / yd.d1;
        t = t - step;
        if (abs(step) <= tol * (1 + abs(t))) return t;
    }
    throw std::runtime_error("solve_t_of_y: Newton did not converge");
}

// t as a function of y with two derivatives: t' = 1/Y', t'' = -Y''/Y'^3.
inline HPDual t_dual_of_y(const HP& y) {
    HP t = solve_t_of_y(y);
    HPDual yd = params::y_of_t(HPDual::variable(t));
    if (yd.d1.is_zero()) throw std::runtime_error("t_dual_of_y: parametrization singular");
    HP t1 = 1 / yd.d1;
    HP t2 = -yd.d2 * (t1 * t1 * t1);
    return {std::move(t), std::move(t1), std::move(t2)};
}

inline HPDual r_of_y_dual(const HP& y) { return params::xi_of_t(t_dual_of_y(y)); }
inline HPDual rho_of_y_dual(const HP& y) { return params::rho_of_t(t_dual_of_y(y)); }
inline HP rho_of_y(const HP& y) { return params::rho_of_t(solve_t_of_y(y)); }

// ------------------------------------------------- scalar network quantities

// U(x,s) from U = xs(1+V)^2, V = s(1+U)^2: fixed-point warmup, Newton finish.
inline HP solve_u_xd(const HP& x, const HP& s) {
    if (x.is_zero() || s.is_zero()) return HP(0L);
    require(x.sign() > 0 && s.sign() > 0, "solve_u_xd: arguments must be nonnegative");
    mpfr_prec_t prec = std::max(x.precision(), s.precision());
    HP tol = ldexp2(HP(1), -(long)prec + 8);
    HP u(0L);
    for (int i = 0; i < 48; ++i) {
        HP v = s * pow(1 + u, 2);
        u = x * s * pow(1 + v, 2);
    }
    for (int i = 0; i < 80; ++i) {
        HP v = s * pow(1 + u, 2);
        HP res = u - x * s * pow(1 + v, 2);
        HP jac = 1 - 4 * (x * (s * s) * ((1 + u) * (1 + v)));
        if (jac.is_zero()) throw std::runtime_error("solve_u_xd: at branch point");
        HP step = res / jac;
        u = u - step;
        if (abs(step) <= tol * (1 + abs(u))) return u;
    }
    throw std::runtime_error("solve_u_xd: no convergence");
}

inline HPDual u_dual(const HPDual& x, const HPDual& s) {
    HP uv = solve_u_xd(x.v, s.v);
    HP vv = s.v * pow(1 + uv, 2);
    HP jac = 1 - 4 * (x.v * (s.v * s.v) * ((1 + uv) * (1 + vv)));
    require(!jac.is_zero(), "u_dual: at branch point");
    HPDual u{uv, HP(0L), HP(0L)};
    for (int i = 0; i < 2; ++i) {
        HPDual v = s * pow(1 + u, 2);
        HPDual res = u - x * s * pow(1 + v, 2);
        u = u - res / HPDual(jac);
    }
    return u;
}

// Phi(s) = M(x,s)/(2x^2 s) - log(1+s) + log(1+y) + xs^2/(1+xs), with the x^2 s
// cancellation done symbolically: M/(x^2 s) = s * bracket(x,s).
template <class T>
T phi_network(const T& x, const T& y, const T& s, const T& u) {
    T v = s * pow(1 + u, 2);
    T bracket = 1 / (1 + x * s) + 1 / (1 + s) - 1 -
                pow(1 + u, 2) * pow(1 + v, 2) / pow(1 + u + v, 3);
    return s * bracket / 2 - log(1 + s) + log(1 + y) + x * (s * s) / (1 + x * s);
}

inline HP phi_network_scalar(const HP& x, const HP& y, const HP& s) {
    return phi_network(x, y, s, solve_u_xd(x, s));
}

inline HP phi_network_jacobian(const HP& x, const HP& y, const HP& s) {
    HPDual sd = HPDual::variable(s);
    HPDual xc(x), yc(y);
    return phi_network(xc, yc, sd, u_dual(xc, sd)).d1;
}

// D(x,y) for 0 <= x <= R(y). At x = R(y) the branch-point value D0(t) is
// returned directly. An optional hint accelerates repeated nearby solves.
inline HP solve_d_scalar(const HP& x, const HP& y, const HP* hint = nullptr) {
    if (y.is_zero()) return HP(0L);
    require(x.sign() >= 0 && y.sign() > 0, "solve_d_scalar: domain is x >= 0, y > 0");
    if (x.is_zero()) return y;
    mpfr_prec_t prec = std::max(x.precision(), y.precision());
    HP t = solve_t_of_y(y);
    HP r = params::xi_of_t(t);
    HP d0 = params::d0_of_t(t);
    if (near_rel(x, r, (long)prec / 2)) return d0;
    require(x < r, "solve_d_scalar: x beyond R(y)");

    HP a(0L), fa = log(1 + y), b;
    bool bracketed = false;
    if (hint && hint->sign() > 0 && *hint < d0) {
        HP la = *hint * 7 / 8, lb = *hint * 9 / 8;
        if (lb > d0) lb = d0 * 1023 / 1024;
        HP fla = phi_network_scalar(x, y, la);
        HP flb = phi_network_scalar(x, y, lb);
        if (fla.sign() > 0 && flb.sign() < 0) {
            a = la;
            fa = fla;
            b = lb;
            bracketed = true;
        }
    }
    if (!bracketed) {
        // Phi(0+) = log(1+y) > 0; scan (0, D0) and demand a single sign change.
        const int scan = 64;
        int changes = 0;
        HP prev_s = a, prev_f = fa;
        for (int i = 1; i < scan; ++i) {
            HP s = d0 * i / scan;
            HP f = phi_network_scalar(x, y, s);
            if (f.is_zero()) return s;
            if (prev_f.sign() > 0 && f.sign() < 0) {
                ++changes;
                a = prev_s;
                fa = prev_f;
                b = s;
            }
            require(!(prev_f.sign() < 0 && f.sign() > 0),
                    "solve_d_scalar: non-monotone residual on scan");
            prev_s = s;
            prev_f = f;
        }
        if (changes == 0) {
            // For x near R(y) the root approaches d0 like d0(1 - c sqrt(1 - x/R))
            // and hides inside the last mesh cell; Phi(d0) < 0 whenever x < R(y)
            // because the companion root sits beyond d0.
            HP fd0 = phi_network_scalar(x, y, d0);
            if (fd0.is_zero()) return d0;
            if (prev_f.sign() > 0 && fd0.sign() < 0) {
                a = prev_s;
                fa = prev_f;
                b = d0;
                changes = 1;
            }
        }
        require(changes == 1, "solve_d_scalar: root bracketing failed");
    }
    for (int i = 0; i < 64; ++i) {
        HP mid = (a + b) / 2;
        HP fm = phi_network_scalar(x, y, mid);
        if (fm.is_zero()) return mid;
        if (fm.sign() == fa.sign())
            a = mid;
        else
            b = mid;
    }
    HP s = (a + b) / 2;
    HP tol = ldexp2(HP(1), -(long)prec + 8);
    for (int i = 0; i < 60; ++i) {
        HP res = phi_network_scalar(x, y, s);
        HP jac = phi_network_jacobian(x, y, s);
        require(!jac.is_zero(), "solve_d_scalar: at branch point");
        HP step = res / jac;
        s = s - step;
        if (abs(step) <= tol * (1 + abs(s))) {
            HP check = phi_network_scalar(x, y, s);
            require(abs(check) <= ldexp2(HP(1), -(long)prec + 10),
                    "solve_d_scalar: residual did not vanish");
            return s;
        }
    }
    throw std::runtime_error("solve_d_scalar: no convergence");
}

inline HPDual d_dual(const HPDual& x, const HPDual& y) {
    HP dv = solve_d_scalar(x.v, y.v);
    HP jv = phi_network_jacobian(x.v, y.v, dv);
    require(!jv.is_zero(), "d_dual: at branch point");
    HPDual d{dv, HP(0L), HP(0L)};
    for (int i = 0; i < 2; ++i) {
        HPDual u = u_dual(x, d);
        HPDual res = phi_network(x, y, d, u);
        d = d - res / HPDual(jv);
    }
    return d;
}

// ------------------------------------------------------------ B evaluation

// Closed form of B as an elementary function of x, y, z = D, w = W; all logs
// must see strictly positive arguments in the working domain.
template <class T>
T b_formula(const T& x, const T& y, const T& z, const T& w) {
    auto checked_log = [](const T& arg, const char* what) {
        require(value_of(arg).sign() > 0, what);
        return log(arg);
    };
    T ww = w * w;
    T r = x * z * (6 * x - 2 + x * z) / 8;
    r = r + (x * x) * (1 + z) * (checked_log(1 + y, "b_formula: log(1+y)") -
                                 checked_log(1 + z, "b_formula: log(1+z)")) / 2;
    r = r - (x * x) * log(1 + z) / 4;
    r = r + checked_log(1 + x * z, "b_formula: log(1+xz)") / 4;
    T num5 = 2 * ((1 + x) * ((1 + w) * (z + ww))) + 3 * (w - z);
    r = r - x * num5 / (8 * pow(1 + w, 2));
    r = r + checked_log(1 + x * z + x * w + x * ww, "b_formula: log(1+xz+xw+xw^2)") / 8;
    r = r - (1 - 4 * x) * checked_log(1 + w, "b_formula: log(1+w)") / 8;
    T logs = checked_log(1 - x + x * z - x * w + x * ww, "b_formula: log(1-x+xz-xw+xw^2)") -
             checked_log(1 - x, "b_formula: log(1-x)") -
             checked_log(z + ww + 1 + w, "b_formula: log(z+w^2+1+w)");
    r = r - (1 - 4 * x + 2 * (x * x)) * logs / 16;
    return r;
}

inline HP eval_b_num(const HP& x, const HP& y) {
    if (x.is_zero() || y.is_zero()) return HP(0L);
    require(x.sign() > 0 && y.sign() > 0, "eval_b_num: domain is x, y >= 0");
    mpfr_prec_t prec = std::max(x.precision(), y.precision());
    HP t = solve_t_of_y(y);
    HP r = params::xi_of_t(t);
    HP d, u;
    if (near_rel(x, r, (long)prec / 2)) {
        d = params::d0_of_t(t);
        u = params::u0_of_t(t);
    } else {
        require(x < r, "eval_b_num: x beyond R(y)");
        d = solve_d_scalar(x, y);
        u = solve_u_xd(x, d);
    }
    HP w = d * (1 + u);
    return b_formula(x, y, d, w);
}

inline HPDual eval_b_dual(const HPDual& x, const HPDual& y) {
    HPDual d = d_dual(x, y);
    HPDual u = u_dual(x, d);
    HPDual w = d * (1 + u);
    return b_formula(x, y, d, w);
}

// B(x,1) with d/dx data; psi(u) = u exp(-B'(u)) and psi'(u) = e^{-B'}(1-uB'').
struct PsiPoint {
    HP value, deriv;
};

inline PsiPoint psi_at(const HP& u) {
    HPDual b = eval_b_dual(HPDual::variable(u), HPDual(HP(1)));
    HP e = exp(-b.d1);
    return {u * e, e * (1 - u * b.d2)};
}

// C(x) at y = 1 through C = F log(x/F) + F + B(F), F the inverse of psi.
inline HP eval_c_num(const HP& x) {
    if (x.is_zero()) return HP(0L);
    require(x.sign() > 0, "eval_c_num: x must be positive");
    mpfr_prec_t prec = x.precision();
    HP t0 = solve_t_of_y(HP(1));
    HP r = params::xi_of_t(t0);
    HP rho = r * exp(params::b2_of_t(t0) / r);
    HP f;
    if (near_rel(x, rho, (long)prec / 2)) {
        f = r;
    } else {
        require(x < rho, "eval_c_num: x beyond rho");
        // psi is increasing on (0,R] with psi(u) <= u, so the root lies in [x,R].
        HP a = x, b = r;
        for (int i = 0; i < 40; ++i) {
            HP mid = (a + b) / 2;
            if (psi_at(mid).value < x)
                a = mid;
            else
                b = mid;
        }
        f = (a + b) / 2;
        HP tol = ldexp2(HP(1), -(long)prec + 8);
        bool done = false;
        for (int i = 0; i < 60 && !done; ++i) {
            PsiPoint p = psi_at(f);
            require(p.deriv.sign() > 0, "eval_c_num: psi not increasing");
            HP step = (p.value - x) / p.deriv;
            f = f - step;
            if (f <= a || f >= b) f = (a + b) / 2;  // keep inside the bracket
            done = abs(step) <= tol * abs(f);
        }
        require(done, "eval_c_num: no convergence");
    }
    return f * log(x / f) + f + eval_b_num(f, HP(1));
}

// Bivariate singular-expansion coefficients as functions of y.
inline HP c0_of_y(const HP& y) {
    HP t = solve_t_of_y(y);
    return params::xi_of_t(t) + params::b0_of_t(t) + params::b2_of_t(t);
}

inline HP pow_m52(const HP& z) {  // z^{-5/2}
    require(z.sign() > 0, "pow_m52: nonpositive radicand");
    return 1 / (z * z * sqrt(z));
}

inline HP c5_of_y(const HP& y) {
    HP t = solve_t_of_y(y);
    HP r = params::xi_of_t(t);
    return params::b5_of_t(t) * pow_m52(1 - 2 * params::b4_of_t(t) / r);
}

inline HP g5_of_y(const HP& y) { return exp(c0_of_y(y)) * c5_of_y(y); }

// ----------------------------------------------------------------- tau

struct TauResult {
    HP t_star, y_star, tau, log2_tau;
};

// rho(y) = 1 has its root at y* < 1 (rho decreases from infinity at y -> 0+
// to about 0.0367 at y = 1); the growth constant per edge is tau = 1/y*.
inline TauResult solve_tau() {
    const long grid = 2048;
    HP lo("1e-6");
    HP t0 = solve_t_of_y(HP(1));
    int changes = 0;
    HP a, b;
    HP prev_t = lo, prev_f = params::rho_of_t(lo) - 1;
    require(prev_f.sign() > 0, "solve_tau: rho(t) not above 1 at scan start");
    for (long i = 1; i <= grid; ++i) {
        HP ti = lo + (t0 - lo) * i / grid;
        HP f = params::rho_of_t(ti) - 1;
        if (prev_f.sign() > 0 && f.sign() <= 0) {
            ++changes;
            a = prev_t;
            b = ti;
        }
        require(!(prev_f.sign() < 0 && f.sign() > 0), "solve_tau: non-monotone rho on scan");
        prev_t = ti;
        prev_f = f;
    }
    require(changes == 1, "solve_tau: root bracketing failed");
    for (int i = 0; i < 80; ++i) {
        HP mid = (a + b) / 2;
        if (params::rho_of_t(mid) > HP(1))
            a = mid;
        else
            b = mid;
    }
    HP t = (a + b) / 2;
    mpfr_prec_t prec = t.precision();
    HP tol = ldexp2(HP(1), -(long)prec + 8);
    for (int i = 0; i < 60; ++i) {
        HPDual rd = params::rho_of_t(HPDual::variable(t));
        HP step = (rd.v - 1) / rd.d1;
        t = t - step;
        if (abs(step) <= tol * abs(t)) break;
    }
    TauResult res;
    res.t_star = t;
    res.y_star = params::y_of_t(t);
    res.tau = 1 / res.y_star;
    res.log2_tau = log(res.tau) / log(HP(2));
    return res;
}

// ------------------------------------------------------------- constants

struct ConstantsBundle {
    long precision_bits = 0;
    HP t0, R, B0, B2, B4, B5;
    HP rho, rho_appendix, gamma;
    HP F0, F1, F2, F3, C0, C2, C4, C5;
    HP gamma_m52, c, g;
    HP kappa, lambda;
    HP zeta, nu, exp_neg_nu, B_at_rho;
    HP tau, log2_tau, y_star;
};

inline ConstantsBundle constants(long precision_bits = 256) {
    if (precision_bits < 128)
        throw std::invalid_argument("constants: precision_bits >= 128 required");
    HPPrecisionGuard guard(precision_bits + 64);
    ConstantsBundle k;
    k.precision_bits = precision_bits;
    k.t0 = solve_t_of_y(HP(1));
    k.R = params::xi_of_t(k.t0);
    k.B0 = params::b0_of_t(k.t0);
    k.B2 = params::b2_of_t(k.t0);
    k.B4 = params::b4_of_t(k.t0);
    k.B5 = params::b5_of_t(k.t0);
    k.rho = k.R * exp(k.B2 / k.R);
    k.rho_appendix = params::rho_of_t(k.t0);
    k.gamma = 1 / k.rho;
    k.F0 = k.R;
    k.F1 = HP(0L);
    k.F2 = k.R * k.R / (2 * k.B4 - k.R);
    k.F3 = -5 * k.B5 * pow_m52(1 - 2 * k.B4 / k.R) / 2;
    k.C0 = k.R + k.B0 + k.B2;
    k.C2 = -k.R;
    k.C4 = -(k.R + k.F2) / 2;
    k.C5 = -2 * k.F3 / 5;
    k.gamma_m52 = sqrt(HP::pi());
    for (long i = 1; i <= 3; ++i) k.gamma_m52 = k.gamma_m52 / (HP(1) / 2 - i);
    k.c = k.C5 / k.gamma_m52;
    k.g = exp(k.C0) * k.c;
    k.zeta = log(k.R / k.rho);
    k.nu = k.C0;
    k.exp_neg_nu = exp(-k.nu);
    HPDual rd = rho_of_y_dual(HP(1));
    HP lr = rd.d1 / rd.v;
    k.kappa = -lr;
    k.lambda = -rd.d2 / rd.v - lr + lr * lr;
    TauResult tr = solve_tau();
    k.tau = tr.tau;
    k.log2_tau = tr.log2_tau;
    k.y_star = tr.y_star;
    k.B_at_rho = eval_b_num(k.rho, HP(1));

    HP tol = ldexp2(HP(1), -precision_bits - 20);
    require(abs(k.gamma * k.rho - 1) <= tol, "constants inconsistent: gamma*rho != 1");
    require(abs(k.rho - k.rho_appendix) <= tol * k.rho,
            "constants inconsistent: two rho routes disagree");
    require(abs(k.zeta + k.B2 / k.R) <= tol * abs(k.zeta),
            "constants inconsistent: zeta != -B2/R");
    require(abs(rd.v - k.rho) <= tol * k.rho,
            "constants inconsistent: rho(y) route disagrees at y=1");
    return k;
}

// ------------------------------------------------- psi-regularity certificate

struct PsiRegularReport {
    long gridsize = 0;
    HP min_margin, argmin_t;
};

// 2 B4(t) < xi(t) on (0,1) is the regularity condition keeping psi strictly
// increasing up to the branch point (no extra singularity before R(y)).
inline PsiRegularReport verify_psi_regular(long gridsize) {
    require(gridsize >= 1000, "verify_psi_regular: gridsize >= 1000 required");
    PsiRegularReport rep;
    rep.gridsize = gridsize;
    bool first = true;
    for (long i = 1; i <= gridsize; ++i) {
        HP t = HP(i) / (gridsize + 1);
        HP margin = params::xi_of_t(t) - 2 * params::b4_of_t(t);
        if (margin.sign() <= 0)
            throw std::runtime_error("verify_psi_regular: violation at t = " + t.str(20));
        if (first || margin < rep.min_margin) {
            rep.min_margin = margin;
            rep.argmin_t = t;
            first = false;
        }
    }
    return rep;
}

} // namespace planarcount::closedform
