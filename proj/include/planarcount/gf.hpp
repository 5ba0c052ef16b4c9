#pragma once

// Exact generating-function pipeline for labelled planar graphs. Series are
// exponential in x (vertices) and ordinary in y (edges). The chain is
//   U, V (rooted-map pair)  ->  M (3-connected maps)  ->  D (networks)
//   ->  B (2-connected)  ->  F = x C_x  ->  C (connected)  ->  G (all).
// Every solve is Newton lifting in a quotient ring whose y-order grows as
// min(3k+1, ny); the support bound q <= 3k+1 of all series involved makes
// that growth sound.

#include "planarcount/bseries.hpp"
#include "planarcount/counts.hpp"
#include "planarcount/implicit.hpp"
#include "planarcount/rational.hpp"
#include "planarcount/useries.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace planarcount::gf {

using StepResult = std::pair<BSeries, BSeries>;

struct UV {
    BSeries u, v;
};

inline int ny_support(int m, int ny) { return std::min(3 * m + 1, ny); }

inline USeries log1py(int ny) {
    USeries s(ny);
    s.c[0] = 1;
    if (ny >= 1) s.c[1] = 1;
    return ps_log(s);
}

// U = xy(1+V)^2 with V = y(1+U)^2 folded in; J = 1 - 4xy^2(1+U)(1+V).
inline StepResult uv_step(const BSeries& u) {
    int nx = u.nx, ny = u.ny;
    BSeries one = BSeries::one(nx, ny);
    BSeries onep = one + u;
    BSeries v = BSeries::monomial(nx, ny, 0, 1) * (onep * onep);
    BSeries onev = one + v;
    BSeries res = u - BSeries::monomial(nx, ny, 1, 1) * (onev * onev);
    BSeries jac = one - Rat(4) * (BSeries::monomial(nx, ny, 1, 2) * (onep * onev));
    return {std::move(res), std::move(jac)};
}

inline UV solve_uv(int nx, int ny) {
    BSeries u = ps_newton_implicit("U", uv_step, BSeries(0, ny_support(0, ny)), 0, nx,
                                   [ny](int m) { return ny_support(m, ny); });
    BSeries one = BSeries::one(nx, ny);
    BSeries onep = one + u;
    BSeries v = BSeries::monomial(nx, ny, 0, 1) * (onep * onep);
    return {std::move(u), std::move(v)};
}

// M = x^2 y^2 (1/(1+xy) + 1/(1+y) - 1 - (1+U)^2 (1+V)^2 / (1+U+V)^3).
inline BSeries series_m(const UV& uv) {
    int nx = uv.u.nx, ny = uv.u.ny;
    BSeries one = BSeries::one(nx, ny);
    BSeries onep = one + uv.u, onev = one + uv.v;
    BSeries t = one + uv.u + uv.v;
    BSeries bracket = one / (one + BSeries::monomial(nx, ny, 1, 1)) +
                      one / (one + BSeries::monomial(nx, ny, 0, 1)) - one -
                      (onep * onep) * (onev * onev) / (t * (t * t));
    return bracket.shift_mul(2, 2);
}

inline BSeries series_m(int nx, int ny) { return series_m(solve_uv(nx, ny)); }

// D(x,y): planar networks, from
//   M(x,D)/(2x^2 D) - log((1+D)/(1+y)) + xD^2/(1+xD) = 0,  D(x,0) = 0.
// With Nhat(x,s) = M(x,s)/(x^2 s) the residual and its D-derivative are
//   Phi = Nhat(x,D)/2 - log(1+D) + log(1+y) + xD^2/(1+xD),
//   J   = Nhat_s(x,D)/2 - 1/(1+D) + (2xD + x^2 D^2)/(1+xD)^2,
// and J has unit x^0 slice -1/(1+y). M enters at two extra orders in each
// variable so Nhat and Nhat_s are exact in the working ring.
inline BSeries solve_d(int nx, int ny) {
    if (ny < 1) throw std::invalid_argument("solve_d: ny >= 1 required");
    const BSeries mbig = series_m(nx + 2, ny + 2);
    auto step = [&mbig](const BSeries& d) -> StepResult {
        int mx = d.nx, my = d.ny;
        BSeries one = BSeries::one(mx, my);
        BSeries nhat = mbig.resized(mx + 2, my + 2).shift_div(2, 1);
        BSeries nhat_s = nhat.derive_y();
        auto comp = ps_compose_y_multi({&nhat, &nhat_s}, d);
        BSeries xd = d.shift_mul(1, 0);
        BSeries onexd = one + xd;
        BSeries res = Rat(1, 2) * comp[0] - ps_log(one + d) +
                      BSeries::from_y_series(log1py(my), mx, my) + xd * d / onexd;
        BSeries jac = Rat(1, 2) * comp[1] - one / (one + d) +
                      (Rat(2) * xd + xd * xd) / (onexd * onexd);
        return {std::move(res), std::move(jac)};
    };
    BSeries seed(0, ny_support(0, ny));
    seed.c[0][1] = 1;  // D(0,y) = y
    return ps_newton_implicit("D", step, std::move(seed), 0, nx,
                              [ny](int m) { return ny_support(m, ny); });
}

// B(x,y) = (x^2/2) Int_0^y (1+D(x,t))/(1+t) dt, exact at D's orders.
inline BSeries series_b_integral(const BSeries& d) {
    int nx = d.nx, ny = d.ny;
    BSeries one = BSeries::one(nx, ny);
    BSeries integrand = (one + d) / (one + BSeries::monomial(nx, ny, 0, 1));
    return (Rat(1, 2) * integrand.integrate_y().shift_mul(2, 0)).resized(nx, ny);
}

// Ubar = U(x, D): Ubar = xD(1 + D(1+Ubar)^2)^2, J = 1 - 4xD^2(1+Ubar)(1+Vbar).
inline BSeries solve_ubar(const BSeries& d) {
    int nx = d.nx, ny = d.ny;
    auto step = [&d](const BSeries& u) -> StepResult {
        int mx = u.nx, my = u.ny;
        BSeries one = BSeries::one(mx, my);
        BSeries dm = d.resized(mx, my);
        BSeries onep = one + u;
        BSeries vbar = dm * (onep * onep);
        BSeries onev = one + vbar;
        BSeries res = u - (dm * (onev * onev)).shift_mul(1, 0);
        BSeries jac = one - Rat(4) * ((dm * dm).shift_mul(1, 0) * (onep * onev));
        return {std::move(res), std::move(jac)};
    };
    return ps_newton_implicit("Ubar", step, BSeries(0, ny_support(0, ny)), 0, nx,
                              [ny](int m) { return ny_support(m, ny); });
}

// Integral-free form of B as an elementary function of x, y, D, and
// W = D(1+U(x,D)). All divisions by x are cancelled symbolically, so this is
// a pure ring computation.
inline BSeries series_b_closed(const BSeries& d) {
    int nx = d.nx, ny = d.ny;
    BSeries one = BSeries::one(nx, ny);
    BSeries xm = BSeries::monomial(nx, ny, 1, 0);
    BSeries w = d * (one + solve_ubar(d));
    BSeries xd = d.shift_mul(1, 0);
    BSeries logd = ps_log(one + d);
    BSeries logw = ps_log(one + w);
    BSeries ww = w * w;

    BSeries b = Rat(1, 8) * (xd * (Rat(6) * xm - Rat(2) * one + xd));
    b += Rat(1, 2) * ((one + d) * (BSeries::from_y_series(log1py(ny), nx, ny) - logd))
             .shift_mul(2, 0);
    b -= Rat(1, 4) * logd.shift_mul(2, 0);
    b += Rat(1, 4) * ps_log(one + xd);
    BSeries num5 = Rat(2) * ((one + xm) * ((one + w) * (d + ww))) + Rat(3) * (w - d);
    b -= Rat(1, 8) * (num5.shift_mul(1, 0) / ((one + w) * (one + w)));
    b += Rat(1, 8) * ps_log(one + (d + w + ww).shift_mul(1, 0));
    b -= Rat(1, 8) * ((one - Rat(4) * xm) * logw);
    BSeries logs = ps_log(one - xm + (d - w + ww).shift_mul(1, 0)) - ps_log(one - xm) -
                   ps_log(one + d + w + ww);
    b -= Rat(1, 16) * ((one - Rat(4) * xm + Rat(2) * BSeries::monomial(nx, ny, 2, 0)) * logs);
    return b;
}

// F = x C_x solves F = x exp(B_x(F, y)); needs B at two extra x-orders for
// the Jacobian 1 - x exp(B_x(F)) B_xx(F).
inline BSeries solve_f(const BSeries& b, int nx, int ny) {
    if (b.nx < nx + 2 || b.ny < ny)
        throw std::invalid_argument("solve_f: B must carry orders (nx+2, ny)");
    auto step = [&b](const BSeries& f) -> StepResult {
        int mx = f.nx, my = f.ny;
        BSeries bx = b.resized(mx + 1, my).derive_x();
        BSeries bxx = b.resized(mx + 2, my).derive_x().derive_x();
        auto comp = ps_compose_x_multi({&bx, &bxx}, f);
        BSeries e = ps_exp(comp[0]);
        BSeries res = f - e.shift_mul(1, 0);
        BSeries jac = BSeries::one(mx, my) - (e * comp[1]).shift_mul(1, 0);
        return {std::move(res), std::move(jac)};
    };
    BSeries seed(1, ny_support(1, ny));
    seed.c[1][0] = 1;  // F = x + O(x^2)
    return ps_newton_implicit("F", step, std::move(seed), 1, nx,
                              [ny](int m) { return ny_support(m, ny); });
}

struct CG {
    BSeries c, g;
};

inline CG series_cg(const BSeries& f) {
    BSeries c = f.shift_div(1, 0).integrate_x();
    BSeries g = ps_exp(c);
    return {std::move(c), std::move(g)};
}

// Everything at deliverable orders (N, 3N+1); D and B are solved two x-orders
// higher internally because the F equation consumes B_x and B_xx.
struct Bundle {
    int order = 0;
    BSeries U, V, M, D, B, F, C, G;
};

inline Bundle build_bundle(int order) {
    if (order < 0) throw std::invalid_argument("build_bundle: order >= 0 required");
    int nx = std::max(order, 1);
    int ny = 3 * nx + 1;
    Bundle r;
    r.order = order;
    BSeries dbig = solve_d(nx + 2, ny);
    BSeries bbig = series_b_closed(dbig);
    r.F = solve_f(bbig, nx, ny);
    CG cg = series_cg(r.F);
    r.C = std::move(cg.c);
    r.G = std::move(cg.g);
    UV uv = solve_uv(nx, ny);
    r.M = series_m(uv);
    r.U = std::move(uv.u);
    r.V = std::move(uv.v);
    r.D = dbig.resized(nx, ny);
    r.B = bbig.resized(nx, ny);
    return r;
}

// Residual recomputations for post-hoc verification of solved series.
inline BSeries d_residual(const BSeries& d) {
    const BSeries mbig = series_m(d.nx + 2, d.ny + 2);
    BSeries one = BSeries::one(d.nx, d.ny);
    BSeries nhat = mbig.shift_div(2, 1).resized(d.nx, d.ny);
    BSeries xd = d.shift_mul(1, 0);
    return Rat(1, 2) * ps_compose_y(nhat, d) - ps_log(one + d) +
           BSeries::from_y_series(log1py(d.ny), d.nx, d.ny) + xd * d / (one + xd);
}

inline BSeries f_residual(const BSeries& b, const BSeries& f) {
    BSeries bx = b.resized(f.nx + 1, f.ny).derive_x();
    return f - ps_exp(ps_compose_x(bx, f)).shift_mul(1, 0);
}

// psi(u,y) = u exp(-B_x(u,y)) is the functional inverse of F in the x slot:
// psi(F(x,y), y) = x.
inline BSeries psi_series(const BSeries& b) {
    BSeries bx = b.derive_x();
    return ps_exp(-bx).shift_mul(1, 0);
}

// EGF coefficients to exact labelled counts; throws if any n! [x^n y^q] fails
// to be a nonnegative integer.
inline CountTable extract_counts(const BSeries& s, const std::string& kind, int nmax) {
    if (nmax > s.nx) throw std::invalid_argument("extract_counts: nmax beyond series order");
    int support = kind == "d" ? 3 * nmax + 1 : std::max(1, 3 * nmax - 6);
    if (s.ny < support && (nmax >= 2 || kind == "d"))
        throw std::invalid_argument("extract_counts: series y-order below planar support");
    CountTable t(kind, nmax);
    for (int n = 0; n <= nmax; ++n) {
        int qmax = (int)t.v[n].size() - 1;
        for (int q = 0; q <= std::min(qmax, s.ny); ++q) {
            Int cnt = egf_count(s.at(n, q), (unsigned)n);
            if (cnt < 0) throw std::domain_error("extract_counts: negative count");
            t.v[n][q] = std::move(cnt);
        }
    }
    return t;
}

} // namespace planarcount::gf
