#pragma once

// Newton lifting for implicit series equations Phi(F) = 0. The step callback
// evaluates (residual, dPhi/dF) in the ring of its argument. Starting from a
// seed correct to x-order m, one update is exact to order 2m+1, so the loop
// doubles the working ring until the final orders are reached and then
// re-verifies that the residual vanishes identically.

#include "planarcount/bseries.hpp"
#include "planarcount/useries.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace planarcount {

struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int newton_iteration_limit(int order) {
    int lim = 2;
    for (int m = 1; m < std::max(order, 1); m *= 2) ++lim;
    return lim;
}

// Bivariate solve. ny_of(m) gives the y-order of the working ring at x-order
// m; it must not truncate away true support of the solution below order m.
template <class Step, class NyOf>
BSeries ps_newton_implicit(const char* what, Step&& step, BSeries seed, int seed_order,
                           int nx_final, NyOf&& ny_of) {
    BSeries f = std::move(seed);
    int m = seed_order;
    int updates = 0;
    const int limit = newton_iteration_limit(nx_final);
    while (true) {
        if (m >= nx_final) {
            f = f.resized(nx_final, ny_of(nx_final));
            auto [res, jac] = step(f);
            if (res.is_zero()) return f;
            f -= res / jac;
        } else {
            int m2 = std::min(2 * m + 1, nx_final);
            f = f.resized(m2, ny_of(m2));
            auto [res, jac] = step(f);
            f -= res / jac;
            m = m2;
        }
        if (++updates > limit)
            throw SolveError(std::string("ps_newton_implicit: no convergence for ") + what +
                             " at order " + std::to_string(nx_final));
    }
}

// Univariate solve, same contract.
template <class Step>
USeries ps_newton_implicit(const char* what, Step&& step, USeries seed, int seed_order,
                           int n_final) {
    USeries f = std::move(seed);
    int m = seed_order;
    int updates = 0;
    const int limit = newton_iteration_limit(n_final);
    while (true) {
        if (m >= n_final) {
            f = f.truncated(n_final);
            auto [res, jac] = step(f);
            if (res.is_zero()) return f;
            f -= res / jac;
        } else {
            int m2 = std::min(2 * m + 1, n_final);
            USeries g(m2);
            for (int k = 0; k <= std::min(m2, f.n); ++k) g.c[k] = f.c[k];
            f = std::move(g);
            auto [res, jac] = step(f);
            f -= res / jac;
            m = m2;
        }
        if (++updates > limit)
            throw SolveError(std::string("ps_newton_implicit: no convergence for ") + what +
                             " at order " + std::to_string(n_final));
    }
}

} // namespace planarcount
