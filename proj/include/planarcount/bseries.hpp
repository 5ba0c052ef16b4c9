#pragma once

// Truncated bivariate formal power series over Rat, coefficients c[k][q] of
// x^k y^q with k <= nx, q <= ny. Every operation is a ring operation in the
// quotient Q[[x,y]]/(x^{nx+1}, y^{ny+1}) taken at the minimum orders of its
// operands, so truncation commutes with all exact computations.

#include "planarcount/parallel.hpp"
#include "planarcount/rational.hpp"
#include "planarcount/useries.hpp"

#include <stdexcept>
#include <vector>

namespace planarcount {

struct BSeries {
    int nx = 0, ny = 0;                 // truncation orders, inclusive
    std::vector<std::vector<Rat>> c;    // c[k][q]

    BSeries() : c(1, std::vector<Rat>(1)) {}
    BSeries(int nx_, int ny_) : nx(nx_), ny(ny_), c(nx_ + 1, std::vector<Rat>(ny_ + 1)) {
        if (nx_ < 0 || ny_ < 0) throw std::invalid_argument("BSeries: negative order");
    }

    static BSeries one(int nx_, int ny_) {
        BSeries r(nx_, ny_);
        r.c[0][0] = 1;
        return r;
    }

    static BSeries monomial(int nx_, int ny_, int k, int q, const Rat& a = Rat(1)) {
        BSeries r(nx_, ny_);
        if (k <= nx_ && q <= ny_) r.c[k][q] = a;
        return r;
    }

    // Univariate series placed on the x-axis (q = 0) or y-axis (k = 0).
    static BSeries from_x_series(const USeries& s, int nx_, int ny_) {
        BSeries r(nx_, ny_);
        for (int k = 0; k <= std::min(nx_, s.n); ++k) r.c[k][0] = s.c[k];
        return r;
    }
    static BSeries from_y_series(const USeries& s, int nx_, int ny_) {
        BSeries r(nx_, ny_);
        for (int q = 0; q <= std::min(ny_, s.n); ++q) r.c[0][q] = s.c[q];
        return r;
    }

    const Rat& at(int k, int q) const {
        static const Rat zero{};
        return (k <= nx && q <= ny) ? c[k][q] : zero;
    }

    bool is_zero() const {
        for (const auto& row : c)
            for (const Rat& a : row)
                if (a != 0) return false;
        return true;
    }

    // Image in another quotient ring. Shrinking is always sound; growing
    // fills with zeros, which is only correct when the caller knows the
    // represented object vanishes there (Newton lifting relies on this
    // together with the support bound q <= 3k + 1 of the planar-graph GFs).
    BSeries resized(int mx, int my) const {
        BSeries r(mx, my);
        for (int k = 0; k <= std::min(mx, nx); ++k)
            for (int q = 0; q <= std::min(my, ny); ++q) r.c[k][q] = c[k][q];
        return r;
    }

    BSeries& operator+=(const BSeries& o) {
        if (o.nx < nx || o.ny < ny) *this = resized(std::min(nx, o.nx), std::min(ny, o.ny));
        for (int k = 0; k <= nx; ++k)
            for (int q = 0; q <= ny; ++q) c[k][q] += o.c[k][q];
        return *this;
    }
    BSeries& operator-=(const BSeries& o) {
        if (o.nx < nx || o.ny < ny) *this = resized(std::min(nx, o.nx), std::min(ny, o.ny));
        for (int k = 0; k <= nx; ++k)
            for (int q = 0; q <= ny; ++q) c[k][q] -= o.c[k][q];
        return *this;
    }
    friend BSeries operator+(BSeries a, const BSeries& b) { return a += b; }
    friend BSeries operator-(BSeries a, const BSeries& b) { return a -= b; }

    BSeries operator-() const {
        BSeries r = *this;
        for (auto& row : r.c)
            for (Rat& a : row) a = -a;
        return r;
    }

    friend BSeries operator*(const Rat& s, BSeries a) {
        for (auto& row : a.c)
            for (Rat& x : row) x *= s;
        return a;
    }

    friend BSeries operator*(const BSeries& a, const BSeries& b) {
        BSeries r(std::min(a.nx, b.nx), std::min(a.ny, b.ny));
        unsigned th = (r.nx + 1) * (r.ny + 1) >= 2048 ? thread_budget() : 1;
        parallel_ranges(r.nx + 1, [&](long lo, long hi) {
            Rat t;
            for (long k = lo; k < hi; ++k) {
                auto& out = r.c[k];
                for (int k1 = std::max<long>(0, k - b.nx); k1 <= std::min<long>(k, a.nx); ++k1) {
                    const auto& ar = a.c[k1];
                    const auto& br = b.c[k - k1];
                    for (int q1 = 0; q1 <= std::min(a.ny, r.ny); ++q1) {
                        if (ar[q1] == 0) continue;
                        int q2max = std::min(b.ny, r.ny - q1);
                        for (int q2 = 0; q2 <= q2max; ++q2) {
                            if (br[q2] == 0) continue;
                            t = ar[q1];
                            t *= br[q2];
                            out[q1 + q2] += t;
                        }
                    }
                }
            }
        }, th);
        return r;
    }

    // Long division along x; divisor's x^0 slice must be a unit in Q[[y]].
    friend BSeries operator/(const BSeries& a, const BSeries& b) {
        if (b.c[0][0] == 0) throw std::domain_error("BSeries division by non-unit");
        BSeries q(std::min(a.nx, b.nx), std::min(a.ny, b.ny));
        std::vector<Rat> acc(q.ny + 1), prod(q.ny + 1);
        for (int k = 0; k <= q.nx; ++k) {
            for (int j = 0; j <= q.ny; ++j) acc[j] = a.c[k][j];
            for (int j = 0; j < k; ++j) {
                row_submul(acc, q.c[j], b.c[k - j], q.ny);
            }
            row_divide(q.c[k], acc, b.c[0], q.ny);
        }
        return q;
    }

    bool operator==(const BSeries& o) const { return nx == o.nx && ny == o.ny && c == o.c; }

    bool equal_upto(const BSeries& o, int mx, int my) const {
        for (int k = 0; k <= mx; ++k)
            for (int q = 0; q <= my; ++q)
                if (at(k, q) != o.at(k, q)) return false;
        return true;
    }

    BSeries derive_x() const {
        BSeries r(std::max(0, nx - 1), ny);
        for (int k = 1; k <= nx; ++k)
            for (int q = 0; q <= ny; ++q) r.c[k - 1][q] = Rat(k) * c[k][q];
        return r;
    }
    BSeries derive_y() const {
        BSeries r(nx, std::max(0, ny - 1));
        for (int k = 0; k <= nx; ++k)
            for (int q = 1; q <= ny; ++q) r.c[k][q - 1] = Rat(q) * c[k][q];
        return r;
    }
    BSeries integrate_x() const {
        BSeries r(nx + 1, ny);
        for (int k = 0; k <= nx; ++k)
            for (int q = 0; q <= ny; ++q) r.c[k + 1][q] = c[k][q] / Rat(k + 1);
        return r;
    }
    BSeries integrate_y() const {
        BSeries r(nx, ny + 1);
        for (int k = 0; k <= nx; ++k)
            for (int q = 0; q <= ny; ++q) r.c[k][q + 1] = c[k][q] / Rat(q + 1);
        return r;
    }

    // Multiply by the monomial x^dx y^dy inside the same quotient ring.
    BSeries shift_mul(int dx, int dy) const {
        BSeries r(nx, ny);
        for (int k = 0; k + dx <= nx; ++k)
            for (int q = 0; q + dy <= ny; ++q) r.c[k + dx][q + dy] = c[k][q];
        return r;
    }

    // Exact division by x^dx y^dy; the dropped region must be identically zero.
    BSeries shift_div(int dx, int dy) const {
        for (int k = 0; k <= nx; ++k)
            for (int q = 0; q <= ny; ++q)
                if ((k < dx || q < dy) && c[k][q] != 0)
                    throw std::domain_error("BSeries::shift_div: inexact monomial division");
        BSeries r(nx - dx, ny - dy);
        for (int k = dx; k <= nx; ++k)
            for (int q = dy; q <= ny; ++q) r.c[k - dx][q - dy] = c[k][q];
        return r;
    }

    USeries x0_slice() const {
        USeries s(ny);
        s.c = c[0];
        return s;
    }

    // Evaluation at y = 1 (exact row sums).
    USeries eval_y1() const {
        USeries s(nx);
        for (int k = 0; k <= nx; ++k) {
            Rat acc;
            for (int q = 0; q <= ny; ++q) acc += c[k][q];
            s.c[k] = acc;
        }
        return s;
    }

    // -- row (univariate-in-y) helpers -------------------------------------

    static void row_submul(std::vector<Rat>& acc, const std::vector<Rat>& a,
                           const std::vector<Rat>& b, int ny_) {
        Rat t;
        for (int q1 = 0; q1 <= ny_ && q1 < (int)a.size(); ++q1) {
            if (a[q1] == 0) continue;
            int q2max = std::min<int>(ny_ - q1, (int)b.size() - 1);
            for (int q2 = 0; q2 <= q2max; ++q2) {
                if (b[q2] == 0) continue;
                t = a[q1];
                t *= b[q2];
                acc[q1 + q2] -= t;
            }
        }
    }

    // out = a / b in Q[[y]]/(y^{ny+1}); b[0] != 0.
    static void row_divide(std::vector<Rat>& out, const std::vector<Rat>& a,
                           const std::vector<Rat>& b, int ny_) {
        if (b[0] == 0) throw std::domain_error("BSeries row division by non-unit");
        out.assign(ny_ + 1, Rat());
        Rat t;
        for (int q = 0; q <= ny_; ++q) {
            Rat acc = q < (int)a.size() ? a[q] : Rat();
            for (int j = 0; j < q; ++j) {
                if (out[j] == 0) continue;
                int bi = q - j;
                if (bi >= (int)b.size() || b[bi] == 0) continue;
                t = out[j];
                t *= b[bi];
                acc -= t;
            }
            out[q] = acc / b[0];
        }
    }
};

// exp of a series with zero constant term. The x^0 slice S0(y) is handled as
// a univariate exp; the rest goes through the x-direction ODE E' = S'E.
inline BSeries ps_exp(const BSeries& s) {
    if (s.c[0][0] != 0) throw std::domain_error("ps_exp: nonzero constant term");
    USeries s0 = s.x0_slice();
    USeries e0 = ps_exp(s0);
    BSeries e(s.nx, s.ny);
    std::vector<std::vector<Rat>> a(s.nx + 1, std::vector<Rat>(s.ny + 1));
    a[0][0] = 1;
    std::vector<Rat> acc(s.ny + 1), scaled(s.ny + 1);
    for (int k = 1; k <= s.nx; ++k) {
        for (auto& v : acc) v = 0;
        for (int j = 1; j <= k; ++j) {
            bool nz = false;
            for (int q = 0; q <= s.ny; ++q) {
                scaled[q] = Rat(-j) * s.c[j][q];
                nz = nz || scaled[q] != 0;
            }
            if (!nz) continue;
            BSeries::row_submul(acc, scaled, a[k - j], s.ny);
        }
        Rat inv_k(1, k);
        for (int q = 0; q <= s.ny; ++q) a[k][q] = acc[q] * inv_k;
    }
    // E_k = exp(S0) * A_k slice-wise in y.
    Rat t;
    for (int k = 0; k <= s.nx; ++k)
        for (int q1 = 0; q1 <= s.ny; ++q1) {
            if (e0.c[q1] == 0) continue;
            for (int q2 = 0; q1 + q2 <= s.ny; ++q2) {
                if (a[k][q2] == 0) continue;
                t = e0.c[q1];
                t *= a[k][q2];
                e.c[k][q1 + q2] += t;
            }
        }
    return e;
}

// log of a series with constant term 1. Factor out the x^0 slice A0(y) (a
// unit), take its univariate log, then run the x-direction recursion on
// B = A / A0 whose x^0 slice is exactly 1.
inline BSeries ps_log(const BSeries& a) {
    if (a.c[0][0] != 1) throw std::domain_error("ps_log: constant term must be 1");
    USeries a0 = a.x0_slice();
    USeries l0 = ps_log(a0);
    std::vector<std::vector<Rat>> b(a.nx + 1);
    for (int k = 0; k <= a.nx; ++k) BSeries::row_divide(b[k], a.c[k], a.c[0], a.ny);
    BSeries l(a.nx, a.ny);
    l.c[0] = l0.c;
    std::vector<Rat> acc(a.ny + 1), scaled(a.ny + 1);
    for (int k = 1; k <= a.nx; ++k) {
        // k L_k = k B_k - sum_{j=1}^{k-1} j L_j B_{k-j}
        for (int q = 0; q <= a.ny; ++q) acc[q] = Rat(k) * b[k][q];
        for (int j = 1; j < k; ++j) {
            bool nz = false;
            for (int q = 0; q <= a.ny; ++q) {
                scaled[q] = Rat(j) * l.c[j][q];
                nz = nz || scaled[q] != 0;
            }
            if (!nz) continue;
            BSeries::row_submul(acc, scaled, b[k - j], a.ny);
        }
        Rat inv_k(1, k);
        for (int q = 0; q <= a.ny; ++q) l.c[k][q] = acc[q] * inv_k;
    }
    return l;
}

// R_i = P_i(x, S(x,y)) substituting the SECOND slot of each P_i (series in
// (x,s)) by S. Sound in the quotient ring because S has y-valuation >= 1,
// so s-columns beyond min(P.ny, S.ny) contribute nothing. Powers of S are
// shared across the batch.
inline std::vector<BSeries> ps_compose_y_multi(const std::vector<const BSeries*>& ps,
                                               const BSeries& s) {
    for (int k = 0; k <= s.nx; ++k)
        if (s.c[k][0] != 0) throw std::domain_error("ps_compose_y: inner series needs y-valuation >= 1");
    int qmax = 0;
    for (const BSeries* p : ps) qmax = std::max(qmax, p->ny);
    qmax = std::min(qmax, s.ny);
    std::vector<BSeries> out(ps.size(), BSeries(s.nx, s.ny));
    BSeries power = BSeries::one(s.nx, s.ny);
    Rat t;
    for (int q = 0;; ++q) {
        for (size_t i = 0; i < ps.size(); ++i) {
            const BSeries& p = *ps[i];
            if (q > p.ny) continue;
            for (int k1 = 0; k1 <= std::min(p.nx, s.nx); ++k1) {
                const Rat& coef = p.c[k1][q];
                if (coef == 0) continue;
                for (int k2 = 0; k1 + k2 <= s.nx; ++k2)
                    for (int q2 = 0; q2 <= s.ny; ++q2) {
                        if (power.c[k2][q2] == 0) continue;
                        t = coef;
                        t *= power.c[k2][q2];
                        out[i].c[k1 + k2][q2] += t;
                    }
            }
        }
        if (q == qmax) break;
        power = power * s;
    }
    return out;
}

inline BSeries ps_compose_y(const BSeries& p, const BSeries& s) {
    return ps_compose_y_multi({&p}, s)[0];
}

// R_i = P_i(S(x,y), y) substituting the FIRST slot of each P_i (series in
// (u,y)) by S; S must have x-valuation >= 1.
inline std::vector<BSeries> ps_compose_x_multi(const std::vector<const BSeries*>& ps,
                                               const BSeries& s) {
    for (int q = 0; q <= s.ny; ++q)
        if (s.c[0][q] != 0) throw std::domain_error("ps_compose_x: inner series needs x-valuation >= 1");
    int kmax = 0;
    for (const BSeries* p : ps) kmax = std::max(kmax, p->nx);
    kmax = std::min(kmax, s.nx);
    std::vector<BSeries> out(ps.size(), BSeries(s.nx, s.ny));
    BSeries power = BSeries::one(s.nx, s.ny);
    Rat t;
    for (int k = 0;; ++k) {
        for (size_t i = 0; i < ps.size(); ++i) {
            const BSeries& p = *ps[i];
            if (k > p.nx) continue;
            for (int q1 = 0; q1 <= std::min(p.ny, s.ny); ++q1) {
                const Rat& coef = p.c[k][q1];
                if (coef == 0) continue;
                for (int k2 = 0; k2 <= s.nx; ++k2)
                    for (int q2 = 0; q1 + q2 <= s.ny; ++q2) {
                        if (power.c[k2][q2] == 0) continue;
                        t = coef;
                        t *= power.c[k2][q2];
                        out[i].c[k2][q1 + q2] += t;
                    }
            }
        }
        if (k == kmax) break;
        power = power * s;
    }
    return out;
}

inline BSeries ps_compose_x(const BSeries& p, const BSeries& s) {
    return ps_compose_x_multi({&p}, s)[0];
}

} // namespace planarcount
