#pragma once

// Truncated univariate formal power series over Rat.
// A USeries of order n stores coefficients c[0..n]; all ring operations
// are exact and truncate to the minimum order of their operands, so a
// series is always the image of the true object in Q[[x]]/(x^{n+1}).

#include "planarcount/rational.hpp"

#include <stdexcept>
#include <vector>

namespace planarcount {

struct USeries {
    int n = 0;           // truncation order, inclusive
    std::vector<Rat> c;  // size n+1

    USeries() : c(1) {}
    explicit USeries(int order) : n(order), c(order + 1) {
        if (order < 0) throw std::invalid_argument("USeries: negative order");
    }

    static USeries monomial(int order, int k, const Rat& a = Rat(1)) {
        USeries s(order);
        if (k <= order) s.c[k] = a;
        return s;
    }

    const Rat& at(int k) const {
        static const Rat zero{};
        return k <= n ? c[k] : zero;
    }

    bool is_zero() const {
        for (const Rat& a : c)
            if (a != 0) return false;
        return true;
    }

    USeries truncated(int m) const {
        USeries r(m);
        for (int k = 0; k <= m && k <= n; ++k) r.c[k] = c[k];
        return r;
    }

    USeries& operator+=(const USeries& o) {
        if (o.n < n) { c.resize(o.n + 1); n = o.n; }
        for (int k = 0; k <= n; ++k) c[k] += o.c[k];
        return *this;
    }
    USeries& operator-=(const USeries& o) {
        if (o.n < n) { c.resize(o.n + 1); n = o.n; }
        for (int k = 0; k <= n; ++k) c[k] -= o.c[k];
        return *this;
    }
    friend USeries operator+(USeries a, const USeries& b) { return a += b; }
    friend USeries operator-(USeries a, const USeries& b) { return a -= b; }

    USeries operator-() const {
        USeries r = *this;
        for (Rat& a : r.c) a = -a;
        return r;
    }

    friend USeries operator*(const USeries& a, const USeries& b) {
        USeries r(std::min(a.n, b.n));
        Rat t;
        for (int i = 0; i <= r.n; ++i) {
            if (a.c[i] == 0) continue;
            for (int j = 0; i + j <= r.n; ++j) {
                if (b.c[j] == 0) continue;
                t = a.c[i];
                t *= b.c[j];
                r.c[i + j] += t;
            }
        }
        return r;
    }

    friend USeries operator*(const Rat& s, USeries a) {
        for (Rat& x : a.c) x *= s;
        return a;
    }

    // Long division; divisor must be a unit (nonzero constant term).
    friend USeries operator/(const USeries& a, const USeries& b) {
        if (b.c[0] == 0) throw std::domain_error("USeries division by non-unit");
        USeries q(std::min(a.n, b.n));
        Rat t;
        for (int k = 0; k <= q.n; ++k) {
            Rat acc = a.at(k);
            for (int j = 0; j < k; ++j) {
                if (q.c[j] == 0) continue;
                t = q.c[j];
                t *= b.at(k - j);
                acc -= t;
            }
            q.c[k] = acc / b.c[0];
        }
        return q;
    }

    bool operator==(const USeries& o) const { return n == o.n && c == o.c; }

    USeries derive() const {
        if (n == 0) return USeries(0);
        USeries r(n - 1);
        for (int k = 1; k <= n; ++k) r.c[k - 1] = Rat(k) * c[k];
        return r;
    }

    // Antiderivative with zero constant term; order rises by one.
    USeries integrate() const {
        USeries r(n + 1);
        for (int k = 0; k <= n; ++k) r.c[k + 1] = c[k] / Rat(k + 1);
        return r;
    }
};

// exp of a series with zero constant term: E' = S'E termwise.
inline USeries ps_exp(const USeries& s) {
    if (s.c[0] != 0) throw std::domain_error("ps_exp: nonzero constant term");
    USeries e(s.n);
    e.c[0] = 1;
    Rat t;
    for (int k = 1; k <= s.n; ++k) {
        Rat acc;
        for (int j = 1; j <= k; ++j) {
            if (s.c[j] == 0) continue;
            t = Rat(j) * s.c[j];
            t *= e.c[k - j];
            acc += t;
        }
        e.c[k] = acc / Rat(k);
    }
    return e;
}

// log of a series with unit constant term: L_k = a_k - (1/k) sum j L_j a_{k-j}.
inline USeries ps_log(const USeries& a) {
    if (a.c[0] != 1) throw std::domain_error("ps_log: constant term must be 1");
    USeries l(a.n);
    Rat t;
    for (int k = 1; k <= a.n; ++k) {
        Rat acc = a.c[k] * Rat(k);
        for (int j = 1; j < k; ++j) {
            if (l.c[j] == 0) continue;
            t = Rat(j) * l.c[j];
            t *= a.c[k - j];
            acc -= t;
        }
        l.c[k] = acc / Rat(k);
    }
    return l;
}

// outer(inner), inner constant term zero; Horner from the top coefficient.
inline USeries ps_compose(const USeries& outer, const USeries& inner) {
    if (inner.c[0] != 0) throw std::domain_error("ps_compose: inner constant term must be 0");
    USeries r(inner.n);
    for (int k = outer.n; k >= 0; --k) {
        r = r * inner;
        r.c[0] += outer.c[k];
    }
    return r;
}

} // namespace planarcount
