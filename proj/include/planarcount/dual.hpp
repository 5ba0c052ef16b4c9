#pragma once

// Second-order dual numbers over HP: value, first and second derivative with
// respect to one parameter. d2 carries the plain second derivative (not
// halved), so the chain rules below match d^2/ds^2 directly.

#include "planarcount/hp.hpp"

namespace planarcount {

struct HPDual {
    HP v, d1, d2;

    HPDual() = default;
    HPDual(HP value) : v(std::move(value)) {}
    HPDual(long value) : v(value) {}
    HPDual(HP value, HP dv, HP ddv) : v(std::move(value)), d1(std::move(dv)), d2(std::move(ddv)) {}

    static HPDual variable(HP x) { return {std::move(x), HP(1), HP(0L)}; }

    friend HPDual operator+(const HPDual& a, const HPDual& b) {
        return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2};
    }
    friend HPDual operator-(const HPDual& a, const HPDual& b) {
        return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2};
    }
    HPDual operator-() const { return {-v, -d1, -d2}; }
    friend HPDual operator*(const HPDual& a, const HPDual& b) {
        return {a.v * b.v, a.d1 * b.v + a.v * b.d1,
                a.d2 * b.v + 2 * (a.d1 * b.d1) + a.v * b.d2};
    }
    friend HPDual operator/(const HPDual& a, const HPDual& b) {
        HP qv = a.v / b.v;
        HP q1 = (a.d1 - qv * b.d1) / b.v;
        HP q2 = (a.d2 - 2 * (q1 * b.d1) - qv * b.d2) / b.v;
        return {std::move(qv), std::move(q1), std::move(q2)};
    }

    friend HPDual operator+(const HPDual& a, long b) { return {a.v + b, a.d1, a.d2}; }
    friend HPDual operator+(long a, const HPDual& b) { return b + a; }
    friend HPDual operator-(const HPDual& a, long b) { return {a.v - b, a.d1, a.d2}; }
    friend HPDual operator-(long a, const HPDual& b) { return {a - b.v, -b.d1, -b.d2}; }
    friend HPDual operator*(const HPDual& a, long b) { return {a.v * b, a.d1 * b, a.d2 * b}; }
    friend HPDual operator*(long a, const HPDual& b) { return b * a; }
    friend HPDual operator/(const HPDual& a, long b) { return {a.v / b, a.d1 / b, a.d2 / b}; }
    friend HPDual operator/(long a, const HPDual& b) { return HPDual(HP(a)) / b; }

    friend HPDual sqrt(const HPDual& u) {
        HP s = sqrt(u.v);
        HP s1 = u.d1 / (2 * s);
        HP s2 = (u.d2 - 2 * (s1 * s1)) / (2 * s);
        return {std::move(s), std::move(s1), std::move(s2)};
    }
    friend HPDual log(const HPDual& u) {
        HP l1 = u.d1 / u.v;
        return {log(u.v), l1, u.d2 / u.v - l1 * l1};
    }
    friend HPDual exp(const HPDual& u) {
        HP e = exp(u.v);
        return {e, e * u.d1, e * (u.d1 * u.d1 + u.d2)};
    }
    friend HPDual pow(const HPDual& u, long e) {
        // d/ds u^e = e u^{e-1} u', second derivative by the product rule
        HP pm2 = pow(u.v, e - 2);
        HP pm1 = pm2 * u.v;
        return {pm1 * u.v, HP(e) * pm1 * u.d1,
                HP(e) * (HP(e - 1) * pm2 * (u.d1 * u.d1) + pm1 * u.d2)};
    }
};

} // namespace planarcount
