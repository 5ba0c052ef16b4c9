#pragma once

// Analytic data of the singular locus, parametrized by t in (0,1). Y(t) maps
// (0,1) onto y in (0,infinity); xi(t) is the dominant singularity R(y) of the
// network series at y = Y(t); the B_i, D_i, U_i are the coefficients of the
// singular expansions of B, D, U(x,D) at R(y). Everything is a template so
// the same formulas run on HP scalars and on HPDual jets.

#include "planarcount/dual.hpp"
#include "planarcount/hp.hpp"

#include <initializer_list>

namespace planarcount::params {

template <class T>
T horner(const T& t, std::initializer_list<long> descending) {
    auto it = descending.begin();
    T acc(*it++);
    for (; it != descending.end(); ++it) acc = acc * t + T(*it);
    return acc;
}

template <class T> T poly_q(const T& t) { return horner(t, {17, 237, 1155, 2527, 1808, 400}); }
template <class T> T poly_alpha(const T& t) { return horner(t, {-5, 6, 135, 664, 592, 144}); }
template <class T> T poly_beta(const T& t) { return 3 * (t * (1 + t) * poly_q(t)); }
template <class T> T poly_bigt(const T& t) {
    return horner(t, {691, 10112, 98693, 719346, 3723625, 13180580, 31133003, 47691938,
                      47354348, 30156200, 11835336, 2596736, 243072});
}
template <class T> T poly_p(const T& t) {
    return horner(t, {739, 11495, 76679, 264775, 466546, 303862, 57952, -2400});
}

template <class T>
T xi_of_t(const T& t) {
    return (1 + 3 * t) * pow(1 - t, 3) / (16 * pow(t, 3));
}

template <class T>
T y_of_t(const T& t) {
    T h = horner(t, {5, 36, 18});
    T e = exp(-(t * t * (1 - t) * h) / (2 * ((3 + t) * (1 + 2 * t) * pow(1 + 3 * t, 2))));
    return (1 + 2 * t) / ((1 + 3 * t) * (1 - t)) * e - 1;
}

template <class T>
T d0_of_t(const T& t) {
    return 3 * (t * t) / ((1 - t) * (1 + 3 * t));
}

template <class T>
T d2_of_t(const T& t) {
    T num = 48 * (t * t * (1 + t) * pow(1 + 2 * t, 2) * horner(t, {1, 6, 18}));
    return -num / ((1 + 3 * t) * poly_beta(t));
}

template <class T>
T d3_of_t(const T& t) {
    T a = poly_alpha(t), b = poly_beta(t);
    T num = 384 * (pow(t, 3) * pow(1 + t, 2) * pow(1 + 2 * t, 2) * pow(3 + t, 2));
    return num * (a * sqrt(a)) / (b * b * sqrt(b));
}

template <class T>
T b0_of_t(const T& t) {
    T r = pow(3 * t - 1, 2) * pow(1 + t, 6) * log(1 + t) / (512 * pow(t, 6));
    r = r - horner(t, {3, -16, 6, 0, -1}) * log(1 + 3 * t) / (32 * pow(t, 3));
    r = r - pow(1 + 3 * t, 2) * pow(1 - t, 6) * log(1 + 2 * t) / (1024 * pow(t, 6));
    r = r + log(3 + t) / 4 - log(t) / 2 - 3 * log(T(16)) / 8;
    T p = horner(t, {217, 920, 972, 1436, 205, -172, 6});
    return r - p * pow(1 - t, 2) / (2048 * (pow(t, 4) * (1 + 3 * t) * (3 + t)));
}

template <class T>
T b2_of_t(const T& t) {
    T r = pow(1 - t, 3) * (3 * t - 1) * (1 + 3 * t) * pow(1 + t, 3) * log(1 + t) /
          (256 * pow(t, 6));
    r = r - pow(1 - t, 3) * (1 + 3 * t) * log(1 + 3 * t) / (32 * pow(t, 3));
    r = r + pow(1 + 3 * t, 2) * pow(1 - t, 6) * log(1 + 2 * t) / (512 * pow(t, 6));
    T p = horner(t, {185, 698, -217, -160, 6});
    return r + pow(1 - t, 4) * p / (1024 * (pow(t, 4) * (1 + 3 * t) * (3 + t)));
}

template <class T>
T b4_of_t(const T& t) {
    T r = log((1 + t) / sqrt(1 + 2 * t)) * pow(1 - t, 6) * pow(1 + 3 * t, 2) /
          (512 * pow(t, 6));
    return r + poly_p(t) * pow(1 - t, 5) / (2048 * (pow(t, 4) * (3 + t) * poly_q(t)));
}

template <class T>
T b5_of_t(const T& t) {
    T r = poly_alpha(t) / (t * poly_q(t));
    return -(sqrt(T(3)) / 90) * pow(1 - t, 6) / ((1 + t) * sqrt(1 + t)) * (r * r * sqrt(r));
}

// rho(Y(t)) in closed form; must agree with R exp(B2/R).
template <class T>
T rho_of_t(const T& t) {
    T p = horner(t, {185, 698, -217, -160, 6});
    T a = log(1 + t) * (3 * t - 1) * pow(1 + t, 3) / (16 * pow(t, 3)) +
          log(1 + 2 * t) * (1 + 3 * t) * pow(1 - t, 3) / (32 * pow(t, 3)) +
          (1 - t) * p / (64 * (t * pow(1 + 3 * t, 2) * (3 + t)));
    return sqrt(1 + 3 * t) * pow(1 - t, 3) / pow(t, 3) * exp(a) / 16;
}

template <class T>
T u0_of_t(const T& t) {
    return 1 / (3 * t);
}

template <class T>
T u1_of_t(const T& t) {
    return sqrt(4 * (pow(1 + 3 * t, 2) * poly_alpha(t)) /
                (27 * (pow(t, 3) * (1 + t) * poly_q(t))));
}

template <class T>
T u2_of_t(const T& t) {
    return 2 * ((1 + 3 * t) * poly_bigt(t)) / (27 * (t * t * pow(1 + t, 2) * pow(poly_q(t), 2)));
}

} // namespace planarcount::params
