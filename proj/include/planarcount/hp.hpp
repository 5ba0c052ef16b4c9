#pragma once

// RAII wrapper over MPFR scalars with explicit bit precision. A binary
// operation rounds into max(precision of operands), so precision chosen at
// the inputs propagates through entire computations. Rounding is to nearest.

#include "planarcount/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace planarcount {

inline mpfr_prec_t& hp_default_prec() {
    static thread_local mpfr_prec_t p = 256;
    return p;
}

struct HPPrecisionGuard {
    mpfr_prec_t saved;
    explicit HPPrecisionGuard(mpfr_prec_t bits) : saved(hp_default_prec()) {
        if (bits < MPFR_PREC_MIN) throw std::invalid_argument("precision too small");
        hp_default_prec() = bits;
    }
    ~HPPrecisionGuard() { hp_default_prec() = saved; }
};

class HP {
    struct WithPrec {
        mpfr_prec_t p;
    };
    explicit HP(WithPrec wp) { mpfr_init2(v, wp.p); }

  public:
    mpfr_t v;

    HP() {
        mpfr_init2(v, hp_default_prec());
        mpfr_set_zero(v, 1);
    }
    HP(long x) {
        mpfr_init2(v, hp_default_prec());
        mpfr_set_si(v, x, MPFR_RNDN);
    }
    explicit HP(const Rat& q) {
        mpfr_init2(v, hp_default_prec());
        mpfr_set_q(v, q.backend().data(), MPFR_RNDN);
    }
    explicit HP(const char* decimal) {
        mpfr_init2(v, hp_default_prec());
        if (mpfr_set_str(v, decimal, 10, MPFR_RNDN) != 0)
            throw std::invalid_argument(std::string("HP: bad literal ") + decimal);
    }
    HP(const HP& o) {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_set(v, o.v, MPFR_RNDN);
    }
    HP(HP&& o) noexcept {
        mpfr_init2(v, mpfr_get_prec(o.v));
        mpfr_swap(v, o.v);
    }
    HP& operator=(const HP& o) {
        if (this != &o) {
            mpfr_set_prec(v, mpfr_get_prec(o.v));
            mpfr_set(v, o.v, MPFR_RNDN);
        }
        return *this;
    }
    HP& operator=(HP&& o) noexcept {
        mpfr_swap(v, o.v);
        return *this;
    }
    ~HP() { mpfr_clear(v); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v); }
    int sign() const { return mpfr_sgn(v); }
    bool is_zero() const { return mpfr_zero_p(v); }
    double to_double() const { return mpfr_get_d(v, MPFR_RNDN); }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        if (mpfr_asprintf(&s, "%.*Rg", digits, v) < 0) throw std::runtime_error("HP::str");
        std::string r(s);
        mpfr_free_str(s);
        return r;
    }

    static HP pi() {
        HP r;
        mpfr_const_pi(r.v, MPFR_RNDN);
        return r;
    }

  private:
    static HP out(const HP& a, const HP& b) {
        return HP(WithPrec{std::max(mpfr_get_prec(a.v), mpfr_get_prec(b.v))});
    }
    static HP out(const HP& a) { return HP(WithPrec{mpfr_get_prec(a.v)}); }

  public:
    friend HP operator+(const HP& a, const HP& b) {
        HP r = out(a, b);
        mpfr_add(r.v, a.v, b.v, MPFR_RNDN);
        return r;
    }
    friend HP operator-(const HP& a, const HP& b) {
        HP r = out(a, b);
        mpfr_sub(r.v, a.v, b.v, MPFR_RNDN);
        return r;
    }
    friend HP operator*(const HP& a, const HP& b) {
        HP r = out(a, b);
        mpfr_mul(r.v, a.v, b.v, MPFR_RNDN);
        return r;
    }
    friend HP operator/(const HP& a, const HP& b) {
        HP r = out(a, b);
        mpfr_div(r.v, a.v, b.v, MPFR_RNDN);
        return r;
    }
    HP operator-() const {
        HP r = out(*this);
        mpfr_neg(r.v, v, MPFR_RNDN);
        return r;
    }
    HP& operator+=(const HP& o) { return *this = *this + o; }
    HP& operator-=(const HP& o) { return *this = *this - o; }
    HP& operator*=(const HP& o) { return *this = *this * o; }
    HP& operator/=(const HP& o) { return *this = *this / o; }

    friend bool operator<(const HP& a, const HP& b) { return mpfr_cmp(a.v, b.v) < 0; }
    friend bool operator>(const HP& a, const HP& b) { return mpfr_cmp(a.v, b.v) > 0; }
    friend bool operator<=(const HP& a, const HP& b) { return mpfr_cmp(a.v, b.v) <= 0; }
    friend bool operator>=(const HP& a, const HP& b) { return mpfr_cmp(a.v, b.v) >= 0; }
    friend bool operator==(const HP& a, const HP& b) { return mpfr_cmp(a.v, b.v) == 0; }
    friend bool operator!=(const HP& a, const HP& b) { return mpfr_cmp(a.v, b.v) != 0; }

    friend HP sqrt(const HP& a) {
        HP r = out(a);
        mpfr_sqrt(r.v, a.v, MPFR_RNDN);
        return r;
    }
    friend HP log(const HP& a) {
        HP r = out(a);
        mpfr_log(r.v, a.v, MPFR_RNDN);
        return r;
    }
    friend HP exp(const HP& a) {
        HP r = out(a);
        mpfr_exp(r.v, a.v, MPFR_RNDN);
        return r;
    }
    friend HP abs(const HP& a) {
        HP r = out(a);
        mpfr_abs(r.v, a.v, MPFR_RNDN);
        return r;
    }
    friend HP pow(const HP& a, const HP& b) {
        HP r = out(a, b);
        mpfr_pow(r.v, a.v, b.v, MPFR_RNDN);
        return r;
    }
    friend HP pow(const HP& a, long e) {
        HP r = out(a);
        mpfr_pow_si(r.v, a.v, e, MPFR_RNDN);
        return r;
    }
    friend HP ldexp2(const HP& a, long e) {  // a * 2^e, exact
        HP r = out(a);
        mpfr_mul_2si(r.v, a.v, e, MPFR_RNDN);
        return r;
    }
    friend HP floor(const HP& a) {
        HP r = out(a);
        mpfr_floor(r.v, a.v);
        return r;
    }
    friend long to_long(const HP& a) { return mpfr_get_si(a.v, MPFR_RNDZ); }

    // Mixed integer arithmetic through the exact _si entry points, keeping
    // the HP operand's precision.
    friend HP operator+(const HP& a, long b) {
        HP r = out(a);
        mpfr_add_si(r.v, a.v, b, MPFR_RNDN);
        return r;
    }
    friend HP operator+(long a, const HP& b) { return b + a; }
    friend HP operator-(const HP& a, long b) {
        HP r = out(a);
        mpfr_sub_si(r.v, a.v, b, MPFR_RNDN);
        return r;
    }
    friend HP operator-(long a, const HP& b) {
        HP r = out(b);
        mpfr_si_sub(r.v, a, b.v, MPFR_RNDN);
        return r;
    }
    friend HP operator*(const HP& a, long b) {
        HP r = out(a);
        mpfr_mul_si(r.v, a.v, b, MPFR_RNDN);
        return r;
    }
    friend HP operator*(long a, const HP& b) { return b * a; }
    friend HP operator/(const HP& a, long b) {
        HP r = out(a);
        mpfr_div_si(r.v, a.v, b, MPFR_RNDN);
        return r;
    }
    friend HP operator/(long a, const HP& b) {
        HP r = out(b);
        mpfr_si_div(r.v, a, b.v, MPFR_RNDN);
        return r;
    }
};

} // namespace planarcount
