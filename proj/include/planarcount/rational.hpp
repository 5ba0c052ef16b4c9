#pragma once

// Exact arithmetic base types. Rat is always in canonical lowest terms
// (mpq invariant); equality is exact.

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace planarcount {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;

inline Int factorial(unsigned n) {
    Int r;
    mpz_fac_ui(r.backend().data(), n);
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    Int r;
    mpz_bin_uiui(r.backend().data(), n, k);
    return r;
}

inline Int numerator_int(const Rat& q) { return numerator(q); }
inline Int denominator_int(const Rat& q) { return denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

// n! * q, required to be an integer (EGF coefficient -> labelled count).
inline Int egf_count(const Rat& q, unsigned n) {
    Rat scaled = q * Rat(factorial(n));
    if (!is_integer(scaled))
        throw std::domain_error("egf_count: " + scaled.str() + " not integral at n=" + std::to_string(n));
    return numerator(scaled);
}

} // namespace planarcount
