#pragma once

// Exact rationals backed by GMP. Every identity on structure constants,
// kernels and stationary weights is checked in this type.

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace circlewalk {

using Rational = mpq_class;

inline Rational make_rational(std::int64_t num, std::int64_t den) {
    Rational r(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    r.canonicalize();
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace circlewalk
