#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "cforge/errors.hpp"

namespace cforge {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator). mpq_class maintains canonical form through arithmetic; only
// raw num/den construction needs an explicit canonicalize.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    CFORGE_REQUIRE(den != 0, "rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    CFORGE_REQUIRE(den != 0, "rational with zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

// "num/den" string form used by every JSON surface.
inline std::string rational_to_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    mpq_class q;
    if (slash == std::string::npos) {
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw input_error("bad rational literal: " + s);
    } else {
        if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
            throw input_error("bad rational literal: " + s);
    }
    CFORGE_REQUIRE(q.get_den() != 0, "rational with zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline int sign_of(const Rational& q) { return sgn(q); }

// Exact square root when q is a perfect square of a rational; nullopt otherwise.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    const Integer num = q.get_num(), den = q.get_den();
    if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rational(rn, rd);
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace cforge
