#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zonopref {

using Rational = mpq_class;
using Vec = std::vector<Rational>;

// Accepts integers ("-3"), fractions ("2/6", canonicalized) and decimals with
// optional exponent ("0.25", "1.5e-3"). Throws Error(Parse) otherwise.
Rational parse_rational(std::string_view text);

// Exact decimal when the reduced denominator has no prime factor other than
// 2 and 5, otherwise "num/den".
std::string format_rational(const Rational& value);

// The shortest decimal that round-trips the double, read back exactly.
// 0.2 becomes 1/5, not the binary expansion of 0.2.
Rational rational_from_double(double value);

inline double to_double(const Rational& value) { return value.get_d(); }

// Rational brackets of sqrt(value) with 2^-bits relative resolution.
Rational sqrt_lower(const Rational& value, unsigned bits);
Rational sqrt_upper(const Rational& value, unsigned bits);

// Decides sqrt(lhs_squared) <= sum_i coeff_i * sqrt(radicand_i) for
// nonnegative coefficients and radicands. Exact when at most one distinct
// irrational radicand is involved; otherwise decided by interval refinement.
bool sqrt_le_sqrt_sum(const Rational& lhs_squared,
                      const std::vector<std::pair<Rational, Rational>>& terms);

Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& s);
Vec negate(const Vec& a);
Rational squared_norm(const Vec& a);
bool is_zero(const Vec& a);

}  // namespace zonopref
