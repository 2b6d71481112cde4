#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <utility>

namespace csst {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// 2^k for any integer k (k may be negative).
Rational pow2(long k);

Rational rational_pow(const Rational& base, unsigned exp);

/// True if r = a/2^k for integers a, k >= 0.
bool is_dyadic(const Rational& r);

/// Serialization used across all JSON artifacts: integers as "a", dyadic
/// non-integers as "a/2^k", anything else as "p/q".
std::string format_rational(const Rational& r);

/// Accepts "a", "p/q", "a/2^k" and plain decimal strings with a finite
/// expansion ("0.125", "-1.1").
Rational parse_rational(const std::string& text);

double to_double(const Rational& r);

/// Exact finite decimal expansion; only valid for dyadic rationals.
std::string dyadic_decimal(const Rational& r);

/// lb <= sqrt(r) <= ub with lb, ub rational and ub - lb small (via integer
/// square roots of scaled numerator/denominator).
std::pair<Rational, Rational> sqrt_bounds(const Rational& r);

}  // namespace csst
