#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "arum/errors.hpp"

namespace arum {

// Exact arithmetic backend. Every double is a rational, so conversions from
// double are lossless; conversions to double round once.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Arithmetic { Rational, Float };

inline Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgumentError("non-finite value");
  return Rational(v);
}

// Parses "3", "-0.25", "1e-3", "2/7". Exact; throws ParseError on malformed input.
Rational rational_from_string(std::string_view s);

// Canonical text form: integers as "n", terminating decimals as written
// ("0.6", "-1.25"), everything else as "n/d".
std::string rational_to_string(const Rational& r);

double rational_to_double(const Rational& r);

// Shortest round-trip decimal form, "-0" normalized to "0".
std::string double_to_string(double v);

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool exact = false;
  static double from_int(long v) { return static_cast<double>(v); }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static double parse(std::string_view s) { return rational_to_double(rational_from_string(s)); }
  static std::string str(double v) { return double_to_string(v); }
  // |sum - 1| tolerance for simplex/weight validation.
  static double one_tolerance() { return 1e-12; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from_int(long v) { return Rational(v); }
  static Rational from_double(double v) { return rational_from_double(v); }
  static double to_double(const Rational& v) { return rational_to_double(v); }
  static Rational parse(std::string_view s) { return rational_from_string(s); }
  static std::string str(const Rational& v) { return rational_to_string(v); }
  static Rational one_tolerance() { return Rational(0); }
};

template <class T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

}  // namespace arum
