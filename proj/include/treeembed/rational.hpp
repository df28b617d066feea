#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/rational.hpp>

#include "treeembed/errors.hpp"

namespace treeembed {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Parses "3", "-2/7" or a finite decimal such as "0.2" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw InputError("empty rational");
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::int64_t num = std::stoll(text.substr(0, slash));
      std::int64_t den = std::stoll(text.substr(slash + 1));
      if (den == 0) throw InputError("zero denominator in '" + text + "'");
      return Rational(num, den);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(std::stoll(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::size_t frac_len = text.size() - dot - 1;
    if (frac_len > 15) throw InputError("too many decimals in '" + text + "'");
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    std::size_t used = 0;
    std::int64_t num = std::stoll(digits, &used);
    if (used != digits.size()) throw InputError("bad rational '" + text + "'");
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw InputError("bad rational '" + text + "'");
  }
}

/// Smallest integer k with k >= x, for exact rationals.
inline std::int64_t ceil_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
  return q;
}

inline std::int64_t floor_of(const Rational& r) {
  std::int64_t q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

/// Tolerance used when freezing irrational thresholds (alpha powers) into integers.
inline constexpr double kThresholdTolerance = 1e-9;

/// Smallest integer >= x, treating values within tolerance of an integer as that integer.
inline std::int64_t frozen_ceil(double x) {
  return static_cast<std::int64_t>(std::ceil(x - kThresholdTolerance));
}

/// Largest integer <= x, with the same tolerance.
inline std::int64_t frozen_floor(double x) {
  return static_cast<std::int64_t>(std::floor(x + kThresholdTolerance));
}

}  // namespace treeembed
