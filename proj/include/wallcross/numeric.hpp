#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <sstream>
#include <string>

namespace wallcross {

/// Exact rational coefficients; every identity in this library is checked
/// without floating point.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// A truncation threshold in Novikov-valuation units. Empty means "no
/// truncation" (work with exact Laurent polynomials).
using Cutoff = std::optional<Rational>;

inline constexpr std::nullopt_t no_cutoff = std::nullopt;

/// Valuation of an element: a rational, or +infinity for zero elements
/// (empty optional).
using Valuation = std::optional<Rational>;

inline bool val_less(const Valuation& a, const Valuation& b) {
  if (!a) return false;         // +inf < x never
  if (!b) return true;          // finite < +inf
  return *a < *b;
}

inline Valuation val_min(const Valuation& a, const Valuation& b) {
  return val_less(a, b) ? a : b;
}

/// True when a term of valuation v survives truncation at `cutoff`
/// (terms with v >= cutoff are dropped).
inline bool below_cutoff(const Rational& v, const Cutoff& cutoff) {
  return !cutoff || v < *cutoff;
}

inline std::string rational_to_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

}  // namespace wallcross
