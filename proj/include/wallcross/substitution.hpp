#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/laurent.hpp"

namespace wallcross {

namespace detail {

/// Integer determinant by Laplace expansion (n is 4 here, so this is cheap).
inline long long int_determinant(const std::vector<std::vector<int>>& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<int>> minor(n - 1, std::vector<int>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    long long cofactor = int_determinant(minor);
    det += (j % 2 == 0 ? 1 : -1) * static_cast<long long>(m[0][j]) * cofactor;
  }
  return det;
}

}  // namespace detail

/// Admissible coordinate substitution z_i -> coeff_i * z^{row_i(M)} * unit_i,
/// where M is unimodular, coeff_i is a single parameter-monomial scalar, and
/// unit_i = 1 + (terms of strictly positive valuation). Wall-crossing
/// transformations have M = id and coeff = 1; the compact-example symmetry
/// z1 -> q1 z1^-1 uses the monomial and coefficient parts.
class Substitution {
 public:
  Substitution(std::size_t n, ParameterTablePtr table, std::vector<std::vector<int>> matrix,
               std::vector<NovikovScalar> coeffs, std::vector<LaurentPoly> units)
      : n_(n),
        table_(std::move(table)),
        matrix_(std::move(matrix)),
        coeffs_(std::move(coeffs)),
        units_(std::move(units)) {
    validate();
  }

  static Substitution identity(std::size_t n, ParameterTablePtr table) {
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    std::vector<NovikovScalar> coeffs(n, NovikovScalar::one(table));
    std::vector<LaurentPoly> units(n, LaurentPoly::one(n, table));
    return Substitution(n, table, std::move(m), std::move(coeffs), std::move(units));
  }

  /// A wall-crossing style substitution z_i -> z_i * unit for one coordinate.
  static Substitution unit_rescale(std::size_t n, ParameterTablePtr table, std::size_t i,
                                   const LaurentPoly& unit) {
    Substitution s = identity(n, table);
    s.units_[i - 1] = unit;
    s.validate();
    return s;
  }

  /// The image of z_i expanded as a Laurent polynomial.
  LaurentPoly image(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("substitution: coordinate index");
    CoordExponents e(matrix_[i - 1].begin(), matrix_[i - 1].end());
    return LaurentPoly::monomial(n_, std::move(e), coeffs_[i - 1]) * units_[i - 1];
  }

  /// Recovers an admissible substitution for one coordinate from its image
  /// polynomial: factors f as coeff * z^m * (1 + positive-valuation part).
  /// The unique minimal-valuation term supplies coeff and z^m.
  static Substitution from_images(std::size_t n, ParameterTablePtr table,
                                  const std::vector<LaurentPoly>& images) {
    if (images.size() != n) throw std::invalid_argument("substitution: need one image per coordinate");
    std::vector<std::vector<int>> m(n);
    std::vector<NovikovScalar> coeffs;
    std::vector<LaurentPoly> units;
    for (std::size_t i = 0; i < n; ++i) {
      const LaurentPoly& f = images[i];
      Valuation lead = f.valuation();
      if (!lead) throw std::invalid_argument("substitution: zero coordinate image");
      // Locate the unique minimal-valuation monomial.
      const CoordExponents* lead_e = nullptr;
      NovikovScalar lead_c(table);
      int found = 0;
      for (const auto& [e, c] : f.terms()) {
        NovikovScalar lp = c.leading_part();
        if (lp.valuation() == lead) {
          found += static_cast<int>(lp.terms().size());
          lead_e = &e;
          lead_c = lp;
        }
      }
      if (found != 1)
        throw std::invalid_argument("substitution: leading term of coordinate image not unique");
      m[i] = *lead_e;
      coeffs.push_back(lead_c);
      units.push_back(f.divide_exact_monomial(*lead_e, lead_c));
    }
    return Substitution(n, table, std::move(m), std::move(coeffs), std::move(units));
  }

  std::size_t coords() const { return n_; }
  const ParameterTablePtr& table() const { return table_; }
  const std::vector<std::vector<int>>& matrix() const { return matrix_; }
  const NovikovScalar& coeff(std::size_t i) const { return coeffs_.at(i - 1); }
  const LaurentPoly& unit(std::size_t i) const { return units_.at(i - 1); }

  bool is_identity() const {
    for (std::size_t i = 1; i <= n_; ++i) {
      if (!coeffs_[i - 1].is_one() || !units_[i - 1].is_one()) return false;
      for (std::size_t j = 0; j < n_; ++j)
        if (matrix_[i - 1][j] != (i - 1 == j ? 1 : 0)) return false;
    }
    return true;
  }

  bool operator==(const Substitution& o) const {
    if (n_ != o.n_ || matrix_ != o.matrix_) return false;
    for (std::size_t i = 0; i < n_; ++i)
      if (coeffs_[i] != o.coeffs_[i] || units_[i] != o.units_[i]) return false;
    return true;
  }
  bool operator!=(const Substitution& o) const { return !(*this == o); }

  /// Substitutes into f. Negative powers of nontrivial unit parts expand as
  /// geometric series truncated at the cutoff; with no cutoff such an
  /// expansion is an error (exact pullback impossible).
  LaurentPoly pullback(const LaurentPoly& f, const Cutoff& cutoff = no_cutoff) const {
    if (f.coords() != n_) throw std::invalid_argument("pullback: coordinate count mismatch");
    require_same_table(table_, f.table());
    LaurentPoly result(n_, table_);
    std::map<std::pair<std::size_t, int>, LaurentPoly> power_cache;
    for (const auto& [v, s] : f.terms()) {
      // Scalar part: s * prod coeff_i^{v_i} (exact division for negatives).
      NovikovScalar scalar = s;
      CoordExponents mexp(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        int vi = v[i];
        if (vi == 0) continue;
        for (std::size_t j = 0; j < n_; ++j) mexp[j] += vi * matrix_[i][j];
        if (!coeffs_[i].is_one()) {
          if (vi > 0)
            scalar *= coeffs_[i].pow(vi);
          else
            for (int k = 0; k < -vi; ++k) scalar = scalar.divide_exact(coeffs_[i]);
        }
      }
      LaurentPoly term = LaurentPoly::monomial(n_, std::move(mexp), scalar);
      for (std::size_t i = 0; i < n_; ++i) {
        int vi = v[i];
        if (vi == 0 || units_[i].is_one()) continue;
        auto key = std::make_pair(i, vi);
        auto it = power_cache.find(key);
        if (it == power_cache.end())
          it = power_cache.emplace(key, unit_power(units_[i], vi, cutoff)).first;
        term = (term * it->second).truncate(cutoff);
      }
      result += term;
    }
    return result.truncate(cutoff);
  }

  /// Composition in the pullback order: applying the result to f equals
  /// pullback(pullback(f, *this), tau). As point maps this is
  /// (*this) o tau: tau is applied first.
  Substitution compose_with(const Substitution& tau, const Cutoff& cutoff = no_cutoff) const {
    if (n_ != tau.n_) throw std::invalid_argument("compose: coordinate count mismatch");
    require_same_table(table_, tau.table_);
    std::vector<LaurentPoly> images;
    images.reserve(n_);
    for (std::size_t i = 1; i <= n_; ++i) images.push_back(tau.pullback(image(i), cutoff));
    return from_images(n_, table_, images);
  }

  /// Deletes every term divisible by the parameter monomial from the units.
  Substitution kill_divisible(const ParamExponents& monomial) const {
    Substitution s = *this;
    for (std::size_t i = 0; i < n_; ++i) {
      if (s.coeffs_[i].kill_divisible(monomial).is_zero())
        throw std::domain_error("substitution: killing monomial would erase a coordinate image");
      s.units_[i] = s.units_[i].kill_divisible(monomial);
    }
    s.validate();
    return s;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 1; i <= n_; ++i) {
      if (!out.empty()) out += ", ";
      out += "z" + std::to_string(i) + " -> " + image(i).to_string();
    }
    return out;
  }

 private:
  void validate() const {
    if (matrix_.size() != n_ || coeffs_.size() != n_ || units_.size() != n_)
      throw std::invalid_argument("substitution: field size mismatch");
    for (const auto& row : matrix_)
      if (row.size() != n_) throw std::invalid_argument("substitution: matrix shape");
    long long det = detail::int_determinant(matrix_);
    if (det != 1 && det != -1)
      throw std::invalid_argument("substitution: monomial part must be unimodular");
    for (std::size_t i = 0; i < n_; ++i) {
      if (coeffs_[i].is_zero() || !coeffs_[i].is_monomial())
        throw std::invalid_argument("substitution: coefficient must be a nonzero monomial scalar");
      LaurentPoly u = units_[i] - LaurentPoly::one(n_, table_);
      for (const auto& [e, c] : u.terms()) {
        Valuation v = c.valuation();
        if (v && *v <= 0)
          throw std::invalid_argument(
              "substitution: unit part must be 1 + terms of strictly positive valuation");
      }
    }
  }

  /// unit^k, expanding (1+u)^{-m} = sum_j binom(-m,j) u^j for negative k.
  LaurentPoly unit_power(const LaurentPoly& unit, int k, const Cutoff& cutoff) const {
    if (k >= 0) return unit.pow(k, cutoff);
    if (!cutoff)
      throw std::domain_error(
          "pullback: exact result requested but a geometric series expansion is required");
    LaurentPoly u = unit - LaurentPoly::one(n_, table_);
    Valuation step = u.valuation();
    if (!step) return LaurentPoly::one(n_, table_);  // unit == 1
    int m = -k;
    LaurentPoly result = LaurentPoly::one(n_, table_);
    LaurentPoly upow = LaurentPoly::one(n_, table_);
    Rational binom = 1;  // binom(-m, j) = (-1)^j binom(m+j-1, j), built incrementally
    for (int j = 1; Rational(j) * *step < *cutoff; ++j) {
      upow = (upow * u).truncate(cutoff);
      if (upow.is_zero()) break;
      binom = binom * Rational(-(m + j - 1)) / Rational(j);
      result += upow * binom;
    }
    return result.truncate(cutoff);
  }

  std::size_t n_;
  ParameterTablePtr table_;
  std::vector<std::vector<int>> matrix_;  // row i = exponent vector of image of z_{i+1}
  std::vector<NovikovScalar> coeffs_;
  std::vector<LaurentPoly> units_;
};

/// Free-function spellings matching the operation names used elsewhere.
inline LaurentPoly pullback(const LaurentPoly& f, const Substitution& s,
                            const Cutoff& cutoff = no_cutoff) {
  return s.pullback(f, cutoff);
}

inline Substitution compose(const Substitution& sigma, const Substitution& tau,
                            const Cutoff& cutoff = no_cutoff) {
  return sigma.compose_with(tau, cutoff);
}

}  // namespace wallcross
