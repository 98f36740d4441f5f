#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/novikov.hpp"

namespace wallcross {

/// Exponent vector of a coordinate monomial z1^a1 ... zn^an; entries may be
/// negative.
using CoordExponents = std::vector<int>;

/// Sparse Laurent polynomial in coordinates z1..zn with NovikovScalar
/// coefficients. Superpotentials, wall-crossing units and all z^beta weights
/// live here.
class LaurentPoly {
 public:
  using TermMap = std::map<CoordExponents, NovikovScalar>;

  LaurentPoly(std::size_t n, ParameterTablePtr table)
      : n_(n), table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("laurent poly: null table");
  }

  static LaurentPoly zero(std::size_t n, ParameterTablePtr table) {
    return LaurentPoly(n, std::move(table));
  }

  static LaurentPoly from_scalar(std::size_t n, const NovikovScalar& s) {
    LaurentPoly p(n, s.table());
    p.add_term(CoordExponents(n, 0), s);
    return p;
  }

  static LaurentPoly constant(std::size_t n, ParameterTablePtr table, const Rational& c) {
    return from_scalar(n, NovikovScalar::constant(std::move(table), c));
  }

  static LaurentPoly one(std::size_t n, ParameterTablePtr table) {
    return constant(n, std::move(table), 1);
  }

  /// z_i as a polynomial (1-based coordinate index).
  static LaurentPoly coordinate(std::size_t n, ParameterTablePtr table, std::size_t i,
                                int power = 1) {
    if (i < 1 || i > n) throw std::out_of_range("laurent poly: coordinate index");
    CoordExponents e(n, 0);
    e[i - 1] = power;
    LaurentPoly p(n, table);
    p.add_term(std::move(e), NovikovScalar::one(table));
    return p;
  }

  static LaurentPoly monomial(std::size_t n, CoordExponents exps, const NovikovScalar& coeff) {
    LaurentPoly p(n, coeff.table());
    if (exps.size() != n) throw std::invalid_argument("laurent poly: exponent size mismatch");
    p.add_term(std::move(exps), coeff);
    return p;
  }

  std::size_t coords() const { return n_; }
  const ParameterTablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->second.is_one() &&
           terms_.begin()->first == CoordExponents(n_, 0);
  }

  void add_term(CoordExponents exps, const NovikovScalar& coeff) {
    if (coeff.is_zero()) return;
    require_same_table(table_, coeff.table());
    auto [it, inserted] = terms_.emplace(std::move(exps), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  LaurentPoly operator-() const {
    LaurentPoly r(n_, table_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& o) {
    require_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    a.require_compatible(b);
    LaurentPoly r(a.n_, a.table_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        CoordExponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  friend LaurentPoly operator*(const LaurentPoly& a, const NovikovScalar& s) {
    LaurentPoly r(a.n_, a.table_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
    return r;
  }

  friend LaurentPoly operator*(const LaurentPoly& a, const Rational& c) {
    LaurentPoly r(a.n_, a.table_);
    for (const auto& [e, coeff] : a.terms_) r.add_term(e, coeff * c);
    return r;
  }

  bool operator==(const LaurentPoly& o) const {
    require_compatible(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  /// The log-derivative d/d(log z_i) = z_i d/dz_i: maps z^v to v_i z^v.
  LaurentPoly log_derivative(std::size_t i) const {
    if (i < 1 || i > n_) throw std::out_of_range("log_derivative: coordinate index");
    LaurentPoly r(n_, table_);
    for (const auto& [e, c] : terms_) {
      int v = e[i - 1];
      if (v != 0) r.add_term(e, c * Rational(v));
    }
    return r;
  }

  /// Valuation of a term = valuation of its scalar coefficient (coordinates
  /// carry no intrinsic weight; see valuation_at for weighted points).
  Valuation valuation() const {
    Valuation v;
    for (const auto& [e, c] : terms_) v = val_min(v, c.valuation());
    return v;
  }

  /// Valuation at a point with coordinate valuations x: min over monomial
  /// terms of val(coeff) + <exponents, x>.
  Valuation valuation_at(const std::vector<Rational>& x) const {
    if (x.size() != n_) throw std::invalid_argument("valuation_at: point size mismatch");
    Valuation best;
    for (const auto& [e, c] : terms_) {
      for (const auto& [pe, pc] : c.terms()) {
        Rational v = c.term_valuation(pe);
        for (std::size_t i = 0; i < n_; ++i) v += Rational(e[i]) * x[i];
        best = val_min(best, Valuation(v));
      }
    }
    return best;
  }

  LaurentPoly truncate(const Cutoff& cutoff) const {
    if (!cutoff) return *this;
    LaurentPoly r(n_, table_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.truncate(cutoff));
    return r;
  }

  /// All monomial terms of minimal valuation.
  LaurentPoly leading_part() const {
    LaurentPoly r(n_, table_);
    Valuation v = valuation();
    if (!v) return r;
    for (const auto& [e, c] : terms_) {
      NovikovScalar lead(table_);
      for (const auto& [pe, pc] : c.terms())
        if (c.term_valuation(pe) == *v) lead.add_term(pe, pc);
      r.add_term(e, lead);
    }
    return r;
  }

  LaurentPoly kill_divisible(const ParamExponents& monomial) const {
    LaurentPoly r(n_, table_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.kill_divisible(monomial));
    return r;
  }

  /// True when every term has exponent of z_i at least k.
  bool divisible_by_coordinate(std::size_t i, int k) const {
    for (const auto& [e, c] : terms_)
      if (e[i - 1] < k) return false;
    return true;
  }

  /// Divides by z_i^k (shift of exponents; always exact on Laurent level).
  LaurentPoly divide_coordinate(std::size_t i, int k) const {
    LaurentPoly r(n_, table_);
    for (const auto& [e, c] : terms_) {
      CoordExponents q = e;
      q[i - 1] -= k;
      r.terms_.emplace(std::move(q), c);
    }
    return r;
  }

  /// Exact division by a one-term polynomial c*z^m (scalar part must divide
  /// every coefficient exactly).
  LaurentPoly divide_exact_monomial(const CoordExponents& m, const NovikovScalar& c) const {
    LaurentPoly r(n_, table_);
    for (const auto& [e, coeff] : terms_) {
      CoordExponents q = e;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= m[i];
      r.terms_.emplace(std::move(q), coeff.divide_exact(c));
    }
    return r;
  }

  LaurentPoly pow(int k, const Cutoff& cutoff = no_cutoff) const {
    if (k < 0) throw std::domain_error("laurent poly: negative power (use pullback machinery)");
    LaurentPoly r = one(n_, table_);
    LaurentPoly base = truncate(cutoff);
    for (; k > 0; k >>= 1) {
      if (k & 1) r = (r * base).truncate(cutoff);
      if (k > 1) base = (base * base).truncate(cutoff);
    }
    return r;
  }

  std::string to_string() const;

 private:
  void require_compatible(const LaurentPoly& o) const {
    if (n_ != o.n_) throw std::invalid_argument("laurent poly: coordinate count mismatch");
    require_same_table(table_, o.table_);
  }

  std::size_t n_;
  ParameterTablePtr table_;
  TermMap terms_;
};

namespace detail {

inline std::string coord_monomial_string(const CoordExponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(i + 1);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace detail

inline std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool lead = true;
  for (const auto& [e, c] : terms_) {
    std::string zmon = detail::coord_monomial_string(e);
    if (c.is_monomial()) {
      const auto& [pe, pc] = *c.terms().begin();
      std::string pmon = detail::param_monomial_string(*table_, pe);
      std::string mon = pmon.empty() ? zmon : (zmon.empty() ? pmon : pmon + "*" + zmon);
      detail::print_signed_term(out, lead, pc, mon);
    } else {
      // Multi-term scalar coefficient: parenthesize, e.g. "(1 + q^2)*z4".
      if (!lead) out += " + ";
      out += "(" + c.to_string() + ")";
      if (!zmon.empty()) out += "*" + zmon;
    }
    lead = false;
  }
  return out;
}

}  // namespace wallcross
