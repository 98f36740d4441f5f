#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/numeric.hpp"

namespace wallcross {

/// The formal area parameters of a model (q, qp, qpp, q1, ...), each with a
/// strictly positive rational Novikov weight. Geometric areas enter only
/// through these weights.
class ParameterTable {
 public:
  ParameterTable(std::vector<std::string> names, std::vector<Rational> weights)
      : names_(std::move(names)), weights_(std::move(weights)) {
    if (names_.size() != weights_.size())
      throw std::invalid_argument("parameter table: names/weights size mismatch");
    for (const auto& w : weights_)
      if (w <= 0) throw std::invalid_argument("parameter table: weights must be positive");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw std::invalid_argument("parameter table: duplicate name " + names_[i]);
  }

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
  }

  std::size_t index(const std::string& name) const {
    auto i = find(name);
    if (!i) throw std::invalid_argument("unknown parameter: " + name);
    return *i;
  }

  bool operator==(const ParameterTable& o) const {
    return names_ == o.names_ && weights_ == o.weights_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Rational> weights_;
};

using ParameterTablePtr = std::shared_ptr<const ParameterTable>;

inline void require_same_table(const ParameterTablePtr& a, const ParameterTablePtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b))
    throw std::invalid_argument("mismatched parameter tables");
}

/// Exponent vector of a parameter monomial, indexed by ParameterTable order.
/// Exponents are non-negative: parameter inverses are never representable.
using ParamExponents = std::vector<int>;

inline std::string detail_exps_string(const ParamExponents& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
  return s + "]";
}

/// Exact element of the Novikov coefficient ring: a finite sum of parameter
/// monomials with rational coefficients, kept in canonical sparse form
/// (no zero coefficients stored).
class NovikovScalar {
 public:
  using TermMap = std::map<ParamExponents, Rational>;

  explicit NovikovScalar(ParameterTablePtr table) : table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("novikov scalar: null table");
  }

  static NovikovScalar zero(ParameterTablePtr table) { return NovikovScalar(std::move(table)); }

  static NovikovScalar constant(ParameterTablePtr table, const Rational& c) {
    NovikovScalar s(std::move(table));
    s.add_term(ParamExponents(s.table_->size(), 0), c);
    return s;
  }

  static NovikovScalar one(ParameterTablePtr table) { return constant(std::move(table), 1); }

  static NovikovScalar monomial(ParameterTablePtr table, ParamExponents exps,
                                const Rational& c = 1) {
    NovikovScalar s(std::move(table));
    if (exps.size() != s.table_->size())
      throw std::invalid_argument("novikov scalar: exponent vector size mismatch");
    s.add_term(std::move(exps), c);
    return s;
  }

  static NovikovScalar parameter(ParameterTablePtr table, const std::string& name) {
    ParamExponents e(table->size(), 0);
    e[table->index(name)] = 1;
    return monomial(std::move(table), std::move(e));
  }

  const ParameterTablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->second == 1 &&
           is_constant_exponent(terms_.begin()->first);
  }

  /// True when this is a single monomial term.
  bool is_monomial() const { return terms_.size() == 1; }

  void add_term(ParamExponents exps, const Rational& c) {
    if (c == 0) return;
    for (int e : exps)
      if (e < 0)
        throw std::domain_error("novikov scalar: negative parameter exponent in " +
                                detail_exps_string(exps));
    auto [it, inserted] = terms_.emplace(std::move(exps), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  NovikovScalar operator-() const {
    NovikovScalar r(table_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }

  NovikovScalar& operator+=(const NovikovScalar& o) {
    require_same_table(table_, o.table_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  NovikovScalar& operator-=(const NovikovScalar& o) {
    require_same_table(table_, o.table_);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }

  friend NovikovScalar operator+(NovikovScalar a, const NovikovScalar& b) { return a += b; }
  friend NovikovScalar operator-(NovikovScalar a, const NovikovScalar& b) { return a -= b; }

  friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
    require_same_table(a.table_, b.table_);
    NovikovScalar r(a.table_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ParamExponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }

  NovikovScalar& operator*=(const NovikovScalar& o) { return *this = *this * o; }

  friend NovikovScalar operator*(const NovikovScalar& a, const Rational& c) {
    NovikovScalar r(a.table_);
    if (c != 0)
      for (const auto& [e, coeff] : a.terms_) r.terms_.emplace(e, coeff * c);
    return r;
  }

  bool operator==(const NovikovScalar& o) const {
    require_same_table(table_, o.table_);
    return terms_ == o.terms_;
  }
  bool operator!=(const NovikovScalar& o) const { return !(*this == o); }

  Rational term_valuation(const ParamExponents& e) const {
    Rational v = 0;
    for (std::size_t i = 0; i < e.size(); ++i) v += Rational(e[i]) * table_->weight(i);
    return v;
  }

  /// min over terms of <weights, exponents>; +infinity (empty) for zero.
  Valuation valuation() const {
    Valuation v;
    for (const auto& [e, c] : terms_) v = val_min(v, term_valuation(e));
    return v;
  }

  /// Drops every term of valuation >= cutoff.
  NovikovScalar truncate(const Cutoff& cutoff) const {
    if (!cutoff) return *this;
    NovikovScalar r(table_);
    for (const auto& [e, c] : terms_)
      if (term_valuation(e) < *cutoff) r.terms_.emplace(e, c);
    return r;
  }

  /// Keeps only the terms of minimal valuation.
  NovikovScalar leading_part() const {
    NovikovScalar r(table_);
    Valuation v = valuation();
    if (!v) return r;
    for (const auto& [e, c] : terms_)
      if (term_valuation(e) == *v) r.terms_.emplace(e, c);
    return r;
  }

  bool term_divisible(const ParamExponents& e, const ParamExponents& by) const {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] < by[i]) return false;
    return true;
  }

  /// Deletes every term divisible by the given parameter monomial.
  NovikovScalar kill_divisible(const ParamExponents& monomial) const {
    NovikovScalar r(table_);
    for (const auto& [e, c] : terms_)
      if (!term_divisible(e, monomial)) r.terms_.emplace(e, c);
    return r;
  }

  /// Exact division by a single parameter-monomial scalar; throws when a
  /// term is not divisible (parameter inverses are not representable).
  NovikovScalar divide_exact(const NovikovScalar& by) const {
    require_same_table(table_, by.table_);
    if (!by.is_monomial()) throw std::domain_error("novikov scalar: divisor must be a monomial");
    const auto& [be, bc] = *by.terms_.begin();
    NovikovScalar r(table_);
    for (const auto& [e, c] : terms_) {
      if (!term_divisible(e, be))
        throw std::domain_error("novikov scalar: inexact parameter division");
      ParamExponents q = e;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= be[i];
      r.terms_.emplace(std::move(q), c / bc);
    }
    return r;
  }

  NovikovScalar pow(int k) const {
    if (k < 0) throw std::domain_error("novikov scalar: negative power");
    NovikovScalar r = one(table_);
    NovikovScalar base = *this;
    for (; k > 0; k >>= 1) {
      if (k & 1) r *= base;
      if (k > 1) base *= base;
    }
    return r;
  }

  /// Canonical rendering, e.g. "1 + q^2" or "-1/2*qp^2*qpp".
  std::string to_string() const;

 private:
  bool is_constant_exponent(const ParamExponents& e) const {
    for (int x : e)
      if (x != 0) return false;
    return true;
  }

  ParameterTablePtr table_;
  TermMap terms_;
};

namespace detail {

/// Renders one signed product term; used by both scalar and Laurent printers.
/// `lead` suppresses the "+ " prefix of the first term.
inline void print_signed_term(std::string& out, bool lead, const Rational& coeff,
                              const std::string& monomial) {
  Rational c = coeff;
  if (lead) {
    if (c < 0) {
      out += "-";
      c = -c;
    }
  } else {
    out += c < 0 ? " - " : " + ";
    if (c < 0) c = -c;
  }
  if (monomial.empty()) {
    out += rational_to_string(c);
  } else {
    if (c != 1) out += rational_to_string(c) + "*";
    out += monomial;
  }
}

inline std::string param_monomial_string(const ParameterTable& table, const ParamExponents& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += table.name(i);
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

}  // namespace detail

inline std::string NovikovScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool lead = true;
  for (const auto& [e, c] : terms_) {
    detail::print_signed_term(out, lead, c, detail::param_monomial_string(*table_, e));
    lead = false;
  }
  return out;
}

}  // namespace wallcross
