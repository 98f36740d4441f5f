#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/laurent.hpp"

namespace wallcross {

/// Strictly increasing index subset of {1..n}; labels the wedge monomial
/// d_{log z_{i1}} ^ ... ^ d_{log z_{ip}}.
using IndexSet = std::vector<std::size_t>;

namespace detail {

/// Merges two strictly increasing index sets, returning the Koszul sign of
/// the sorting permutation, or 0 when an index repeats.
inline int merge_index_sets(const IndexSet& a, const IndexSet& b, IndexSet& out) {
  out.clear();
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  int sign = 1;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return 0;
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else {
      // b[j] jumps across the remaining entries of a.
      if ((a.size() - i) % 2 == 1) sign = -sign;
      out.push_back(b[j++]);
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return sign;
}

}  // namespace detail

/// Graded element of Lambda^* T with LaurentPoly coefficients on wedge
/// monomials of log-derivations. Mixed exterior degrees are allowed.
class PolyVectorField {
 public:
  using TermMap = std::map<IndexSet, LaurentPoly>;

  PolyVectorField(std::size_t n, ParameterTablePtr table)
      : n_(n), table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("polyvector: null table");
  }

  static PolyVectorField zero(std::size_t n, ParameterTablePtr table) {
    return PolyVectorField(n, std::move(table));
  }

  static PolyVectorField from_function(const LaurentPoly& f) {
    PolyVectorField p(f.coords(), f.table());
    p.add_term({}, f);
    return p;
  }

  /// coeff * d_{i1} ^ ... ^ d_{ip} for a strictly increasing index set.
  static PolyVectorField wedge_monomial(const LaurentPoly& coeff, IndexSet indices) {
    PolyVectorField p(coeff.coords(), coeff.table());
    for (std::size_t k = 0; k < indices.size(); ++k) {
      if (indices[k] < 1 || indices[k] > p.n_)
        throw std::out_of_range("polyvector: wedge index out of range");
      if (k > 0 && indices[k] <= indices[k - 1])
        throw std::invalid_argument("polyvector: wedge indices must be strictly increasing");
    }
    p.add_term(std::move(indices), coeff);
    return p;
  }

  static PolyVectorField basis(std::size_t n, ParameterTablePtr table, IndexSet indices) {
    return wedge_monomial(LaurentPoly::one(n, table), std::move(indices));
  }

  std::size_t coords() const { return n_; }
  const ParameterTablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(IndexSet indices, const LaurentPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(indices), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_homogeneous(std::size_t degree) const {
    for (const auto& [idx, c] : terms_)
      if (idx.size() != degree) return false;
    return true;
  }

  /// The exterior-degree-p part.
  PolyVectorField component(std::size_t degree) const {
    PolyVectorField r(n_, table_);
    for (const auto& [idx, c] : terms_)
      if (idx.size() == degree) r.terms_.emplace(idx, c);
    return r;
  }

  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& [idx, c] : terms_) d = std::max(d, idx.size());
    return d;
  }

  PolyVectorField operator-() const {
    PolyVectorField r(n_, table_);
    for (const auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
    return r;
  }

  PolyVectorField& operator+=(const PolyVectorField& o) {
    require_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, c);
    return *this;
  }

  PolyVectorField& operator-=(const PolyVectorField& o) {
    require_compatible(o);
    for (const auto& [idx, c] : o.terms_) add_term(idx, -c);
    return *this;
  }

  friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
  friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }

  friend PolyVectorField operator*(const PolyVectorField& a, const LaurentPoly& f) {
    PolyVectorField r(a.n_, a.table_);
    for (const auto& [idx, c] : a.terms_) r.add_term(idx, c * f);
    return r;
  }

  friend PolyVectorField operator*(const PolyVectorField& a, const Rational& c) {
    PolyVectorField r(a.n_, a.table_);
    for (const auto& [idx, coeff] : a.terms_) r.add_term(idx, coeff * c);
    return r;
  }

  bool operator==(const PolyVectorField& o) const {
    require_compatible(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const PolyVectorField& o) const { return !(*this == o); }

  Valuation valuation() const {
    Valuation v;
    for (const auto& [idx, c] : terms_) v = val_min(v, c.valuation());
    return v;
  }

  PolyVectorField truncate(const Cutoff& cutoff) const {
    PolyVectorField r(n_, table_);
    for (const auto& [idx, c] : terms_) r.add_term(idx, c.truncate(cutoff));
    return r;
  }

  /// Wedge components whose coefficients realize the minimal valuation.
  PolyVectorField leading_part() const {
    PolyVectorField r(n_, table_);
    Valuation v = valuation();
    if (!v) return r;
    for (const auto& [idx, c] : terms_)
      if (c.valuation() == v) r.add_term(idx, c.leading_part());
    return r;
  }

  PolyVectorField kill_divisible(const ParamExponents& monomial) const {
    PolyVectorField r(n_, table_);
    for (const auto& [idx, c] : terms_) r.add_term(idx, c.kill_divisible(monomial));
    return r;
  }

  std::string to_string() const;

 private:
  void require_compatible(const PolyVectorField& o) const {
    if (n_ != o.n_) throw std::invalid_argument("polyvector: coordinate count mismatch");
    require_same_table(table_, o.table_);
  }

  std::size_t n_;
  ParameterTablePtr table_;
  TermMap terms_;
};

/// Graded-commutative exterior product with Koszul signs; repeated indices
/// kill the term.
inline PolyVectorField wedge(const PolyVectorField& a, const PolyVectorField& b) {
  PolyVectorField r(a.coords(), a.table());
  IndexSet merged;
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      int sign = detail::merge_index_sets(ia, ib, merged);
      if (sign == 0) continue;
      r.add_term(merged, (ca * cb) * Rational(sign));
    }
  return r;
}

/// Interior product with dW: f * d_I maps to
/// f * sum_k (-1)^{k-1} dlog_{i_k}(W) * d_{I \ i_k}; degree drops by one.
inline PolyVectorField interior_dW(const LaurentPoly& w, const PolyVectorField& p) {
  PolyVectorField r(p.coords(), p.table());
  for (const auto& [idx, coeff] : p.terms()) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      LaurentPoly dw = w.log_derivative(idx[k]);
      if (dw.is_zero()) continue;
      IndexSet rest;
      rest.reserve(idx.size() - 1);
      for (std::size_t j = 0; j < idx.size(); ++j)
        if (j != k) rest.push_back(idx[j]);
      r.add_term(std::move(rest), (coeff * dw) * Rational(k % 2 == 0 ? 1 : -1));
    }
  }
  return r;
}

/// Schouten-Nijenhuis bracket, computed termwise on monomial decompositions
/// f*d_I, g*d_J via
///   [fP, gQ] = (-1)^{p-1} f i_{dg}(P) ^ Q - g P ^ i_{df}(Q)
/// for constant wedges P, Q. Degree -1 in the exterior grading.
inline PolyVectorField schouten(const PolyVectorField& a, const PolyVectorField& b) {
  PolyVectorField r(a.coords(), a.table());
  for (const auto& [ia, f] : a.terms()) {
    PolyVectorField pa = PolyVectorField::basis(a.coords(), a.table(), ia);
    int sign = ia.size() % 2 == 1 ? 1 : -1;  // (-1)^{p-1}
    for (const auto& [ib, g] : b.terms()) {
      PolyVectorField pb = PolyVectorField::basis(b.coords(), b.table(), ib);
      PolyVectorField left = wedge(interior_dW(g, pa), pb) * f;
      PolyVectorField right = wedge(pa, interior_dW(f, pb)) * g;
      r += left * Rational(sign) - right;
    }
  }
  return r;
}

/// A vector field applied to a function: V(h) = i_{dh}(V), as a Laurent
/// polynomial. Requires V homogeneous of degree 1.
inline LaurentPoly apply_vector_field(const PolyVectorField& v, const LaurentPoly& h) {
  if (!v.is_homogeneous(1)) throw std::invalid_argument("apply_vector_field: degree-1 input required");
  PolyVectorField res = interior_dW(h, v);
  LaurentPoly out(v.coords(), v.table());
  for (const auto& [idx, c] : res.terms()) {
    if (!idx.empty()) throw std::logic_error("apply_vector_field: unexpected degree");
    out += c;
  }
  return out;
}

inline std::string PolyVectorField::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool lead = true;
  for (const auto& [idx, c] : terms_) {
    std::string dmon;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (k > 0) dmon += "^";
      dmon += "d" + std::to_string(idx[k]);
    }
    std::string cs = c.to_string();
    bool simple = c.terms().size() == 1 && c.terms().begin()->second.is_monomial();
    if (dmon.empty()) {
      if (!lead) out += " + ";
      out += simple ? cs : "(" + cs + ")";
    } else if (simple) {
      // Fold the sign of a one-term coefficient into the separator.
      const auto& [ze, zs] = *c.terms().begin();
      const auto& [pe, pc] = *zs.terms().begin();
      std::string zmon = detail::coord_monomial_string(ze);
      std::string pmon = detail::param_monomial_string(*table_, pe);
      std::string mon = pmon.empty() ? zmon : (zmon.empty() ? pmon : pmon + "*" + zmon);
      detail::print_signed_term(out, lead, pc, mon.empty() ? dmon : mon + "*" + dmon);
    } else {
      if (!lead) out += " + ";
      out += "(" + cs + ")*" + dmon;
    }
    lead = false;
  }
  return out;
}

}  // namespace wallcross
