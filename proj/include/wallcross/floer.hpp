#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/polyvector.hpp"

namespace wallcross {

/// Element of H^*(F_b) tensor the group ring of H_1(F_b): a sum of terms
/// z^gamma * (basis wedge of dual classes) with NovikovScalar coefficients.
/// Same shape as PolyVectorField but with group-ring monomials z^gamma, kept
/// as a distinct type because the correspondence with polyvector fields is a
/// meaningful boundary.
class FloerClass {
 public:
  struct Key {
    CoordExponents gamma;  // class in H_1, integer vector
    IndexSet duals;        // wedge of dual basis classes, strictly increasing
    bool operator<(const Key& o) const {
      if (gamma != o.gamma) return gamma < o.gamma;
      return duals < o.duals;
    }
    bool operator==(const Key& o) const { return gamma == o.gamma && duals == o.duals; }
  };
  using TermMap = std::map<Key, NovikovScalar>;

  FloerClass(std::size_t n, ParameterTablePtr table) : n_(n), table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("floer class: null table");
  }

  static FloerClass zero(std::size_t n, ParameterTablePtr table) {
    return FloerClass(n, std::move(table));
  }

  static FloerClass term(std::size_t n, CoordExponents gamma, IndexSet duals,
                         const NovikovScalar& coeff) {
    FloerClass a(n, coeff.table());
    if (gamma.size() != n) throw std::invalid_argument("floer class: gamma size mismatch");
    for (std::size_t k = 0; k < duals.size(); ++k) {
      if (duals[k] < 1 || duals[k] > n) throw std::out_of_range("floer class: dual index");
      if (k > 0 && duals[k] <= duals[k - 1])
        throw std::invalid_argument("floer class: dual indices must be strictly increasing");
    }
    a.add_term({std::move(gamma), std::move(duals)}, coeff);
    return a;
  }

  std::size_t rank() const { return n_; }
  const ParameterTablePtr& table() const { return table_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Key key, const NovikovScalar& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(key), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool is_homogeneous(std::size_t degree) const {
    for (const auto& [k, c] : terms_)
      if (k.duals.size() != degree) return false;
    return true;
  }

  FloerClass operator-() const {
    FloerClass r(n_, table_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }

  FloerClass& operator+=(const FloerClass& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }

  FloerClass& operator-=(const FloerClass& o) {
    require_compatible(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }

  friend FloerClass operator+(FloerClass a, const FloerClass& b) { return a += b; }
  friend FloerClass operator-(FloerClass a, const FloerClass& b) { return a -= b; }

  friend FloerClass operator*(const FloerClass& a, const Rational& c) {
    FloerClass r(a.n_, a.table_);
    for (const auto& [k, coeff] : a.terms_) r.add_term(k, coeff * c);
    return r;
  }

  bool operator==(const FloerClass& o) const {
    require_compatible(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const FloerClass& o) const { return !(*this == o); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool lead = true;
    for (const auto& [k, c] : terms_) {
      std::string mon = detail::coord_monomial_string(k.gamma);
      for (std::size_t j = 0; j < k.duals.size(); ++j) {
        if (!mon.empty() || j > 0) mon += j == 0 ? "*" : "^";
        if (j > 0) {
          mon += "g" + std::to_string(k.duals[j]);
        } else {
          mon += "g" + std::to_string(k.duals[j]);
        }
      }
      if (c.is_monomial()) {
        const auto& [pe, pc] = *c.terms().begin();
        std::string pmon = detail::param_monomial_string(*table_, pe);
        std::string full = pmon.empty() ? mon : (mon.empty() ? pmon : pmon + "*" + mon);
        detail::print_signed_term(out, lead, pc, full);
      } else {
        if (!lead) out += " + ";
        out += "(" + c.to_string() + ")";
        if (!mon.empty()) out += "*" + mon;
      }
      lead = false;
    }
    return out;
  }

 private:
  void require_compatible(const FloerClass& o) const {
    if (n_ != o.n_) throw std::invalid_argument("floer class: rank mismatch");
    require_same_table(table_, o.table_);
  }

  std::size_t n_;
  ParameterTablePtr table_;
  TermMap terms_;
};

namespace detail {

/// Signed contraction of a homology class into a basis wedge:
/// i_gamma(g_{i1}^...^g_{ip}) = sum_{k} (-1)^{k-1} gamma_{i_k} * (wedge minus i_k).
/// The sign (-1)^{|I cap {1..i-1}|} equals (-1)^{k-1} for sorted index sets.
inline std::vector<std::pair<IndexSet, Rational>> contract_duals(const CoordExponents& gamma,
                                                                 const IndexSet& duals) {
  std::vector<std::pair<IndexSet, Rational>> out;
  for (std::size_t k = 0; k < duals.size(); ++k) {
    int n_i = gamma[duals[k] - 1];
    if (n_i == 0) continue;
    IndexSet rest;
    rest.reserve(duals.size() - 1);
    for (std::size_t j = 0; j < duals.size(); ++j)
      if (j != k) rest.push_back(duals[j]);
    out.emplace_back(std::move(rest), Rational(k % 2 == 0 ? n_i : -n_i));
  }
  return out;
}

}  // namespace detail

/// Interior product with a fixed homology class; z^gamma factors untouched.
inline FloerClass iota_gamma(const CoordExponents& gamma, const FloerClass& a) {
  if (gamma.size() != a.rank()) throw std::invalid_argument("iota_gamma: rank mismatch");
  FloerClass r(a.rank(), a.table());
  for (const auto& [k, c] : a.terms())
    for (auto& [rest, sign] : detail::contract_duals(gamma, k.duals))
      r.add_term({k.gamma, std::move(rest)}, c * sign);
  return r;
}

/// The degree -1 bracket
///   {z^g a, z^g' a'} = z^{g+g'} (a ^ i_g(a') + (-1)^{|a|} i_{g'}(a) ^ a'),
/// extended bilinearly; symmetric on even-degree elements.
inline FloerClass hf_bracket(const FloerClass& a, const FloerClass& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("hf_bracket: rank mismatch");
  require_same_table(a.table(), b.table());
  FloerClass r(a.rank(), a.table());
  IndexSet merged;
  for (const auto& [ka, ca] : a.terms()) {
    int sign_a = ka.duals.size() % 2 == 0 ? 1 : -1;  // (-1)^{|alpha|}
    for (const auto& [kb, cb] : b.terms()) {
      CoordExponents gsum = ka.gamma;
      for (std::size_t i = 0; i < gsum.size(); ++i) gsum[i] += kb.gamma[i];
      NovikovScalar coeff = ca * cb;
      // alpha ^ i_gamma(alpha')
      for (auto& [rest, s] : detail::contract_duals(ka.gamma, kb.duals)) {
        int ws = detail::merge_index_sets(ka.duals, rest, merged);
        if (ws == 0) continue;
        r.add_term({gsum, merged}, coeff * (s * ws));
      }
      // (-1)^{|alpha|} i_{gamma'}(alpha) ^ alpha'
      for (auto& [rest, s] : detail::contract_duals(kb.gamma, ka.duals)) {
        int ws = detail::merge_index_sets(rest, kb.duals, merged);
        if (ws == 0) continue;
        r.add_term({gsum, merged}, coeff * (s * ws * sign_a));
      }
    }
  }
  return r;
}

/// Relabels dual basis wedges as wedges of log-derivations:
/// z^gamma g_{j1}^...^g_{jk} -> z^gamma d_{j1}^...^d_{jk}.
inline PolyVectorField correspondence(const FloerClass& a) {
  PolyVectorField r(a.rank(), a.table());
  for (const auto& [k, c] : a.terms())
    r.add_term(k.duals, LaurentPoly::monomial(a.rank(), k.gamma, c));
  return r;
}

}  // namespace wallcross
