#pragma once

// Shared helpers for the test suites: seeded random generators for algebra
// elements, and an independent brute-force substitution oracle used to
// cross-check pullbacks (fixed-point series inversion instead of binomial
// expansion, flat term maps instead of nested polynomials).

#include <map>
#include <random>
#include <vector>

#include "wallcross/wallcross.hpp"

namespace wctest {

using namespace wallcross;

using Rng = std::mt19937;

inline int rand_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Rational rand_rational(Rng& rng) {
  int num = rand_int(rng, -3, 3);
  if (num == 0) num = 1;
  return Rational(num, rand_int(rng, 1, 3));
}

inline NovikovScalar rand_scalar(Rng& rng, const ParameterTablePtr& table, int max_terms = 2) {
  NovikovScalar s(table);
  int terms = rand_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    ParamExponents e(table->size(), 0);
    for (auto& x : e) x = rand_int(rng, 0, 2);
    s.add_term(std::move(e), rand_rational(rng));
  }
  return s;
}

inline LaurentPoly rand_laurent(Rng& rng, std::size_t n, const ParameterTablePtr& table,
                                int max_terms = 3, int max_exp = 2) {
  LaurentPoly f(n, table);
  int terms = rand_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    CoordExponents e(n, 0);
    for (auto& x : e) x = rand_int(rng, -max_exp, max_exp);
    f.add_term(std::move(e), rand_scalar(rng, table));
  }
  return f;
}

inline IndexSet rand_index_set(Rng& rng, std::size_t n, std::size_t degree) {
  std::vector<std::size_t> pool;
  for (std::size_t i = 1; i <= n; ++i) pool.push_back(i);
  std::shuffle(pool.begin(), pool.end(), rng);
  IndexSet out(pool.begin(), pool.begin() + degree);
  std::sort(out.begin(), out.end());
  return out;
}

/// Random homogeneous polyvector field of the given exterior degree.
inline PolyVectorField rand_pvf(Rng& rng, std::size_t n, const ParameterTablePtr& table,
                                std::size_t degree, int max_terms = 2) {
  PolyVectorField p(n, table);
  int terms = rand_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t)
    p.add_term(rand_index_set(rng, n, degree), rand_laurent(rng, n, table, 2, 1));
  return p;
}

inline FloerClass rand_floer(Rng& rng, std::size_t n, const ParameterTablePtr& table,
                             std::size_t degree, int max_terms = 2) {
  FloerClass a(n, table);
  int terms = rand_int(rng, 1, max_terms);
  for (int t = 0; t < terms; ++t) {
    CoordExponents gamma(n, 0);
    for (auto& x : gamma) x = rand_int(rng, -2, 2);
    a.add_term({std::move(gamma), rand_index_set(rng, n, degree)}, rand_scalar(rng, table));
  }
  return a;
}

inline std::vector<LaurentPoly> replace_unit(const Substitution& s, std::size_t i,
                                             const LaurentPoly& u) {
  std::vector<LaurentPoly> units;
  for (std::size_t k = 1; k <= s.coords(); ++k) units.push_back(k == i ? u : s.unit(k));
  return units;
}

/// A random admissible substitution with identity monomial part: every unit
/// is 1 + (random positive-valuation terms).
inline Substitution rand_unit_substitution(Rng& rng, std::size_t n,
                                           const ParameterTablePtr& table) {
  Substitution s = Substitution::identity(n, table);
  for (std::size_t i = 1; i <= n; ++i) {
    if (rand_int(rng, 0, 1) == 0) continue;
    LaurentPoly u = LaurentPoly::one(n, table);
    int terms = rand_int(rng, 1, 2);
    for (int t = 0; t < terms; ++t) {
      CoordExponents e(n, 0);
      for (std::size_t j = 0; j < n; ++j) e[j] = rand_int(rng, -1, 1);
      ParamExponents pe(table->size(), 0);
      pe[rand_int(rng, 0, static_cast<int>(table->size()) - 1)] = rand_int(rng, 1, 2);
      u.add_term(std::move(e), NovikovScalar::monomial(table, std::move(pe), rand_rational(rng)));
    }
    s = Substitution(n, table, s.matrix(),
                     std::vector<NovikovScalar>(n, NovikovScalar::one(table)),
                     replace_unit(s, i, u));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Brute-force substitution oracle.

/// Flat term key: parameter exponents followed by coordinate exponents.
struct OracleSeries {
  std::size_t n_params = 0, n_coords = 0;
  std::vector<Rational> weights;
  std::map<std::vector<int>, Rational> terms;

  void add(const std::vector<int>& key, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Rational term_val(const std::vector<int>& key) const {
    Rational v = 0;
    for (std::size_t i = 0; i < n_params; ++i) v += Rational(key[i]) * weights[i];
    return v;
  }

  OracleSeries truncated(const Rational& cutoff) const {
    OracleSeries r = shape();
    for (const auto& [k, c] : terms)
      if (term_val(k) < cutoff) r.add(k, c);
    return r;
  }

  OracleSeries shape() const { return {n_params, n_coords, weights, {}}; }

  OracleSeries mul(const OracleSeries& o, const Rational& cutoff) const {
    OracleSeries r = shape();
    for (const auto& [ka, ca] : terms)
      for (const auto& [kb, cb] : o.terms) {
        std::vector<int> k = ka;
        for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
        if (term_val(k) < cutoff) r.add(k, ca * cb);
      }
    return r;
  }

  OracleSeries plus(const OracleSeries& o) const {
    OracleSeries r = *this;
    for (const auto& [k, c] : o.terms) r.add(k, c);
    return r;
  }

  OracleSeries negated() const {
    OracleSeries r = shape();
    for (const auto& [k, c] : terms) r.add(k, -c);
    return r;
  }

  static OracleSeries one_of(const OracleSeries& like) {
    OracleSeries r = like.shape();
    r.add(std::vector<int>(like.n_params + like.n_coords, 0), 1);
    return r;
  }

  /// Inverse of a series 1 + T with val(T) > 0, by the fixed-point iteration
  /// inv <- 1 - T*inv (converges in valuation; independent of the binomial
  /// expansion used by the library).
  OracleSeries invert_unit(const Rational& cutoff) const {
    OracleSeries one = one_of(*this);
    OracleSeries t = plus(one.negated());
    Rational step;
    bool first = true;
    for (const auto& [k, c] : t.terms) {
      Rational v = term_val(k);
      if (first || v < step) step = v, first = false;
    }
    if (first) return one;  // exactly 1
    if (step <= 0) throw std::domain_error("oracle: cannot invert, non-positive valuation step");
    OracleSeries inv = one;
    int iters = 1;
    while (Rational(iters) * step < cutoff) ++iters;
    for (int i = 0; i < iters; ++i) inv = one.plus(t.mul(inv, cutoff).negated());
    return inv.truncated(cutoff);
  }

  /// S^e. For negative e the unique minimal-valuation term is factored out as
  /// a monomial (negative parameter exponents are fine in the oracle keys)
  /// and the remaining unit series is inverted.
  OracleSeries power(int e, const Rational& cutoff) const {
    OracleSeries r = one_of(*this);
    if (e == 0) return r;
    if (e > 0) {
      for (int i = 0; i < e; ++i) r = r.mul(*this, cutoff);
      return r.truncated(cutoff);
    }
    const std::vector<int>* k0 = nullptr;
    Rational c0, v0;
    for (const auto& [k, c] : terms) {
      Rational v = term_val(k);
      if (!k0 || v < v0) {
        k0 = &k;
        c0 = c;
        v0 = v;
      } else if (v == v0) {
        throw std::domain_error("oracle: leading term not unique");
      }
    }
    if (!k0) throw std::domain_error("oracle: inverting zero series");
    OracleSeries inv_mono = shape();
    std::vector<int> kneg(k0->size());
    for (std::size_t i = 0; i < kneg.size(); ++i) kneg[i] = -(*k0)[i];
    inv_mono.add(kneg, Rational(1) / c0);
    // Intermediate factors can sit at negative valuation (the monomial
    // inverse), so expand with enough slack before the final truncation.
    Rational pad = (v0 > 0 ? v0 : -v0) * Rational(-e) + 1;
    OracleSeries unit = mul(inv_mono, cutoff + pad);
    OracleSeries inv_unit = unit.invert_unit(cutoff + pad);
    OracleSeries result = one_of(*this);
    for (int i = 0; i < -e; ++i)
      result = result.mul(inv_unit, cutoff + pad).mul(inv_mono, cutoff + pad);
    return result.truncated(cutoff);
  }
};

inline OracleSeries oracle_from_laurent(const LaurentPoly& f) {
  const ParameterTable& table = *f.table();
  OracleSeries s{table.size(), f.coords(), {}, {}};
  for (std::size_t i = 0; i < table.size(); ++i) s.weights.push_back(table.weight(i));
  for (const auto& [ze, coeff] : f.terms())
    for (const auto& [pe, c] : coeff.terms()) {
      std::vector<int> key(pe.begin(), pe.end());
      key.insert(key.end(), ze.begin(), ze.end());
      s.add(key, c);
    }
  return s;
}

inline LaurentPoly oracle_to_laurent(const OracleSeries& s, const ParameterTablePtr& table) {
  LaurentPoly f(s.n_coords, table);
  for (const auto& [k, c] : s.terms) {
    ParamExponents pe(k.begin(), k.begin() + s.n_params);
    CoordExponents ze(k.begin() + s.n_params, k.end());
    f.add_term(std::move(ze), NovikovScalar::monomial(table, std::move(pe), c));
  }
  return f;
}

/// Applies a substitution to f term by term with the oracle arithmetic.
inline LaurentPoly oracle_pullback(const LaurentPoly& f, const Substitution& subst,
                                   const Rational& cutoff) {
  std::vector<OracleSeries> images;
  for (std::size_t i = 1; i <= subst.coords(); ++i)
    images.push_back(oracle_from_laurent(subst.image(i)));
  OracleSeries acc = oracle_from_laurent(f).shape();
  for (const auto& [ze, coeff] : f.terms()) {
    LaurentPoly c0 = LaurentPoly::from_scalar(f.coords(), coeff);
    OracleSeries term = oracle_from_laurent(c0);
    for (std::size_t i = 0; i < f.coords(); ++i)
      if (ze[i] != 0) term = term.mul(images[i].power(ze[i], cutoff), cutoff);
    acc = acc.plus(term);
  }
  return oracle_to_laurent(acc.truncated(cutoff), f.table());
}

}  // namespace wctest
