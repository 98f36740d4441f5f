#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/floer.hpp"
#include "wallcross/polyvector.hpp"

namespace wallcross {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " at position " + std::to_string(pos + 1)), position(pos) {}
  std::size_t position;
};

/// Identifier environment for the expression grammar: coordinates z1..zN,
/// wedge generators d1..dN (g1..gN in Floer context), parameters from the
/// table. `^` is exponentiation on scalars/coordinates and the wedge when it
/// joins two generators; `*` is optional between parenthesized factors.
class ExpressionParser {
 public:
  ExpressionParser(std::string src, std::size_t coords, ParameterTablePtr table)
      : src_(std::move(src)), n_(coords), table_(std::move(table)) {}

  PolyVectorField parse() {
    pos_ = 0;
    skip_ws();
    PolyVectorField result = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return result;
  }

 private:
  PolyVectorField parse_expr() {
    PolyVectorField acc = PolyVectorField::zero(n_, table_);
    bool negate = consume('-');
    acc += parse_term() * Rational(negate ? -1 : 1);
    for (;;) {
      skip_ws();
      if (consume('+'))
        acc += parse_term();
      else if (consume('-'))
        acc -= parse_term();
      else
        break;
    }
    return acc;
  }

  PolyVectorField parse_term() {
    PolyVectorField acc = parse_factor();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        acc = multiply(acc, parse_factor(), pos_);
      } else if (pos_ < src_.size() &&
                 (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '(')) {
        acc = multiply(acc, parse_factor(), pos_);
      } else {
        break;
      }
    }
    return acc;
  }

  PolyVectorField parse_factor() {
    skip_ws();
    std::size_t start = pos_;
    PolyVectorField base = parse_primary();
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') {
      // A wedge chain when the base and the next atom are both generators.
      if (is_generator(base) && next_is_generator()) {
        PolyVectorField acc = base;
        while (pos_ < src_.size() && src_[pos_] == '^' && next_is_generator()) {
          ++pos_;
          skip_ws();
          acc = wedge(acc, parse_primary());
          skip_ws();
        }
        return acc;
      }
      ++pos_;
      skip_ws();
      bool neg = consume('-');
      std::size_t epos = pos_;
      int e = parse_integer();
      if (neg) e = -e;
      return power(base, e, start, epos);
    }
    return base;
  }

  PolyVectorField parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = parse_bigint();
      skip_ws();
      if (consume('/')) {
        skip_ws();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          throw ParseError("expected denominator", pos_);
        Integer den = parse_bigint();
        if (den == 0) throw ParseError("zero denominator", pos_);
        return constant(Rational(num, den));
      }
      return constant(Rational(num));
    }
    if (c == '(') {
      ++pos_;
      PolyVectorField inner = parse_expr();
      skip_ws();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  PolyVectorField parse_ident() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    std::string name = src_.substr(start, pos_ - start);
    if (auto idx = generator_index(name, "z")) {
      return PolyVectorField::from_function(LaurentPoly::coordinate(n_, table_, *idx));
    }
    if (auto idx = generator_index(name, "d")) {
      return PolyVectorField::basis(n_, table_, {*idx});
    }
    if (auto idx = generator_index(name, "g")) {
      if (!table_->find(name))  // a parameter named g<k> would win otherwise
        return PolyVectorField::basis(n_, table_, {*idx});
    }
    if (table_->find(name)) {
      return PolyVectorField::from_function(
          LaurentPoly::from_scalar(n_, NovikovScalar::parameter(table_, name)));
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::optional<std::size_t> generator_index(const std::string& name, const char* prefix) const {
    if (name.size() < 2 || name[0] != prefix[0]) return std::nullopt;
    for (std::size_t i = 1; i < name.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    std::size_t idx = std::stoul(name.substr(1));
    if (idx < 1 || idx > n_) return std::nullopt;
    return idx;
  }

  bool next_is_generator() const {
    std::size_t p = pos_ + 1;  // character after '^'
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    if (p >= src_.size()) return false;
    if (src_[p] != 'd' && src_[p] != 'g') return false;
    return p + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[p + 1]));
  }

  static bool is_generator(const PolyVectorField& p) {
    return p.terms().size() == 1 && p.terms().begin()->first.size() >= 1 &&
           p.terms().begin()->second.is_one();
  }

  PolyVectorField constant(const Rational& c) const {
    return PolyVectorField::from_function(LaurentPoly::constant(n_, table_, c));
  }

  PolyVectorField multiply(const PolyVectorField& a, const PolyVectorField& b, std::size_t pos) {
    // Products of mixed polyvector factors are wedge products with function
    // coefficients; at most one factor of positive exterior degree appears in
    // the grammar we accept.
    if (a.max_degree() > 0 && b.max_degree() > 0)
      throw ParseError("use '^' to wedge generators", pos);
    return wedge(a, b);
  }

  PolyVectorField power(const PolyVectorField& base, int e, std::size_t start, std::size_t epos) {
    if (base.max_degree() > 0) throw ParseError("cannot exponentiate a wedge generator", start);
    LaurentPoly f(n_, table_);
    for (const auto& [idx, c] : base.terms()) f += c;
    if (e >= 0) return PolyVectorField::from_function(f.pow(e));
    // Negative powers are formal only for single monomials with unit
    // rational content handled at the Laurent level.
    if (f.terms().size() != 1)
      throw ParseError("negative power of a non-monomial", epos);
    const auto& [ze, zc] = *f.terms().begin();
    if (!zc.is_monomial()) throw ParseError("negative power of a non-monomial", epos);
    const auto& [pe, pc] = *zc.terms().begin();
    for (int x : pe)
      if (x != 0) throw ParseError("negative power of a parameter is not representable", epos);
    CoordExponents inv(ze.size());
    for (std::size_t i = 0; i < ze.size(); ++i) inv[i] = ze[i] * e;
    Rational coeff = 1;
    for (int k = 0; k < -e; ++k) coeff /= pc;
    return PolyVectorField::from_function(
        LaurentPoly::monomial(n_, std::move(inv), NovikovScalar::constant(table_, coeff)));
  }

  Integer parse_bigint() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return Integer(src_.substr(start, pos_ - start));
  }

  int parse_integer() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ == start) throw ParseError("expected integer", pos_);
    return std::stoi(src_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string src_;
  std::size_t n_;
  ParameterTablePtr table_;
  std::size_t pos_ = 0;
};

inline PolyVectorField parse_polyvector(const std::string& src, std::size_t coords,
                                        const ParameterTablePtr& table) {
  return ExpressionParser(src, coords, table).parse();
}

/// Parses an expression that must be a plain Laurent polynomial.
inline LaurentPoly parse_expression(const std::string& src, std::size_t coords,
                                    const ParameterTablePtr& table) {
  PolyVectorField p = parse_polyvector(src, coords, table);
  LaurentPoly f(coords, table);
  for (const auto& [idx, c] : p.terms()) {
    if (!idx.empty()) throw ParseError("expected a scalar expression, found a wedge factor", 0);
    f += c;
  }
  return f;
}

/// Parses a coefficient-ring element (no coordinates allowed).
inline NovikovScalar parse_scalar(const std::string& src, const ParameterTablePtr& table) {
  LaurentPoly f = parse_expression(src, 1, table);
  NovikovScalar s(table);
  for (const auto& [e, c] : f.terms()) {
    for (int x : e)
      if (x != 0) throw ParseError("expected a coefficient-ring element, found a coordinate", 0);
    s += c;
  }
  return s;
}

/// Parses a Floer-complex element; wedge generators are the dual classes
/// g1..gN (d1..dN accepted as synonyms) and coordinate monomials are group
/// ring elements z^gamma.
inline FloerClass parse_floer(const std::string& src, std::size_t coords,
                              const ParameterTablePtr& table) {
  PolyVectorField p = parse_polyvector(src, coords, table);
  FloerClass a(coords, table);
  for (const auto& [idx, coeff] : p.terms())
    for (const auto& [ze, zs] : coeff.terms()) a.add_term({ze, idx}, zs);
  return a;
}

/// Parses a product of declared parameters like "qp*qpp" or "q^2" into an
/// exponent vector (rational coefficient must be 1).
inline ParamExponents parse_parameter_monomial(const std::string& src,
                                               const ParameterTablePtr& table) {
  NovikovScalar s = parse_scalar(src, table);
  if (!s.is_monomial() || s.terms().begin()->second != 1)
    throw std::invalid_argument("expected a product of parameters: " + src);
  ParamExponents e = s.terms().begin()->first;
  bool nontrivial = false;
  for (int x : e) nontrivial |= x != 0;
  if (!nontrivial) throw std::invalid_argument("expected a nonconstant parameter monomial: " + src);
  return e;
}

}  // namespace wallcross
