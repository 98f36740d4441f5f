#include <catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace wallcross;
using wctest::Rng;

namespace {

ParameterTablePtr table() { return main_example_parameters(); }

NovikovScalar S(const std::string& e) { return parse_scalar(e, table()); }
LaurentPoly L(const std::string& e, ParameterTablePtr t = table()) {
  return parse_expression(e, 4, t);
}

}  // namespace

TEST_CASE("scalar ring operations") {
  CHECK(S("q") + S("q") == S("2*q"));
  CHECK(S("qp*qpp") + S("0") == S("qp*qpp"));
  CHECK(S("1 + q^2") + S("q^2") == S("1 + 2*q^2"));
  CHECK(S("q") * S("q") == S("q^2"));
  CHECK(S("qp") * S("qpp") == S("qp*qpp"));
  CHECK(S("1 + q^2") * S("q") == S("q + q^3"));
  CHECK((S("q") - S("q")).is_zero());
}

TEST_CASE("scalar valuation") {
  CHECK(S("q^2").valuation() == Valuation(Rational(2)));
  // val(qp) = 2/3, val(qpp) = 3/4 under the default weights.
  CHECK(S("qp*qpp").valuation() == Valuation(Rational(17, 12)));
  CHECK_FALSE(S("0").valuation().has_value());  // +infinity
  CHECK(S("1 + q^2").valuation() == Valuation(Rational(0)));
}

TEST_CASE("scalar valuation properties", "[property]") {
  Rng rng(20240811);
  auto t = table();
  for (int i = 0; i < 200; ++i) {
    NovikovScalar a = wctest::rand_scalar(rng, t, 3);
    NovikovScalar b = wctest::rand_scalar(rng, t, 3);
    if (a.is_zero() || b.is_zero()) continue;
    // No zero divisors over the rationals.
    NovikovScalar ab = a * b;
    REQUIRE_FALSE(ab.is_zero());
    CHECK(*ab.valuation() == *a.valuation() + *b.valuation());
    NovikovScalar sum = a + b;
    if (!sum.is_zero())
      CHECK(*sum.valuation() >= std::min(*a.valuation(), *b.valuation()));
  }
}

TEST_CASE("scalar truncation") {
  CHECK(S("1 + q^2").truncate(Rational(2)) == S("1"));
  CHECK(S("qp*qpp").truncate(Rational(1)).is_zero());
  CHECK(S("1 + q^2 + qp").truncate(no_cutoff) == S("1 + q^2 + qp"));

  Rng rng(7);
  auto t = table();
  Cutoff c = Rational(3, 2);
  for (int i = 0; i < 100; ++i) {
    NovikovScalar a = wctest::rand_scalar(rng, t, 3);
    NovikovScalar b = wctest::rand_scalar(rng, t, 3);
    CHECK(a.truncate(c).truncate(c) == a.truncate(c));                 // idempotent
    CHECK((a + b).truncate(c) == a.truncate(c) + b.truncate(c));       // additive
  }
}

TEST_CASE("scalar division and kill") {
  CHECK(S("q^2*qp").divide_exact(S("q")) == S("q*qp"));
  CHECK_THROWS_AS(S("q + qp").divide_exact(S("q")), std::domain_error);
  ParamExponents qpqpp = parse_parameter_monomial("qp*qpp", table());
  CHECK(S("1 + qp*qpp + q*qp^2*qpp").kill_divisible(qpqpp) == S("1"));
  CHECK(S("qp + qpp").kill_divisible(qpqpp) == S("qp + qpp"));
}

TEST_CASE("laurent ring operations") {
  CHECK(L("z1") * L("z1^-1") == L("1"));
  CHECK(L("z1 + z2") * L("z1 + z2") == L("z1^2 + 2*z1*z2 + z2^2"));
  CHECK(L("q*z3*z4") * L("q*z3^-1*z4") == L("q^2*z4^2"));
  CHECK(L("z1 + z2") - L("z2") == L("z1"));
}

TEST_CASE("log derivative") {
  CHECK(L("z1 + z2").log_derivative(1) == L("z1"));
  CHECK(L("q*z3^-1*z4").log_derivative(3) == L("-q*z3^-1*z4"));
  LaurentPoly wpm = assemble_superpotential({true, false}, table());
  CHECK(wpm.log_derivative(2) == L("z2"));
  CHECK_THROWS_AS(L("z1").log_derivative(9), std::out_of_range);

  Rng rng(11);
  auto t = table();
  for (int i = 0; i < 100; ++i) {
    LaurentPoly f = wctest::rand_laurent(rng, 4, t);
    LaurentPoly g = wctest::rand_laurent(rng, 4, t);
    std::size_t k = 1 + i % 4;
    CHECK((f * g).log_derivative(k) ==
          f.log_derivative(k) * g + f * g.log_derivative(k));  // Leibniz
  }
}

TEST_CASE("substitution admissibility") {
  auto t = table();
  CHECK_THROWS_AS(Substitution::unit_rescale(4, t, 2, L("1 + z4")), std::invalid_argument);
  CHECK_THROWS_AS(Substitution::unit_rescale(4, t, 2, L("2 + q*z4")), std::invalid_argument);
  std::vector<std::vector<int>> notunimodular(4, std::vector<int>(4, 0));
  notunimodular[0][0] = 2;
  notunimodular[1][1] = notunimodular[2][2] = notunimodular[3][3] = 1;
  CHECK_THROWS_AS(Substitution(4, t, notunimodular,
                               std::vector<NovikovScalar>(4, NovikovScalar::one(t)),
                               std::vector<LaurentPoly>(4, LaurentPoly::one(4, t))),
                  std::invalid_argument);
  CHECK(Substitution::unit_rescale(4, t, 2, L("1 + q*z4")).unit(2) == L("1 + q*z4"));
}

TEST_CASE("pullback basics") {
  auto t = table();
  Substitution id = Substitution::identity(4, t);
  LaurentPoly f = L("z1 + q*z2^-2*z3");
  CHECK(id.pullback(f) == f);

  Substitution s = Substitution::unit_rescale(4, t, 2, L("1 + q*z4"));
  CHECK(s.pullback(L("z2^-1"), Rational(3)) == L("z2^-1*(1 - q*z4 + q^2*z4^2)"));
  CHECK_THROWS_AS(s.pullback(L("z2^-1"), no_cutoff), std::domain_error);
  // Positive powers of units stay exact.
  CHECK(s.pullback(L("z2^2")) == L("z2^2*(1 + q*z4)*(1 + q*z4)"));
}

TEST_CASE("pullback is a ring homomorphism", "[property]") {
  Rng rng(20240812);
  auto t = table();
  Cutoff c = Rational(4);
  for (int i = 0; i < 60; ++i) {
    Substitution s = wctest::rand_unit_substitution(rng, 4, t);
    LaurentPoly f = wctest::rand_laurent(rng, 4, t);
    LaurentPoly g = wctest::rand_laurent(rng, 4, t);
    CHECK(s.pullback(f + g, c) == (s.pullback(f, c) + s.pullback(g, c)).truncate(c));
    CHECK(s.pullback(f * g, c) == (s.pullback(f, c) * s.pullback(g, c)).truncate(c));
  }
}

TEST_CASE("pullback matches the brute-force oracle", "[property]") {
  Rng rng(987);
  auto t = table();
  Rational c(4);
  for (int i = 0; i < 40; ++i) {
    Substitution s = wctest::rand_unit_substitution(rng, 4, t);
    LaurentPoly f = wctest::rand_laurent(rng, 4, t);
    CHECK(s.pullback(f, c) == wctest::oracle_pullback(f, s, c));
  }
}

TEST_CASE("compose on the main example walls") {
  MainExample ex = build_main_example();
  const auto& d = ex.diagram;
  Substitution through_mp = compose(d.wall("m0").subst, d.wall("0p").subst);
  CHECK(through_mp.image(1) == L("z1*(1 + q*qpp*z4 + qpp*z3^-1*z4 + qp*qpp*z2*z4)"));
  CHECK(through_mp.image(2) == L("z2*(1 + q*qp*z4 + qp*z3*z4)"));
  Substitution through_pm = compose(d.wall("0m").subst, d.wall("p0").subst);
  CHECK(through_pm.image(1) == L("z1*(1 + q*qpp*z4 + qpp*z3^-1*z4)"));
  CHECK(through_pm.image(2) == L("z2*(1 + q*qp*z4 + qp*z3*z4 + qp*qpp*z1*z4)"));

  Substitution id = Substitution::identity(4, d.table());
  CHECK(compose(d.wall("m0").subst, id) == d.wall("m0").subst);
  CHECK(compose(id, d.wall("m0").subst) == d.wall("m0").subst);
}

TEST_CASE("compose properties", "[property]") {
  Rng rng(55);
  auto t = table();
  Cutoff c = Rational(4);
  for (int i = 0; i < 40; ++i) {
    Substitution a = wctest::rand_unit_substitution(rng, 4, t);
    Substitution b = wctest::rand_unit_substitution(rng, 4, t);
    Substitution s3 = wctest::rand_unit_substitution(rng, 4, t);
    LaurentPoly f = wctest::rand_laurent(rng, 4, t, 2, 1);
    // pullback through a composite = iterated pullback, at a shared cutoff
    CHECK(compose(a, b, c).pullback(f, c) == b.pullback(a.pullback(f, c), c));
    // associativity
    CHECK(compose(compose(a, b, c), s3, c) == compose(a, compose(b, s3, c), c));
  }
}

TEST_CASE("substitutions are valuation-compatible", "[property]") {
  // Leading valuation of the pullback of a monomial at a point equals the
  // affine image of the point: <w, M x> + sum_i w_i val(coeff_i).
  Rng rng(321);
  MainExample ex = build_main_example();
  auto t = ex.diagram.table();
  for (const auto& id : ex.diagram.wall_order()) {
    const Substitution& s = ex.diagram.wall(id).subst;
    for (int i = 0; i < 25; ++i) {
      CoordExponents w(4);
      for (auto& x : w) x = wctest::rand_int(rng, -2, 2);
      std::vector<Rational> x;
      for (int k = 0; k < 4; ++k) x.push_back(Rational(wctest::rand_int(rng, 0, 4), 3));
      LaurentPoly mono = LaurentPoly::monomial(4, w, NovikovScalar::one(t));
      LaurentPoly img = s.pullback(mono, Rational(30));
      Rational expected = 0;
      for (int r = 0; r < 4; ++r) {
        Rational row = 0;
        for (int cidx = 0; cidx < 4; ++cidx) row += Rational(s.matrix()[r][cidx]) * x[cidx];
        if (auto v = s.coeff(r + 1).valuation()) row += *v;
        expected += Rational(w[r]) * row;
      }
      REQUIRE(img.valuation_at(x).has_value());
      CHECK(*img.valuation_at(x) == expected);
    }
  }
}

TEST_CASE("leading residual reporting") {
  LaurentPoly diff = L("q^2*z1 + qp*z2");
  LaurentPoly lead = diff.leading_part();
  CHECK(lead == L("qp*z2"));  // val(qp) = 2/3 < 2
  CHECK(diff.valuation() == Valuation(Rational(2, 3)));
}

TEST_CASE("coordinate inversion substitution") {
  auto t = compact_example_parameters();
  Substitution inv = coordinate_inversion(1, "q1", t);
  LaurentPoly f = parse_expression("z1 + q1*z1^-1", 4, t);
  CHECK(inv.pullback(f) == parse_expression("q1*z1^-1 + z1", 4, t));
  // Terms without the matching parameter cannot be inverted exactly.
  CHECK_THROWS_AS(inv.pullback(parse_expression("z1^-1", 4, t)), std::domain_error);
}
