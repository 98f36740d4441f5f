#include <catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace wallcross;
using wctest::Rng;

namespace {

ParameterTablePtr table() { return main_example_parameters(); }
LaurentPoly L(const std::string& e) { return parse_expression(e, 4, table()); }
PolyVectorField P(const std::string& e) { return parse_polyvector(e, 4, table()); }

int sign_pow(std::size_t k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

TEST_CASE("wedge product") {
  CHECK(wedge(P("d1"), P("d2")) == P("d1^d2"));
  CHECK(wedge(P("d2"), P("d1")) == -P("d1^d2"));
  CHECK(wedge(P("d1"), P("d1")).is_zero());
  CHECK(wedge(P("z1*d1"), P("z2*d2")) == P("z1*z2*d1^d2"));
  CHECK(wedge(P("d2^d3"), P("d1")) == P("d1^d2^d3"));

  Rng rng(101);
  auto t = table();
  for (int i = 0; i < 100; ++i) {
    std::size_t p = wctest::rand_int(rng, 0, 2), q = wctest::rand_int(rng, 0, 2),
                r = wctest::rand_int(rng, 0, 2);
    PolyVectorField a = wctest::rand_pvf(rng, 4, t, p);
    PolyVectorField b = wctest::rand_pvf(rng, 4, t, q);
    PolyVectorField c = wctest::rand_pvf(rng, 4, t, r);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(wedge(a, b) == wedge(b, a) * Rational(sign_pow(p * q)));
  }
}

TEST_CASE("interior product with dW") {
  LaurentPoly wmm = assemble_superpotential({false, false}, table());
  // The anchor computation: i_{dW}(qp qpp z4 d1^d2) = qp qpp z4 (z1 d2 - z2 d1).
  CHECK(interior_dW(wmm, P("qp*qpp*z4*d1^d2")) == P("qp*qpp*z1*z4*d2 - qp*qpp*z2*z4*d1"));
  CHECK(interior_dW(wmm, P("z1 + q*z3")).is_zero());  // degree 0 maps to 0
  LaurentPoly wpm = assemble_superpotential({true, false}, table());
  CHECK(interior_dW(wpm, P("qp*qpp*z1*z4*d2")) == P("qp*qpp*z1*z2*z4"));
}

TEST_CASE("interior product is a contraction anti-derivation", "[property]") {
  Rng rng(202);
  auto t = table();
  for (int i = 0; i < 100; ++i) {
    LaurentPoly w = wctest::rand_laurent(rng, 4, t);
    std::size_t p = wctest::rand_int(rng, 0, 2), q = wctest::rand_int(rng, 0, 2);
    PolyVectorField a = wctest::rand_pvf(rng, 4, t, p);
    PolyVectorField b = wctest::rand_pvf(rng, 4, t, q);
    CHECK(interior_dW(w, wedge(a, b)) ==
          wedge(interior_dW(w, a), b) + wedge(a, interior_dW(w, b)) * Rational(sign_pow(p)));
    CHECK(interior_dW(w, interior_dW(w, wctest::rand_pvf(rng, 4, t, 2))).is_zero());
  }
}

TEST_CASE("schouten bracket anchor values") {
  CHECK(schouten(P("z1*d1"), P("z2*d2")).is_zero());
  CHECK(schouten(P("d1^d2"), P("d3")).is_zero());  // constant wedges commute
  CHECK(schouten(P("z2*d1"), P("z1*d2")) == P("z1*z2*d2 - z1*z2*d1"));
}

TEST_CASE("schouten characterizing properties", "[property]") {
  Rng rng(20240813);
  auto t = table();
  auto coordinate = [&](std::size_t k) { return LaurentPoly::coordinate(4, t, k); };

  SECTION("[X, f] = i_df(X) on vector fields and functions") {
    for (int i = 0; i < 120; ++i) {
      PolyVectorField x = wctest::rand_pvf(rng, 4, t, 1);
      LaurentPoly f = wctest::rand_laurent(rng, 4, t);
      CHECK(schouten(x, PolyVectorField::from_function(f)) == interior_dW(f, x));
    }
  }

  SECTION("[X, Y] is the Lie bracket, checked on coordinate functions") {
    for (int i = 0; i < 120; ++i) {
      PolyVectorField x = wctest::rand_pvf(rng, 4, t, 1);
      PolyVectorField y = wctest::rand_pvf(rng, 4, t, 1);
      PolyVectorField xy = schouten(x, y);
      for (std::size_t k = 1; k <= 4; ++k) {
        LaurentPoly zk = coordinate(k);
        LaurentPoly lie = apply_vector_field(x, apply_vector_field(y, zk)) -
                          apply_vector_field(y, apply_vector_field(x, zk));
        CHECK(apply_vector_field(xy, zk) == lie);
      }
    }
  }

  SECTION("graded antisymmetry") {
    for (int i = 0; i < 120; ++i) {
      std::size_t p = wctest::rand_int(rng, 0, 3), q = wctest::rand_int(rng, 0, 3);
      PolyVectorField a = wctest::rand_pvf(rng, 4, t, p);
      PolyVectorField b = wctest::rand_pvf(rng, 4, t, q);
      CHECK(schouten(a, b) ==
            schouten(b, a) * Rational(-sign_pow((p + 1) * (q + 1))));
    }
  }

  SECTION("Leibniz in the second slot") {
    for (int i = 0; i < 120; ++i) {
      std::size_t p = wctest::rand_int(rng, 0, 2), q = wctest::rand_int(rng, 0, 2),
                  r = wctest::rand_int(rng, 0, 2);
      PolyVectorField a = wctest::rand_pvf(rng, 4, t, p);
      PolyVectorField b = wctest::rand_pvf(rng, 4, t, q);
      PolyVectorField c = wctest::rand_pvf(rng, 4, t, r);
      CHECK(schouten(a, wedge(b, c)) ==
            wedge(schouten(a, b), c) +
                wedge(b, schouten(a, c)) * Rational(sign_pow((p + 1) * q)));
    }
  }

  SECTION("Leibniz in the first slot") {
    for (int i = 0; i < 120; ++i) {
      std::size_t p = wctest::rand_int(rng, 0, 2), q = wctest::rand_int(rng, 0, 2),
                  r = wctest::rand_int(rng, 0, 2);
      PolyVectorField a = wctest::rand_pvf(rng, 4, t, p);
      PolyVectorField b = wctest::rand_pvf(rng, 4, t, q);
      PolyVectorField c = wctest::rand_pvf(rng, 4, t, r);
      CHECK(schouten(wedge(a, c), b) ==
            wedge(a, schouten(c, b)) +
                wedge(schouten(a, b), c) * Rational(sign_pow((q + 1) * r)));
    }
  }

  SECTION("graded Jacobi identity") {
    for (int i = 0; i < 120; ++i) {
      std::size_t p = wctest::rand_int(rng, 0, 2), q = wctest::rand_int(rng, 0, 2),
                  r = wctest::rand_int(rng, 0, 2);
      PolyVectorField a = wctest::rand_pvf(rng, 4, t, p, 1);
      PolyVectorField b = wctest::rand_pvf(rng, 4, t, q, 1);
      PolyVectorField c = wctest::rand_pvf(rng, 4, t, r, 1);
      CHECK(schouten(schouten(a, b), c) ==
            schouten(a, schouten(b, c)) -
                schouten(b, schouten(a, c)) * Rational(sign_pow((p + 1) * (q + 1))));
    }
  }
}

TEST_CASE("iota_gamma contraction") {
  auto t = table();
  FloerClass g12 = parse_floer("g1^g2", 4, t);
  CHECK(iota_gamma({1, 0, 0, 0}, g12) == parse_floer("g2", 4, t));
  CHECK(iota_gamma({0, 1, 0, 0}, g12) == -parse_floer("g1", 4, t));
  CHECK(iota_gamma({1, 2, 0, 0}, parse_floer("1", 4, t)).is_zero());
  // coefficients scale by the class pairing
  CHECK(iota_gamma({0, -3, 0, 0}, g12) == parse_floer("3*g1", 4, t));
}

TEST_CASE("floer bracket examples") {
  auto t = table();
  FloerClass a = parse_floer("z1*g1", 4, t);
  FloerClass b = parse_floer("z2*g2", 4, t);
  CHECK(hf_bracket(a, b).is_zero());
  FloerClass c = parse_floer("z1*g2", 4, t);
  FloerClass d = parse_floer("z2*g1", 4, t);
  CHECK(hf_bracket(c, d) == parse_floer("z1*z2*g2 - z1*z2*g1", 4, t));
}

TEST_CASE("floer bracket is symmetric on even elements", "[property]") {
  Rng rng(303);
  auto t = table();
  for (int i = 0; i < 100; ++i) {
    std::size_t p = 2 * wctest::rand_int(rng, 0, 1);
    std::size_t q = 2 * wctest::rand_int(rng, 0, 1);
    FloerClass a = wctest::rand_floer(rng, 4, t, p);
    FloerClass b = wctest::rand_floer(rng, 4, t, q);
    CHECK(hf_bracket(a, b) == hf_bracket(b, a));
  }
}

TEST_CASE("correspondence relabeling") {
  auto t = table();
  CHECK(correspondence(parse_floer("z1*z3^-1*g1", 4, t)) == P("z1*z3^-1*d1"));
  CHECK(correspondence(FloerClass::zero(4, t)).is_zero());
  FloerClass c = parse_floer("z1*g2", 4, t);
  FloerClass d = parse_floer("z2*g1", 4, t);
  CHECK(correspondence(hf_bracket(c, d)) == P("z1*z2*d2 - z1*z2*d1"));
}

TEST_CASE("correspondence intertwines the brackets", "[property]") {
  // corr({a, b}) = -[corr(a), corr(b)]
  Rng rng(20240814);
  auto t = table();
  int checked = 0;
  for (int i = 0; i < 140; ++i) {
    std::size_t p = wctest::rand_int(rng, 0, 3), q = wctest::rand_int(rng, 0, 3);
    FloerClass a = wctest::rand_floer(rng, 4, t, p);
    FloerClass b = wctest::rand_floer(rng, 4, t, q);
    PolyVectorField lhs = correspondence(hf_bracket(a, b));
    PolyVectorField rhs = -schouten(correspondence(a), correspondence(b));
    CHECK(lhs == rhs);
    ++checked;
  }
  CHECK(checked >= 100);
}
