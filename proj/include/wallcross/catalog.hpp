#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wallcross/cech.hpp"
#include "wallcross/parser.hpp"
#include "wallcross/scattering.hpp"

namespace wallcross {

/// Degrees of a stable disc class: Blaschke degrees n1..n4, contact orders
/// k0/kinf with the blown-up loci, and the total multiplicity m of sphere
/// components over the torus-invariant rational curve.
struct DiscClass {
  int n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  int k0 = 0, kinf = 0;
  int m = 0;
};

/// Maslov index of a disc class. Sphere-carrying configurations with
/// n1 = n2 = n3 = 0 contribute 2 n4 - 4 m; otherwise the index is twice the
/// intersection count with the anticanonical divisor, corrected by the
/// contact orders with the exceptional loci.
inline int maslov_index(const DiscClass& c) {
  if (c.n1 < 0 || c.n2 < 0 || c.n3 < 0 || c.n4 < 0 || c.k0 < 0 || c.kinf < 0 || c.m < 0)
    throw std::invalid_argument("maslov_index: negative entry");
  if (c.m > 0 && c.n1 == 0 && c.n2 == 0 && c.n3 == 0) return 2 * c.n4 - 4 * c.m;
  return 2 * (c.n1 + c.n2 + c.n3 + c.n4 - c.k0 - c.kinf);
}

/// Maslov index of a stable configuration from total intersection data.
inline int maslov_index_sum(int N1, int N2, int N34, int K0, int Kinf) {
  return 2 * (N1 + N2 + N34 - K0 - Kinf);
}

/// Chamber of the base, indexed by the signs of r1 - 1 and r2 - 1.
struct Chamber {
  bool r1_big = false;  // '+' iff r1 > 1
  bool r2_big = false;

  std::string label() const {
    return std::string(1, r1_big ? 'p' : 'm') + std::string(1, r2_big ? 'p' : 'm');
  }
};

inline ParameterTablePtr main_example_parameters() {
  return std::make_shared<ParameterTable>(
      std::vector<std::string>{"q", "qp", "qpp"},
      std::vector<Rational>{Rational(1), Rational(2, 3), Rational(3, 4)});
}

inline ParameterTablePtr compact_example_parameters() {
  return std::make_shared<ParameterTable>(
      std::vector<std::string>{"q", "qp", "qpp", "q1", "q2", "q4"},
      std::vector<Rational>{Rational(1), Rational(2, 3), Rational(3, 4), Rational(3), Rational(3),
                            Rational(2)});
}

/// Chamber-by-chamber superpotential assembly: the three disc-count tables
/// (no z3/z4 hits; one z4 hit; one z3 hit) summed per chamber.
inline LaurentPoly assemble_superpotential(const Chamber& ch, const ParameterTablePtr& table) {
  auto lp = [&](const std::string& s) { return parse_expression(s, 4, table); };
  LaurentPoly w = lp("z1 + z2");
  // Discs along the z4 axis, with sphere attachments opening up per chamber.
  w += lp("(1 + q^2)*z4");
  if (ch.r2_big) w += lp("q*qp*z2*z4");
  if (ch.r1_big) w += lp("q*qpp*z1*z4");
  if (ch.r1_big && ch.r2_big) w += lp("qp*qpp*z1*z2*z4");
  // Discs with one z3 zero or pole.
  w += lp("q*z3*z4 + q*z3^-1*z4");
  if (ch.r2_big) w += lp("qp*z2*z3*z4");
  if (ch.r1_big) w += lp("qpp*z1*z3^-1*z4");
  return w;
}

inline std::vector<Chamber> all_chambers() {
  return {{false, false}, {false, true}, {true, false}, {true, true}};
}

namespace detail {

inline Substitution unit_wall(std::size_t coord, const std::string& unit_expr,
                              const ParameterTablePtr& table) {
  return Substitution::unit_rescale(4, table, coord, parse_expression(unit_expr, 4, table));
}

}  // namespace detail

struct MainExample {
  ScatteringDiagram diagram;
  NervePtr nerve;
  Ledger ledger;
};

/// The four-chart blowup example: superpotentials on every chart, four walls
/// glued pairwise, one corner cell, and the deformation ledger (w0, w1, w2).
inline MainExample build_main_example() {
  ParameterTablePtr table = main_example_parameters();
  ScatteringDiagram d(4, table);
  for (const Chamber& ch : all_chambers())
    d.add_chart({ch.label(), assemble_superpotential(ch, table)});
  d.add_wall({"m0", "mm", "mp", detail::unit_wall(2, "1 + q*qp*z4 + qp*z3*z4", table)});
  d.add_wall({"p0", "pm", "pp",
              detail::unit_wall(2, "1 + q*qp*z4 + qp*z3*z4 + qp*qpp*z1*z4", table)});
  d.add_wall({"0m", "mm", "pm", detail::unit_wall(1, "1 + q*qpp*z4 + qpp*z3^-1*z4", table)});
  d.add_wall({"0p", "mp", "pp",
              detail::unit_wall(1, "1 + q*qpp*z4 + qpp*z3^-1*z4 + qp*qpp*z2*z4", table)});
  d.add_cell({"corner", {"m0", "0p"}, {"0m", "p0"}});

  auto nerve = std::make_shared<Nerve>(Nerve::of_diagram(d));
  CechCochain w0(nerve, 4, table), w1(nerve, 4, table), w2(nerve, 4, table);
  w0.set_vertex("pp",
                PolyVectorField::from_function(parse_expression("qp*qpp*z1*z2*z4", 4, table)));
  w1.set_edge("p0", parse_polyvector("qp*qpp*z1*z4*d2", 4, table));
  w1.set_edge("0p", parse_polyvector("qp*qpp*z2*z4*d1", 4, table));
  w2.set_face("corner", parse_polyvector("qp*qpp*z4*d1^d2", 4, table));
  return {std::move(d), nerve, {std::move(w0), std::move(w1), std::move(w2)}};
}

/// The mirror of the divisor complement: same four charts (no
/// superpotentials), simpler wall-crossings, consistent diagram.
inline ScatteringDiagram build_open_mirror() {
  ParameterTablePtr table = main_example_parameters();
  ScatteringDiagram d(4, table);
  for (const Chamber& ch : all_chambers()) d.add_chart({ch.label(), std::nullopt});
  d.add_wall({"m0", "mm", "mp", detail::unit_wall(2, "1 + qp*z3*z4", table)});
  d.add_wall({"p0", "pm", "pp", detail::unit_wall(2, "1 + qp*z3*z4", table)});
  d.add_wall({"0m", "mm", "pm", detail::unit_wall(1, "1 + qpp*z3^-1*z4", table)});
  d.add_wall({"0p", "mp", "pp", detail::unit_wall(1, "1 + qpp*z3^-1*z4", table)});
  d.add_cell({"corner", {"m0", "0p"}, {"0m", "p0"}});
  return d;
}

/// The compactified example: all coordinates acquire inverse terms weighted
/// by the compactification parameters q1, q2, q4.
inline ScatteringDiagram build_compact_example() {
  ParameterTablePtr table = compact_example_parameters();
  auto lp = [&](const std::string& s) { return parse_expression(s, 4, table); };
  ScatteringDiagram d(4, table);
  std::string fiber = "(1 + q^2 + q*z3 + q*z3^-1)*z4 + q4*z4^-1";
  d.add_chart({"mm", lp("z1 + q1*z1^-1*(1 + q*qpp*z4 + qpp*z3^-1*z4)"
                        " + z2 + q2*z2^-1*(1 + q*qp*z4 + qp*z3*z4)"
                        " + q1*q2*qp*qpp*z1^-1*z2^-1*z4 + " +
                        fiber)});
  d.add_chart({"mp", lp("z1 + q1*z1^-1*(1 + q*qpp*z4 + qpp*z3^-1*z4)"
                        " + z2*(1 + q*qp*z4 + qp*z3*z4) + q2*z2^-1"
                        " + q1*qp*qpp*z1^-1*z2*z4 + " +
                        fiber)});
  d.add_chart({"pm", lp("z1*(1 + q*qpp*z4 + qpp*z3^-1*z4) + q1*z1^-1"
                        " + z2 + q2*z2^-1*(1 + q*qp*z4 + qp*z3*z4)"
                        " + q2*qp*qpp*z1*z2^-1*z4 + " +
                        fiber)});
  d.add_chart({"pp", lp("z1*(1 + q*qpp*z4 + qpp*z3^-1*z4) + q1*z1^-1"
                        " + z2*(1 + q*qp*z4 + qp*z3*z4) + q2*z2^-1"
                        " + qp*qpp*z1*z2*z4 + " +
                        fiber)});
  d.add_wall({"m0", "mm", "mp",
              detail::unit_wall(2, "1 + q*qp*z4 + qp*z3*z4 + q1*qp*qpp*z1^-1*z4", table)});
  d.add_wall({"p0", "pm", "pp",
              detail::unit_wall(2, "1 + q*qp*z4 + qp*z3*z4 + qp*qpp*z1*z4", table)});
  d.add_wall({"0m", "mm", "pm",
              detail::unit_wall(1, "1 + q*qpp*z4 + qpp*z3^-1*z4 + q2*qp*qpp*z2^-1*z4", table)});
  d.add_wall({"0p", "mp", "pp",
              detail::unit_wall(1, "1 + q*qpp*z4 + qpp*z3^-1*z4 + qp*qpp*z2*z4", table)});
  d.add_cell({"corner", {"m0", "0p"}, {"0m", "p0"}});
  return d;
}

/// The involution z_i -> q_i z_i^{-1} (coordinate i paired with its
/// compactification parameter), fixing the other coordinates.
inline Substitution coordinate_inversion(std::size_t i, const std::string& parameter,
                                         const ParameterTablePtr& table, std::size_t n = 4) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
  for (std::size_t j = 0; j < n; ++j) m[j][j] = (j == i - 1) ? -1 : 1;
  std::vector<NovikovScalar> coeffs(n, NovikovScalar::one(table));
  coeffs[i - 1] = NovikovScalar::parameter(table, parameter);
  std::vector<LaurentPoly> units(n, LaurentPoly::one(n, table));
  return Substitution(n, table, std::move(m), std::move(coeffs), std::move(units));
}

/// Chart relabeling induced by flipping the sign of chamber coordinate i in
/// the two-letter labels (mm <-> pm for i = 1, etc).
inline std::string flip_chamber_label(const std::string& label, std::size_t i) {
  if (label.size() != 2 || i < 1 || i > 2)
    throw std::invalid_argument("flip_chamber_label: need a two-sign chart label");
  std::string out = label;
  out[i - 1] = out[i - 1] == 'm' ? 'p' : 'm';
  return out;
}

}  // namespace wallcross
