#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wallcross/report.hpp"
#include "wallcross/scenario.hpp"

namespace wallcross {

struct RunOptions {
  Cutoff cutoff = Rational(20);            // used where exact evaluation is impossible
  std::optional<std::string> kill;         // parameter monomial to set to zero
};

namespace detail {

/// Evaluate exactly when possible, falling back to the configured cutoff
/// when a geometric series is required.
template <typename F>
auto exact_or_truncated(F&& f, const Cutoff& cutoff) {
  try {
    return f(no_cutoff);
  } catch (const std::domain_error&) {
    return f(cutoff);
  }
}

inline void append_check(Report& report, const Scenario& sc, const std::string& id,
                         const std::string& location, const PolyVectorField& residual,
                         const PolyVectorField* defect_artifact = nullptr) {
  CheckResult c;
  c.id = id;
  c.location = location;
  const PolyVectorField& artifact = defect_artifact ? *defect_artifact : residual;
  auto it = sc.expectations.find(id);
  bool expect_defect = it != sc.expectations.end() && it->second.is_defect;
  if (residual.is_zero()) {
    c.status = expect_defect ? CheckStatus::Fail : CheckStatus::Pass;
    if (expect_defect) c.note = "expected a defect, found none";
  } else {
    PolyVectorField lead = artifact.leading_part();
    c.residual = lead.to_string();
    Valuation v = artifact.valuation();
    if (v) c.valuation = rational_to_string(*v);
    if (expect_defect) {
      PolyVectorField want = parse_polyvector(it->second.defect_expr, sc.coords, sc.table);
      if (lead == want) {
        c.status = CheckStatus::ExpectedDefect;
      } else {
        c.status = CheckStatus::Fail;
        c.note = "leading defect differs from expected " + it->second.defect_expr;
      }
    } else {
      c.status = CheckStatus::Fail;
    }
  }
  report.checks.push_back(std::move(c));
}

inline PolyVectorField as_pvf(const LaurentPoly& f) { return PolyVectorField::from_function(f); }

/// Expected-defect annotations whose leading term dies under the kill
/// monomial flip to plain pass expectations.
inline void apply_kill_to_expectations(Scenario& sc, const ParamExponents& monomial) {
  for (auto& [key, e] : sc.expectations) {
    if (!e.is_defect) continue;
    PolyVectorField want = parse_polyvector(e.defect_expr, sc.coords, sc.table);
    if (want.kill_divisible(monomial).is_zero()) e = Expectation{};
  }
}

}  // namespace detail

/// Runs every check of a scenario: wall gluing, cell consistency, ledger,
/// master-equation components, bidegree diagonality, declared symmetries.
/// Checks are emitted in a fixed order; statuses compare against the
/// scenario's expected outcomes.
inline Report run_scenario(Scenario sc, const RunOptions& options = {}) {
  Report report;
  report.scenario = sc.name;

  if (options.kill) {
    ParamExponents monomial = parse_parameter_monomial(*options.kill, sc.table);
    sc.diagram = sc.diagram.kill_divisible(monomial);
    if (sc.ledger) {
      sc.ledger->w0 = sc.ledger->w0.kill_divisible(monomial);
      sc.ledger->w1 = sc.ledger->w1.kill_divisible(monomial);
      sc.ledger->w2 = sc.ledger->w2.kill_divisible(monomial);
    }
    detail::apply_kill_to_expectations(sc, monomial);
  }

  // Wall gluing.
  for (const auto& id : sc.diagram.wall_order()) {
    auto residual = detail::exact_or_truncated(
        [&](const Cutoff& c) { return sc.diagram.gluing_residual(id, c); }, options.cutoff);
    if (!residual) continue;
    detail::append_check(report, sc, "gluing." + id, id, detail::as_pvf(*residual));
  }

  // Cell consistency; the reported artifact is the defect vector field.
  for (const auto& cell : sc.diagram.cells()) {
    DefectReport dr = detail::exact_or_truncated(
        [&](const Cutoff& c) { return sc.diagram.check_cell(cell, c); }, options.cutoff);
    PolyVectorField residual(sc.coords, sc.table);
    for (std::size_t i = 1; i <= sc.coords; ++i)
      if (!dr.residuals[i - 1].is_zero()) residual.add_term({i}, dr.residuals[i - 1]);
    if (dr.consistent()) {
      detail::append_check(report, sc, "cell." + cell.id, cell.id, residual);
    } else {
      PolyVectorField field = defect_as_field(dr, sc.coords, sc.table);
      detail::append_check(report, sc, "cell." + cell.id, cell.id, residual, &field);
    }
  }

  // Hochschild ledger.
  if (sc.ledger) {
    for (const auto& entry : check_hochschild_ledger(sc.diagram, *sc.ledger))
      detail::append_check(report, sc, entry.id, entry.location, entry.residual);
  }

  // Master-equation component checks for the assembled cochain.
  {
    CechCochain w = assemble_master_cochain(sc.diagram, sc.nerve,
                                            sc.ledger ? &sc.ledger->w2 : nullptr);
    MasterReport mr = check_master(w, options.cutoff);
    for (const auto& entry : mr.components)
      detail::append_check(report, sc, entry.id, entry.location, entry.residual);
  }

  // Weak family unobstructedness of the ledger cochain.
  if (sc.ledger) {
    CechCochain total = sc.ledger->w0 + sc.ledger->w1 + sc.ledger->w2;
    UnobstructednessReport ur = check_weak_unobstructed(total);
    CheckResult c;
    c.id = "unobstructed";
    c.status = ur.diagonal ? CheckStatus::Pass : CheckStatus::Fail;
    if (!ur.diagonal) c.note = ur.violations.front();
    report.checks.push_back(std::move(c));
  }

  // Coordinate-inversion symmetries (compact example).
  for (std::size_t i : sc.symmetry_coords()) {
    std::string param = "q" + std::to_string(i);
    Substitution inv = coordinate_inversion(i, param, sc.table, sc.coords);
    PolyVectorField residual(sc.coords, sc.table);
    std::string where;
    for (const auto& label : sc.diagram.chart_order()) {
      const auto& w = sc.diagram.chart(label).superpotential;
      if (!w) continue;
      std::string flipped = flip_chamber_label(label, i);
      const auto& wf = sc.diagram.chart(flipped).superpotential;
      if (!wf) continue;
      LaurentPoly diff = inv.pullback(*w) - *wf;
      if (!diff.is_zero() && residual.is_zero()) {
        residual = detail::as_pvf(diff);
        where = label + "->" + flipped;
      }
    }
    detail::append_check(report, sc, "symmetry.z" + std::to_string(i), where, residual);
  }

  return report;
}

}  // namespace wallcross
