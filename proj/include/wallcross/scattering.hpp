#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wallcross/polyvector.hpp"
#include "wallcross/substitution.hpp"

namespace wallcross {

struct Chart {
  std::string label;
  std::optional<LaurentPoly> superpotential;
};

/// Directed wall A -> B carrying the gluing substitution phi with
/// pullback(W_A, phi) = W_B: phi rewrites expressions on chart A in the
/// coordinates of chart B.
struct Wall {
  std::string id;
  std::string src;
  std::string dst;
  Substitution subst;
};

/// A 2-cell bounded by two directed wall paths sharing endpoints. The first
/// path is the one through the (-,+)-type chart; the cell defect is defined
/// as (first path) minus (second path).
struct Cell {
  std::string id;
  std::vector<std::string> path1;
  std::vector<std::string> path2;
};

/// Residuals of the cocycle check around a 2-cell.
struct DefectReport {
  std::vector<LaurentPoly> residuals;  // per coordinate, path1 - path2 images
  Valuation leading_valuation;         // min over residuals; empty if all zero
  bool consistent() const {
    for (const auto& r : residuals)
      if (!r.is_zero()) return false;
    return true;
  }
};

/// Charts + walls + 2-cells in one shared global coordinate system.
class ScatteringDiagram {
 public:
  ScatteringDiagram(std::size_t n, ParameterTablePtr table)
      : n_(n), table_(std::move(table)) {}

  std::size_t coords() const { return n_; }
  const ParameterTablePtr& table() const { return table_; }

  void add_chart(Chart chart) {
    if (charts_.count(chart.label)) throw std::invalid_argument("duplicate chart " + chart.label);
    chart_order_.push_back(chart.label);
    charts_.emplace(chart.label, std::move(chart));
  }

  void add_wall(Wall wall) {
    if (!charts_.count(wall.src) || !charts_.count(wall.dst))
      throw std::invalid_argument("wall " + wall.id + ": endpoint chart not declared");
    if (walls_.count(wall.id)) throw std::invalid_argument("duplicate wall " + wall.id);
    wall_order_.push_back(wall.id);
    walls_.emplace(wall.id, std::move(wall));
  }

  void add_cell(Cell cell) {
    validate_path(cell.path1);
    validate_path(cell.path2);
    auto ends1 = path_endpoints(cell.path1);
    auto ends2 = path_endpoints(cell.path2);
    if (ends1 != ends2)
      throw std::invalid_argument("cell " + cell.id + ": paths do not share endpoints");
    cells_.push_back(std::move(cell));
  }

  const std::vector<std::string>& chart_order() const { return chart_order_; }
  const std::vector<std::string>& wall_order() const { return wall_order_; }
  const std::vector<Cell>& cells() const { return cells_; }

  const Chart& chart(const std::string& label) const {
    auto it = charts_.find(label);
    if (it == charts_.end()) throw std::invalid_argument("unknown chart " + label);
    return it->second;
  }

  Chart& chart(const std::string& label) {
    auto it = charts_.find(label);
    if (it == charts_.end()) throw std::invalid_argument("unknown chart " + label);
    return it->second;
  }

  const Wall& wall(const std::string& id) const {
    auto it = walls_.find(id);
    if (it == walls_.end()) throw std::invalid_argument("unknown wall " + id);
    return it->second;
  }

  const Cell& cell(const std::string& id) const {
    for (const auto& c : cells_)
      if (c.id == id) return c;
    throw std::invalid_argument("unknown cell " + id);
  }

  /// Composite substitution of a connected wall path (target of each wall is
  /// the source of the next). The first wall's substitution is applied to
  /// expressions first, so on points the composite runs the path backwards.
  Substitution compose_path(const std::vector<std::string>& path,
                            const Cutoff& cutoff = no_cutoff) const {
    validate_path(path);
    Substitution acc = Substitution::identity(n_, table_);
    for (const auto& id : path) acc = acc.compose_with(wall(id).subst, cutoff);
    return acc;
  }

  /// Gluing residual of one wall: pullback(W_src, phi) - W_dst, both sides
  /// truncated at the cutoff. Empty when either chart has no superpotential.
  std::optional<LaurentPoly> gluing_residual(const std::string& wall_id,
                                             const Cutoff& cutoff = no_cutoff) const {
    const Wall& w = wall(wall_id);
    const auto& wa = chart(w.src).superpotential;
    const auto& wb = chart(w.dst).superpotential;
    if (!wa || !wb) return std::nullopt;
    return w.subst.pullback(*wa, cutoff) - wb->truncate(cutoff);
  }

  /// Composes both paths of a cell and reports per-coordinate residuals of
  /// (first path) - (second path).
  DefectReport check_cell(const Cell& cell, const Cutoff& cutoff = no_cutoff) const {
    Substitution s1 = compose_path(cell.path1, cutoff);
    Substitution s2 = compose_path(cell.path2, cutoff);
    DefectReport report;
    for (std::size_t i = 1; i <= n_; ++i) {
      LaurentPoly r = s1.image(i).truncate(cutoff) - s2.image(i).truncate(cutoff);
      report.leading_valuation = val_min(report.leading_valuation, r.valuation());
      report.residuals.push_back(std::move(r));
    }
    return report;
  }

  /// Deletes every term divisible by the parameter monomial from all
  /// substitutions and superpotentials.
  ScatteringDiagram kill_divisible(const ParamExponents& monomial) const {
    ScatteringDiagram d(n_, table_);
    for (const auto& label : chart_order_) {
      Chart c = charts_.at(label);
      if (c.superpotential) c.superpotential = c.superpotential->kill_divisible(monomial);
      d.add_chart(std::move(c));
    }
    for (const auto& id : wall_order_) {
      Wall w = walls_.at(id);
      w.subst = w.subst.kill_divisible(monomial);
      d.add_wall(std::move(w));
    }
    for (const auto& c : cells_) d.add_cell(c);
    return d;
  }

  std::pair<std::string, std::string> path_endpoints(const std::vector<std::string>& path) const {
    if (path.empty()) throw std::invalid_argument("empty wall path has no endpoints");
    return {wall(path.front()).src, wall(path.back()).dst};
  }

 private:
  void validate_path(const std::vector<std::string>& path) const {
    for (std::size_t k = 0; k + 1 < path.size(); ++k)
      if (wall(path[k]).dst != wall(path[k + 1]).src)
        throw std::invalid_argument("disconnected wall path at " + path[k]);
  }

  std::size_t n_;
  ParameterTablePtr table_;
  std::map<std::string, Chart> charts_;
  std::vector<std::string> chart_order_;
  std::map<std::string, Wall> walls_;
  std::vector<std::string> wall_order_;
  std::vector<Cell> cells_;
};

/// The defect as a vector field V = sum (residual_i / z_i) d_{log z_i}, so
/// that V(z_i) = residual_i. Requires a nonzero defect with every residual
/// divisible by its coordinate.
inline PolyVectorField defect_as_field(const DefectReport& report, std::size_t n,
                                       const ParameterTablePtr& table) {
  if (report.consistent()) throw std::domain_error("defect_as_field: no defect (all residuals zero)");
  PolyVectorField v(n, table);
  for (std::size_t i = 1; i <= n; ++i) {
    const LaurentPoly& r = report.residuals.at(i - 1);
    if (r.is_zero()) continue;
    if (!r.divisible_by_coordinate(i, 1))
      throw std::domain_error("defect_as_field: residual not divisible by its coordinate");
    v.add_term({i}, r.divide_coordinate(i, 1));
  }
  return v;
}

inline ScatteringDiagram set_parameter_to_zero(const ScatteringDiagram& d,
                                               const ParamExponents& monomial) {
  return d.kill_divisible(monomial);
}

}  // namespace wallcross
