#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wallcross/catalog.hpp"

namespace wallcross {

/// Declared outcome of one check: plain pass, or a defect whose leading part
/// must equal the given expression.
struct Expectation {
  bool is_defect = false;
  std::string defect_expr;  // parsed lazily against the scenario table
};

/// A scenario: parameter table, diagram, optional ledger, expected outcomes.
/// Serializable to the line-oriented section format.
struct Scenario {
  std::string name;
  std::size_t coords = 4;
  ParameterTablePtr table;
  ScatteringDiagram diagram;
  NervePtr nerve;
  std::optional<Ledger> ledger;
  std::map<std::string, Expectation> expectations;

  Scenario(std::string name_, std::size_t n, ParameterTablePtr table_)
      : name(std::move(name_)), coords(n), table(table_), diagram(n, table_) {}

  /// Coordinates with a declared "symmetry.z<i> = ..." expectation.
  std::vector<std::size_t> symmetry_coords() const {
    std::vector<std::size_t> out;
    for (const auto& [key, e] : expectations)
      if (key.rfind("symmetry.z", 0) == 0) out.push_back(std::stoul(key.substr(10)));
    return out;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline Rational parse_rational_literal(const std::string& s, int line_no) {
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(trim(s)));
    return Rational(Integer(trim(s.substr(0, slash))), Integer(trim(s.substr(slash + 1))));
  } catch (const std::exception&) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": bad rational '" + s + "'");
  }
}

inline std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace detail

/// Parses the scenario file format: an optional leading `coords = N` line,
/// then sections [params], [charts], [walls], [cells], [ledger], [expect]
/// with one `key = value` entry per line. `#` starts a comment line.
inline Scenario load_scenario_text(const std::string& text, const std::string& name) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  std::string section;
  std::size_t coords = 4;

  // First pass collects raw entries per section so charts can be declared
  // before walls regardless of file order.
  std::vector<std::pair<std::string, Rational>> params;
  std::vector<std::pair<std::string, std::string>> charts, walls, cells, ledger_entries, expects;

  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("scenario " + name + ", line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']') fail("malformed section header");
      section = t.substr(1, t.size() - 2);
      if (section != "params" && section != "charts" && section != "walls" &&
          section != "cells" && section != "ledger" && section != "expect")
        fail("unknown section [" + section + "]");
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    std::string key = detail::trim(t.substr(0, eq));
    std::string value = detail::trim(t.substr(eq + 1));
    if (section.empty()) {
      if (key == "coords") {
        coords = std::stoul(value);
        continue;
      }
      fail("entry before any section");
    }
    if (section == "params")
      params.emplace_back(key, detail::parse_rational_literal(value, line_no));
    else if (section == "charts")
      charts.emplace_back(key, value);
    else if (section == "walls")
      walls.emplace_back(key, value);
    else if (section == "cells")
      cells.emplace_back(key, value);
    else if (section == "ledger")
      ledger_entries.emplace_back(key, value);
    else
      expects.emplace_back(key, value);
  }

  std::vector<std::string> names;
  std::vector<Rational> weights;
  for (auto& [k, w] : params) {
    names.push_back(k);
    weights.push_back(w);
  }
  auto table = std::make_shared<ParameterTable>(std::move(names), std::move(weights));
  Scenario sc(name, coords, table);

  for (auto& [label, expr] : charts) {
    if (expr == "none")
      sc.diagram.add_chart({label, std::nullopt});
    else
      sc.diagram.add_chart({label, parse_expression(expr, coords, table)});
  }

  for (auto& [id, decl] : walls) {
    // Format: src -> dst : z2 -> EXPR [; z1 -> EXPR ...]
    std::size_t arrow = decl.find("->");
    std::size_t colon = decl.find(':');
    if (arrow == std::string::npos || colon == std::string::npos || arrow > colon)
      throw std::runtime_error("wall " + id + ": expected 'src -> dst : zi -> expr'");
    std::string src = detail::trim(decl.substr(0, arrow));
    std::string dst = detail::trim(decl.substr(arrow + 2, colon - arrow - 2));
    std::vector<LaurentPoly> images;
    for (std::size_t i = 1; i <= coords; ++i)
      images.push_back(LaurentPoly::coordinate(coords, table, i));
    std::string rest = decl.substr(colon + 1);
    std::istringstream parts(rest);
    std::string assignment;
    while (std::getline(parts, assignment, ';')) {
      assignment = detail::trim(assignment);
      if (assignment.empty()) continue;
      std::size_t a2 = assignment.find("->");
      if (a2 == std::string::npos) throw std::runtime_error("wall " + id + ": bad assignment");
      std::string lhs = detail::trim(assignment.substr(0, a2));
      if (lhs.size() < 2 || lhs[0] != 'z')
        throw std::runtime_error("wall " + id + ": assignment target must be a coordinate");
      std::size_t ci = std::stoul(lhs.substr(1));
      if (ci < 1 || ci > coords) throw std::runtime_error("wall " + id + ": coordinate out of range");
      images[ci - 1] = parse_expression(detail::trim(assignment.substr(a2 + 2)), coords, table);
    }
    sc.diagram.add_wall({id, src, dst, Substitution::from_images(coords, table, images)});
  }

  for (auto& [id, decl] : cells) {
    std::size_t bar = decl.find('|');
    if (bar == std::string::npos) throw std::runtime_error("cell " + id + ": expected 'path | path'");
    Cell c{id, detail::split_words(decl.substr(0, bar)), detail::split_words(decl.substr(bar + 1))};
    sc.diagram.add_cell(std::move(c));
  }

  sc.nerve = std::make_shared<Nerve>(Nerve::of_diagram(sc.diagram));

  if (!ledger_entries.empty()) {
    Ledger lg{CechCochain(sc.nerve, coords, table), CechCochain(sc.nerve, coords, table),
              CechCochain(sc.nerve, coords, table)};
    for (auto& [key, expr] : ledger_entries) {
      std::size_t dot = key.find('.');
      if (dot == std::string::npos) throw std::runtime_error("ledger key '" + key + "' needs w<i>.<cell>");
      std::string grade = key.substr(0, dot);
      std::string cell = key.substr(dot + 1);
      PolyVectorField value = parse_polyvector(expr, coords, table);
      if (grade == "w0")
        lg.w0.set_vertex(cell, std::move(value));
      else if (grade == "w1")
        lg.w1.set_edge(cell, std::move(value));
      else if (grade == "w2")
        lg.w2.set_face(cell, std::move(value));
      else
        throw std::runtime_error("ledger key '" + key + "': grade must be w0, w1 or w2");
    }
    sc.ledger = std::move(lg);
  }

  for (auto& [key, value] : expects) {
    Expectation e;
    if (value == "pass") {
      e.is_defect = false;
    } else if (value.rfind("defect", 0) == 0) {
      e.is_defect = true;
      e.defect_expr = detail::trim(value.substr(6));
      if (e.defect_expr.empty())
        throw std::runtime_error("expect " + key + ": defect needs an expression");
      parse_polyvector(e.defect_expr, coords, table);  // validate now
    } else {
      throw std::runtime_error("expect " + key + ": value must be 'pass' or 'defect EXPR'");
    }
    sc.expectations[key] = std::move(e);
  }
  return sc;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_text(buf.str(), path);
}

/// Canonical text form; loading the result reproduces the scenario.
inline std::string export_scenario(const Scenario& sc) {
  std::ostringstream out;
  out << "coords = " << sc.coords << "\n\n[params]\n";
  for (std::size_t i = 0; i < sc.table->size(); ++i)
    out << sc.table->name(i) << " = " << rational_to_string(sc.table->weight(i)) << "\n";
  out << "\n[charts]\n";
  for (const auto& label : sc.diagram.chart_order()) {
    const auto& w = sc.diagram.chart(label).superpotential;
    out << label << " = " << (w ? w->to_string() : "none") << "\n";
  }
  out << "\n[walls]\n";
  for (const auto& id : sc.diagram.wall_order()) {
    const Wall& w = sc.diagram.wall(id);
    out << id << " = " << w.src << " -> " << w.dst << " :";
    bool first = true;
    for (std::size_t i = 1; i <= sc.coords; ++i) {
      LaurentPoly image = w.subst.image(i);
      if (image == LaurentPoly::coordinate(sc.coords, sc.table, i)) continue;
      out << (first ? " " : " ; ") << "z" << i << " -> " << image.to_string();
      first = false;
    }
    out << "\n";
  }
  out << "\n[cells]\n";
  for (const auto& c : sc.diagram.cells()) {
    out << c.id << " =";
    for (const auto& w : c.path1) out << " " << w;
    out << " |";
    for (const auto& w : c.path2) out << " " << w;
    out << "\n";
  }
  if (sc.ledger) {
    out << "\n[ledger]\n";
    for (const auto& [k, v] : sc.ledger->w0.vertex_values())
      out << "w0." << k << " = " << v.to_string() << "\n";
    for (const auto& [k, v] : sc.ledger->w1.edge_values())
      out << "w1." << k << " = " << v.to_string() << "\n";
    for (const auto& [k, v] : sc.ledger->w2.face_values())
      out << "w2." << k << " = " << v.to_string() << "\n";
  }
  if (!sc.expectations.empty()) {
    out << "\n[expect]\n";
    for (const auto& [k, e] : sc.expectations)
      out << k << " = " << (e.is_defect ? "defect " + e.defect_expr : std::string("pass")) << "\n";
  }
  return out.str();
}

/// The built-in scenarios with their expected outcomes.
inline Scenario builtin_scenario(const std::string& name);

inline bool is_builtin_scenario(const std::string& name) {
  return name == "main" || name == "open" || name == "compact";
}

inline Scenario load_scenario(const std::string& name_or_path) {
  if (is_builtin_scenario(name_or_path)) return builtin_scenario(name_or_path);
  return load_scenario_file(name_or_path);
}

inline Scenario builtin_scenario(const std::string& name) {
  if (name == "main") {
    MainExample ex = build_main_example();
    Scenario sc("main", 4, ex.diagram.table());
    sc.diagram = std::move(ex.diagram);
    sc.nerve = ex.nerve;
    sc.ledger = std::move(ex.ledger);
    for (const char* w : {"m0", "p0", "0m", "0p"}) {
      sc.expectations["gluing." + std::string(w)] = {};
      sc.expectations["ledger.edge." + std::string(w)] = {};
      sc.expectations["master.edge." + std::string(w)] = {};
    }
    sc.expectations["cell.corner"] = {true, "qp*qpp*z2*z4*d1 - qp*qpp*z1*z4*d2"};
    sc.expectations["ledger.face.corner"] = {};
    sc.expectations["master.face.corner.linear"] = {};
    sc.expectations["master.face.corner.quad"] = {true, "-1/2*qp^2*qpp*z2*z3*z4^2*d1"};
    sc.expectations["unobstructed"] = {};
    return sc;
  }
  if (name == "open") {
    ScatteringDiagram d = build_open_mirror();
    Scenario sc("open", 4, d.table());
    sc.diagram = std::move(d);
    sc.nerve = std::make_shared<Nerve>(Nerve::of_diagram(sc.diagram));
    sc.expectations["cell.corner"] = {};
    for (const char* w : {"m0", "p0", "0m", "0p"})
      sc.expectations["master.edge." + std::string(w)] = {};
    sc.expectations["master.face.corner.linear"] = {};
    sc.expectations["master.face.corner.quad"] = {};
    return sc;
  }
  if (name == "compact") {
    ScatteringDiagram d = build_compact_example();
    Scenario sc("compact", 4, d.table());
    sc.diagram = std::move(d);
    sc.nerve = std::make_shared<Nerve>(Nerve::of_diagram(sc.diagram));
    for (const char* w : {"m0", "p0", "0m", "0p"}) sc.expectations["gluing." + std::string(w)] = {};
    sc.expectations["cell.corner"] = {true, "qp*qpp*z2*z4*d1 - qp*qpp*z1*z4*d2"};
    sc.expectations["master.edge.m0"] = {true, "qp^2*q2*z2^-1*z3^2*z4^2"};
    sc.expectations["master.edge.p0"] = {true, "qp^2*q2*z2^-1*z3^2*z4^2"};
    sc.expectations["master.edge.0m"] = {true, "qpp^2*q1*z1^-1*z3^-2*z4^2"};
    sc.expectations["master.edge.0p"] = {true, "qpp^2*q1*z1^-1*z3^-2*z4^2"};
    sc.expectations["master.face.corner.linear"] = {true, "qp*qpp*z2*z4*d1 - qp*qpp*z1*z4*d2"};
    sc.expectations["master.face.corner.quad"] = {true, "qp*qpp*z2*z4*d1 - qp*qpp*z1*z4*d2"};
    sc.expectations["symmetry.z1"] = {};
    sc.expectations["symmetry.z2"] = {};
    return sc;
  }
  throw std::invalid_argument("unknown scenario: " + name);
}

}  // namespace wallcross
