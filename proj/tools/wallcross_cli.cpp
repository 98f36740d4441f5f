// Command-line front end: scenario verification, wall algebra, brackets.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wallcross/wallcross.hpp"

using namespace wallcross;

namespace {

Cutoff parse_cutoff(const std::string& s) {
  if (s == "inf" || s == "exact") return no_cutoff;
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

struct GlobalOptions {
  std::string cutoff = "20";
  std::string kill;
  std::string format = "text";
};

int run_verify(const std::string& target, const GlobalOptions& g) {
  Scenario sc = load_scenario(target);
  RunOptions opts;
  opts.cutoff = parse_cutoff(g.cutoff);
  if (!g.kill.empty()) opts.kill = g.kill;
  Report report = run_scenario(std::move(sc), opts);
  std::cout << emit_report(report, g.format);
  return report.all_expected() ? 0 : 1;
}

int run_master(const std::string& target, const GlobalOptions& g) {
  Scenario sc = load_scenario(target);
  RunOptions opts;
  opts.cutoff = parse_cutoff(g.cutoff);
  if (!g.kill.empty()) {
    ParamExponents monomial = parse_parameter_monomial(g.kill, sc.table);
    sc.diagram = sc.diagram.kill_divisible(monomial);
    if (sc.ledger) {
      sc.ledger->w0 = sc.ledger->w0.kill_divisible(monomial);
      sc.ledger->w1 = sc.ledger->w1.kill_divisible(monomial);
      sc.ledger->w2 = sc.ledger->w2.kill_divisible(monomial);
    }
  }
  CechCochain w =
      assemble_master_cochain(sc.diagram, sc.nerve, sc.ledger ? &sc.ledger->w2 : nullptr);
  MasterReport mr = check_master(w, opts.cutoff);
  Report report;
  report.scenario = sc.name;
  auto add = [&](const ResidualEntry& e) {
    CheckResult c;
    c.id = e.id;
    c.location = e.location;
    c.status = e.zero() ? CheckStatus::Pass : CheckStatus::ExpectedDefect;
    if (!e.zero()) {
      c.residual = e.residual.leading_part().to_string();
      if (e.leading_valuation) c.valuation = rational_to_string(*e.leading_valuation);
    }
    report.checks.push_back(std::move(c));
  };
  for (const auto& e : mr.components) add(e);
  for (const auto& e : mr.full) add(e);
  std::cout << emit_report(report, g.format);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of wall-crossing scattering diagrams"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--cutoff", g.cutoff, "truncation cutoff (rational or 'inf')");
  app.add_option("--kill", g.kill, "set a parameter monomial to zero, e.g. qp*qpp");
  app.add_option("--format", g.format, "report format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::string target, cell_id, expr_f, wall_name, scenario_name = "main";
  std::vector<std::string> walls, bracket_args;
  bool use_schouten = false, use_hf = false;

  auto* verify = app.add_subcommand("verify", "run all checks of a scenario");
  verify->add_option("scenario", target, "main|open|compact or a scenario file")->required();

  auto* pullback_cmd = app.add_subcommand("pullback", "apply a wall substitution to an expression");
  pullback_cmd->add_option("-f,--function", expr_f, "expression to pull back")->required();
  pullback_cmd->add_option("-s,--substitution", wall_name, "wall id")->required();
  pullback_cmd->add_option("--scenario", scenario_name, "scenario providing the walls");

  auto* compose_cmd = app.add_subcommand("compose", "compose a sequence of walls");
  compose_cmd->add_option("walls", walls, "wall ids, first applied first")->required();
  compose_cmd->add_option("--scenario", scenario_name, "scenario providing the walls");

  auto* cell_cmd = app.add_subcommand("cell-check", "cocycle check around a 2-cell");
  cell_cmd->add_option("scenario", target, "scenario name or file")->required();
  cell_cmd->add_option("cell", cell_id, "cell id")->required();

  auto* bracket_cmd = app.add_subcommand("bracket", "bracket of two expressions");
  bracket_cmd->add_flag("--schouten", use_schouten, "Schouten bracket of polyvector fields");
  bracket_cmd->add_flag("--hf", use_hf, "Floer-side bracket");
  bracket_cmd->add_option("exprs", bracket_args, "two expressions")->expected(2);
  bracket_cmd->add_option("--scenario", scenario_name, "scenario providing parameters");

  auto* master_cmd = app.add_subcommand("master", "master-equation residual report");
  master_cmd->add_option("scenario", target, "scenario name or file")->required();

  auto* export_cmd = app.add_subcommand("export", "print a scenario in the file format");
  export_cmd->add_option("scenario", target, "scenario name or file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return run_verify(target, g);
    if (master_cmd->parsed()) return run_master(target, g);
    if (export_cmd->parsed()) {
      std::cout << export_scenario(load_scenario(target));
      return 0;
    }
    if (pullback_cmd->parsed()) {
      Scenario sc = load_scenario(scenario_name);
      LaurentPoly f = parse_expression(expr_f, sc.coords, sc.table);
      LaurentPoly result = sc.diagram.wall(wall_name).subst.pullback(f, parse_cutoff(g.cutoff));
      std::cout << result.to_string() << "\n";
      return 0;
    }
    if (compose_cmd->parsed()) {
      Scenario sc = load_scenario(scenario_name);
      Substitution s = sc.diagram.compose_path(walls, parse_cutoff(g.cutoff));
      std::cout << s.to_string() << "\n";
      return 0;
    }
    if (cell_cmd->parsed()) {
      Scenario sc = load_scenario(target);
      DefectReport dr = sc.diagram.check_cell(sc.diagram.cell(cell_id), parse_cutoff(g.cutoff));
      for (std::size_t i = 1; i <= sc.coords; ++i)
        std::cout << "residual z" << i << ": " << dr.residuals[i - 1].to_string() << "\n";
      if (!dr.consistent()) {
        PolyVectorField v = defect_as_field(dr, sc.coords, sc.table);
        std::cout << "defect field: " << v.to_string() << "\n";
        std::cout << "leading: " << v.leading_part().to_string() << "\n";
      } else {
        std::cout << "consistent\n";
      }
      return 0;
    }
    if (bracket_cmd->parsed()) {
      if (use_schouten == use_hf)
        throw std::invalid_argument("bracket: choose exactly one of --schouten and --hf");
      Scenario sc = load_scenario(scenario_name);
      if (use_schouten) {
        PolyVectorField a = parse_polyvector(bracket_args[0], sc.coords, sc.table);
        PolyVectorField b = parse_polyvector(bracket_args[1], sc.coords, sc.table);
        std::cout << schouten(a, b).to_string() << "\n";
      } else {
        FloerClass a = parse_floer(bracket_args[0], sc.coords, sc.table);
        FloerClass b = parse_floer(bracket_args[1], sc.coords, sc.table);
        std::cout << hf_bracket(a, b).to_string() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
