// Command-line front end: runs check suites over spec files and writes a
// JSON report. Exit status is 0 iff every check passed.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "gcinf/checks.hpp"
#include "gcinf/error.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

// Pulls "--tol-rel.NAME X" and "--tol-rel.NAME=X" out of argv, since the
// check names are open-ended.
std::vector<std::pair<std::string, double>> take_tolerance_overrides(std::vector<std::string>& args) {
  const std::string prefix = "--tol-rel.";
  std::vector<std::pair<std::string, double>> out;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind(prefix, 0) != 0) {
      rest.push_back(a);
      continue;
    }
    std::string name = a.substr(prefix.size());
    std::string value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name.resize(eq);
    } else {
      if (i + 1 >= args.size()) throw gcinf::Error(a + " needs a value");
      value = args[++i];
    }
    if (name.empty()) throw gcinf::Error("empty check name in " + a);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size()) throw gcinf::Error("invalid tolerance '" + value + "' for " + a);
    out.emplace_back(name, v);
  }
  args = std::move(rest);
  return out;
}

void add_common(CLI::App* sub, gcinf::RunConfig& c, std::string& engine, std::string& side, bool needs_input) {
  auto* in = sub->add_option("--input", c.inputs, "spec file, or catalog:NAME (repeatable)");
  if (needs_input) in->required();
  sub->add_option("--points", c.points, "sample points per chart")->capture_default_str();
  sub->add_option("--seed", c.seed, "sampling seed")->capture_default_str();
  sub->add_option("--tol-rel", c.tol_rel, "tolerance for every check (per check: --tol-rel.NAME X)");
  sub->add_option("--engine", engine, "derivative engine: ad, fd or both")
      ->check(CLI::IsMember({"ad", "fd", "both"}))
      ->capture_default_str();
  sub->add_option("--out", c.out, "report path (default stdout)");
  sub->add_option("--side", side, "treat pair inputs as finite or infinity side")
      ->check(CLI::IsMember({"finite", "infinity"}));
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  gcinf::RunConfig config;
  try {
    config.tol_overrides = take_tolerance_overrides(args);
  } catch (const gcinf::Error& e) {
    std::cerr << "gcinf: " << e.what() << "\n";
    return kExitError;
  }

  CLI::App app{"Curvature, duality and conformal flatness checks on coordinate charts", "gcinf"};
  app.set_version_flag("--version", std::string(gcinf::kToolVersion));
  app.require_subcommand(1);
  std::string engine = "ad";
  std::string side;

  auto* curvature = app.add_subcommand("curvature", "Riemann, Ricci, scalar and sectional curvature with symmetry checks");
  auto* check = app.add_subcommand("check", "residuals of the finite equations (or at infinity with --side infinity)");
  auto* dualize = app.add_subcommand("dualize", "map a pair to the other side and check the result");
  auto* weyl = app.add_subcommand("weyl-schouten", "conformal flatness: Cotton (n = 3) or Weyl (n >= 4) tensor");
  auto* flow = app.add_subcommand("flow", "parallel hypersurfaces of an immersion over a t grid");
  auto* suite = app.add_subcommand("suite", "run the acceptance suite");
  for (auto* sub : {curvature, check, dualize, weyl, flow}) add_common(sub, config, engine, side, true);
  add_common(suite, config, engine, side, false);
  dualize->add_option("--emit", config.emit, "write the dual spec (or table) here instead of into the report");
  flow->add_option("--emit", config.emit, "write the text table here instead of into the report");
  flow->add_option("--t-min", config.t_min, "first t")->capture_default_str();
  flow->add_option("--t-max", config.t_max, "last t")->capture_default_str();
  flow->add_option("--t-steps", config.t_steps, "number of t values")->capture_default_str();

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? EXIT_SUCCESS : kExitError;
  }

  for (auto* sub : app.get_subcommands()) config.command = sub->get_name();
  try {
    config.engine = gcinf::engine_choice_from_string(engine);
    if (!side.empty()) config.side = gcinf::side_from_string(side);
    const gcinf::Report report = gcinf::run_command(config);
    const std::string text = report.to_json(true);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.out);
      if (!out) throw gcinf::Error("cannot write '" + config.out + "'");
      out << text;
    }
    for (const auto& s : report.sections) {
      if (!s.error.empty()) std::cerr << "gcinf: " << s.source << ": " << s.error << "\n";
      for (const auto& c : s.checks)
        if (!c.passed()) std::cerr << "gcinf: " << s.source << ": check " << c.name() << " failed (max " << c.max()
                                   << ", tolerance " << c.tolerance() << ")\n";
    }
    return report.passed() ? EXIT_SUCCESS : kExitFailed;
  } catch (const gcinf::Error& e) {
    std::cerr << "gcinf: " << e.what() << "\n";
    return kExitError;
  }
}
