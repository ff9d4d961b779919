#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcinf/duality.hpp"
#include "gcinf/engine.hpp"
#include "gcinf/report.hpp"
#include "gcinf/spec_document.hpp"

namespace gcinf {

inline constexpr const char* kToolName = "gcinf";
inline constexpr const char* kToolVersion = "1.0.0";

enum class EngineChoice { ad, fd, both };

std::string to_string(EngineChoice e);
EngineChoice engine_choice_from_string(const std::string& s);

struct RunConfig {
  std::string command;
  // Spec file paths; "catalog:NAME" names a built-in document.
  std::vector<std::string> inputs;
  int points = 32;
  std::uint64_t seed = 7;
  // Overrides every check's default tolerance.
  std::optional<double> tol_rel;
  // Per-check overrides, by check name (engine suffix excluded).
  std::vector<std::pair<std::string, double>> tol_overrides;
  EngineChoice engine = EngineChoice::ad;
  std::string out;
  // Overrides the side recorded in a pair spec.
  std::optional<Side> side;
  // flow: t grid of t_steps values from t_min to t_max.
  double t_min = -1.0;
  double t_max = 1.0;
  int t_steps = 9;
  // dualize: emitted spec; flow: text table. Empty keeps it in the report.
  std::string emit;

  // Override for `check`, else tol_rel, else `fallback`.
  double tolerance(const std::string& check, double fallback) const;
  // Throws Error unless points >= 1, tolerances > 0 and the t grid is valid.
  void validate() const;
};

// Checks run on one input (or one acceptance criterion).
struct ReportSection {
  std::string title;
  std::string source;
  std::vector<ResidualReport> checks;
  JsonValue data = JsonValue::object();
  // Set when the input could not be loaded or the command does not apply.
  std::string error;

  bool passed() const;
  JsonValue to_json() const;
};

struct Report {
  RunConfig config;
  std::vector<ReportSection> sections;
  double wall_time = 0.0;

  bool passed() const;
  // Stable key order. Without the wall time the text depends only on the
  // inputs, the configuration and the tool version.
  std::string to_json(bool include_wall_time = true) const;
};

// Loads "catalog:NAME" or a file path.
SpecDocument resolve_input(const std::string& input);

Report cmd_curvature(const RunConfig& config);
Report cmd_check(const RunConfig& config);
Report cmd_dualize(const RunConfig& config);
Report cmd_weyl_schouten(const RunConfig& config);
Report cmd_flow(const RunConfig& config);
Report cmd_suite(const RunConfig& config);
// Dispatches on config.command.
Report run_command(const RunConfig& config);

// Spec document for the dual side of a pair document, with closed-form
// expressions (n <= 3). Throws DimensionError for larger n.
SpecDocument dual_document(const SpecDocument& pair_doc);

}  // namespace gcinf
