#include "gcinf/checks.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>

#include "gcinf/acceptance.hpp"
#include "gcinf/catalog.hpp"
#include "gcinf/error.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/geometry.hpp"
#include "gcinf/hyperbolic.hpp"
#include "gcinf/lcf.hpp"
#include "gcinf/sampling.hpp"
#include "gcinf/transform.hpp"

namespace gcinf {
namespace {

struct EngineRun {
  std::string label;
  DerivEngine engine;
};

std::vector<EngineRun> engines_for(EngineChoice choice) {
  std::vector<EngineRun> out;
  if (choice != EngineChoice::fd) out.push_back({"ad", DerivEngine(EngineMode::forward_jets)});
  if (choice != EngineChoice::ad) out.push_back({"fd", DerivEngine(EngineMode::central_differences)});
  return out;
}

std::string suffixed(const std::string& name, const EngineRun& e, bool tag) {
  return tag ? name + "[" + e.label + "]" : name;
}

std::vector<std::vector<double>> points_for(const SpecDocument& doc, const RunConfig& config) {
  return sample_points(doc.box, SamplePlan{config.points, config.seed, true, true});
}

Sym2Value sym_at(const Sym2Field& g, std::span<const double> p) {
  const auto v = g.field()->values_at(p);
  const int n = g.dim();
  return Sym2Value::from_matrix(Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n));
}

EndoValue endo_at(const EndoField& b, std::span<const double> p) {
  const auto v = b.field()->values_at(p);
  const int n = b.dim();
  // Row-major components.
  return EndoValue(Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n).transpose());
}

std::vector<double> flatten(const Tensor4Value& t) { return {t.data().begin(), t.data().end()}; }

JsonValue matrix_json(const Eigen::MatrixXd& m) {
  JsonValue rows = JsonValue::array();
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j) r[static_cast<std::size_t>(j)] = m(i, j);
    rows.push_back(JsonValue::numbers(r));
  }
  return rows;
}

JsonValue config_json(const RunConfig& c) {
  JsonValue j = JsonValue::object();
  j["command"] = c.command;
  JsonValue inputs = JsonValue::array();
  for (const auto& i : c.inputs) inputs.push_back(i);
  j["inputs"] = std::move(inputs);
  j["points"] = c.points;
  j["seed"] = static_cast<double>(c.seed);
  j["engine"] = to_string(c.engine);
  j["tol_rel"] = c.tol_rel ? JsonValue(*c.tol_rel) : JsonValue(nullptr);
  JsonValue over = JsonValue::object();
  for (const auto& [k, v] : c.tol_overrides) over[k] = v;
  j["tol_overrides"] = std::move(over);
  j["side"] = c.side ? JsonValue(to_string(*c.side)) : JsonValue(nullptr);
  if (c.command == "flow") {
    j["t_min"] = c.t_min;
    j["t_max"] = c.t_max;
    j["t_steps"] = c.t_steps;
  }
  return j;
}

// Runs `body` for every input, catching load and applicability errors into
// the section.
Report for_each_input(const RunConfig& config,
                      const std::function<void(const LoadedSpec&, ReportSection&)>& body) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report{config, {}, 0.0};
  if (config.inputs.empty()) throw Error("no --input given");
  for (const auto& input : config.inputs) {
    ReportSection section;
    section.source = input;
    try {
      const SpecDocument doc = resolve_input(input);
      section.title = doc.name();
      const LoadedSpec loaded = load_spec(doc, LoadOptions{12, config.seed});
      body(loaded, section);
    } catch (const Error& e) {
      section.error = e.what();
    }
    report.sections.push_back(std::move(section));
  }
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// Riemann, Ricci and scalar curvature flattened into one vector.
std::vector<double> curvature_vector(const Sym2Field& g, std::span<const double> p, const DerivEngine& e) {
  const LocalGeometry geo = LocalGeometry::at(g, p, 2, e);
  std::vector<double> v = flatten(geo.riemann_value());
  const Sym2Value ric = geo.ricci_value();
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) v.push_back(ric(i, j));
  v.push_back(geo.scalar_value());
  return v;
}

// Relative agreement of the curvature quantities between the two engines.
ResidualReport engine_agreement(const RunConfig& config, const Sym2Field& g,
                                const std::vector<std::vector<double>>& points) {
  const DerivEngine ad(EngineMode::forward_jets);
  const DerivEngine fd(EngineMode::central_differences);
  return sample_check("engine_agreement", config.tolerance("engine_agreement", 1e-6), points,
                      [&](std::span<const double> p) {
                        const auto a = curvature_vector(g, p, ad);
                        const auto b = curvature_vector(g, p, fd);
                        return relative_difference(b, a);
                      });
}

std::string var_list(const std::string& prefix, int n) {
  std::string s;
  for (int i = 1; i <= n; ++i) s += " " + prefix + std::to_string(i);
  return s;
}

}  // namespace

std::string to_string(EngineChoice e) {
  switch (e) {
    case EngineChoice::ad: return "ad";
    case EngineChoice::fd: return "fd";
    case EngineChoice::both: return "both";
  }
  return "ad";
}

EngineChoice engine_choice_from_string(const std::string& s) {
  if (s == "ad") return EngineChoice::ad;
  if (s == "fd") return EngineChoice::fd;
  if (s == "both") return EngineChoice::both;
  throw Error("unknown engine '" + s + "' (expected ad, fd or both)");
}

double RunConfig::tolerance(const std::string& check, double fallback) const {
  for (const auto& [k, v] : tol_overrides)
    if (k == check) return v;
  return tol_rel.value_or(fallback);
}

void RunConfig::validate() const {
  if (points < 1) throw Error("--points must be at least 1");
  if (tol_rel && !(*tol_rel > 0.0)) throw Error("--tol-rel must be positive");
  for (const auto& [k, v] : tol_overrides)
    if (!(v > 0.0)) throw Error("--tol-rel." + k + " must be positive");
  if (t_steps < 1) throw Error("--t-steps must be at least 1");
  if (t_steps > 1 && !(t_min < t_max)) throw Error("--t-min must be below --t-max");
}

bool ReportSection::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.passed()) return false;
  return true;
}

JsonValue ReportSection::to_json() const {
  JsonValue j = JsonValue::object();
  j["title"] = title;
  j["source"] = source;
  j["passed"] = passed();
  if (!error.empty()) j["error"] = error;
  JsonValue cs = JsonValue::array();
  for (const auto& c : checks) cs.push_back(c.to_json(true));
  j["checks"] = std::move(cs);
  j["data"] = data;
  return j;
}

bool Report::passed() const {
  if (sections.empty()) return false;
  for (const auto& s : sections)
    if (!s.passed()) return false;
  return true;
}

std::string Report::to_json(bool include_wall_time) const {
  JsonValue j = JsonValue::object();
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = config_json(config);
  JsonValue ss = JsonValue::array();
  for (const auto& s : sections) ss.push_back(s.to_json());
  j["sections"] = std::move(ss);
  j["passed"] = passed();
  if (include_wall_time) j["wall_time"] = wall_time;
  return j.dump(true);
}

SpecDocument resolve_input(const std::string& input) {
  const std::string prefix = "catalog:";
  if (input.rfind(prefix, 0) == 0) return catalog_document(input.substr(prefix.size()));
  return read_spec_file(input);
}

Report cmd_curvature(const RunConfig& config) {
  return for_each_input(config, [&](const LoadedSpec& spec, ReportSection& section) {
    const Sym2Field& g = *spec.metric;
    const int n = g.dim();
    const auto points = points_for(spec.doc, config);
    const auto runs = engines_for(config.engine);
    const bool tag = runs.size() > 1;
    const std::optional<double> K = spec.doc.meta_number("curvature");
    for (const auto& run : runs) {
      const DerivEngine& e = run.engine;
      section.checks.push_back(sample_check(
          suffixed("riemann_symmetry", run, tag), config.tolerance("riemann_symmetry", 1e-9), points,
          [&](std::span<const double> p) { return curvature_symmetry_defect(riemann(g, p, e)); }));
      section.checks.push_back(sample_check(suffixed("bianchi", run, tag), config.tolerance("bianchi", 1e-9), points,
                                            [&](std::span<const double> p) { return bianchi_defect(riemann(g, p, e)); }));
      section.checks.push_back(sample_check(
          suffixed("trace_consistency", run, tag), config.tolerance("trace_consistency", 1e-12), points,
          [&](std::span<const double> p) {
            const LocalGeometry geo = LocalGeometry::at(g, p, 2, e);
            const MetricValue gv = geo.metric_value();
            const double s = geo.scalar_value();
            const double traced = trace2(gv, trace4(gv, geo.riemann_value()));
            return std::fabs(s - traced) / std::max(1.0, std::fabs(s));
          }));
      if (K && n >= 2) {
        section.checks.push_back(sample_check(
            suffixed("constant_curvature", run, tag), config.tolerance("constant_curvature", 1e-8), points,
            [&](std::span<const double> p) {
              const LocalGeometry geo = LocalGeometry::at(g, p, 2, e);
              const MetricValue gv = geo.metric_value();
              const Tensor4Value rm = geo.riemann_value();
              double worst = std::fabs(geo.scalar_value() - n * (n - 1) * *K) / std::max(1.0, std::fabs(n * (n - 1) * *K));
              for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                  std::vector<double> X(static_cast<std::size_t>(n), 0.0), Y(static_cast<std::size_t>(n), 0.0);
                  X[static_cast<std::size_t>(i)] = 1.0;
                  Y[static_cast<std::size_t>(j)] = 1.0;
                  worst = std::max(worst, std::fabs(sectional(gv, rm, X, Y) - *K) / std::max(1.0, std::fabs(*K)));
                }
              return worst;
            }));
      }
    }
    if (config.engine == EngineChoice::both) section.checks.push_back(engine_agreement(config, g, points));

    const DerivEngine& e = runs.front().engine;
    JsonValue samples = JsonValue::array();
    for (const auto& p : points) {
      JsonValue s = JsonValue::object();
      s["point"] = JsonValue::numbers(p);
      try {
        const LocalGeometry geo = LocalGeometry::at(g, p, 2, e);
        const MetricValue gv = geo.metric_value();
        const Tensor4Value rm = geo.riemann_value();
        s["scalar"] = geo.scalar_value();
        s["ricci"] = matrix_json(geo.ricci_value().matrix());
        JsonValue sec = JsonValue::array();
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) {
            std::vector<double> X(static_cast<std::size_t>(n), 0.0), Y(static_cast<std::size_t>(n), 0.0);
            X[static_cast<std::size_t>(i)] = 1.0;
            Y[static_cast<std::size_t>(j)] = 1.0;
            JsonValue entry = JsonValue::object();
            entry["plane"] = JsonValue::numbers(std::vector<double>{double(i + 1), double(j + 1)});
            entry["value"] = sectional(gv, rm, X, Y);
            sec.push_back(std::move(entry));
          }
        s["sectional"] = std::move(sec);
      } catch (const Error& err) {
        s["error"] = err.what();
      }
      samples.push_back(std::move(s));
    }
    section.data["samples"] = std::move(samples);
  });
}

Report cmd_check(const RunConfig& config) {
  return for_each_input(config, [&](const LoadedSpec& spec, ReportSection& section) {
    if (!spec.pair) throw SpecError("check needs a pair or immersion spec, got kind " + to_string(spec.doc.kind));
    const DualityPair pair = config.side ? DualityPair(spec.pair->g(), spec.pair->B(), *config.side) : *spec.pair;
    const auto points = points_for(spec.doc, config);
    const auto runs = engines_for(config.engine);
    const bool tag = runs.size() > 1;
    const std::string prefix = pair.side() == Side::finite ? "gc" : "gcinf";
    section.data["side"] = to_string(pair.side());
    for (const auto& run : runs) {
      EquationReports r = equation_reports(pair, points, run.engine, config.tolerance(prefix + ".gauss", 1e-8),
                                           config.tolerance(prefix + ".codazzi", 1e-8));
      r.gauss.set_name(suffixed(r.gauss.name(), run, tag));
      r.codazzi.set_name(suffixed(r.codazzi.name(), run, tag));
      section.checks.push_back(std::move(r.gauss));
      section.checks.push_back(std::move(r.codazzi));
      if (pair.side() == Side::finite && pair.dim() == 2) {
        section.checks.push_back(sample_check(
            suffixed("surface_gauss", run, tag), config.tolerance("surface_gauss", 1e-8), points,
            [&](std::span<const double> p) { return std::fabs(surface_gauss_defect(pair, p, run.engine)); }));
      }
    }
    if (config.engine == EngineChoice::both) section.checks.push_back(engine_agreement(config, pair.g(), points));
  });
}

SpecDocument dual_document(const SpecDocument& doc) {
  if (doc.kind != SpecKind::pair) throw SpecError("closed-form dualization needs a pair spec");
  const int n = doc.dim;
  if (n > 3) throw DimensionError("closed-form dualization is limited to dimension <= 3");
  const Side side = side_from_string(doc.meta_string("side").value_or("finite"));
  auto entry = [&](const std::string& key) {
    const std::string* t = doc.entry(key);
    return parse_expr(t ? *t : "0", n);
  };
  auto key = [](const char* h, int i, int j) {
    return std::string(h) + "." + std::to_string(i + 1) + "." + std::to_string(j + 1);
  };
  std::vector<std::vector<ExprPtr>> g(static_cast<std::size_t>(n), std::vector<ExprPtr>(static_cast<std::size_t>(n)));
  std::vector<std::vector<ExprPtr>> A = g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::string* gij = doc.entry(key("g", i, j));
      g[i][j] = gij ? parse_expr(*gij, n) : entry(key("g", j, i));
      A[i][j] = (i == j ? Expr::number(1.0) : Expr::number(0.0)) + entry(key("B", i, j));
    }
  const ExprPtr scale = Expr::number(side == Side::finite ? 1.0 : 0.25);

  // Cofactor C(i, j) = (-1)^{i+j} minor(i, j).
  auto cofactor = [&](int r, int c) -> ExprPtr {
    if (n == 1) return Expr::number(1.0);
    std::vector<int> rows, cols;
    for (int k = 0; k < n; ++k) {
      if (k != r) rows.push_back(k);
      if (k != c) cols.push_back(k);
    }
    ExprPtr m = n == 2 ? A[rows[0]][cols[0]]
                       : A[rows[0]][cols[0]] * A[rows[1]][cols[1]] - A[rows[0]][cols[1]] * A[rows[1]][cols[0]];
    return (r + c) % 2 == 0 ? m : -m;
  };
  ExprPtr det = Expr::number(0.0);
  for (int j = 0; j < n; ++j) det = det + A[0][j] * cofactor(0, j);

  SpecDocument out;
  out.kind = SpecKind::pair;
  out.dim = n;
  out.box = doc.box;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      ExprPtr s = Expr::number(0.0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s = s + A[k][i] * g[k][l] * A[l][j];
      out.set_entry(key("g", i, j), print_expr(*(scale * s)));
    }
  // B^ = adj(A) (2 Id - A) / det A, adj(A)(i, k) = C(k, i).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      ExprPtr s = Expr::number(0.0);
      for (int k = 0; k < n; ++k) {
        const ExprPtr rhs = (k == j ? Expr::number(2.0) : Expr::number(0.0)) - A[k][j];
        s = s + cofactor(k, i) * rhs;
      }
      out.set_entry(key("B", i, j), print_expr(*(s / det)));
    }
  out.set_meta_string("name", doc.name() + (side == Side::finite ? "-at-infinity" : "-finite"));
  out.set_meta_string("side", side == Side::finite ? "infinity" : "finite");
  return out;
}

Report cmd_dualize(const RunConfig& config) {
  return for_each_input(config, [&](const LoadedSpec& spec, ReportSection& section) {
    if (!spec.pair) throw SpecError("dualize needs a pair or immersion spec, got kind " + to_string(spec.doc.kind));
    const DualityPair pair = config.side ? DualityPair(spec.pair->g(), spec.pair->B(), *config.side) : *spec.pair;
    const bool forward = pair.side() == Side::finite;
    const auto points = points_for(spec.doc, config);
    section.data["direction"] = forward ? "finite_to_infinity" : "infinity_to_finite";

    auto value_at = [&](std::span<const double> p) {
      return forward ? dualize_value(sym_at(pair.g(), p), endo_at(pair.B(), p))
                     : undualize_value(sym_at(pair.g(), p), endo_at(pair.B(), p));
    };
    section.checks.push_back(sample_check("shape_self_adjoint", config.tolerance("shape_self_adjoint", 1e-10), points,
                                          [&](std::span<const double> p) { return value_at(p).asymmetry; }));
    section.checks.push_back(sample_check(
        "product_identity", config.tolerance("product_identity", 1e-12), points, [&](std::span<const double> p) {
          const DualValue d = value_at(p);
          const int n = pair.dim();
          const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
          const Eigen::MatrixXd prod = (I + d.shape.matrix()) * (I + endo_at(pair.B(), p).matrix());
          return (prod - 2.0 * I).norm() / (2.0 * std::sqrt(double(n)));
        }));
    const DualityPair out = forward ? dualize(pair) : undualize(pair);
    const auto runs = engines_for(config.engine);
    const bool tag = runs.size() > 1;
    for (const auto& run : runs) {
      EquationReports r = equation_reports(out, points, run.engine, config.tolerance("dual.gauss", 1e-8),
                                           config.tolerance("dual.codazzi", 1e-8));
      r.gauss.set_name(suffixed("dual.gauss", run, tag));
      r.codazzi.set_name(suffixed("dual.codazzi", run, tag));
      section.checks.push_back(std::move(r.gauss));
      section.checks.push_back(std::move(r.codazzi));
    }

    std::string text;
    if (spec.doc.kind == SpecKind::pair && spec.doc.dim <= 3) {
      SpecDocument d = spec.doc;
      if (config.side) d.set_meta_string("side", to_string(*config.side));
      text = write_spec(dual_document(d));
      section.data["format"] = "expressions";
    } else {
      // Sampled table of the dual fields.
      JsonValue t = JsonValue::object();
      t["format"] = "table";
      t["kind"] = "pair";
      t["side"] = forward ? "infinity" : "finite";
      t["dim"] = pair.dim();
      JsonValue rows = JsonValue::array();
      for (const auto& p : points) {
        JsonValue row = JsonValue::object();
        row["point"] = JsonValue::numbers(p);
        try {
          const DualValue d = value_at(p);
          row["g"] = matrix_json(d.metric.matrix());
          row["B"] = matrix_json(d.shape.matrix());
        } catch (const DegenerateError& e) {
          row["degenerate"] = e.smallest_eigenvalue();
        }
        rows.push_back(std::move(row));
      }
      t["rows"] = std::move(rows);
      text = t.dump(true) + "\n";
      section.data["format"] = "table";
    }
    if (config.emit.empty()) {
      section.data["emitted"] = text;
    } else {
      std::ofstream f(config.emit);
      if (!f) throw Error("cannot write '" + config.emit + "'");
      f << text;
      section.data["emitted"] = config.emit;
    }
  });
}

Report cmd_weyl_schouten(const RunConfig& config) {
  return for_each_input(config, [&](const LoadedSpec& spec, ReportSection& section) {
    const Sym2Field& g = *spec.metric;
    const int n = g.dim();
    if (n <= 2)
      throw DimensionError("neither the Weyl nor the Schouten tensor exists in dimension " + std::to_string(n));
    const auto points = points_for(spec.doc, config);
    const auto runs = engines_for(config.engine);
    const bool tag = runs.size() > 1;
    const std::string name = n == 3 ? "cotton" : "weyl";
    bool flat = true;
    for (const auto& run : runs) {
      ResidualReport r = weyl_schouten_check(g, points, run.engine, config.tolerance(name, 1e-8));
      r.set_name(suffixed(name, run, tag));
      flat = flat && r.passed();
      section.checks.push_back(std::move(r));
      if (spec.presentation) {
        section.checks.push_back(sample_check(
            suffixed("schouten_solution", run, tag), config.tolerance("schouten_solution", 1e-8), points,
            [&](std::span<const double> p) { return schouten_solution_check(*spec.presentation, p, run.engine); }));
      }
      if (n >= 4) {
        section.checks.push_back(sample_check(
            suffixed("weyl_divergence", run, tag), config.tolerance("weyl_divergence", 1e-6), points,
            [&](std::span<const double> p) { return weyl_divergence_identity(g, p, run.engine).relative; }));
      }
    }
    if (config.engine == EngineChoice::both) section.checks.push_back(engine_agreement(config, g, points));
    section.data["conformally_flat"] = flat;
  });
}

Report cmd_flow(const RunConfig& config) {
  return for_each_input(config, [&](const LoadedSpec& spec, ReportSection& section) {
    if (!spec.immersion) throw SpecError("flow needs an immersion spec, got kind " + to_string(spec.doc.kind));
    const Immersion& imm = *spec.immersion;
    const int n = imm.dim();
    const int m = imm.ambient_dim();
    const auto points = points_for(spec.doc, config);
    const DerivEngine engine(config.engine == EngineChoice::fd ? EngineMode::central_differences
                                                               : EngineMode::forward_jets);
    std::vector<double> ts;
    for (int k = 0; k < config.t_steps; ++k)
      ts.push_back(config.t_steps == 1 ? config.t_min
                                       : config.t_min + (config.t_max - config.t_min) * k / (config.t_steps - 1));

    std::string table = "# t" + var_list("x", n) + var_list("y", m) + " eigmin eigmax flag\n";
    JsonValue rows = JsonValue::array();
    ResidualReport consistency("parallel_metric", config.tolerance("parallel_metric", 1e-8));
    ResidualReport identity("t0_identity", config.tolerance("t0_identity", 1e-12));
    int flagged = 0;
    for (const auto& p : points) {
      const InducedValue iv = induced_data(imm, p, engine);
      const auto f = imm.f().field()->values_at(p);
      const auto N = imm.N().field()->values_at(p);
      for (double t : ts) {
        const double c = std::cosh(t);
        const double s = std::sinh(t);
        const Eigen::MatrixXd At = c * Eigen::MatrixXd::Identity(n, n) + s * iv.B.matrix();
        const double margin = At.eigenvalues().cwiseAbs().minCoeff();
        const bool degenerate = margin < 1e-8 * c;
        const Sym2Value gt = parallel_metric(iv.g, iv.B, t);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gt.matrix(), Eigen::EigenvaluesOnly);
        std::vector<double> y(static_cast<std::size_t>(m));
        for (int a = 0; a < m; ++a) y[static_cast<std::size_t>(a)] = c * f[static_cast<std::size_t>(a)] - s * N[static_cast<std::size_t>(a)];
        const std::string flag = degenerate ? "degenerate" : "ok";
        if (degenerate) ++flagged;

        std::string line = format_number(t);
        for (double v : p) line += " " + format_number(v);
        for (double v : y) line += " " + format_number(v);
        line += " " + format_number(es.eigenvalues()(0)) + " " + format_number(es.eigenvalues()(n - 1)) + " " + flag;
        table += line + "\n";

        JsonValue row = JsonValue::object();
        row["t"] = t;
        row["chart"] = JsonValue::numbers(p);
        row["ambient"] = JsonValue::numbers(y);
        row["eigmin"] = es.eigenvalues()(0);
        row["eigmax"] = es.eigenvalues()(n - 1);
        row["flag"] = flag;
        rows.push_back(std::move(row));

        if (t == 0.0) {
          double d = 0.0;
          for (int a = 0; a < m; ++a) d = std::max(d, std::fabs(y[static_cast<std::size_t>(a)] - f[static_cast<std::size_t>(a)]));
          d = std::max(d, (gt.matrix() - iv.g.matrix()).cwiseAbs().maxCoeff());
          identity.add(p, d);
        }
        if (!degenerate && margin > 1e-3) {
          // The algebraic metric against the metric induced by the flowed immersion.
          const Immersion flowed = parallel_immersion(imm, t);
          const Sym2Value direct = sym_at(induced_metric(flowed), p);
          consistency.add(p, (direct.matrix() - gt.matrix()).norm() / std::max(1.0, gt.matrix().norm()));
        }
      }
    }
    section.checks.push_back(std::move(consistency));
    if (identity.evaluated() > 0) section.checks.push_back(std::move(identity));
    section.data["flagged_rows"] = flagged;
    if (config.emit.empty()) {
      section.data["rows"] = std::move(rows);
    } else {
      std::ofstream out(config.emit);
      if (!out) throw Error("cannot write '" + config.emit + "'");
      out << table;
      section.data["table"] = config.emit;
    }
  });
}

Report cmd_suite(const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  Report report{config, {}, 0.0};
  AcceptanceOptions options;
  options.seed = config.seed;
  for (auto& r : run_acceptance(options)) report.sections.push_back(std::move(r.section));
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Report run_command(const RunConfig& config) {
  if (config.command == "curvature") return cmd_curvature(config);
  if (config.command == "check") return cmd_check(config);
  if (config.command == "dualize") return cmd_dualize(config);
  if (config.command == "weyl-schouten") return cmd_weyl_schouten(config);
  if (config.command == "flow") return cmd_flow(config);
  if (config.command == "suite") return cmd_suite(config);
  throw Error("unknown command '" + config.command + "'");
}

}  // namespace gcinf
