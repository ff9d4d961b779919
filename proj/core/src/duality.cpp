#include "gcinf/duality.hpp"

#include <cmath>
#include <limits>

#include "gcinf/error.hpp"
#include "gcinf/geometry.hpp"

namespace gcinf {
namespace {

double smallest_abs_eigenvalue(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  double s = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m.rows(); ++i) s = std::min(s, std::abs(es.eigenvalues()(i)));
  return s;
}

std::vector<Jet> flatten(const JetMatrix& m) { return std::vector<Jet>(m.components().begin(), m.components().end()); }

DualityPair map_pair(const DualityPair& pair, double scale, Side to) {
  const int n = pair.dim();
  FieldPtr gf = pair.g().field();
  FieldPtr bf = pair.B().field();
  auto compute = [gf, bf, n, scale](std::span<const Jet> x) {
    const JetMatrix g = JetMatrix::from_components(gf->evaluate(x), n, n);
    const JetMatrix b = JetMatrix::from_components(bf->evaluate(x), n, n);
    return dualize_jets(g, b, scale);
  };
  Sym2Field g_new(make_algebraic(n, n * n, [compute](std::span<const Jet> x) { return flatten(compute(x).metric); }));
  EndoField b_new(make_algebraic(n, n * n, [compute](std::span<const Jet> x) { return flatten(compute(x).shape); }));
  return DualityPair(std::move(g_new), std::move(b_new), to);
}

double norm3(const Tensor3Value& t) { return t.frobenius(); }

}  // namespace

std::string to_string(Side side) { return side == Side::finite ? "finite" : "infinity"; }

Side side_from_string(const std::string& s) {
  if (s == "finite") return Side::finite;
  if (s == "infinity") return Side::infinity;
  throw Error("unknown side '" + s + "' (expected finite or infinity)");
}

DualityPair::DualityPair(Sym2Field g, EndoField B, Side side) : g_(std::move(g)), B_(std::move(B)), side_(side) {
  if (g_.dim() != B_.dim()) throw DimensionError("duality pair: metric and shape operator dimensions differ");
}

Sym2Field second_fundamental(const DualityPair& pair) {
  const int n = pair.dim();
  FieldPtr gf = pair.g().field();
  FieldPtr bf = pair.B().field();
  return Sym2Field(make_algebraic(n, n * n, [gf, bf, n](std::span<const Jet> x) {
    const JetMatrix g = JetMatrix::from_components(gf->evaluate(x), n, n);
    const JetMatrix b = JetMatrix::from_components(bf->evaluate(x), n, n);
    return flatten((b.transpose() * g).symmetrized());
  }));
}

Sym2Field third_fundamental(const DualityPair& pair) {
  const int n = pair.dim();
  FieldPtr gf = pair.g().field();
  FieldPtr bf = pair.B().field();
  return Sym2Field(make_algebraic(n, n * n, [gf, bf, n](std::span<const Jet> x) {
    const JetMatrix g = JetMatrix::from_components(gf->evaluate(x), n, n);
    const JetMatrix b = JetMatrix::from_components(bf->evaluate(x), n, n);
    return flatten((b.transpose() * g * b).symmetrized());
  }));
}

DualJets dualize_jets(const JetMatrix& g, const JetMatrix& B, double scale) {
  const int n = g.rows();
  if (B.rows() != n || g.cols() != n || B.cols() != n) throw DimensionError("dualize: dimension mismatch");
  const JetMatrix id = JetMatrix::identity(n);
  const JetMatrix a = id + B;
  const double margin = smallest_abs_eigenvalue(a.values());
  if (!(margin >= kDualizeMargin)) {
    throw DegenerateError("Id + B is (nearly) singular: -1 is an eigenvalue of the shape operator", margin);
  }
  JetMatrix metric = (a.transpose() * g * a).symmetrized() * Jet(scale);
  const JetMatrix shape = inverse(a) * (id - B);
  const JetMatrix lowered = shape.transpose() * metric;
  const Eigen::MatrixXd lv = lowered.values();
  const double asym = (lv - lv.transpose()).cwiseAbs().maxCoeff() / std::max(1.0, lv.cwiseAbs().maxCoeff());
  JetMatrix sym_shape = inverse(metric) * lowered.symmetrized();
  return {std::move(metric), std::move(sym_shape), asym, margin};
}

DualValue dualize_value(const Sym2Value& g, const EndoValue& B) {
  const DualJets d = dualize_jets(JetMatrix::constant(g.matrix()), JetMatrix::constant(B.matrix()), 1.0);
  return {d.metric.sym2_value(), d.shape.endo_value(), d.asymmetry, d.margin};
}

DualValue undualize_value(const Sym2Value& g_hat, const EndoValue& B_hat) {
  const DualJets d = dualize_jets(JetMatrix::constant(g_hat.matrix()), JetMatrix::constant(B_hat.matrix()), 0.25);
  return {d.metric.sym2_value(), d.shape.endo_value(), d.asymmetry, d.margin};
}

DualityPair dualize(const DualityPair& pair) {
  if (pair.side() != Side::finite) throw Error("dualize expects a finite-side pair");
  return map_pair(pair, 1.0, Side::infinity);
}

DualityPair undualize(const DualityPair& pair) {
  if (pair.side() != Side::infinity) throw Error("undualize expects a pair at infinity");
  return map_pair(pair, 0.25, Side::finite);
}

DualityPair scale_family(const DualityPair& pair, double t) {
  const int n = pair.dim();
  FieldPtr gf = pair.g().field();
  FieldPtr bf = pair.B().field();
  const double up = std::exp(2.0 * t);
  const double down = std::exp(-2.0 * t);
  Sym2Field g(make_algebraic(n, n * n, [gf, up](std::span<const Jet> x) {
    auto c = gf->evaluate(x);
    for (auto& j : c) j *= up;
    return c;
  }));
  EndoField b(make_algebraic(n, n * n, [bf, down](std::span<const Jet> x) {
    auto c = bf->evaluate(x);
    for (auto& j : c) j *= down;
    return c;
  }));
  return DualityPair(std::move(g), std::move(b), pair.side());
}

EquationResidual gc_residual(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pair.g(), p, 2, engine);
  const JetMatrix b = engine.endo(pair.B(), p, 1);
  const MetricValue g = geo.metric_value();
  const Sym2Value ii = Sym2Value::from_matrix(lower_form(g, b.endo_value()));
  const Tensor4Value rm = geo.riemann_value();
  const Tensor4Value gg = kulkarni_nomizu(g.sym(), g.sym());
  const Tensor4Value iiii = kulkarni_nomizu(ii, ii);
  EquationResidual r;
  r.gauss = rm + 0.5 * gg - 0.5 * iiii;
  r.gauss_relative =
      norm_g(g, r.gauss) / (1.0 + norm_g(g, rm) + 0.5 * norm_g(g, gg) + 0.5 * norm_g(g, iiii));
  r.codazzi = geo.dnabla_endo(b).tensor3_value();
  r.codazzi_relative = norm3(r.codazzi) / (1.0 + geo.nabla_endo(b).tensor3_value().frobenius());
  return r;
}

EquationResidual gcinf_residual(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pair.g(), p, 2, engine);
  const JetMatrix b = engine.endo(pair.B(), p, 1);
  const MetricValue g = geo.metric_value();
  const Sym2Value ii = Sym2Value::from_matrix(lower_form(g, b.endo_value()));
  const Tensor4Value rm = geo.riemann_value();
  const Tensor4Value gii = kulkarni_nomizu(g.sym(), ii);
  EquationResidual r;
  r.gauss = rm + 0.5 * gii;
  r.gauss_relative = norm_g(g, r.gauss) / (1.0 + norm_g(g, rm) + 0.5 * norm_g(g, gii));
  r.codazzi = geo.dnabla_endo(b).tensor3_value();
  r.codazzi_relative = norm3(r.codazzi) / (1.0 + geo.nabla_endo(b).tensor3_value().frobenius());
  return r;
}

EquationResidual equation_residual(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine) {
  return pair.side() == Side::finite ? gc_residual(pair, p, engine) : gcinf_residual(pair, p, engine);
}

double surface_gauss_defect(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine) {
  if (pair.dim() != 2) throw DimensionError("surface_gauss_defect needs dimension 2");
  const LocalGeometry geo = LocalGeometry::at(pair.g(), p, 2, engine);
  const Eigen::MatrixXd g = geo.metric().values();
  const double k = geo.riemann_value()(0, 1, 1, 0) / g.determinant();
  const double det_b = engine.endo(pair.B(), p, 0).values().determinant();
  return k - (-1.0 + det_b);
}

double trace_scalar_check(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine) {
  const int n = pair.dim();
  if (n < 2) throw DimensionError("trace_scalar_check needs dimension >= 2");
  const LocalGeometry geo = LocalGeometry::at(pair.g(), p, 2, engine);
  const double tr = engine.endo(pair.B(), p, 0).values().trace();
  return tr + geo.scalar_value() / (n - 1.0);
}

CodazziTransport codazzi_transport(const DualityPair& finite, std::span<const double> p, const DerivEngine& engine) {
  const DualityPair dual = dualize(finite);
  const int n = finite.dim();
  const LocalGeometry geo = LocalGeometry::at(finite.g(), p, 1, engine);
  const JetMatrix b = engine.endo(finite.B(), p, 1);
  const LocalGeometry geo_hat = LocalGeometry::at(dual.g(), p, 1, engine);
  const JetMatrix b_hat = engine.endo(dual.B(), p, 1);
  CodazziTransport out{geo_hat.dnabla_endo(b_hat).tensor3_value(), Tensor3Value(n), 0.0};
  const Tensor3Value d = geo.dnabla_endo(b).tensor3_value();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + b.values();
  const Eigen::MatrixXd ainv = a.inverse();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int m = 0; m < n; ++m) s -= ainv(k, m) * d(i, j, m);
        out.predicted(i, j, k) = s;
      }
  out.relative = relative_difference(out.dual_side.data(), out.predicted.data());
  return out;
}

Sym2Value parallel_metric(const Sym2Value& g, const EndoValue& B, double t) {
  const int n = g.dim();
  const EndoValue a(std::cosh(t) * Eigen::MatrixXd::Identity(n, n) + std::sinh(t) * B.matrix());
  return pullback(g, a);
}

Sym2Value parallel_metric_from_dual(const Sym2Value& g_hat, const EndoValue& B_hat, double t) {
  const Eigen::MatrixXd& gh = g_hat.matrix();
  const Eigen::MatrixXd& bh = B_hat.matrix();
  const Eigen::MatrixXd ii = bh.transpose() * gh;
  const Eigen::MatrixXd iii = bh.transpose() * gh * bh;
  return Sym2Value::from_matrix(0.25 * std::exp(2.0 * t) * gh + 0.5 * ii + 0.25 * std::exp(-2.0 * t) * iii);
}

EquationReports equation_reports(const DualityPair& pair, const std::vector<std::vector<double>>& points,
                                 const DerivEngine& engine, double gauss_tol, double codazzi_tol) {
  const std::string prefix = pair.side() == Side::finite ? "gc" : "gcinf";
  EquationReports out{ResidualReport(prefix + ".gauss", gauss_tol), ResidualReport(prefix + ".codazzi", codazzi_tol)};
  for (const auto& p : points) {
    try {
      const EquationResidual r = equation_residual(pair, p, engine);
      out.gauss.add(p, r.gauss_relative);
      out.codazzi.add(p, r.codazzi_relative);
    } catch (const DegenerateError& e) {
      out.gauss.skip(p, e.smallest_eigenvalue(), e.what());
      out.codazzi.skip(p, e.smallest_eigenvalue(), e.what());
    } catch (const Error&) {
      out.gauss.add(p, std::numeric_limits<double>::quiet_NaN());
      out.codazzi.add(p, std::numeric_limits<double>::quiet_NaN());
    }
  }
  return out;
}

}  // namespace gcinf
