#include "gcinf/lcf.hpp"

#include <cmath>

#include "gcinf/error.hpp"

namespace gcinf {
namespace {

void require_weyl_dimension(int n) {
  if (n <= 2) throw DimensionError("neither the Weyl nor the Schouten tensor exists in dimension " + std::to_string(n));
}

Eigen::MatrixXd jacobian(std::span<const Jet> j, int n) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(j.size()), n);
  for (std::size_t a = 0; a < j.size(); ++a)
    for (int i = 0; i < n; ++i) d(static_cast<Eigen::Index>(a), i) = j[a].partial({i});
  return d;
}

std::vector<Jet> expand(const Field& f, std::span<const double> p, int order) {
  const auto x = coordinate_jets(p, order);
  return f.evaluate(x);
}

ScalarField sum(const ScalarField& a, const ScalarField& b) {
  FieldPtr fa = a.field();
  FieldPtr fb = b.field();
  return ScalarField(make_algebraic(a.dim(), 1, [fa, fb](std::span<const Jet> x) {
    return std::vector<Jet>{fa->evaluate(x)[0] + fb->evaluate(x)[0]};
  }));
}

// (T ^ S)_ijkl on jets.
JetArray kulkarni_nomizu_jets(const JetMatrix& T, const JetMatrix& S) {
  const int n = T.rows();
  JetArray out(n, 4);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out.at({i, j, k, l}) = T(i, l) * S(j, k) + T(j, k) * S(i, l) - T(i, k) * S(j, l) - T(j, l) * S(i, k);
  return out;
}

std::span<const double> flat(const Eigen::MatrixXd& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

}  // namespace

ConformalPresentation ConformalPresentation::euclidean(const ScalarField& u) { return {flat_metric(u.dim()), u}; }

double reference_flatness(const ConformalPresentation& pres, const std::vector<std::vector<double>>& points,
                          const DerivEngine& engine) {
  double worst = 0.0;
  for (const auto& p : points)
    worst = std::max(worst, LocalGeometry::at(pres.reference, p, 2, engine).riemann_value().frobenius());
  return worst;
}

JetMatrix osgood_stowe_jets(const LocalGeometry& base, const Jet& u) {
  const int n = base.dim();
  const JetMatrix hess = base.hessian(u);
  const Jet trace_part = (base.laplacian(u) - base.gradient_norm_sq(u)) * (1.0 / n);
  JetMatrix os(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) os(i, j) = hess(i, j) - u.derivative(i) * u.derivative(j) - trace_part * base.metric()(i, j);
  return os;
}

Sym2Value osgood_stowe(const Sym2Field& base, const ScalarField& u, std::span<const double> p,
                       const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(base, p, 1, engine);
  return osgood_stowe_jets(geo, engine.scalar(u, p, 2)).sym2_value();
}

Sym2Value osgood_stowe(const ConformalPresentation& pres, std::span<const double> p, const DerivEngine& engine) {
  return osgood_stowe(pres.reference, pres.factor, p, engine);
}

double os_cocycle_defect(const Sym2Field& g1, const ScalarField& a, const ScalarField& b, std::span<const double> p,
                         const DerivEngine& engine) {
  const Sym2Field g2 = conformal_metric(g1, a);
  const Sym2Value os31 = osgood_stowe(g1, sum(a, b), p, engine);
  const Sym2Value os32 = osgood_stowe(g2, b, p, engine);
  const Sym2Value os21 = osgood_stowe(g1, a, p, engine);
  return (os31 - os32 - os21).frobenius();
}

Sym2Field pullback_by_map(const Sym2Field& g, const MapField& phi) {
  if (g.dim() != phi.size()) throw DimensionError("pullback_by_map: map does not land in the metric's chart");
  const int k = phi.dim();
  const int m = phi.size();
  FieldPtr gf = g.field();
  FieldPtr pf = phi.field();
  return Sym2Field(make_expanded(k, k * k, [gf, pf, k, m](std::span<const double> p, int order) {
    auto pj = expand(*pf, p, order + 1);
    std::vector<std::vector<Jet>> d(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      for (int a = 0; a < m; ++a) d[static_cast<std::size_t>(i)].push_back(pj[static_cast<std::size_t>(a)].derivative(i));
    for (auto& j : pj) j = j.truncated(order);
    const auto gv = gf->evaluate(pj);
    std::vector<Jet> out(static_cast<std::size_t>(k * k), Jet(0.0));
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) {
        Jet s(0.0);
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            s += d[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] * gv[static_cast<std::size_t>(a * m + b)] *
                 d[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)];
        out[static_cast<std::size_t>(i * k + j)] = s;
        out[static_cast<std::size_t>(j * k + i)] = s;
      }
    return out;
  }));
}

double conformality_defect(const MapField& phi, std::span<const double> p, const DerivEngine& engine) {
  const int n = phi.dim();
  const Eigen::MatrixXd j = jacobian(engine.map(phi, p, 1), n);
  const Eigen::MatrixXd m = j.transpose() * j;
  const double s = m.trace() / n;
  if (!(s > 0.0)) throw DegenerateError("map has vanishing derivative", s);
  return (m - s * Eigen::MatrixXd::Identity(n, n)).norm() / s;
}

ScalarField conformal_log_factor(const MapField& phi) {
  const int n = phi.dim();
  const int m = phi.size();
  FieldPtr pf = phi.field();
  return ScalarField(make_expanded(n, 1, [pf, n, m](std::span<const double> p, int order) {
    const auto pj = expand(*pf, p, order + 1);
    Jet s(0.0);
    for (int a = 0; a < m; ++a)
      for (int i = 0; i < n; ++i) {
        const Jet d = pj[static_cast<std::size_t>(a)].derivative(i);
        s += d * d;
      }
    return std::vector<Jet>{0.5 * log(s * (1.0 / n))};
  }));
}

double os_naturality_defect(const MapField& phi, const ConformalPresentation& pres, std::span<const double> p,
                            const DerivEngine& engine) {
  const int n = phi.dim();
  const auto pj = engine.map(phi, p, 1);
  const Eigen::MatrixXd j = jacobian(pj, n);
  const std::vector<double> q = values(pj);
  const Eigen::MatrixXd lhs = j.transpose() * osgood_stowe(pres, q, engine).matrix() * j;
  const Sym2Field base = pullback_by_map(pres.reference, phi);
  const ScalarField factor = compose(pres.factor, phi);
  const Eigen::MatrixXd rhs = osgood_stowe(base, factor, p, engine).matrix();
  return relative_difference(flat(lhs), flat(rhs));
}

double mobius_defect(const MapField& phi, std::span<const double> p, const DerivEngine& engine) {
  if (phi.size() != phi.dim()) throw DimensionError("mobius_defect: map must be between charts of equal dimension");
  const double defect = conformality_defect(phi, p, engine);
  if (defect > 1e-6) throw DomainError("map is not conformal at the point (defect " + format_number(defect) + ")");
  return osgood_stowe(flat_metric(phi.dim()), conformal_log_factor(phi), p, engine).frobenius();
}

double os_patching_defect(const ScalarField& u, const MapField& m, std::span<const double> p,
                          const DerivEngine& engine) {
  const int n = m.dim();
  const ScalarField v = sum(compose(u, m), conformal_log_factor(m));
  const Eigen::MatrixXd os_x = osgood_stowe(flat_metric(n), v, p, engine).matrix();
  const auto mj = engine.map(m, p, 1);
  const Eigen::MatrixXd j = jacobian(mj, n);
  const std::vector<double> y = values(mj);
  const Eigen::MatrixXd pulled = j.transpose() * osgood_stowe(flat_metric(n), u, y, engine).matrix() * j;
  return relative_difference(flat(os_x), flat(pulled));
}

DualityPair solution_at_infinity(const ConformalPresentation& pres) {
  const int n = pres.factor.dim();
  if (n < 2) throw DimensionError("solution_at_infinity needs dimension >= 2");
  if (pres.reference.dim() != n) throw DimensionError("solution_at_infinity: reference and factor dimensions differ");
  FieldPtr ref = pres.reference.field();
  FieldPtr uf = pres.factor.field();
  EndoField shape(make_expanded(n, n * n, [ref, uf, n](std::span<const double> p, int k) {
    const auto x = coordinate_jets(p, k + 2);
    const JetMatrix r = JetMatrix::from_components(ref->evaluate(x), n, n);
    const Jet u = uf->evaluate(x)[0];
    const LocalGeometry ref_geo(r);
    const JetMatrix gh = r * exp(2.0 * u);
    const LocalGeometry hat_geo(gh);
    const JetMatrix os = osgood_stowe_jets(ref_geo, u);
    const JetMatrix ii = os * Jet(2.0) - gh * (hat_geo.scalar() * (1.0 / (n * (n - 1.0))));
    const JetMatrix b = inverse(gh.truncated(k)) * ii.truncated(k);
    return std::vector<Jet>(b.components().begin(), b.components().end());
  }));
  return DualityPair(pres.metric(), std::move(shape), Side::infinity);
}

Sym2Value solution_form(const ConformalPresentation& pres, std::span<const double> p, const DerivEngine& engine) {
  const int n = pres.factor.dim();
  const LocalGeometry hat = LocalGeometry::at(pres.metric(), p, 2, engine);
  const Sym2Value os = osgood_stowe(pres, p, engine);
  return 2.0 * os - (hat.scalar_value() / (n * (n - 1.0))) * hat.metric().sym2_value();
}

Sym2Value solution_form_simplified(const ConformalPresentation& pres, std::span<const double> p,
                                   const DerivEngine& engine) {
  const int n = pres.factor.dim();
  const LocalGeometry ref = LocalGeometry::at(pres.reference, p, 1, engine);
  const Jet u = engine.scalar(pres.factor, p, 2);
  const Eigen::MatrixXd hess = ref.hessian(u).values();
  Eigen::VectorXd du(n);
  for (int i = 0; i < n; ++i) du(i) = u.partial({i});
  const double grad2 = ref.gradient_norm_sq(u).value();
  return Sym2Value::from_matrix(2.0 * hess - 2.0 * du * du.transpose() + grad2 * ref.metric().values());
}

JetMatrix schouten_jets(const LocalGeometry& geo) {
  const int n = geo.dim();
  require_weyl_dimension(n);
  const Jet s = geo.scalar() * (1.0 / (2.0 * (n - 1.0)));
  return (geo.ricci() - geo.metric() * s) * Jet(1.0 / (n - 2.0));
}

Sym2Value schouten(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine) {
  require_weyl_dimension(g.dim());
  return schouten_jets(LocalGeometry::at(g, p, 2, engine)).sym2_value();
}

Tensor4Value weyl(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine) {
  require_weyl_dimension(g.dim());
  const LocalGeometry geo = LocalGeometry::at(g, p, 2, engine);
  const Sym2Value pv = schouten_jets(geo).sym2_value();
  return geo.riemann_value() - kulkarni_nomizu(pv, geo.metric().sym2_value());
}

double schouten_solution_check(const ConformalPresentation& pres, std::span<const double> p, const DerivEngine& engine) {
  require_weyl_dimension(pres.factor.dim());
  const Sym2Value lhs = solution_form(pres, p, engine);
  const Sym2Value two_p = 2.0 * schouten(pres.metric(), p, engine);
  return (lhs + two_p).frobenius() / std::max(1.0, two_p.frobenius());
}

ResidualReport weyl_schouten_check(const Sym2Field& g, const std::vector<std::vector<double>>& points,
                                   const DerivEngine& engine, double tolerance, Expectation expectation) {
  const int n = g.dim();
  require_weyl_dimension(n);
  if (n == 3) {
    return sample_check(
        "cotton", tolerance, points,
        [&](std::span<const double> p) {
          const LocalGeometry geo = LocalGeometry::at(g, p, 3, engine);
          return geo.dnabla_sym2(schouten_jets(geo)).tensor3_value().frobenius();
        },
        expectation);
  }
  return sample_check(
      "weyl", tolerance, points,
      [&](std::span<const double> p) {
        const LocalGeometry geo = LocalGeometry::at(g, p, 2, engine);
        const Tensor4Value w =
            geo.riemann_value() - kulkarni_nomizu(schouten_jets(geo).sym2_value(), geo.metric().sym2_value());
        return norm_g(geo.metric_value(), w);
      },
      expectation);
}

WeylDivergence weyl_divergence_identity(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine) {
  const int n = g.dim();
  if (n < 4) throw DimensionError("the Weyl divergence identity needs dimension >= 4");
  const LocalGeometry geo = LocalGeometry::at(g, p, 3, engine);
  const JetMatrix pj = schouten_jets(geo);
  const JetArray& rm = geo.riemann();
  const JetArray pg = kulkarni_nomizu_jets(pj, geo.metric());
  JetArray w(n, 4);
  for (std::size_t i = 0; i < w.size(); ++i) w.flat(i) = rm.flat(i) - pg.flat(i);
  const JetArray nw = geo.nabla_tensor4(w);
  const Eigen::MatrixXd ginv = geo.inverse().values();
  WeylDivergence out{Tensor3Value(n), geo.dnabla_sym2(pj).tensor3_value(), 0.0};
  out.predicted *= -(n - 3.0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) s += ginv(a, b) * nw.at({a, b, x, y, z}).value();
        out.divergence(x, y, z) = s;
      }
  out.relative = relative_difference(out.divergence.data(), out.predicted.data());
  return out;
}

Sym2Value kn_recover(const MetricValue& g, const Tensor4Value& Q) {
  const int n = g.dim();
  if (n == 2) throw DimensionError("uniqueness fails in dimension 2: g ^ h = 0 has nonzero solutions h");
  if (n < 2) throw DimensionError("kn_recover needs dimension >= 3");
  const Sym2Value t = trace4(g, Q);
  const double tr_s = trace2(g, t) / (2.0 * (n - 1.0));
  return (t - tr_s * g.sym()) * (1.0 / (n - 2.0));
}

Sym2Value kn_injectivity(const MetricValue& g, const Sym2Value& S) {
  if (g.dim() == 2) throw DimensionError("uniqueness fails in dimension 2: g ^ h = 0 has nonzero solutions h");
  return kn_recover(g, kulkarni_nomizu(g.sym(), S));
}

double kn_uniqueness_constant(int n) {
  if (n <= 2) throw DimensionError("uniqueness fails in dimension 2: g ^ h = 0 has nonzero solutions h");
  return (1.0 + n / (2.0 * (n - 1.0))) / (n - 2.0);
}

Tensor4Value right_inverse_G(const MetricValue& g, const Sym2Value& h) {
  const int n = g.dim();
  require_weyl_dimension(n);
  const Sym2Value t = (h - (trace2(g, h) / (2.0 * (n - 1.0))) * g.sym()) * (1.0 / (n - 2.0));
  return kulkarni_nomizu(t, g.sym());
}

}  // namespace gcinf
