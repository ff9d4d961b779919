#include "gcinf/transform.hpp"

#include <cmath>

#include "gcinf/error.hpp"
#include "gcinf/geometry.hpp"

namespace gcinf {

Sym2Field EndoPullback::metric() const { return pullback_metric(base, A); }

Sym2Field pullback_metric(const Sym2Field& g, const EndoField& A) {
  if (g.dim() != A.dim()) throw DimensionError("pullback_metric: dimension mismatch");
  const int n = g.dim();
  FieldPtr gf = g.field();
  FieldPtr af = A.field();
  return Sym2Field(make_algebraic(n, n * n, [gf, af, n](std::span<const Jet> x) {
    const JetMatrix gm = JetMatrix::from_components(gf->evaluate(x), n, n);
    const JetMatrix am = JetMatrix::from_components(af->evaluate(x), n, n);
    const JetMatrix r = (am.transpose() * gm * am).symmetrized();
    return std::vector<Jet>(r.components().begin(), r.components().end());
  }));
}

std::vector<double> connection(const Sym2Field& g, std::span<const double> p, std::span<const double> X,
                               std::span<const double> Y, const DerivEngine& engine) {
  return LocalGeometry::at(g, p, 1, engine).connection(X, Y);
}

std::vector<double> conf_connection(const ConformalPair& pair, std::span<const double> p, std::span<const double> X,
                                    std::span<const double> Y, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pair.base, p, 1, engine);
  const Jet u = engine.scalar(pair.factor, p, 1);
  const int n = geo.dim();
  std::vector<double> out = geo.connection(X, Y);
  double dux = 0.0;
  double duy = 0.0;
  double gxy = 0.0;
  for (int i = 0; i < n; ++i) {
    dux += u.partial({i}) * X[static_cast<std::size_t>(i)];
    duy += u.partial({i}) * Y[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) gxy += geo.metric()(i, j).value() * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
  }
  const auto grad = geo.gradient(u);
  for (int k = 0; k < n; ++k) {
    const auto kk = static_cast<std::size_t>(k);
    out[kk] += dux * Y[kk] + duy * X[kk] - gxy * grad[kk].value();
  }
  return out;
}

Tensor4Value conf_riemann(const ConformalPair& pair, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pair.base, p, 2, engine);
  const Jet u = engine.scalar(pair.factor, p, 2);
  const int n = geo.dim();
  const double e2u = std::exp(2.0 * u.value());
  const Eigen::MatrixXd g = geo.metric().values();
  const Eigen::MatrixXd hess = geo.hessian(u).values();
  Eigen::VectorXd du(n);
  for (int i = 0; i < n; ++i) du(i) = u.partial({i});
  const double grad2 = geo.gradient_norm_sq(u).value();
  const Sym2Value inner = Sym2Value::from_matrix(hess - du * du.transpose() + 0.5 * grad2 * g);
  const Sym2Value gt = Sym2Value::from_matrix(e2u * g);
  Tensor4Value rm = geo.riemann_value();
  rm *= e2u;
  rm -= kulkarni_nomizu(gt, inner);
  return rm;
}

double conf_scalar(const ConformalPair& pair, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pair.base, p, 2, engine);
  const Jet u = engine.scalar(pair.factor, p, 2);
  const double n = geo.dim();
  return std::exp(-2.0 * u.value()) * (geo.scalar_value() - 2.0 * (n - 1.0) * geo.laplacian(u).value() -
                                       (n - 2.0) * (n - 1.0) * geo.gradient_norm_sq(u).value());
}

Tensor3Value conf_dnabla(const ConformalPair& pair, const Sym2Field& T, std::span<const double> p,
                         const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pair.base, p, 1, engine);
  const Jet u = engine.scalar(pair.factor, p, 1);
  const JetMatrix t = engine.sym2(T, p, 1);
  const int n = geo.dim();
  Tensor3Value out = geo.dnabla_sym2(t).tensor3_value();
  const Tensor4Value tg = kulkarni_nomizu(t.sym2_value(), geo.metric().sym2_value());
  const auto grad = geo.gradient(u);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += grad[static_cast<std::size_t>(a)].value() * tg(a, x, y, z);
        out(x, y, z) += s;
      }
  return out;
}

std::vector<double> pullback_connection(const EndoPullback& pb, std::span<const double> p, std::span<const double> X,
                                        std::span<const double> Y, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pb.base, p, 1, engine);
  const JetMatrix a = engine.endo(pb.A, p, 1);
  const int n = geo.dim();
  const Eigen::MatrixXd av = a.values();
  if (std::fabs(av.determinant()) <= 1e-10) throw DegenerateError("pullback_connection: A is not invertible", av.determinant());
  // nabla_X (A Y) = (d_X A) Y + Gamma(X, A Y).
  std::vector<double> ay(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ay[static_cast<std::size_t>(i)] += av(i, j) * Y[static_cast<std::size_t>(j)];
  const std::vector<double> gam = geo.connection(X, ay);
  Eigen::VectorXd v(n);
  for (int k = 0; k < n; ++k) {
    double s = gam[static_cast<std::size_t>(k)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += a(k, j).partial({i}) * X[static_cast<std::size_t>(i)] * Y[static_cast<std::size_t>(j)];
    v(k) = s;
  }
  const Eigen::VectorXd r = av.partialPivLu().solve(v);
  return std::vector<double>(r.data(), r.data() + n);
}

Tensor4Value pullback_riemann(const EndoPullback& pb, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(pb.base, p, 2, engine);
  const JetMatrix a = engine.endo(pb.A, p, 0);
  return feed_last_two(geo.riemann_value(), a.endo_value());
}

HessianIdentity hessian_identity(const Sym2Field& g, const ScalarField& u, std::span<const double> p,
                                 const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(g, p, 2, engine);
  const Jet uj = engine.scalar(u, p, 3);
  const int n = geo.dim();
  HessianIdentity out{geo.dnabla_sym2(geo.hessian(uj)).tensor3_value(), Tensor3Value(n)};
  const Tensor4Value rm = geo.riemann_value();
  const auto grad = geo.gradient(uj);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += grad[static_cast<std::size_t>(a)].value() * rm(a, x, y, z);
        out.rhs(x, y, z) = s;
      }
  return out;
}

Tensor4Value riemann(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine) {
  return LocalGeometry::at(g, p, 2, engine).riemann_value();
}

double scalar_curvature(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine) {
  return LocalGeometry::at(g, p, 2, engine).scalar_value();
}

Tensor3Value dnabla_sym2(const Sym2Field& g, const Sym2Field& T, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(g, p, 1, engine);
  return geo.dnabla_sym2(engine.sym2(T, p, 1)).tensor3_value();
}

Tensor3Value dnabla_endo(const Sym2Field& g, const EndoField& B, std::span<const double> p, const DerivEngine& engine) {
  const LocalGeometry geo = LocalGeometry::at(g, p, 1, engine);
  return geo.dnabla_endo(engine.endo(B, p, 1)).tensor3_value();
}

}  // namespace gcinf
