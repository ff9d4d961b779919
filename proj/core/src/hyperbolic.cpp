#include "gcinf/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcinf/error.hpp"
#include "gcinf/jet_tensor.hpp"

namespace gcinf {
namespace {

std::vector<Jet> expand(const MapField& m, std::span<const double> p, int order) {
  const auto x = coordinate_jets(p, order);
  return m.field()->evaluate(x);
}

std::vector<Jet> truncate_all(std::vector<Jet> v, int order) {
  for (auto& j : v) j = j.truncated(order);
  return v;
}

std::vector<Jet> partials(const std::vector<Jet>& v, int var) {
  std::vector<Jet> out;
  out.reserve(v.size());
  for (const auto& j : v) out.push_back(j.derivative(var));
  return out;
}

MinkowskiVec timelike_basis(int size) {
  MinkowskiVec e = MinkowskiVec::Zero(size);
  e(size - 1) = 1.0;
  return e;
}

double scale_of(const MinkowskiVec& a, const MinkowskiVec& b) { return std::max(1.0, a.norm() * b.norm()); }

// Jacobian (rows: ambient components, cols: chart directions) from order-1 jets.
Eigen::MatrixXd jacobian(std::span<const Jet> j, int n) {
  Eigen::MatrixXd d(static_cast<Eigen::Index>(j.size()), n);
  for (std::size_t a = 0; a < j.size(); ++a)
    for (int i = 0; i < n; ++i) d(static_cast<Eigen::Index>(a), i) = j[a].partial({i});
  return d;
}

Eigen::VectorXd values_of(std::span<const Jet> j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t a = 0; a < j.size(); ++a) v(static_cast<Eigen::Index>(a)) = j[a].value();
  return v;
}

Eigen::MatrixXd minkowski_form(int size) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(size, size);
  m(size - 1, size - 1) = -1.0;
  return m;
}

// Unit normal of f at order k, as described for with_computed_normal.
std::vector<Jet> computed_normal(const MapField& f, std::span<const double> p, int k, int orientation) {
  const int n = f.dim();
  const int m = f.size();
  const auto fj = expand(f, p, k + 1);
  std::vector<std::vector<Jet>> df;
  for (int i = 0; i < n; ++i) df.push_back(partials(fj, i));
  const auto f0 = truncate_all(fj, k);
  JetMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = minkowski_inner(df[static_cast<std::size_t>(i)], df[static_cast<std::size_t>(j)]);
  const JetMatrix ginv = inverse(g);

  std::vector<Jet> best;
  double best_norm = -1.0;
  for (int a = 0; a < m; ++a) {
    std::vector<Jet> e(static_cast<std::size_t>(m), Jet(0.0));
    e[static_cast<std::size_t>(a)] = Jet(1.0);
    // e + <e,f> f - g^{ij} <e, d_i f> d_j f
    std::vector<Jet> cand = e;
    const Jet ef = minkowski_inner(e, f0);
    for (int c = 0; c < m; ++c) cand[static_cast<std::size_t>(c)] += ef * f0[static_cast<std::size_t>(c)];
    for (int i = 0; i < n; ++i) {
      const Jet ei = minkowski_inner(e, df[static_cast<std::size_t>(i)]);
      for (int j = 0; j < n; ++j) {
        const Jet coef = ginv(i, j) * ei;
        for (int c = 0; c < m; ++c)
          cand[static_cast<std::size_t>(c)] -= coef * df[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
      }
    }
    const double nn = minkowski_inner(cand, cand).value();
    if (nn > best_norm) {
      best_norm = nn;
      best = std::move(cand);
    }
  }
  if (!(best_norm > 1e-24)) throw DegenerateError("cannot compute a unit normal: df is degenerate", best_norm);
  const Jet inv_len = reciprocal(sqrt(minkowski_inner(best, best)));
  for (auto& c : best) c *= inv_len;

  Eigen::MatrixXd frame(m, m);
  for (int i = 0; i < n; ++i) frame.col(i) = values_of(df[static_cast<std::size_t>(i)]);
  frame.col(n) = values_of(f0);
  frame.col(n + 1) = values_of(best);
  if (frame.determinant() * orientation < 0.0)
    for (auto& c : best) c = -c;
  return best;
}

}  // namespace

double minkowski_inner(const MinkowskiVec& x, const MinkowskiVec& y) {
  if (x.size() != y.size() || x.size() < 1) throw DimensionError("minkowski_inner: size mismatch");
  const Eigen::Index last = x.size() - 1;
  return x.head(last).dot(y.head(last)) - x(last) * y(last);
}

Jet minkowski_inner(std::span<const Jet> x, std::span<const Jet> y) {
  if (x.size() != y.size() || x.empty()) throw DimensionError("minkowski_inner: size mismatch");
  const std::size_t last = x.size() - 1;
  Jet s = -(x[last] * y[last]);
  for (std::size_t i = 0; i < last; ++i) s += x[i] * y[i];
  return s;
}

UnitTangent::UnitTangent(MinkowskiVec p, MinkowskiVec v, double tol) : p_(std::move(p)), v_(std::move(v)) {
  if (p_.size() != v_.size() || p_.size() < 2) throw DimensionError("unit tangent: size mismatch");
  const Eigen::Index last = p_.size() - 1;
  if (std::fabs(minkowski_inner(p_, p_) + 1.0) > tol * std::max(1.0, p_.squaredNorm()) || !(p_(last) > 0.0))
    throw DomainError("unit tangent: p is not on the upper hyperboloid");
  if (std::fabs(minkowski_inner(v_, v_) - 1.0) > tol * std::max(1.0, v_.squaredNorm()))
    throw DomainError("unit tangent: v is not a unit vector");
  if (std::fabs(minkowski_inner(p_, v_)) > tol * scale_of(p_, v_))
    throw DomainError("unit tangent: v is not tangent at p");
}

UnitTangent UnitTangent::from_direction(const MinkowskiVec& p, const MinkowskiVec& w) {
  MinkowskiVec v = w + minkowski_inner(w, p) * p;
  const double nn = minkowski_inner(v, v);
  if (!(nn > 1e-24)) throw DomainError("unit tangent: direction is parallel to p");
  v /= std::sqrt(nn);
  return UnitTangent(p, v, 1e-10);
}

void check_split_tangent(const UnitTangent& ut, const MinkowskiVec& x, const MinkowskiVec& y, double tol) {
  const auto& p = ut.p();
  const auto& v = ut.v();
  if (x.size() != p.size() || y.size() != p.size()) throw DimensionError("split tangent: size mismatch");
  if (std::fabs(minkowski_inner(x, p)) > tol * scale_of(x, p)) throw DomainError("split tangent: <x,p> != 0");
  if (std::fabs(minkowski_inner(y, p)) > tol * scale_of(y, p)) throw DomainError("split tangent: <y,p> != 0");
  if (std::fabs(minkowski_inner(y, v)) > tol * scale_of(y, v)) throw DomainError("split tangent: <y,v> != 0");
}

MinkowskiVec geodesic_flow(const UnitTangent& ut, double t) { return std::cosh(t) * ut.p() + std::sinh(t) * ut.v(); }

MinkowskiVec flow_derivative(const UnitTangent& ut, double t, const MinkowskiVec& x, const MinkowskiVec& y) {
  check_split_tangent(ut, x, y);
  return std::cosh(t) * x + std::sinh(t) * y + std::sinh(t) * minkowski_inner(x, ut.v()) * ut.p();
}

Eigen::VectorXd stereographic(const MinkowskiVec& p) {
  const Eigen::Index last = p.size() - 1;
  return p.head(last) / (1.0 + p(last));
}

Eigen::VectorXd gauss_map(const UnitTangent& ut) {
  const MinkowskiVec q = ut.p() + ut.v();
  const Eigen::Index last = q.size() - 1;
  return q.head(last) / q(last);
}

Eigen::VectorXd gauss_map_derivative(const UnitTangent& ut, const MinkowskiVec& x, const MinkowskiVec& y) {
  check_split_tangent(ut, x, y);
  const MinkowskiVec q = ut.p() + ut.v();
  const MinkowskiVec w = x + y + minkowski_inner(x, ut.v()) * ut.p();
  const MinkowskiVec e = timelike_basis(static_cast<int>(q.size()));
  const double qe = minkowski_inner(q, e);
  const MinkowskiVec d = minkowski_inner(w, e) / (qe * qe) * q - w / qe;
  return d.head(d.size() - 1);
}

Immersion::Immersion(MapField f, MapField N) : f_(std::move(f)), N_(std::move(N)) {
  if (f_.size() != f_.dim() + 2) throw DimensionError("immersion: f must map an n-dimensional chart into R^{n+2}");
  if (N_.dim() != f_.dim() || N_.size() != f_.size()) throw DimensionError("immersion: N does not match f");
}

Immersion Immersion::with_computed_normal(MapField f, int orientation) {
  if (f.size() != f.dim() + 2) throw DimensionError("immersion: f must map an n-dimensional chart into R^{n+2}");
  const int sign = orientation < 0 ? -1 : 1;
  MapField normal(make_expanded(f.dim(), f.size(), [f, sign](std::span<const double> p, int k) {
    return computed_normal(f, p, k, sign);
  }));
  return Immersion(std::move(f), std::move(normal));
}

ImmersionDefects immersion_defects(const Immersion& imm, std::span<const double> p) {
  const int n = imm.dim();
  const auto fj = expand(imm.f(), p, 1);
  const auto nraw = imm.N().field()->values_at(p);
  const Eigen::VectorXd nv = Eigen::Map<const Eigen::VectorXd>(nraw.data(), imm.ambient_dim());
  const Eigen::VectorXd fv = values_of(fj);
  const Eigen::MatrixXd df = jacobian(fj, n);
  ImmersionDefects d{};
  d.hyperboloid = std::fabs(minkowski_inner(fv, fv) + 1.0);
  d.future = std::max(0.0, -fv(fv.size() - 1));
  d.normal_unit = std::fabs(minkowski_inner(nv, nv) - 1.0);
  d.normal_f = std::fabs(minkowski_inner(nv, fv));
  d.normal_df = 0.0;
  for (int i = 0; i < n; ++i) d.normal_df = std::max(d.normal_df, std::fabs(minkowski_inner(nv, df.col(i))));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(df);
  const auto& s = svd.singularValues();
  d.rank_margin = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
  return d;
}

void check_immersion(const Immersion& imm, std::span<const double> p) {
  const ImmersionDefects d = immersion_defects(imm, p);
  const auto fraw = imm.f().field()->values_at(p);
  const double scale = std::max(1.0, Eigen::Map<const Eigen::VectorXd>(fraw.data(), imm.ambient_dim()).squaredNorm());
  if (d.hyperboloid > 1e-12 * scale || d.future > 0.0) throw DomainError("immersion leaves the upper hyperboloid");
  if (d.normal_unit > 1e-10 * scale || d.normal_f > 1e-10 * scale || d.normal_df > 1e-10 * scale)
    throw DomainError("N is not a unit normal along f");
  if (d.rank_margin < 1e-10) throw DegenerateError("df is rank deficient", d.rank_margin);
}

Sym2Field induced_metric(const Immersion& imm) {
  const int n = imm.dim();
  MapField f = imm.f();
  return Sym2Field(make_expanded(n, n * n, [f, n](std::span<const double> p, int k) {
    const auto fj = expand(f, p, k + 1);
    std::vector<std::vector<Jet>> df;
    for (int i = 0; i < n; ++i) df.push_back(partials(fj, i));
    std::vector<Jet> g(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        const Jet v = minkowski_inner(df[static_cast<std::size_t>(i)], df[static_cast<std::size_t>(j)]);
        g[static_cast<std::size_t>(i * n + j)] = v;
        g[static_cast<std::size_t>(j * n + i)] = v;
      }
    return g;
  }));
}

EndoField shape_operator(const Immersion& imm) {
  const int n = imm.dim();
  MapField f = imm.f();
  MapField nf = imm.N();
  return EndoField(make_expanded(n, n * n, [f, nf, n](std::span<const double> p, int k) {
    const auto fj = expand(f, p, k + 1);
    const auto nj = expand(nf, p, k + 1);
    std::vector<std::vector<Jet>> df;
    std::vector<std::vector<Jet>> dn;
    for (int i = 0; i < n; ++i) {
      df.push_back(partials(fj, i));
      dn.push_back(partials(nj, i));
    }
    JetMatrix g(n, n);
    JetMatrix ii(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        g(i, j) = minkowski_inner(df[static_cast<std::size_t>(i)], df[static_cast<std::size_t>(j)]);
        ii(i, j) = -minkowski_inner(dn[static_cast<std::size_t>(i)], df[static_cast<std::size_t>(j)]);
      }
    const JetMatrix b = inverse(g.symmetrized()) * ii.symmetrized();
    return std::vector<Jet>(b.components().begin(), b.components().end());
  }));
}

DualityPair induced_pair(const Immersion& imm) {
  return DualityPair(induced_metric(imm), shape_operator(imm), Side::finite);
}

InducedValue induced_data(const Immersion& imm, std::span<const double> p, const DerivEngine& engine) {
  check_immersion(imm, p);
  const int n = imm.dim();
  const Eigen::MatrixXd df = jacobian(engine.map(imm.f(), p, 1), n);
  const Eigen::MatrixXd dn = jacobian(engine.map(imm.N(), p, 1), n);
  const Eigen::MatrixXd eta = minkowski_form(imm.ambient_dim());
  const Eigen::MatrixXd g = df.transpose() * eta * df;
  const Eigen::MatrixXd ii = -(dn.transpose() * eta * df);
  const double scale = std::max(1.0, ii.cwiseAbs().maxCoeff());
  const double asym = (ii - ii.transpose()).cwiseAbs().maxCoeff() / scale;
  const Sym2Value gs = Sym2Value::from_matrix(g);
  const MetricValue gm(gs);
  return {gs, raise(gm, Sym2Value::from_matrix(ii)), asym};
}

SplitVector normal_lift_derivative(const Immersion& imm, std::span<const double> p, std::span<const double> u,
                                   const DerivEngine& engine) {
  const int n = imm.dim();
  if (static_cast<int>(u.size()) != n) throw DimensionError("normal_lift_derivative: direction has wrong size");
  const InducedValue iv = induced_data(imm, p, engine);
  const Eigen::MatrixXd df = jacobian(engine.map(imm.f(), p, 1), n);
  const Eigen::Map<const Eigen::VectorXd> uv(u.data(), n);
  return {df * uv, df * (iv.B.matrix() * uv)};
}

Immersion parallel_immersion(const Immersion& imm, double t) {
  const int m = imm.ambient_dim();
  FieldPtr f = imm.f().field();
  FieldPtr nf = imm.N().field();
  const double c = std::cosh(t);
  const double s = std::sinh(t);
  // (a, b) -> a f + b N
  auto combine = [f, nf, m](double a, double b) {
    return make_algebraic(f->dim(), m, [f, nf, a, b](std::span<const Jet> x) {
      auto fv = f->evaluate(x);
      const auto nv = nf->evaluate(x);
      for (std::size_t i = 0; i < fv.size(); ++i) fv[i] = a * fv[i] + b * nv[i];
      return fv;
    });
  };
  return Immersion(MapField(combine(c, -s)), MapField(combine(-s, c)));
}

double parallel_margin(const Immersion& imm, double t, std::span<const double> p, const DerivEngine& engine) {
  const InducedValue iv = induced_data(imm, p, engine);
  const int n = imm.dim();
  const Eigen::MatrixXd a = std::cosh(t) * Eigen::MatrixXd::Identity(n, n) + std::sinh(t) * iv.B.matrix();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) margin = std::min(margin, std::abs(es.eigenvalues()(i)));
  return margin;
}

MapField boundary_map(const Immersion& imm) {
  FieldPtr f = imm.f().field();
  FieldPtr nf = imm.N().field();
  const int m = imm.ambient_dim();
  return MapField(make_algebraic(imm.dim(), m - 1, [f, nf, m](std::span<const Jet> x) {
    const auto fv = f->evaluate(x);
    const auto nv = nf->evaluate(x);
    const auto last = static_cast<std::size_t>(m - 1);
    const Jet inv = reciprocal(fv[last] - nv[last]);
    std::vector<Jet> out;
    out.reserve(last);
    for (std::size_t i = 0; i < last; ++i) out.push_back((fv[i] - nv[i]) * inv);
    return out;
  }));
}

double metric_at_infinity_check(const Immersion& imm, std::span<const double> p, const DerivEngine& engine) {
  const int n = imm.dim();
  const InducedValue iv = induced_data(imm, p, engine);
  const DualValue dual = dualize_value(iv.g, iv.B);
  const Eigen::MatrixXd j = jacobian(engine.map(boundary_map(imm), p, 1), n);
  const Eigen::MatrixXd lhs = j.transpose() * j;
  const auto fv = imm.f().field()->values_at(p);
  const auto nv = imm.N().field()->values_at(p);
  const double q = fv.back() - nv.back();
  const Eigen::MatrixXd rhs = dual.metric.matrix() / (q * q);
  return (lhs - rhs).norm() / rhs.norm();
}

double hyperboloid_gauss_defect(const MapField& patch, std::span<const double> p) {
  const int k = patch.dim();
  const auto j2 = expand(patch, p, 2);
  const Eigen::VectorXd phi = values_of(j2);
  std::vector<Eigen::VectorXd> d1;
  for (int i = 0; i < k; ++i) d1.push_back(values_of(partials(j2, i)));
  double worst = 0.0;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Eigen::VectorXd w(phi.size());
      for (Eigen::Index a = 0; a < phi.size(); ++a) w(a) = j2[static_cast<std::size_t>(a)].partial({i, j});
      const Eigen::VectorXd tangential = w + minkowski_inner(w, phi) * phi;
      const Eigen::VectorXd normal = w - tangential;
      const Eigen::VectorXd predicted =
          minkowski_inner(d1[static_cast<std::size_t>(i)], d1[static_cast<std::size_t>(j)]) * phi;
      worst = std::max(worst, (normal - predicted).norm());
    }
  return worst;
}

}  // namespace gcinf
