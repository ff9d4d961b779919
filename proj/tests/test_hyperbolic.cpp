#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/error.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/hyperbolic.hpp"
#include "gcinf/spec_document.hpp"

using namespace gcinf;

namespace {

MinkowskiVec hyperboloid_point(const Eigen::VectorXd& x) {
  MinkowskiVec p(x.size() + 1);
  p.head(x.size()) = x;
  p(x.size()) = std::sqrt(1 + x.squaredNorm());
  return p;
}

// A curve s -> (p(s), v(s)) in the unit tangent bundle of H^3.
UnitTangent curve(double s) {
  Eigen::VectorXd x(3);
  x << 0.2 + s, -0.4 + 0.5 * s, 0.1 - s * s;
  Eigen::VectorXd w(4);
  w << 1.0, 0.3 * s, -0.5, 0.2 + s;
  return UnitTangent::from_direction(hyperboloid_point(x), w);
}

template <class F>
Eigen::VectorXd d_ds(F f, double h = 1e-4) {
  return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

MapField map_expr(const std::vector<std::string>& texts, int dim) {
  std::vector<ExprPtr> comps;
  for (const auto& t : texts) comps.push_back(parse_expr(t, dim));
  return MapField(expr_field(comps, dim));
}

}  // namespace

TEST_CASE("Minkowski product has the timelike coordinate last") {
  MinkowskiVec a(3), b(3);
  a << 1, 2, 3;
  b << 4, 5, 6;
  CHECK(minkowski_inner(a, b) == doctest::Approx(4 + 10 - 18));
}

TEST_CASE("unit tangent invariants are enforced") {
  MinkowskiVec p(3), v(3);
  p << 0, 0, 1;
  v << 1, 0, 0;
  CHECK_NOTHROW(UnitTangent(p, v));
  v << 1, 0, 0.1;
  CHECK_THROWS_AS(UnitTangent(p, v), DomainError);
  p << 0, 0, -1;
  v << 1, 0, 0;
  CHECK_THROWS_AS(UnitTangent(p, v), DomainError);
}

TEST_CASE("geodesic flow and its differential") {
  const auto ut = curve(0.0);
  const Eigen::VectorXd x = d_ds([](double s) { return Eigen::VectorXd(curve(s).p()); });
  const Eigen::VectorXd dv = d_ds([](double s) { return Eigen::VectorXd(curve(s).v()); });
  // Split form: the vertical part is dv made orthogonal to p.
  const Eigen::VectorXd y = dv - minkowski_inner(x, ut.v()) * ut.p();
  CHECK_NOTHROW(check_split_tangent(ut, x, y, 1e-8));
  for (double t : {-1.0, 0.5, 2.0}) {
    const auto q = geodesic_flow(ut, t);
    CHECK(minkowski_inner(q, q) == doctest::Approx(-1.0));
    const Eigen::VectorXd fd = d_ds([t](double s) { return Eigen::VectorXd(geodesic_flow(curve(s), t)); });
    const Eigen::VectorXd pred = flow_derivative(ut, t, x, y);
    CHECK((pred - fd).norm() < 1e-7 * (1 + fd.norm()));
  }
}

TEST_CASE("Gauss map is the ideal endpoint of the flow") {
  const auto ut = curve(0.1);
  const Eigen::VectorXd e = gauss_map(ut);
  CHECK(e.norm() == doctest::Approx(1.0));
  const Eigen::VectorXd far = stereographic(geodesic_flow(ut, 25.0));
  CHECK((far - e).norm() < 1e-9);

  const auto base = curve(0.0);
  const Eigen::VectorXd x = d_ds([](double s) { return Eigen::VectorXd(curve(s).p()); });
  const Eigen::VectorXd dv = d_ds([](double s) { return Eigen::VectorXd(curve(s).v()); });
  const Eigen::VectorXd y = dv - minkowski_inner(x, base.v()) * base.p();
  const Eigen::VectorXd fd = d_ds([](double s) { return gauss_map(curve(s)); });
  CHECK((gauss_map_derivative(base, x, y) - fd).norm() < 1e-7);
}

TEST_CASE("geodesic spheres and horospheres") {
  const DerivEngine ad;
  for (double r : {0.5, 1.0, 2.0}) {
    char name[64];
    std::snprintf(name, sizeof name, "geodesic-sphere-2-r%g", r);
    const auto spec = load_spec(catalog_document(name));
    const std::vector<double> p{0.3, -0.2};
    const auto d = induced_data(*spec.immersion, p, ad);
    const double c = 1 / std::tanh(r);
    CHECK((d.B.matrix() - c * Eigen::Matrix2d::Identity()).norm() < 1e-12);
    const double conf = 2 * std::sinh(r) / (1 + 0.13);
    CHECK(d.g(0, 0) == doctest::Approx(conf * conf));
    CHECK(d.asymmetry < 1e-12);
  }
  const auto horo = load_spec(catalog_document("horosphere-3"));
  const auto d = induced_data(*horo.immersion, horo.doc.box.center(), ad);
  CHECK((d.B.matrix() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
}

TEST_CASE("parallel surfaces of a geodesic sphere") {
  const auto spec = load_spec(catalog_document("geodesic-sphere-2-r1"));
  const auto& imm = *spec.immersion;
  const std::vector<double> p{0.1, 0.4};
  const DerivEngine ad;
  for (double t : {-0.5, 0.5, 1.0}) {
    const auto d = induced_data(parallel_immersion(imm, t), p, ad);
    CHECK(d.B(0, 0) == doctest::Approx(1 / std::tanh(1 + t)).epsilon(1e-10));
    CHECK(d.B(0, 1) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(parallel_margin(imm, t, p, ad) == doctest::Approx(std::cosh(t) + std::sinh(t) / std::tanh(1.0)));
  }
  // The sphere collapses to its center at t = -1.
  CHECK(parallel_margin(imm, -1.0, p, ad) < 1e-12);
}

TEST_CASE("normal lift differential") {
  const auto spec = load_spec(catalog_document("graph-2b"));
  const auto& imm = *spec.immersion;
  const std::vector<double> p{0.1, -0.2};
  const double u[] = {0.6, -0.8};
  const auto dF = normal_lift_derivative(imm, p, u, DerivEngine());
  auto along = [&](const MapField& m) {
    return d_ds([&](double s) {
      const std::vector<double> q{p[0] + s * u[0], p[1] + s * u[1]};
      const auto v = m.field()->values_at(q);
      return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
    });
  };
  CHECK((dF.horizontal - along(imm.f())).norm() < 1e-8);
  CHECK((dF.vertical + along(imm.N())).norm() < 1e-8);
}

TEST_CASE("computed normals and immersion checks") {
  const auto spec = load_spec(catalog_document("graph-3"));
  const auto p = spec.doc.box.center();
  const auto d = immersion_defects(*spec.immersion, p);
  CHECK(d.hyperboloid < 1e-12);
  CHECK(d.normal_unit < 1e-12);
  CHECK(d.normal_f < 1e-12);
  CHECK(d.normal_df < 1e-12);
  CHECK(d.rank_margin > 0.1);

  const auto off = Immersion::with_computed_normal(map_expr({"x1", "x2", "0", "1.1"}, 2));
  CHECK_THROWS_AS(check_immersion(off, std::vector<double>{0.1, 0.1}), DomainError);
}

TEST_CASE("boundary map and metric at infinity") {
  const DerivEngine ad;
  for (const char* name : {"graph-2a", "geodesic-sphere-2-r0.5", "horosphere-2", "equidistant-2"}) {
    const auto spec = load_spec(catalog_document(name));
    CHECK_MESSAGE(metric_at_infinity_check(*spec.immersion, spec.doc.box.center(), ad) < 1e-10, name);
  }
}

TEST_CASE("hyperboloid patch satisfies the Gauss formula") {
  const auto patch = map_expr({"x1", "x2", "sqrt(1+x1^2+x2^2)"}, 2);
  CHECK(hyperboloid_gauss_defect(patch, std::vector<double>{0.3, -0.6}) < 1e-12);
}

TEST_CASE("stereographic projection") {
  MinkowskiVec apex = MinkowskiVec::Zero(4);
  apex(3) = 1.0;
  CHECK(stereographic(apex).norm() == 0.0);
  MinkowskiVec p = MinkowskiVec::Zero(4);
  p(0) = std::sinh(1.0);
  p(3) = std::cosh(1.0);
  const Eigen::VectorXd s = stereographic(p);
  CHECK(s(0) == doctest::Approx(std::tanh(0.5)));
  CHECK(s.tail(2).norm() == 0.0);
}
