#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/duality.hpp"
#include "gcinf/error.hpp"
#include "gcinf/sampling.hpp"
#include "gcinf/spec_document.hpp"

using namespace gcinf;

TEST_CASE("zero shape operator") {
  const auto g = Sym2Value::diagonal({2.0, 3.0});
  const auto d = dualize_value(g, EndoValue(2));
  CHECK((d.metric.matrix() - g.matrix()).norm() < 1e-15);
  CHECK((d.shape.matrix() - Eigen::Matrix2d::Identity()).norm() < 1e-15);
  CHECK(d.margin == doctest::Approx(1.0));
}

TEST_CASE("closed form in an eigenbasis") {
  // B = diag(b1, b2): g^ = diag((1+b)^2 g), B^ = diag((1-b)/(1+b)).
  const auto g = Sym2Value::diagonal({1.5, 0.5});
  const auto d = dualize_value(g, EndoValue::diagonal({0.5, -0.3}));
  CHECK(d.metric(0, 0) == doctest::Approx(1.5 * 2.25));
  CHECK(d.metric(1, 1) == doctest::Approx(0.5 * 0.49));
  CHECK(d.shape(0, 0) == doctest::Approx(0.5 / 1.5));
  CHECK(d.shape(1, 1) == doctest::Approx(1.3 / 0.7));
  const auto back = undualize_value(d.metric, d.shape);
  CHECK(back.metric(0, 0) == doctest::Approx(1.5));
  CHECK(back.shape(1, 1) == doctest::Approx(-0.3));
}

TEST_CASE("eigenvalue -1 is refused") {
  const auto g = Sym2Value::identity(2);
  CHECK_THROWS_AS(dualize_value(g, EndoValue::diagonal({-1.0, 0.2})), DegenerateError);
  try {
    dualize_value(g, EndoValue::diagonal({-1.0 + 1e-9, 0.2}));
    FAIL("expected DegenerateError");
  } catch (const DegenerateError& e) {
    CHECK(std::abs(e.smallest_eigenvalue()) < 1e-6);
  }
}

TEST_CASE("random round trips") {
  UniformSource rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    Eigen::MatrixXd a(n, n), s(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = rng.next(-1, 1);
        s(i, j) = rng.next(-0.5, 0.5);
      }
    const Eigen::MatrixXd gm = a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
    const MetricValue g(Sym2Value::from_matrix(gm));
    const auto B = raise(g, Sym2Value::from_matrix(s));
    const auto d = dualize_value(g.sym(), B);
    CHECK(d.asymmetry < 1e-12);
    const auto back = undualize_value(d.metric, d.shape);
    CHECK((back.metric.matrix() - gm).norm() < 1e-12 * gm.norm());
    CHECK((back.shape.matrix() - B.matrix()).norm() < 1e-11 * (1 + B.frobenius()));
    // (Id + B)(Id + B^) = 2 Id.
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    CHECK(((I + B.matrix()) * (I + d.shape.matrix()) - 2 * I).norm() < 1e-12);
  }
}

TEST_CASE("parallel metrics from both sides agree") {
  const auto g = Sym2Value::diagonal({1.0, 2.0, 0.7});
  const auto B = EndoValue::diagonal({0.3, -0.2, 1.4});
  const auto d = dualize_value(g, B);
  for (double t : {-0.5, 0.0, 0.8, 2.0}) {
    const auto a = parallel_metric(g, B, t);
    const auto b = parallel_metric_from_dual(d.metric, d.shape, t);
    CHECK((a.matrix() - b.matrix()).norm() < 1e-12 * a.frobenius());
  }
  CHECK((parallel_metric(g, B, 0.0).matrix() - g.matrix()).norm() < 1e-15);
}

TEST_CASE("horosphere pair satisfies both systems") {
  const auto spec = load_spec(catalog_document("horosphere-pair-3"));
  const auto& pair = *spec.pair;
  const std::vector<double> p = spec.doc.box.center();
  const DerivEngine ad;
  const auto r = gc_residual(pair, p, ad);
  CHECK(r.gauss_relative < 1e-12);
  CHECK(r.codazzi_relative < 1e-12);
  const auto dual = dualize(pair);
  CHECK(dual.side() == Side::infinity);
  const auto ri = gcinf_residual(dual, p, ad);
  CHECK(ri.gauss_relative < 1e-12);
  CHECK(ri.codazzi_relative < 1e-12);
  CHECK(std::abs(trace_scalar_check(dual, p, ad)) < 1e-12);
  const auto ct = codazzi_transport(pair, p, ad);
  CHECK(ct.relative < 1e-12);
}

TEST_CASE("perturbed pair fails the finite system") {
  const auto spec = load_spec(catalog_document("perturbed-horosphere-pair-2"));
  const auto p = spec.doc.box.center();
  const auto r = gc_residual(*spec.pair, p, DerivEngine());
  CHECK(std::max(r.gauss_relative, r.codazzi_relative) > 1e-4);
}

TEST_CASE("surface Gauss equation on the sphere pair") {
  const auto spec = load_spec(catalog_document("sphere-pair-2"));
  const std::vector<double> p{0.2, -0.3};
  CHECK(std::abs(surface_gauss_defect(*spec.pair, p, DerivEngine())) < 1e-12);
}

TEST_CASE("scaling the pair at infinity") {
  const auto spec = load_spec(catalog_document("flat-infinity-pair-2"));
  const std::vector<double> p{0.1, 0.1};
  const auto scaled = scale_family(*spec.pair, 0.7);
  const auto r = gcinf_residual(scaled, p, DerivEngine());
  CHECK(r.gauss_relative < 1e-12);
  CHECK(r.codazzi_relative < 1e-12);
}
