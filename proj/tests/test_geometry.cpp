#include <doctest.h>

#include <cmath>
#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/geometry.hpp"
#include "gcinf/spec_document.hpp"
#include "gcinf/transform.hpp"
#include "oracles.hpp"

using namespace gcinf;

namespace {

oracle::MetricFn plain_metric(const Sym2Field& g) {
  return [g](const oracle::Vec& x) {
    const int n = g.dim();
    const auto v = g.field()->values_at(std::vector<double>(x.data(), x.data() + x.size()));
    return oracle::Mat(Eigen::Map<const Eigen::MatrixXd>(v.data(), n, n));
  };
}

}  // namespace

TEST_CASE("upper half space has constant curvature -1") {
  for (int n = 2; n <= 4; ++n) {
    const auto spec = load_spec(catalog_document("upper-half-space-" + std::to_string(n)));
    const auto& g = *spec.metric;
    std::vector<double> p(static_cast<std::size_t>(n), 0.1);
    p.back() = 0.8;
    const auto geo = LocalGeometry::at(g, p, 2, DerivEngine());
    CHECK(geo.scalar_value() == doctest::Approx(-double(n * (n - 1))));
    const auto expect = oracle::constant_curvature_riemann(geo.metric_value().sym().matrix(), -1.0);
    CHECK(oracle::max_abs_diff(expect, geo.riemann_value().data()) < 1e-12 * (1.0 / std::pow(0.8, 4)));
  }
}

TEST_CASE("riemann agrees with the finite-difference oracle") {
  for (const char* name : {"warped-2", "polynomial-2", "polynomial-3", "non-lcf-4a"}) {
    const auto spec = load_spec(catalog_document(name));
    const auto& g = *spec.metric;
    const auto p = spec.doc.box.center();
    const auto Rm = riemann(g, p, DerivEngine());
    const oracle::Vec pv = Eigen::Map<const Eigen::VectorXd>(p.data(), g.dim());
    const auto ref = oracle::riemann(plain_metric(g), pv, 1e-3);
    CHECK_MESSAGE(oracle::max_abs_diff(ref, Rm.data()) < 1e-6 * (1 + oracle::max_abs(ref)), name);
  }
}

TEST_CASE("christoffel symbols agree with the oracle") {
  const auto spec = load_spec(catalog_document("polynomial-3"));
  const auto p = spec.doc.box.center();
  const auto geo = LocalGeometry::at(*spec.metric, p, 1, DerivEngine());
  const oracle::Vec pv = Eigen::Map<const Eigen::VectorXd>(p.data(), 3);
  const auto ref = oracle::christoffel(plain_metric(*spec.metric), pv, 1e-3);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(geo.christoffel(k, i, j).value() == doctest::Approx(ref[k](i, j)).epsilon(1e-8));
}

TEST_CASE("round sphere of radius 2 has scalar curvature n(n-1)/4") {
  const auto spec = load_spec(catalog_document("round-sphere-3-r2"));
  const std::vector<double> p{0.3, -0.2, 0.5};
  CHECK(scalar_curvature(*spec.metric, p, DerivEngine()) == doctest::Approx(6.0 / 4.0));
}

TEST_CASE("exterior derivative of simple endomorphisms") {
  const auto g = flat_metric(2);
  // B = x1 Id: dB(e1, e2) = (d_1 B) e2 - (d_2 B) e1 = e2.
  auto B = EndoField(make_algebraic(2, 4, [](std::span<const Jet> x) {
    return std::vector<Jet>{x[0], Jet(0.0), Jet(0.0), x[0]};
  }));
  const std::vector<double> p{0.4, 0.1};
  const auto d = dnabla_endo(g, B, p, DerivEngine());
  CHECK(d(0, 1, 1) == doctest::Approx(1.0));
  CHECK(d(0, 1, 0) == doctest::Approx(0.0));
  CHECK(d(1, 0, 1) == doctest::Approx(-1.0));
  // T = diag(x2, 0): dT(e1, e1, e2) = (d_1 T)_12 - (d_2 T)_11 = -1.
  auto T = Sym2Field(make_algebraic(2, 4, [](std::span<const Jet> x) {
    return std::vector<Jet>{x[1], Jet(0.0), Jet(0.0), Jet(0.0)};
  }));
  const auto dT = dnabla_sym2(g, T, p, DerivEngine());
  CHECK(dT(0, 0, 1) == doctest::Approx(-1.0));
  CHECK(dT(0, 1, 0) == doctest::Approx(1.0));
}

TEST_CASE("hessian, gradient and laplacian in flat space") {
  const std::vector<double> p{0.5, -1.0};
  auto x = coordinate_jets(p, 4);
  const auto flat_geo = LocalGeometry::at(flat_metric(2), p, 4, DerivEngine());
  const Jet u = x[0] * x[0] * x[1];
  const auto H = flat_geo.hessian(u).values();
  CHECK(H(0, 0) == doctest::Approx(-2.0));
  CHECK(H(0, 1) == doctest::Approx(1.0));
  CHECK(flat_geo.laplacian(u).value() == doctest::Approx(-2.0));
  CHECK(flat_geo.gradient_norm_sq(u).value() == doctest::Approx(1.0 + 0.0625));
}
