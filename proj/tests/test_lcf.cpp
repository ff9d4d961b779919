#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/error.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/lcf.hpp"
#include "gcinf/sampling.hpp"
#include "gcinf/spec_document.hpp"

using namespace gcinf;

namespace {

ScalarField scalar_expr(const std::string& text, int dim) {
  return ScalarField(expr_field({parse_expr(text, dim)}, dim));
}

MapField map_expr(const std::vector<std::string>& texts, int dim) {
  std::vector<ExprPtr> comps;
  for (const auto& t : texts) comps.push_back(parse_expr(t, dim));
  return MapField(expr_field(comps, dim));
}

const DerivEngine kAd;

}  // namespace

TEST_CASE("OS tensor of a linear factor") {
  // u = a x1: OS = -a^2 e1 e1 + (a^2 / n) delta.
  const int n = 3;
  const double a = 0.7;
  const auto os = osgood_stowe(flat_metric(n), scalar_expr("0.7*x1", n), std::vector<double>{0.1, 0.2, 0.3}, kAd);
  Eigen::MatrixXd expect = (a * a / n) * Eigen::MatrixXd::Identity(n, n);
  expect(0, 0) -= a * a;
  CHECK((os.matrix() - expect).norm() < 1e-14);
}

TEST_CASE("OS tensor is traceless and vanishes for the round metric") {
  const auto pres = *load_spec(catalog_document("conformal-trig-3")).presentation;
  const std::vector<double> p{0.2, -0.3, 0.1};
  const auto os = osgood_stowe(pres, p, kAd);
  CHECK(std::abs(os.matrix().trace()) < 1e-13);
  CHECK(os.max_abs() > 1e-3);

  const auto sphere = *load_spec(catalog_document("round-sphere-3")).presentation;
  CHECK(osgood_stowe(sphere, p, kAd).max_abs() < 1e-14);
  CHECK(reference_flatness(sphere, {p}, kAd) < 1e-15);
}

TEST_CASE("pair at infinity of model metrics") {
  const std::vector<double> p{0.3, 0.1, -0.2};
  // Round sphere: B^ = -Id, whose finite partner collapses.
  const auto sphere = solution_at_infinity(*load_spec(catalog_document("round-sphere-3")).presentation);
  const auto Bs = DerivEngine().endo(sphere.B(), p, 0).values();
  CHECK((Bs + Eigen::Matrix3d::Identity()).norm() < 1e-12);
  const auto finite = undualize(sphere);
  CHECK_THROWS_AS(DerivEngine().endo(finite.B(), p, 0), DegenerateError);

  // Upper half space: B^ = Id, the finite partner is totally geodesic.
  const std::vector<double> q{0.3, 0.1, 1.2};
  const auto uhs = solution_at_infinity(*load_spec(catalog_document("upper-half-space-conformal-3")).presentation);
  CHECK((DerivEngine().endo(uhs.B(), q, 0).values() - Eigen::Matrix3d::Identity()).norm() < 1e-12);
  const auto fin = undualize(uhs);
  CHECK(DerivEngine().endo(fin.B(), q, 0).values().norm() < 1e-12);
}

TEST_CASE("the pair at infinity solves the equations at infinity") {
  for (int n = 2; n <= 4; ++n) {
    const auto doc = random_conformal_spec(n, 40 + static_cast<std::uint64_t>(n));
    const auto pres = *load_spec(doc).presentation;
    const auto pair = solution_at_infinity(pres);
    const std::vector<double> p(static_cast<std::size_t>(n), 0.15);
    const auto r = gcinf_residual(pair, p, kAd);
    CHECK(r.gauss_relative < 1e-10);
    CHECK(r.codazzi_relative < 1e-10);
    const auto a = solution_form(pres, p, kAd);
    const auto b = solution_form_simplified(pres, p, kAd);
    CHECK((a.matrix() - b.matrix()).norm() < 1e-12 * (1 + a.frobenius()));
  }
}

TEST_CASE("Schouten and Weyl tensors") {
  const auto sphere = *load_spec(catalog_document("round-sphere-4")).metric;
  const std::vector<double> p{0.1, 0.2, -0.1, 0.3};
  const auto P = schouten(sphere, p, kAd);
  const auto g = DerivEngine().sym2(sphere, p, 0).values();
  CHECK((P.matrix() - 0.5 * g).norm() < 1e-12);
  CHECK(weyl(sphere, p, kAd).max_abs() < 1e-12);

  const auto generic = *load_spec(catalog_document("non-lcf-4a")).metric;
  const auto q = catalog_document("non-lcf-4a").box.center();
  CHECK(weyl(generic, q, kAd).max_abs() > 1e-3);
  const auto div = weyl_divergence_identity(generic, q, kAd);
  CHECK(div.relative < 1e-10);
  CHECK(div.predicted.max_abs() > 1e-4);

  CHECK_THROWS_AS(schouten(flat_metric(2), std::vector<double>{0.0, 0.0}, kAd), DimensionError);
}

TEST_CASE("conformal flatness checks") {
  const auto lcf = *load_spec(catalog_document("conformal-poly-4")).metric;
  const auto pts = sample_points(catalog_document("conformal-poly-4").box, {6, 3, true, false});
  CHECK(weyl_schouten_check(lcf, pts, kAd, 1e-9).passed());
  const auto trig = *load_spec(catalog_document("conformal-trig-3")).metric;
  const auto r3 = weyl_schouten_check(trig, sample_points(Box::cube(3, -1, 1), {6, 3, true, false}), kAd, 1e-8);
  CHECK(r3.name() == "cotton");
  CHECK(r3.passed());
  const auto generic = *load_spec(catalog_document("non-lcf-4b")).metric;
  CHECK(weyl_schouten_check(generic, pts, kAd, 1e-3, Expectation::exceeds).passed());
}

TEST_CASE("Moebius maps have vanishing OS tensor") {
  const auto inversion = map_expr({"x1/(x1^2+x2^2+x3^2)", "x2/(x1^2+x2^2+x3^2)", "x3/(x1^2+x2^2+x3^2)"}, 3);
  const std::vector<double> p{0.5, 0.4, -0.6};
  CHECK(conformality_defect(inversion, p, kAd) < 1e-14);
  CHECK(mobius_defect(inversion, p, kAd) < 1e-12);

  const auto square = map_expr({"x1^2-x2^2", "2*x1*x2"}, 2);
  const std::vector<double> z{0.6, 0.3};
  CHECK(conformality_defect(square, z, kAd) < 1e-14);
  CHECK(mobius_defect(square, z, kAd) > 1e-2);

  const auto shear = map_expr({"x1+0.5*x2", "x2"}, 2);
  CHECK(conformality_defect(shear, z, kAd) > 0.1);
  CHECK_THROWS_AS(mobius_defect(shear, z, kAd), DomainError);
}

TEST_CASE("OS cocycle, naturality and patching") {
  const auto g1 = *load_spec(catalog_document("polynomial-3")).metric;
  const auto a = scalar_expr("0.2*x1*x2 - 0.1*x3^2", 3);
  const auto b = scalar_expr("0.3*sin(x1) + 0.1*x2*x3", 3);
  const std::vector<double> p{0.1, 0.2, 0.3};
  CHECK(os_cocycle_defect(g1, a, b, p, kAd) < 1e-12);

  const auto inversion = map_expr({"x1/(x1^2+x2^2+x3^2)", "x2/(x1^2+x2^2+x3^2)", "x3/(x1^2+x2^2+x3^2)"}, 3);
  const auto pres = ConformalPresentation::euclidean(scalar_expr("0.2*x1^2 + 0.1*x2 - 0.3*x3*x1", 3));
  const std::vector<double> q{0.8, 0.5, -0.7};
  CHECK(os_naturality_defect(inversion, pres, q, kAd) < 1e-10);
  CHECK(os_patching_defect(pres.factor, inversion, q, kAd) < 1e-10);
}

TEST_CASE("uniqueness constant") {
  CHECK(kn_uniqueness_constant(3) == doctest::Approx(1.75));
  CHECK(kn_uniqueness_constant(4) == doctest::Approx((1 + 4.0 / 6) / 2));
}
