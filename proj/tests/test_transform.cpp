#include <doctest.h>

#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/spec_document.hpp"
#include "gcinf/transform.hpp"

using namespace gcinf;

namespace {

ScalarField scalar_expr(const std::string& text, int dim) {
  return ScalarField(expr_field({parse_expr(text, dim)}, dim));
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("conformal change formulas on a curved base") {
  const auto base = *load_spec(catalog_document("polynomial-3")).metric;
  const ConformalPair pair{base, scalar_expr("0.3*x1*x2 - 0.2*sin(x3) + 0.1*x1^3", 3)};
  const auto gt = pair.metric();
  const std::vector<double> p{0.2, -0.1, 0.3};
  const DerivEngine ad;

  const double X[] = {1.0, 0.5, -0.2};
  const double Y[] = {0.0, 1.0, 0.7};
  const auto pred = conf_connection(pair, p, X, Y, ad);
  const auto direct = connection(gt, p, X, Y, ad);
  CHECK(max_diff(pred, direct) < 1e-12);

  const auto Rp = conf_riemann(pair, p, ad);
  const auto Rd = riemann(gt, p, ad);
  CHECK(relative_difference(Rp.data(), Rd.data()) < 1e-12);

  CHECK(conf_scalar(pair, p, ad) == doctest::Approx(scalar_curvature(gt, p, ad)).epsilon(1e-12));

  const auto sym = Sym2Field(make_algebraic(3, 9, [](std::span<const Jet> x) {
    const Jet a = x[0] * x[1];
    const Jet b = sin(x[2]);
    return std::vector<Jet>{a, b, Jet(0.0), b, x[2] * x[2], x[0], Jet(0.0), x[0], a + b};
  }));
  const auto dp = conf_dnabla(pair, sym, p, ad);
  const auto dd = dnabla_sym2(gt, sym, p, ad);
  CHECK(relative_difference(dp.data(), dd.data()) < 1e-12);
}

TEST_CASE("conformal formulas with the difference engine") {
  const auto base = flat_metric(2);
  const ConformalPair pair{base, scalar_expr("0.4*x1 - 0.3*x2^2", 2)};
  const std::vector<double> p{0.1, 0.2};
  const DerivEngine fd(EngineMode::central_differences);
  CHECK(conf_scalar(pair, p, fd) == doctest::Approx(scalar_curvature(pair.metric(), p, fd)).epsilon(1e-6));
}

TEST_CASE("pullback by a Codazzi endomorphism") {
  // A = Id + 0.2 Hess u is Codazzi for the flat metric.
  const int n = 3;
  const auto u = parse_expr("x1^2*x2 + 0.5*x3^3 - x1*x3", n);
  auto A = EndoField(make_expanded(n, n * n, [u, n](std::span<const double> p, int order) {
    const Jet j = eval_jet(*u, p, order + 2);
    std::vector<Jet> out;
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) out.push_back((i == k ? 1.0 : 0.0) + 0.2 * j.derivative(i).derivative(k));
    return out;
  }));
  const EndoPullback pb{flat_metric(n), A};
  const std::vector<double> p{0.1, 0.3, -0.2};
  const DerivEngine ad;
  const double X[] = {0.3, 1.0, 0.0};
  const double Y[] = {1.0, -0.4, 0.6};
  const auto pred = pullback_connection(pb, p, X, Y, ad);
  const auto direct = connection(pb.metric(), p, X, Y, ad);
  CHECK(max_diff(pred, direct) < 1e-12);
  const auto Rp = pullback_riemann(pb, p, ad);
  const auto Rd = riemann(pb.metric(), p, ad);
  CHECK(relative_difference(Rd.data(), Rp.data()) < 1e-12);
}

TEST_CASE("hessian identity") {
  const auto g = *load_spec(catalog_document("polynomial-2")).metric;
  const auto u = scalar_expr("exp(0.3*x1)*x2 + x1*x2^2", 2);
  const std::vector<double> p{0.2, 0.4};
  const auto h = hessian_identity(g, u, p, DerivEngine());
  CHECK(relative_difference(h.lhs.data(), h.rhs.data()) < 1e-12);
  CHECK(h.rhs.max_abs() > 1e-3);
}

TEST_CASE("constant scaling A = 2 Id") {
  const auto g = *load_spec(catalog_document("polynomial-3")).metric;
  const auto A = EndoField(make_constant(3, {2, 0, 0, 0, 2, 0, 0, 0, 2}));
  const EndoPullback pb{g, A};
  const std::vector<double> p{0.1, -0.2, 0.3};
  const DerivEngine ad;
  const auto scaled = riemann(pb.metric(), p, ad);
  const auto base = riemann(g, p, ad);
  CHECK(relative_difference(scaled.data(), (4.0 * base).data()) < 1e-13);
  const double X[] = {1.0, 0.0, 0.5};
  const double Y[] = {0.0, 1.0, 1.0};
  CHECK(max_diff(connection(pb.metric(), p, X, Y, ad), connection(g, p, X, Y, ad)) < 1e-13);
}
