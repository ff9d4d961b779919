#include <doctest.h>

#include <cmath>
#include <vector>

#include "gcinf/jet.hpp"
#include "oracles.hpp"

using namespace gcinf;

TEST_CASE("jet space layout is graded and nested") {
  const auto& s3 = JetSpace::get(3, 3);
  const auto& s2 = JetSpace::get(3, 2);
  CHECK(s3.size() == 20);
  CHECK(s2.size() == 10);
  CHECK(s3.size_upto(2) == s2.size());
  for (std::size_t i = 0; i < s2.size(); ++i) {
    const auto a = s2.exponents(i);
    const auto b = s3.exponents(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
  for (std::size_t i = 1; i < s3.size(); ++i) CHECK(s3.degree(i - 1) <= s3.degree(i));
}

TEST_CASE("monomial partials") {
  const std::vector<double> p{0.3, -0.7};
  auto x = coordinate_jets(p, 4);
  const Jet m = x[0] * x[0] * x[1];
  CHECK(m.value() == doctest::Approx(0.3 * 0.3 * -0.7));
  CHECK(m.partial({0}) == doctest::Approx(2 * 0.3 * -0.7));
  CHECK(m.partial({0, 0}) == doctest::Approx(2 * -0.7));
  CHECK(m.partial({0, 1}) == doctest::Approx(0.6));
  CHECK(m.partial({0, 0, 1}) == doctest::Approx(2.0));
  CHECK(m.partial({1, 1}) == doctest::Approx(0.0));
  CHECK(m.partial({0, 0, 0, 1}) == doctest::Approx(0.0));
}

TEST_CASE("elementary functions match closed-form derivatives") {
  const std::vector<double> p{0.4};
  auto x = coordinate_jets(p, 5);
  const Jet e = exp(x[0]);
  for (int k = 0; k <= 5; ++k) {
    std::vector<int> vars(static_cast<std::size_t>(k), 0);
    CHECK(e.partial(std::span<const int>(vars)) == doctest::Approx(std::exp(0.4)));
  }
  CHECK(log(x[0]).partial({0, 0, 0}) == doctest::Approx(2.0 / (0.4 * 0.4 * 0.4)));
  CHECK(sin(x[0]).partial({0, 0}) == doctest::Approx(-std::sin(0.4)));
  CHECK(cosh(x[0]).partial({0, 0, 0}) == doctest::Approx(std::sinh(0.4)));
  CHECK(sqrt(x[0]).partial({0}) == doctest::Approx(0.5 / std::sqrt(0.4)));
  CHECK(tanh(x[0]).partial({0}) == doctest::Approx(1.0 - std::tanh(0.4) * std::tanh(0.4)));
  CHECK(pow(x[0], -2).partial({0, 0}) == doctest::Approx(6.0 / std::pow(0.4, 4)));
  CHECK(pow(x[0], 1.5).partial({0, 0}) == doctest::Approx(0.75 / std::sqrt(0.4)));
}

TEST_CASE("quotient and product rules against finite differences") {
  const std::vector<double> p{0.2, 0.5, -0.3};
  auto fn = [](const auto& x0, const auto& x1, const auto& x2) {
    using std::cos;
    using std::exp;
    using std::sin;
    return exp(x0 * x1) * sin(x2) / (2.0 + cos(x0 + x2 * x1));
  };
  auto x = coordinate_jets(p, 3);
  const Jet j = fn(x[0], x[1], x[2]);
  auto plain = [&](const oracle::Vec& v) { return fn(v(0), v(1), v(2)); };
  const oracle::Vec pv = Eigen::Map<const Eigen::VectorXd>(p.data(), 3);
  const std::vector<std::vector<int>> cases{{0}, {2}, {0, 1}, {2, 2}, {0, 1, 2}, {1, 1, 2}};
  for (const auto& vars : cases) {
    const double fd = oracle::partial(plain, pv, vars, 1e-2);
    CHECK(j.partial(std::span<const int>(vars)) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("mixed-order arithmetic truncates to the smaller order") {
  const std::vector<double> p{1.0, 2.0};
  auto hi = coordinate_jets(p, 4);
  auto lo = coordinate_jets(p, 2);
  const Jet m = hi[0] * lo[1];
  CHECK(m.order() == 2);
  const Jet c = hi[0] * 3.0 + 1.0;
  CHECK(c.order() == 4);
  CHECK(c.value() == doctest::Approx(4.0));
}

TEST_CASE("derivative and composition") {
  const std::vector<double> p{0.1, 0.2};
  auto x = coordinate_jets(p, 4);
  const Jet f = sin(x[0]) * x[1] * x[1];
  const Jet df = f.derivative(0);
  CHECK(df.order() == 3);
  CHECK(df.partial({1, 1}) == doctest::Approx(2 * std::cos(0.1)));

  // outer(y) = y0^2 + y1, inner = (x0 + x1, x0 x1)
  const std::vector<double> c{0.5, -0.1};
  auto y = coordinate_jets(c, 3);
  const Jet outer = y[0] * y[0] + y[1];
  auto z = coordinate_jets(std::vector<double>{0.3, 0.2}, 3);
  std::vector<Jet> inner{z[0] + z[1], z[0] * z[1] - 0.04};
  const Jet comp = compose(outer, c, inner);
  // (x0 + x1)^2 + x0 x1 - 0.04 at (0.3, 0.2)
  CHECK(comp.value() == doctest::Approx(0.25 + 0.06 - 0.04));
  CHECK(comp.partial({0}) == doctest::Approx(2 * 0.5 + 0.2));
  CHECK(comp.partial({0, 1}) == doctest::Approx(3.0));
}

TEST_CASE("identity detection") {
  auto x = coordinate_jets(std::vector<double>{1.0, 2.0}, 2);
  CHECK(is_identity(x));
  x[1] = x[1] * 2.0;
  CHECK_FALSE(is_identity(x));
}
