#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "gcinf/error.hpp"
#include "gcinf/lcf.hpp"
#include "gcinf/multilinear.hpp"
#include "gcinf/sampling.hpp"

using namespace gcinf;

namespace {

Eigen::MatrixXd random_spd(int n, UniformSource& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.next(-1, 1);
  return a * a.transpose() + Eigen::MatrixXd::Identity(n, n);
}

Sym2Value random_sym(int n, UniformSource& rng) {
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.next(-1, 1);
  return Sym2Value::from_matrix(a);
}

}  // namespace

TEST_CASE("Kulkarni-Nomizu product by index formula") {
  UniformSource rng(3);
  const int n = 3;
  const auto T = random_sym(n, rng);
  const auto S = random_sym(n, rng);
  const auto Q = kulkarni_nomizu(T, S);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double expect = T(i, l) * S(j, k) + T(j, k) * S(i, l) - T(i, k) * S(j, l) - T(j, l) * S(i, k);
          CHECK(Q(i, j, k, l) == doctest::Approx(expect));
        }
  CHECK(curvature_symmetry_defect(Q) < 1e-14);
  CHECK(bianchi_defect(Q) < 1e-14);
}

TEST_CASE("trace of g ^ h") {
  // trace4(g ^ h) = (n - 2) h + tr_g(h) g.
  UniformSource rng(5);
  for (int n = 3; n <= 5; ++n) {
    const MetricValue g(Sym2Value::from_matrix(random_spd(n, rng)));
    const auto h = random_sym(n, rng);
    const auto t = trace4(g, kulkarni_nomizu(g.sym(), h));
    const Eigen::MatrixXd expect = (n - 2) * h.matrix() + trace2(g, h) * g.sym().matrix();
    CHECK((t.matrix() - expect).norm() < 1e-12 * (1 + expect.norm()));
  }
}

TEST_CASE("trace4 refuses tensors without curvature symmetry") {
  Tensor4Value Q(2);
  Q(0, 1, 0, 1) = 1.0;
  const MetricValue g(Sym2Value::identity(2));
  CHECK_THROWS_AS(trace4(g, Q), SymmetryError);
}

TEST_CASE("metric values") {
  CHECK_THROWS_AS(MetricValue(Sym2Value::diagonal({1.0, -1.0})), DegenerateError);
  try {
    MetricValue bad(Sym2Value::diagonal({2.0, -0.5}));
  } catch (const DegenerateError& e) {
    CHECK(e.smallest_eigenvalue() == doctest::Approx(-0.5));
  }
  UniformSource rng(9);
  const MetricValue g(Sym2Value::from_matrix(random_spd(4, rng)));
  const auto& F = g.orthonormal_frame();
  CHECK((F.transpose() * g.sym().matrix() * F - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
  CHECK((g.inverse() * g.sym().matrix() - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("lower and raise") {
  UniformSource rng(21);
  const MetricValue g(Sym2Value::from_matrix(random_spd(3, rng)));
  const auto T = random_sym(3, rng);
  const auto B = raise(g, T);
  CHECK(is_self_adjoint(g, B));
  CHECK((lower(g, B).matrix() - T.matrix()).norm() < 1e-12);
  EndoValue skew(3);
  skew(0, 1) = 1.0;
  CHECK_FALSE(is_self_adjoint(g, skew));
  CHECK_THROWS_AS(lower(g, skew), SymmetryError);
}

TEST_CASE("sectional curvature of a constant curvature tensor") {
  const MetricValue g(Sym2Value::diagonal({2.0, 3.0, 0.5}));
  const auto Rm = -0.5 * kulkarni_nomizu(g.sym(), g.sym());
  const double X[] = {1.0, 0.2, 0.0};
  const double Y[] = {0.3, -1.0, 2.0};
  // With Rm = -1/2 g ^ g, K = -1 on every plane.
  CHECK(sectional(g, Rm, X, Y) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(sectional(g, Rm, X, X), DegenerateError);
}

TEST_CASE("frame norms are coordinate independent") {
  UniformSource rng(2);
  const int n = 3;
  const Eigen::MatrixXd gm = random_spd(n, rng);
  const auto T = random_sym(n, rng);
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = (i == j ? 1.5 : 0.0) + rng.next(-0.3, 0.3);
  const MetricValue g(Sym2Value::from_matrix(gm));
  const MetricValue gA(Sym2Value::from_matrix(A.transpose() * gm * A));
  const auto TA = Sym2Value::from_matrix(A.transpose() * T.matrix() * A);
  CHECK(norm_g(g, T) == doctest::Approx(norm_g(gA, TA)));
  const auto Q = kulkarni_nomizu(g.sym(), T);
  const auto QA = kulkarni_nomizu(gA.sym(), TA);
  CHECK(norm_g(g, Q) == doctest::Approx(norm_g(gA, QA)));
}

TEST_CASE("recovering S from g ^ S") {
  UniformSource rng(8);
  for (int n = 3; n <= 6; ++n) {
    const MetricValue g(Sym2Value::from_matrix(random_spd(n, rng)));
    const auto S = random_sym(n, rng);
    CHECK((kn_injectivity(g, S).matrix() - S.matrix()).norm() < 1e-11);
    const auto h = random_sym(n, rng);
    CHECK((trace4(g, right_inverse_G(g, h)).matrix() - h.matrix()).norm() < 1e-11);
  }
  const MetricValue g2(Sym2Value::identity(2));
  CHECK_THROWS_AS(kn_recover(g2, kulkarni_nomizu(g2.sym(), g2.sym())), DimensionError);
}

TEST_CASE("feeding A into the last two slots") {
  const auto g = Sym2Value::diagonal({1.0, 2.0});
  const auto Q = kulkarni_nomizu(g, g);
  const auto A = EndoValue::diagonal({2.0, 3.0});
  const auto F = feed_last_two(Q, A);
  CHECK(F(0, 1, 0, 1) == doctest::Approx(Q(0, 1, 0, 1) * 6.0));
  CHECK(F(0, 1, 1, 0) == doctest::Approx(Q(0, 1, 1, 0) * 6.0));
  CHECK(pullback(g, A).matrix()(1, 1) == doctest::Approx(18.0));
}
