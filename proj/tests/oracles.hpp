#pragma once

// Reference computations written directly from coordinate formulas with
// finite differences on plain metric values. They share nothing with the
// library's jet machinery and serve as independent oracles in the tests.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using MetricFn = std::function<Mat(const Vec&)>;

// Fourth-order central difference of a matrix-valued function along e_k.
inline Mat diff(const std::function<Mat(const Vec&)>& f, const Vec& p, int k, double h) {
  Vec a = p, b = p, c = p, d = p;
  a(k) += 2 * h;
  b(k) += h;
  c(k) -= h;
  d(k) -= 2 * h;
  return (-f(a) + 8 * f(b) - 8 * f(c) + f(d)) / (12 * h);
}

// Gamma[k](i, j) = Gamma^k_ij.
inline std::vector<Mat> christoffel(const MetricFn& g, const Vec& p, double h = 1e-3) {
  const int n = static_cast<int>(p.size());
  std::vector<Mat> dg;
  for (int k = 0; k < n; ++k) dg.push_back(diff(g, p, k, h));
  const Mat ginv = g(p).inverse();
  std::vector<Mat> gamma(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
  return gamma;
}

// Rm_ijkl = g(R(e_i, e_j) e_k, e_l) with
// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z, flattened
// as ((i n + j) n + k) n + l.
inline std::vector<double> riemann(const MetricFn& g, const Vec& p, double h = 1e-3) {
  const int n = static_cast<int>(p.size());
  const auto gamma = christoffel(g, p, h);
  // dgamma[m][k](i, j) = d_m Gamma^k_ij
  std::vector<std::vector<Mat>> dgamma;
  for (int m = 0; m < n; ++m) {
    std::vector<Mat> slice;
    for (int k = 0; k < n; ++k) {
      slice.push_back(diff([&](const Vec& x) { return christoffel(g, x, h)[static_cast<std::size_t>(k)]; }, p, m, h));
    }
    dgamma.push_back(slice);
  }
  const Mat gp = g(p);
  std::vector<double> out(static_cast<std::size_t>(n * n * n * n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec r = Vec::Zero(n);  // R^a_{ijk}
        for (int a = 0; a < n; ++a) {
          double s = dgamma[i][a](j, k) - dgamma[j][a](i, k);
          for (int m = 0; m < n; ++m) s += gamma[a](i, m) * gamma[m](j, k) - gamma[a](j, m) * gamma[m](i, k);
          r(a) = s;
        }
        for (int l = 0; l < n; ++l)
          out[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = (gp.row(l) * r)(0);
      }
  return out;
}

// Constant curvature K: Rm_ijkl = K (g_jk g_il - g_ik g_jl).
inline std::vector<double> constant_curvature_riemann(const Mat& g, double K) {
  const int n = static_cast<int>(g.rows());
  std::vector<double> out(static_cast<std::size_t>(n * n * n * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          out[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = K * (g(j, k) * g(i, l) - g(i, k) * g(j, l));
  return out;
}

inline double max_abs_diff(const std::vector<double>& a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

// Partial derivative of a scalar function by nested fourth-order
// differences, one variable index per order.
inline double partial(const std::function<double(const Vec&)>& f, const Vec& p, std::vector<int> vars, double h) {
  if (vars.empty()) return f(p);
  const int k = vars.back();
  vars.pop_back();
  auto shifted = [&](double s) {
    Vec q = p;
    q(k) += s;
    return partial(f, q, vars, h);
  };
  return (-shifted(2 * h) + 8 * shifted(h) - 8 * shifted(-h) + shifted(-2 * h)) / (12 * h);
}

}  // namespace oracle
