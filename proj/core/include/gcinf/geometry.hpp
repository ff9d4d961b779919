#pragma once

#include <span>
#include <vector>

#include "gcinf/engine.hpp"
#include "gcinf/field.hpp"
#include "gcinf/jet_tensor.hpp"
#include "gcinf/multilinear.hpp"

namespace gcinf {

// Levi-Civita geometry of a metric around one point, computed from the
// metric's Taylor expansion of order K. Derived quantities lose one order
// per derivative: Christoffel symbols are jets of order K-1, curvature of
// order K-2.
//
// Conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
// Rm(X,Y,Z,W) = g(R(X,Y)Z, W), Ric = trace of Rm over its first and last
// slots, S = tr_g Ric.
class LocalGeometry {
 public:
  explicit LocalGeometry(const JetMatrix& g);
  static LocalGeometry at(const Sym2Field& g, std::span<const double> p, int order, const DerivEngine& engine);

  int dim() const noexcept { return n_; }
  int order() const noexcept { return order_; }

  const JetMatrix& metric() const noexcept { return g_; }
  const JetMatrix& inverse() const noexcept { return ginv_; }
  MetricValue metric_value() const { return MetricValue(g_.sym2_value()); }

  // Gamma^k_ij; requires order >= 1.
  const Jet& christoffel(int k, int i, int j) const { return gamma_.at({k, i, j}); }
  // Values laid out [k][i][j].
  Tensor3Value christoffel_value() const;

  // Lowered curvature Rm_ijkl; requires order >= 2.
  const JetArray& riemann() const;
  Tensor4Value riemann_value() const { return riemann().tensor4_value(); }
  const JetMatrix& ricci() const;
  Sym2Value ricci_value() const { return ricci().sym2_value(); }
  const Jet& scalar() const;
  double scalar_value() const { return scalar().value(); }

  // [i][j][k] = (nabla_i T)_jk.
  JetArray nabla_sym2(const JetMatrix& T) const;
  // [i][a][b] = (nabla_i B)^a_b.
  JetArray nabla_endo(const JetMatrix& B) const;
  // [i][j][k][l][m] = (nabla_i Q)_jklm.
  JetArray nabla_tensor4(const JetArray& Q) const;
  // [i][j][a] = d^nabla B(e_i, e_j)^a = (nabla_i B)^a_j - (nabla_j B)^a_i.
  JetArray dnabla_endo(const JetMatrix& B) const;
  // [x][y][z] = d^nabla T(e_x, e_y, e_z) = (nabla_y T)_xz - (nabla_z T)_xy.
  JetArray dnabla_sym2(const JetMatrix& T) const;

  // Hess_ij = d_i d_j u - Gamma^k_ij d_k u.
  JetMatrix hessian(const Jet& u) const;
  // (grad u)^i = g^ij d_j u.
  std::vector<Jet> gradient(const Jet& u) const;
  Jet laplacian(const Jet& u) const;
  // |grad u|^2.
  Jet gradient_norm_sq(const Jet& u) const;

  // nabla_X Y for constant coordinate vectors X, Y.
  std::vector<double> connection(std::span<const double> X, std::span<const double> Y) const;

 private:
  int n_;
  int order_;
  JetMatrix g_;
  JetMatrix ginv_;
  JetArray gamma_;
  JetArray rm_;
  JetMatrix ric_;
  Jet scalar_;
};

}  // namespace gcinf
