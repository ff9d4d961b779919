#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace gcinf {

// Coordinates of a symmetric (0,2)-tensor at a point. Symmetric by
// construction: entries (i,j) and (j,i) are the same stored number.
class Sym2Value {
 public:
  Sym2Value() = default;
  explicit Sym2Value(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}

  // (m + m^T) / 2.
  static Sym2Value from_matrix(const Eigen::MatrixXd& m);
  static Sym2Value identity(int dim);
  static Sym2Value diagonal(std::initializer_list<double> entries);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  void set(int i, int j, double v) {
    m_(i, j) = v;
    m_(j, i) = v;
  }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double frobenius() const { return m_.norm(); }
  double max_abs() const { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

  Sym2Value& operator+=(const Sym2Value& o);
  Sym2Value& operator-=(const Sym2Value& o);
  Sym2Value& operator*=(double s);
  friend Sym2Value operator+(Sym2Value a, const Sym2Value& b) { return a += b; }
  friend Sym2Value operator-(Sym2Value a, const Sym2Value& b) { return a -= b; }
  friend Sym2Value operator*(Sym2Value a, double s) { return a *= s; }
  friend Sym2Value operator*(double s, Sym2Value a) { return a *= s; }
  friend Sym2Value operator-(Sym2Value a) { return a *= -1.0; }

 private:
  Eigen::MatrixXd m_;
};

// Coordinates B^i_j of a (1,1)-tensor: B e_j = sum_i B(i,j) e_i.
class EndoValue {
 public:
  EndoValue() = default;
  explicit EndoValue(int dim) : m_(Eigen::MatrixXd::Zero(dim, dim)) {}
  explicit EndoValue(Eigen::MatrixXd m) : m_(std::move(m)) {}

  static EndoValue identity(int dim) { return EndoValue(Eigen::MatrixXd::Identity(dim, dim)); }
  static EndoValue diagonal(std::initializer_list<double> entries);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  double& operator()(int i, int j) { return m_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double frobenius() const { return m_.norm(); }

  friend EndoValue operator+(const EndoValue& a, const EndoValue& b) { return EndoValue(a.m_ + b.m_); }
  friend EndoValue operator-(const EndoValue& a, const EndoValue& b) { return EndoValue(a.m_ - b.m_); }
  friend EndoValue operator*(const EndoValue& a, const EndoValue& b) { return EndoValue(a.m_ * b.m_); }
  friend EndoValue operator*(double s, const EndoValue& a) { return EndoValue(s * a.m_); }

 private:
  Eigen::MatrixXd m_;
};

// Dense n^3 array, used for exterior covariant derivatives.
class Tensor3Value {
 public:
  Tensor3Value() = default;
  explicit Tensor3Value(int dim) : n_(dim), data_(static_cast<std::size_t>(dim * dim * dim), 0.0) {}

  int dim() const noexcept { return n_; }
  double operator()(int i, int j, int k) const { return data_[offset(i, j, k)]; }
  double& operator()(int i, int j, int k) { return data_[offset(i, j, k)]; }
  std::span<const double> data() const noexcept { return data_; }
  double frobenius() const;
  double max_abs() const;

  Tensor3Value& operator+=(const Tensor3Value& o);
  Tensor3Value& operator-=(const Tensor3Value& o);
  Tensor3Value& operator*=(double s);
  friend Tensor3Value operator+(Tensor3Value a, const Tensor3Value& b) { return a += b; }
  friend Tensor3Value operator-(Tensor3Value a, const Tensor3Value& b) { return a -= b; }
  friend Tensor3Value operator*(double s, Tensor3Value a) { return a *= s; }

 private:
  std::size_t offset(int i, int j, int k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  int n_ = 0;
  std::vector<double> data_;
};

// Dense n^4 array Q(i,j,k,l); curvature-type tensors live here.
class Tensor4Value {
 public:
  Tensor4Value() = default;
  explicit Tensor4Value(int dim) : n_(dim), data_(static_cast<std::size_t>(dim * dim * dim * dim), 0.0) {}

  int dim() const noexcept { return n_; }
  double operator()(int i, int j, int k, int l) const { return data_[offset(i, j, k, l)]; }
  double& operator()(int i, int j, int k, int l) { return data_[offset(i, j, k, l)]; }
  std::span<const double> data() const noexcept { return data_; }
  double frobenius() const;
  double max_abs() const;

  Tensor4Value& operator+=(const Tensor4Value& o);
  Tensor4Value& operator-=(const Tensor4Value& o);
  Tensor4Value& operator*=(double s);
  friend Tensor4Value operator+(Tensor4Value a, const Tensor4Value& b) { return a += b; }
  friend Tensor4Value operator-(Tensor4Value a, const Tensor4Value& b) { return a -= b; }
  friend Tensor4Value operator*(double s, Tensor4Value a) { return a *= s; }
  friend Tensor4Value operator*(Tensor4Value a, double s) { return a *= s; }

 private:
  std::size_t offset(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * n_ + j) * n_ + k) * n_ + l);
  }
  int n_ = 0;
  std::vector<double> data_;
};

// A positive definite Sym2Value with its factorization cached for raising
// and lowering indices.
class MetricValue {
 public:
  // Throws DegenerateError (carrying the smallest eigenvalue) unless every
  // eigenvalue is positive.
  explicit MetricValue(const Sym2Value& g);

  int dim() const noexcept { return g_.dim(); }
  const Sym2Value& sym() const noexcept { return g_; }
  const Eigen::MatrixXd& inverse() const noexcept { return inverse_; }
  double min_eigenvalue() const noexcept { return min_eig_; }
  double max_eigenvalue() const noexcept { return max_eig_; }
  double condition_number() const noexcept { return max_eig_ / min_eig_; }
  bool ill_conditioned() const noexcept { return condition_number() > 1e8; }
  // Columns form a g-orthonormal basis: F^T g F = I.
  const Eigen::MatrixXd& orthonormal_frame() const noexcept { return frame_; }

 private:
  Sym2Value g_;
  Eigen::MatrixXd inverse_;
  Eigen::MatrixXd frame_;
  double min_eig_ = 0.0;
  double max_eig_ = 0.0;
};

// Symmetric 2-tensor g(B., .). Throws SymmetryError if B is not
// self-adjoint for g within `tol`.
Sym2Value lower(const MetricValue& g, const EndoValue& B, double tol = 1e-10);
// The bilinear form g(B., .) without any symmetry requirement.
Eigen::MatrixXd lower_form(const MetricValue& g, const EndoValue& B);
// Endomorphism g^{-1} T.
EndoValue raise(const MetricValue& g, const Sym2Value& T);
double trace2(const MetricValue& g, const Sym2Value& T);
// g(A., A.).
Sym2Value pullback(const Sym2Value& g, const EndoValue& A);

Tensor4Value kulkarni_nomizu(const Sym2Value& T, const Sym2Value& S);

// Largest violation of pair antisymmetry and pair exchange, relative to
// max(1, max |Q|).
double curvature_symmetry_defect(const Tensor4Value& Q);
// First Bianchi identity defect, same normalization.
double bianchi_defect(const Tensor4Value& Q);

// Trace over the first and last slots. Throws SymmetryError if Q violates
// the curvature symmetries by more than `tol`.
Sym2Value trace4(const MetricValue& g, const Tensor4Value& Q, double tol = 1e-9);

// Sectional curvature of span{X, Y}; throws DegenerateError on a
// degenerate plane.
double sectional(const MetricValue& g, const Tensor4Value& Rm, std::span<const double> X,
                 std::span<const double> Y);

bool is_self_adjoint(const MetricValue& g, const EndoValue& B, double tol = 1e-10);

// Norms computed in a g-orthonormal frame (coordinate independent).
double norm_g(const MetricValue& g, const Sym2Value& T);
double norm_g(const MetricValue& g, const Tensor4Value& Q);

// Q with its last two slots fed through A: Q(X, Y, A Z, A W).
Tensor4Value feed_last_two(const Tensor4Value& Q, const EndoValue& A);

}  // namespace gcinf
