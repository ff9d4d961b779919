#include "gcinf/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gcinf/error.hpp"

namespace gcinf {
namespace {

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionError(os.str());
  }
}

double max_abs_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

}  // namespace

Sym2Value Sym2Value::from_matrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw DimensionError("Sym2Value: matrix is not square");
  Sym2Value s(static_cast<int>(m.rows()));
  for (int i = 0; i < s.dim(); ++i) {
    for (int j = i; j < s.dim(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  }
  return s;
}

Sym2Value Sym2Value::identity(int dim) {
  Sym2Value s(dim);
  s.m_.setIdentity();
  return s;
}

Sym2Value Sym2Value::diagonal(std::initializer_list<double> entries) {
  Sym2Value s(static_cast<int>(entries.size()));
  int i = 0;
  for (double e : entries) {
    s.m_(i, i) = e;
    ++i;
  }
  return s;
}

Sym2Value& Sym2Value::operator+=(const Sym2Value& o) {
  require_same_dim(dim(), o.dim(), "Sym2Value +");
  m_ += o.m_;
  return *this;
}

Sym2Value& Sym2Value::operator-=(const Sym2Value& o) {
  require_same_dim(dim(), o.dim(), "Sym2Value -");
  m_ -= o.m_;
  return *this;
}

Sym2Value& Sym2Value::operator*=(double s) {
  m_ *= s;
  return *this;
}

EndoValue EndoValue::diagonal(std::initializer_list<double> entries) {
  EndoValue e(static_cast<int>(entries.size()));
  int i = 0;
  for (double v : entries) {
    e.m_(i, i) = v;
    ++i;
  }
  return e;
}

double Tensor3Value::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Tensor3Value::max_abs() const { return max_abs_of(data_); }

Tensor3Value& Tensor3Value::operator+=(const Tensor3Value& o) {
  require_same_dim(n_, o.n_, "Tensor3Value +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor3Value& Tensor3Value::operator-=(const Tensor3Value& o) {
  require_same_dim(n_, o.n_, "Tensor3Value -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor3Value& Tensor3Value::operator*=(double s) {
  for (auto& x : data_) x *= s;
  return *this;
}

double Tensor4Value::frobenius() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

double Tensor4Value::max_abs() const { return max_abs_of(data_); }

Tensor4Value& Tensor4Value::operator+=(const Tensor4Value& o) {
  require_same_dim(n_, o.n_, "Tensor4Value +");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Tensor4Value& Tensor4Value::operator-=(const Tensor4Value& o) {
  require_same_dim(n_, o.n_, "Tensor4Value -");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Tensor4Value& Tensor4Value::operator*=(double s) {
  for (auto& x : data_) x *= s;
  return *this;
}

MetricValue::MetricValue(const Sym2Value& g) : g_(g) {
  const int n = g.dim();
  if (n < 1) throw DimensionError("metric of dimension 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.matrix());
  if (eig.info() != Eigen::Success) throw DegenerateError("metric eigen-decomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  min_eig_ = lambda.minCoeff();
  max_eig_ = lambda.maxCoeff();
  if (!(min_eig_ > 0.0) || !std::isfinite(max_eig_)) {
    std::ostringstream os;
    os << "metric is not positive definite (smallest eigenvalue " << min_eig_ << ")";
    throw DegenerateError(os.str(), min_eig_);
  }
  const Eigen::MatrixXd& v = eig.eigenvectors();
  inverse_ = v * lambda.cwiseInverse().asDiagonal() * v.transpose();
  inverse_ = 0.5 * (inverse_ + inverse_.transpose()).eval();
  frame_ = v * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
}

Eigen::MatrixXd lower_form(const MetricValue& g, const EndoValue& B) {
  require_same_dim(g.dim(), B.dim(), "lower");
  return B.matrix().transpose() * g.sym().matrix();
}

Sym2Value lower(const MetricValue& g, const EndoValue& B, double tol) {
  if (!is_self_adjoint(g, B, tol)) {
    throw SymmetryError("lower: endomorphism is not self-adjoint for the metric");
  }
  return Sym2Value::from_matrix(lower_form(g, B));
}

EndoValue raise(const MetricValue& g, const Sym2Value& T) {
  require_same_dim(g.dim(), T.dim(), "raise");
  return EndoValue(g.inverse() * T.matrix());
}

double trace2(const MetricValue& g, const Sym2Value& T) {
  require_same_dim(g.dim(), T.dim(), "trace2");
  return (g.inverse() * T.matrix()).trace();
}

Sym2Value pullback(const Sym2Value& g, const EndoValue& A) {
  require_same_dim(g.dim(), A.dim(), "pullback");
  return Sym2Value::from_matrix(A.matrix().transpose() * g.matrix() * A.matrix());
}

Tensor4Value kulkarni_nomizu(const Sym2Value& T, const Sym2Value& S) {
  require_same_dim(T.dim(), S.dim(), "kulkarni_nomizu");
  const int n = T.dim();
  Tensor4Value Q(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          Q(i, j, k, l) = T(i, l) * S(j, k) + T(j, k) * S(i, l) - T(i, k) * S(j, l) - T(j, l) * S(i, k);
  return Q;
}

double curvature_symmetry_defect(const Tensor4Value& Q) {
  const int n = Q.dim();
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double q = Q(i, j, k, l);
          defect = std::max({defect, std::fabs(q + Q(j, i, k, l)), std::fabs(q + Q(i, j, l, k)),
                             std::fabs(q - Q(k, l, i, j))});
        }
  return defect / std::max(1.0, Q.max_abs());
}

double bianchi_defect(const Tensor4Value& Q) {
  const int n = Q.dim();
  double defect = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          defect = std::max(defect, std::fabs(Q(i, j, k, l) + Q(j, k, i, l) + Q(k, i, j, l)));
  return defect / std::max(1.0, Q.max_abs());
}

Sym2Value trace4(const MetricValue& g, const Tensor4Value& Q, double tol) {
  require_same_dim(g.dim(), Q.dim(), "trace4");
  const double defect = curvature_symmetry_defect(Q);
  if (defect > tol) {
    std::ostringstream os;
    os << "trace4: 4-tensor violates curvature symmetries (defect " << defect << ")";
    throw SymmetryError(os.str());
  }
  const int n = g.dim();
  const Eigen::MatrixXd& gi = g.inverse();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) s += gi(i, l) * Q(i, j, k, l);
      r(j, k) = s;
    }
  return Sym2Value::from_matrix(r);
}

double sectional(const MetricValue& g, const Tensor4Value& Rm, std::span<const double> X,
                 std::span<const double> Y) {
  const int n = g.dim();
  require_same_dim(n, Rm.dim(), "sectional");
  require_same_dim(n, static_cast<int>(X.size()), "sectional X");
  require_same_dim(n, static_cast<int>(Y.size()), "sectional Y");
  const Eigen::Map<const Eigen::VectorXd> x(X.data(), n);
  const Eigen::Map<const Eigen::VectorXd> y(Y.data(), n);
  const Eigen::MatrixXd& gm = g.sym().matrix();
  const double xx = x.dot(gm * x);
  const double yy = y.dot(gm * y);
  const double xy = x.dot(gm * y);
  const double gram = xx * yy - xy * xy;
  if (!(gram > 1e-12 * xx * yy)) throw DegenerateError("sectional: X and Y span a degenerate plane", gram);
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) r += Rm(i, j, k, l) * x(i) * y(j) * y(k) * x(l);
  // g∧g(X,Y,Y,X) = 2 * gram.
  return 2.0 * r / (2.0 * gram);
}

bool is_self_adjoint(const MetricValue& g, const EndoValue& B, double tol) {
  const Eigen::MatrixXd m = lower_form(g, B);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

double norm_g(const MetricValue& g, const Sym2Value& T) {
  require_same_dim(g.dim(), T.dim(), "norm_g");
  const Eigen::MatrixXd& f = g.orthonormal_frame();
  return (f.transpose() * T.matrix() * f).norm();
}

double norm_g(const MetricValue& g, const Tensor4Value& Q) {
  require_same_dim(g.dim(), Q.dim(), "norm_g");
  const int n = g.dim();
  const Eigen::MatrixXd& f = g.orthonormal_frame();
  // Transform one slot at a time.
  Tensor4Value a = Q;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor4Value b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (int m = 0; m < n; ++m) {
              switch (slot) {
                case 0: s += f(m, i) * a(m, j, k, l); break;
                case 1: s += f(m, j) * a(i, m, k, l); break;
                case 2: s += f(m, k) * a(i, j, m, l); break;
                default: s += f(m, l) * a(i, j, k, m); break;
              }
            }
            b(i, j, k, l) = s;
          }
    a = std::move(b);
  }
  return a.frobenius();
}

Tensor4Value feed_last_two(const Tensor4Value& Q, const EndoValue& A) {
  require_same_dim(Q.dim(), A.dim(), "feed_last_two");
  const int n = Q.dim();
  Tensor4Value out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += Q(i, j, a, b) * A(a, k) * A(b, l);
          out(i, j, k, l) = s;
        }
  return out;
}

}  // namespace gcinf
