#include "gcinf/jet_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gcinf/error.hpp"

namespace gcinf {

JetMatrix JetMatrix::identity(int n) {
  JetMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = Jet(1.0);
  return m;
}

JetMatrix JetMatrix::from_components(std::span<const Jet> comps, int rows, int cols) {
  if (comps.size() != static_cast<std::size_t>(rows * cols)) {
    throw DimensionError("JetMatrix: wrong number of components");
  }
  JetMatrix m(rows, cols);
  for (std::size_t i = 0; i < comps.size(); ++i) m.data_[i] = comps[i];
  return m;
}

JetMatrix JetMatrix::constant(const Eigen::MatrixXd& v) {
  JetMatrix m(static_cast<int>(v.rows()), static_cast<int>(v.cols()));
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j) m(i, j) = Jet(v(i, j));
  return m;
}

JetMatrix JetMatrix::transpose() const {
  JetMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

JetMatrix JetMatrix::symmetrized() const {
  if (rows_ != cols_) throw DimensionError("symmetrized: matrix is not square");
  JetMatrix s(rows_, cols_);
  for (int i = 0; i < rows_; ++i) {
    s(i, i) = (*this)(i, i);
    for (int j = i + 1; j < cols_; ++j) {
      Jet v = ((*this)(i, j) + (*this)(j, i)) * 0.5;
      s(i, j) = v;
      s(j, i) = std::move(v);
    }
  }
  return s;
}

JetMatrix JetMatrix::derivative(int var) const {
  JetMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i].derivative(var);
  return d;
}

JetMatrix JetMatrix::truncated(int order) const {
  JetMatrix d(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) d.data_[i] = data_[i].truncated(order);
  return d;
}

int JetMatrix::order() const {
  int k = kMaxJetOrder;
  for (const auto& j : data_) {
    if (!j.is_constant()) k = std::min(k, j.order());
  }
  return k;
}

Eigen::MatrixXd JetMatrix::values() const {
  Eigen::MatrixXd v(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) v(i, j) = (*this)(i, j).value();
  return v;
}

JetMatrix& JetMatrix::operator+=(const JetMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("JetMatrix +: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

JetMatrix& JetMatrix::operator-=(const JetMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("JetMatrix -: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

JetMatrix& JetMatrix::operator*=(const Jet& s) {
  for (auto& x : data_) x = x * s;
  return *this;
}

JetMatrix operator*(const JetMatrix& a, const JetMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("JetMatrix *: shape mismatch");
  JetMatrix c(a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      Jet s(0.0);
      for (int k = 0; k < a.cols_; ++k) s += a(i, k) * b(k, j);
      c(i, j) = std::move(s);
    }
  return c;
}

JetMatrix inverse(const JetMatrix& m) {
  const int n = m.rows();
  if (n != m.cols()) throw DimensionError("inverse: matrix is not square");
  JetMatrix a = m;
  JetMatrix inv = JetMatrix::identity(n);
  const double scale = std::max(1.0, m.values().cwiseAbs().maxCoeff());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::fabs(a(r, col).value()) > std::fabs(a(pivot, col).value())) pivot = r;
    }
    if (std::fabs(a(pivot, col).value()) <= 1e-14 * scale) {
      throw DegenerateError("inverse: matrix is singular", std::fabs(a(pivot, col).value()));
    }
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const Jet r = reciprocal(a(col, col));
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) * r;
      inv(col, j) = inv(col, j) * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Jet f = a(row, col);
      if (f.is_constant() && f.value() == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(row, j) -= f * a(col, j);
        inv(row, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

Jet trace(const JetMatrix& m) {
  Jet t(0.0);
  for (int i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

JetArray::JetArray(int dim, int rank) : n_(dim), rank_(rank) {
  std::size_t total = 1;
  for (int r = 0; r < rank; ++r) total *= static_cast<std::size_t>(dim);
  data_.assign(total, Jet(0.0));
}

Tensor3Value JetArray::tensor3_value() const {
  if (rank_ != 3) throw DimensionError("tensor3_value: rank is not 3");
  Tensor3Value t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k) t(i, j, k) = at({i, j, k}).value();
  return t;
}

Tensor4Value JetArray::tensor4_value() const {
  if (rank_ != 4) throw DimensionError("tensor4_value: rank is not 4");
  Tensor4Value t(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        for (int l = 0; l < n_; ++l) t(i, j, k, l) = at({i, j, k, l}).value();
  return t;
}

}  // namespace gcinf
