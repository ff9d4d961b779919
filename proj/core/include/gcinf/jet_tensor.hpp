#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "gcinf/jet.hpp"
#include "gcinf/multilinear.hpp"

namespace gcinf {

// Small dense matrix of jets. Used for metrics, shape operators and their
// algebraic combinations before any value is extracted.
class JetMatrix {
 public:
  JetMatrix() = default;
  JetMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  static JetMatrix identity(int n);
  // Row-major components.
  static JetMatrix from_components(std::span<const Jet> comps, int rows, int cols);
  static JetMatrix constant(const Eigen::MatrixXd& m);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  Jet& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  const Jet& operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
  std::span<const Jet> components() const noexcept { return data_; }

  JetMatrix transpose() const;
  // (M + M^T) / 2.
  JetMatrix symmetrized() const;
  JetMatrix derivative(int var) const;
  JetMatrix truncated(int order) const;
  // Smallest order over entries that are not bare constants.
  int order() const;
  Eigen::MatrixXd values() const;
  Sym2Value sym2_value() const { return Sym2Value::from_matrix(values()); }
  EndoValue endo_value() const { return EndoValue(values()); }

  JetMatrix& operator+=(const JetMatrix& o);
  JetMatrix& operator-=(const JetMatrix& o);
  JetMatrix& operator*=(const Jet& s);
  friend JetMatrix operator+(JetMatrix a, const JetMatrix& b) { return a += b; }
  friend JetMatrix operator-(JetMatrix a, const JetMatrix& b) { return a -= b; }
  friend JetMatrix operator*(JetMatrix a, const Jet& s) { return a *= s; }
  friend JetMatrix operator*(const Jet& s, JetMatrix a) { return a *= s; }
  friend JetMatrix operator*(const JetMatrix& a, const JetMatrix& b);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Jet> data_;
};

// Gauss-Jordan elimination with pivots chosen on the values. Throws
// DegenerateError if the value matrix is numerically singular.
JetMatrix inverse(const JetMatrix& m);
Jet trace(const JetMatrix& m);

// Dense n^k array of jets, row-major in its indices.
class JetArray {
 public:
  JetArray() = default;
  JetArray(int dim, int rank);

  int dim() const noexcept { return n_; }
  int rank() const noexcept { return rank_; }
  Jet& at(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  const Jet& at(std::initializer_list<int> idx) const { return data_[offset(idx)]; }
  Jet& flat(std::size_t i) { return data_[i]; }
  const Jet& flat(std::size_t i) const { return data_[i]; }
  std::size_t size() const noexcept { return data_.size(); }

  Tensor3Value tensor3_value() const;
  Tensor4Value tensor4_value() const;

 private:
  std::size_t offset(std::initializer_list<int> idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
    return o;
  }
  int n_ = 0;
  int rank_ = 0;
  std::vector<Jet> data_;
};

}  // namespace gcinf
