#pragma once

#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gcinf/jet.hpp"

namespace gcinf {

// Axis-aligned chart domain.
class Box {
 public:
  Box() = default;
  explicit Box(std::vector<std::pair<double, double>> axes);
  // [lo, hi]^dim.
  static Box cube(int dim, double lo, double hi);

  int dim() const noexcept { return static_cast<int>(axes_.size()); }
  const std::vector<std::pair<double, double>>& axes() const noexcept { return axes_; }
  double lo(int i) const { return axes_[static_cast<std::size_t>(i)].first; }
  double hi(int i) const { return axes_[static_cast<std::size_t>(i)].second; }
  std::vector<double> center() const;
  bool contains(std::span<const double> p) const;

 private:
  std::vector<std::pair<double, double>> axes_;
};

// A smooth map from a chart of dimension dim() to R^size().
//
// evaluate() receives the coordinates as jets and returns the components as
// jets of the same order. Passing identity coordinate jets around p yields
// the Taylor expansion at p; passing other jets composes the field with
// them.
class Field {
 public:
  virtual ~Field() = default;

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return size_; }
  virtual std::vector<Jet> evaluate(std::span<const Jet> coords) const = 0;

  // Components at a point, no derivatives.
  std::vector<double> values_at(std::span<const double> p) const;

 protected:
  Field(int dim, int size);

 private:
  int dim_;
  int size_;
};

using FieldPtr = std::shared_ptr<const Field>;

// Field given by a jet-level function of the coordinates. The function
// must only use operations that are valid on arbitrary jets (arithmetic,
// elementary functions, other fields' evaluate()).
class AlgebraicField final : public Field {
 public:
  using Fn = std::function<std::vector<Jet>(std::span<const Jet>)>;
  AlgebraicField(int dim, int size, Fn fn);
  std::vector<Jet> evaluate(std::span<const Jet> coords) const override;

 private:
  Fn fn_;
};

// Field that needs derivatives of its inputs. The expansion function
// receives a point and an order k and must return the Taylor expansion of
// order k there, typically by expanding its inputs to a higher order and
// differentiating. Non-identity coordinates are handled by composition.
class ExpandedField final : public Field {
 public:
  using Fn = std::function<std::vector<Jet>(std::span<const double>, int)>;
  ExpandedField(int dim, int size, Fn fn);
  std::vector<Jet> evaluate(std::span<const Jet> coords) const override;

 private:
  Fn fn_;
};

FieldPtr make_algebraic(int dim, int size, AlgebraicField::Fn fn);
FieldPtr make_expanded(int dim, int size, ExpandedField::Fn fn);
// Constant components.
FieldPtr make_constant(int dim, std::vector<double> components);

// Typed handles. They own a Field and fix the meaning of its components.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(FieldPtr f);
  const FieldPtr& field() const noexcept { return f_; }
  int dim() const { return f_->dim(); }

 private:
  FieldPtr f_;
};

// n*n components, row-major, symmetric.
class Sym2Field {
 public:
  Sym2Field() = default;
  explicit Sym2Field(FieldPtr f);
  const FieldPtr& field() const noexcept { return f_; }
  int dim() const { return f_->dim(); }

 private:
  FieldPtr f_;
};

// n*n components B(i, j) = B^i_j, row-major.
class EndoField {
 public:
  EndoField() = default;
  explicit EndoField(FieldPtr f);
  const FieldPtr& field() const noexcept { return f_; }
  int dim() const { return f_->dim(); }

 private:
  FieldPtr f_;
};

// Components of a map into R^m (m arbitrary).
class MapField {
 public:
  MapField() = default;
  explicit MapField(FieldPtr f) : f_(std::move(f)) {}
  const FieldPtr& field() const noexcept { return f_; }
  int dim() const { return f_->dim(); }
  int size() const { return f_->size(); }

 private:
  FieldPtr f_;
};

// u o phi, where phi maps into the chart of u.
ScalarField compose(const ScalarField& u, const MapField& phi);
// Field of constant symmetric components.
Sym2Field constant_sym2(int dim, const std::vector<double>& row_major);
Sym2Field flat_metric(int dim);
// e^{2u} g.
Sym2Field conformal_metric(const Sym2Field& g, const ScalarField& u);

}  // namespace gcinf
