#include "gcinf/field.hpp"

#include <sstream>

#include "gcinf/error.hpp"

namespace gcinf {

Box::Box(std::vector<std::pair<double, double>> axes) : axes_(std::move(axes)) {
  for (const auto& [lo, hi] : axes_) {
    if (!(lo < hi)) {
      std::ostringstream os;
      os << "box axis [" << lo << ", " << hi << "] is empty";
      throw DimensionError(os.str());
    }
  }
}

Box Box::cube(int dim, double lo, double hi) {
  return Box(std::vector<std::pair<double, double>>(static_cast<std::size_t>(dim), {lo, hi}));
}

std::vector<double> Box::center() const {
  std::vector<double> c;
  c.reserve(axes_.size());
  for (const auto& [lo, hi] : axes_) c.push_back(0.5 * (lo + hi));
  return c;
}

bool Box::contains(std::span<const double> p) const {
  if (p.size() != axes_.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] >= axes_[i].first && p[i] <= axes_[i].second)) return false;
  }
  return true;
}

Field::Field(int dim, int size) : dim_(dim), size_(size) {
  if (dim < 1 || dim > kMaxJetDim) throw DimensionError("field chart dimension out of range");
  if (size < 1) throw DimensionError("field must have at least one component");
}

std::vector<double> Field::values_at(std::span<const double> p) const {
  if (static_cast<int>(p.size()) != dim_) throw DimensionError("values_at: point has wrong dimension");
  const auto coords = coordinate_jets(p, 0);
  return values(evaluate(coords));
}

AlgebraicField::AlgebraicField(int dim, int size, Fn fn) : Field(dim, size), fn_(std::move(fn)) {}

std::vector<Jet> AlgebraicField::evaluate(std::span<const Jet> coords) const {
  if (static_cast<int>(coords.size()) != dim()) throw DimensionError("evaluate: wrong number of coordinates");
  auto out = fn_(coords);
  if (static_cast<int>(out.size()) != size()) throw DimensionError("field returned wrong number of components");
  return out;
}

ExpandedField::ExpandedField(int dim, int size, Fn fn) : Field(dim, size), fn_(std::move(fn)) {}

std::vector<Jet> ExpandedField::evaluate(std::span<const Jet> coords) const {
  if (static_cast<int>(coords.size()) != dim()) throw DimensionError("evaluate: wrong number of coordinates");
  const std::vector<double> center = values(coords);
  bool all_constant = true;
  int order = 0;
  for (const auto& c : coords) {
    if (!c.is_constant()) {
      all_constant = false;
      order = std::max(order, c.order());
    }
  }
  if (all_constant) {
    auto out = fn_(center, 0);
    std::vector<Jet> plain;
    plain.reserve(out.size());
    for (const auto& j : out) plain.emplace_back(j.value());
    return plain;
  }
  auto out = fn_(center, order);
  if (static_cast<int>(out.size()) != size()) throw DimensionError("field returned wrong number of components");
  if (is_identity(coords)) return out;
  for (auto& j : out) j = compose(j, center, coords);
  return out;
}

FieldPtr make_algebraic(int dim, int size, AlgebraicField::Fn fn) {
  return std::make_shared<AlgebraicField>(dim, size, std::move(fn));
}

FieldPtr make_expanded(int dim, int size, ExpandedField::Fn fn) {
  return std::make_shared<ExpandedField>(dim, size, std::move(fn));
}

FieldPtr make_constant(int dim, std::vector<double> components) {
  const int size = static_cast<int>(components.size());
  return make_algebraic(dim, size, [c = std::move(components)](std::span<const Jet>) {
    return std::vector<Jet>(c.begin(), c.end());
  });
}

ScalarField::ScalarField(FieldPtr f) : f_(std::move(f)) {
  if (!f_ || f_->size() != 1) throw DimensionError("scalar field must have one component");
}

Sym2Field::Sym2Field(FieldPtr f) : f_(std::move(f)) {
  if (!f_ || f_->size() != f_->dim() * f_->dim()) throw DimensionError("2-tensor field must have n*n components");
}

EndoField::EndoField(FieldPtr f) : f_(std::move(f)) {
  if (!f_ || f_->size() != f_->dim() * f_->dim()) throw DimensionError("endomorphism field must have n*n components");
}

ScalarField compose(const ScalarField& u, const MapField& phi) {
  if (phi.size() != u.dim()) throw DimensionError("compose: map target dimension differs from field chart");
  FieldPtr uf = u.field();
  FieldPtr pf = phi.field();
  return ScalarField(make_algebraic(phi.dim(), 1, [uf, pf](std::span<const Jet> x) {
    const auto y = pf->evaluate(x);
    return uf->evaluate(y);
  }));
}

Sym2Field constant_sym2(int dim, const std::vector<double>& row_major) {
  if (row_major.size() != static_cast<std::size_t>(dim * dim)) throw DimensionError("constant_sym2: wrong size");
  std::vector<double> s(row_major.size());
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      s[static_cast<std::size_t>(i * dim + j)] =
          0.5 * (row_major[static_cast<std::size_t>(i * dim + j)] + row_major[static_cast<std::size_t>(j * dim + i)]);
  return Sym2Field(make_constant(dim, std::move(s)));
}

Sym2Field flat_metric(int dim) {
  std::vector<double> id(static_cast<std::size_t>(dim * dim), 0.0);
  for (int i = 0; i < dim; ++i) id[static_cast<std::size_t>(i * dim + i)] = 1.0;
  return constant_sym2(dim, id);
}

Sym2Field conformal_metric(const Sym2Field& g, const ScalarField& u) {
  if (g.dim() != u.dim()) throw DimensionError("conformal_metric: dimension mismatch");
  FieldPtr gf = g.field();
  FieldPtr uf = u.field();
  return Sym2Field(make_algebraic(g.dim(), gf->size(), [gf, uf](std::span<const Jet> x) {
    auto comps = gf->evaluate(x);
    const Jet e = exp(2.0 * uf->evaluate(x)[0]);
    for (auto& c : comps) c = e * c;
    return comps;
  }));
}

}  // namespace gcinf
