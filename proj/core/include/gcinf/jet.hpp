#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace gcinf {

inline constexpr int kMaxJetDim = 6;
inline constexpr int kMaxJetOrder = 5;

// Monomial layout shared by all jets in `dim` variables truncated at total
// degree `order`. Monomials are graded: every monomial of degree d precedes
// every monomial of degree d+1, and the ordering inside a degree does not
// depend on `order`. A space of lower order is therefore a prefix of a
// space of higher order, and truncation is a resize.
class JetSpace {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  // Process-wide instance; construction is thread safe.
  static const JetSpace& get(int dim, int order);

  int dim() const noexcept { return dim_; }
  int order() const noexcept { return order_; }
  std::size_t size() const noexcept { return degree_.size(); }
  // Number of monomials of degree <= k (k <= order()).
  std::size_t size_upto(int k) const { return prefix_[static_cast<std::size_t>(k)]; }

  std::span<const std::uint8_t> exponents(std::size_t idx) const {
    return {exponents_.data() + idx * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  int degree(std::size_t idx) const { return degree_[idx]; }
  // alpha! for the monomial at idx.
  double factorial(std::size_t idx) const { return factorial_[idx]; }
  // Index of the monomial with the given exponents; throws if absent.
  std::size_t index(std::span<const int> exps) const;
  // Index of alpha + e_var, for monomials of degree < order().
  std::size_t raised(std::size_t idx, int var) const {
    return raised_[idx * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(var)];
  }
  // All (lhs, rhs) pairs whose product lands inside this space.
  const std::vector<Product>& products() const noexcept { return products_; }

 private:
  JetSpace(int dim, int order);

  int dim_;
  int order_;
  std::vector<std::uint8_t> exponents_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> raised_;
  std::vector<Product> products_;
};

// A smooth function known through its Taylor coefficients up to a fixed
// total degree at a base point: c[alpha] = d^alpha f / alpha!.
//
// A jet with no space is a plain constant; it adopts the space of whatever
// it is combined with. Binary operations on jets of different order
// truncate to the smaller order.
class Jet {
 public:
  Jet() : Jet(0.0) {}
  Jet(double constant) : coeffs_{constant} {}  // NOLINT(google-explicit-constructor)
  explicit Jet(const JetSpace& space) : space_(&space), coeffs_(space.size(), 0.0) {}

  static Jet constant(const JetSpace& space, double value);
  // The coordinate function x_var expanded around `value`.
  static Jet variable(const JetSpace& space, int var, double value);

  const JetSpace* space() const noexcept { return space_; }
  bool is_constant() const noexcept { return space_ == nullptr; }
  // Truncation order; a bare constant reports kMaxJetOrder.
  int order() const noexcept { return space_ ? space_->order() : kMaxJetOrder; }

  double value() const noexcept { return coeffs_[0]; }
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<double> coefficients() noexcept { return coeffs_; }
  double coefficient(std::size_t idx) const { return coeffs_[idx]; }

  // Partial derivative d/dx_{vars[0]} d/dx_{vars[1]} ... at the base point.
  double partial(std::initializer_list<int> vars) const;
  double partial(std::span<const int> vars) const;

  // d/dx_var as a jet of one lower order. Derivative of a constant is 0.
  Jet derivative(int var) const;
  Jet truncated(int order) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator*=(double s);

  friend Jet operator+(Jet lhs, const Jet& rhs) { return lhs += rhs; }
  friend Jet operator-(Jet lhs, const Jet& rhs) { return lhs -= rhs; }
  friend Jet operator*(const Jet& lhs, const Jet& rhs);
  friend Jet operator/(const Jet& lhs, const Jet& rhs);
  friend Jet operator*(Jet lhs, double s) { return lhs *= s; }
  friend Jet operator*(double s, Jet rhs) { return rhs *= s; }
  friend Jet operator-(Jet a);

 private:
  const JetSpace* space_ = nullptr;
  std::vector<double> coeffs_;
};

// f(a) for a univariate f given by taylor[m] = f^(m)(a.value()) / m!,
// m = 0..a.order() (extra entries are ignored).
Jet apply_univariate(const Jet& a, std::span<const double> taylor);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet sinh(const Jet& a);
Jet cosh(const Jet& a);
Jet tanh(const Jet& a);
Jet sqrt(const Jet& a);
Jet reciprocal(const Jet& a);
Jet pow(const Jet& a, double exponent);
Jet pow(const Jet& a, int exponent);
Jet pow(const Jet& a, const Jet& exponent);

// Identity coordinate jets x_i expanded around `point`.
std::vector<Jet> coordinate_jets(std::span<const double> point, int order);
// True if `coords` are exactly identity coordinate jets around their values.
bool is_identity(std::span<const Jet> coords);
std::vector<double> values(std::span<const Jet> jets);
// `a` as a jet in `space`: constants are embedded, higher orders truncated.
Jet promoted(const Jet& a, const JetSpace& space);

// Substitutes y = inner into the Taylor polynomial `outer` (expanded around
// `center`). inner.size() must equal the outer space dimension.
Jet compose(const Jet& outer, std::span<const double> center, std::span<const Jet> inner);

}  // namespace gcinf
