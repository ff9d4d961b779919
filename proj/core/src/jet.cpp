#include "gcinf/jet.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>

#include "gcinf/error.hpp"

namespace gcinf {
namespace {

constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

std::uint64_t monomial_key(std::span<const std::uint8_t> exps) {
  std::uint64_t key = 0;
  for (auto e : exps) key = key * 64 + e;
  return key;
}

std::uint64_t monomial_key(std::span<const int> exps) {
  std::uint64_t key = 0;
  for (int e : exps) key = key * 64 + static_cast<std::uint64_t>(e);
  return key;
}

// Appends every exponent vector of total degree `remaining` over variables
// [var, dim), first variable highest.
void append_degree(int dim, int var, int remaining, std::vector<std::uint8_t>& current,
                   std::vector<std::uint8_t>& out) {
  if (var == dim - 1) {
    current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
    append_degree(dim, var + 1, remaining - e, current, out);
  }
  current[static_cast<std::size_t>(var)] = 0;
}

const JetSpace* common_space(const Jet& a, const Jet& b) {
  if (a.is_constant()) return b.space();
  if (b.is_constant()) return a.space();
  if (a.space()->dim() != b.space()->dim()) {
    throw DimensionError("jet dimension mismatch: " + std::to_string(a.space()->dim()) + " vs " +
                         std::to_string(b.space()->dim()));
  }
  return a.order() <= b.order() ? a.space() : b.space();
}

double factorial_of(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// JetSpace

JetSpace::JetSpace(int dim, int order) : dim_(dim), order_(order) {
  std::vector<std::uint8_t> current(static_cast<std::size_t>(dim), 0);
  prefix_.reserve(static_cast<std::size_t>(order) + 1);
  for (int d = 0; d <= order; ++d) {
    if (d == 0) {
      exponents_.insert(exponents_.end(), current.begin(), current.end());
    } else {
      append_degree(dim, 0, d, current, exponents_);
    }
    prefix_.push_back(exponents_.size() / static_cast<std::size_t>(dim));
  }
  const std::size_t count = prefix_.back();

  std::unordered_map<std::uint64_t, std::size_t> lookup;
  lookup.reserve(count * 2);
  degree_.resize(count);
  factorial_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto e = exponents(i);
    int deg = 0;
    double fact = 1.0;
    for (auto x : e) {
      deg += x;
      fact *= factorial_of(x);
    }
    degree_[i] = deg;
    factorial_[i] = fact;
    lookup.emplace(monomial_key(e), i);
  }

  raised_.assign(count * static_cast<std::size_t>(dim), kAbsent);
  std::vector<std::uint8_t> tmp(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < count; ++i) {
    if (degree_[i] >= order) continue;
    for (int v = 0; v < dim; ++v) {
      auto e = exponents(i);
      std::copy(e.begin(), e.end(), tmp.begin());
      ++tmp[static_cast<std::size_t>(v)];
      raised_[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(v)] = lookup.at(monomial_key(tmp));
    }
  }

  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = 0; b < count; ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      auto ea = exponents(a);
      auto eb = exponents(b);
      for (std::size_t k = 0; k < tmp.size(); ++k) tmp[k] = static_cast<std::uint8_t>(ea[k] + eb[k]);
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(lookup.at(monomial_key(tmp)))});
    }
  }
}

const JetSpace& JetSpace::get(int dim, int order) {
  if (dim < 1 || dim > kMaxJetDim) {
    throw DimensionError("jet dimension " + std::to_string(dim) + " outside [1, " +
                         std::to_string(kMaxJetDim) + "]");
  }
  if (order < 0 || order > kMaxJetOrder) {
    throw DimensionError("jet order " + std::to_string(order) + " outside [0, " +
                         std::to_string(kMaxJetOrder) + "]");
  }
  static std::array<std::once_flag, (kMaxJetDim + 1) * (kMaxJetOrder + 1)> flags;
  static std::array<std::unique_ptr<JetSpace>, (kMaxJetDim + 1) * (kMaxJetOrder + 1)> spaces;
  const auto slot = static_cast<std::size_t>(dim * (kMaxJetOrder + 1) + order);
  std::call_once(flags[slot], [&] { spaces[slot].reset(new JetSpace(dim, order)); });
  return *spaces[slot];
}

std::size_t JetSpace::index(std::span<const int> exps) const {
  if (exps.size() != static_cast<std::size_t>(dim_)) {
    throw DimensionError("multi-index has wrong length");
  }
  int deg = 0;
  for (int e : exps) {
    if (e < 0) throw DimensionError("negative exponent in multi-index");
    deg += e;
  }
  if (deg > order_) {
    throw DimensionError("derivative of degree " + std::to_string(deg) +
                         " requested from a jet of order " + std::to_string(order_));
  }
  const auto key = monomial_key(exps);
  const std::size_t lo = deg == 0 ? 0 : prefix_[static_cast<std::size_t>(deg - 1)];
  const std::size_t hi = prefix_[static_cast<std::size_t>(deg)];
  for (std::size_t i = lo; i < hi; ++i) {
    if (monomial_key(exponents(i)) == key) return i;
  }
  throw Error("monomial not found");
}

// ---------------------------------------------------------------------------
// Jet

Jet Jet::constant(const JetSpace& space, double value) {
  Jet j(space);
  j.coeffs_[0] = value;
  return j;
}

Jet Jet::variable(const JetSpace& space, int var, double value) {
  Jet j(space);
  j.coeffs_[0] = value;
  if (space.order() >= 1) j.coeffs_[1 + static_cast<std::size_t>(var)] = 1.0;
  return j;
}

double Jet::partial(std::initializer_list<int> vars) const {
  return partial(std::span<const int>(vars.begin(), vars.size()));
}

double Jet::partial(std::span<const int> vars) const {
  if (is_constant()) return vars.empty() ? coeffs_[0] : 0.0;
  std::array<int, kMaxJetDim> exps{};
  for (int v : vars) {
    if (v < 0 || v >= space_->dim()) throw DimensionError("partial derivative variable out of range");
    ++exps[static_cast<std::size_t>(v)];
  }
  const auto idx = space_->index(std::span<const int>(exps.data(), static_cast<std::size_t>(space_->dim())));
  return coeffs_[idx] * space_->factorial(idx);
}

Jet Jet::derivative(int var) const {
  if (is_constant()) return Jet(0.0);
  if (var < 0 || var >= space_->dim()) throw DimensionError("derivative variable out of range");
  if (space_->order() == 0) throw Error("cannot differentiate a jet of order 0");
  const JetSpace& lower = JetSpace::get(space_->dim(), space_->order() - 1);
  Jet out(lower);
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const double mult = lower.exponents(i)[static_cast<std::size_t>(var)] + 1.0;
    out.coeffs_[i] = mult * coeffs_[space_->raised(i, var)];
  }
  return out;
}

Jet Jet::truncated(int order) const {
  if (is_constant() || order >= space_->order()) return *this;
  const JetSpace& lower = JetSpace::get(space_->dim(), order);
  Jet out(lower);
  std::copy(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lower.size()), out.coeffs_.begin());
  return out;
}

Jet& Jet::operator+=(const Jet& rhs) {
  if (rhs.is_constant()) {
    coeffs_[0] += rhs.coeffs_[0];
    return *this;
  }
  const JetSpace* s = common_space(*this, rhs);
  if (s != space_) {
    const double c0 = is_constant() ? coeffs_[0] : 0.0;
    if (is_constant()) {
      *this = Jet(*s);
      coeffs_[0] = c0;
    } else {
      *this = truncated(s->order());
    }
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  if (rhs.is_constant()) {
    coeffs_[0] -= rhs.coeffs_[0];
    return *this;
  }
  const JetSpace* s = common_space(*this, rhs);
  if (s != space_) {
    const double c0 = is_constant() ? coeffs_[0] : 0.0;
    if (is_constant()) {
      *this = Jet(*s);
      coeffs_[0] = c0;
    } else {
      *this = truncated(s->order());
    }
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Jet& Jet::operator*=(const Jet& rhs) {
  *this = *this * rhs;
  return *this;
}

Jet& Jet::operator/=(const Jet& rhs) {
  *this = *this / rhs;
  return *this;
}

Jet operator*(const Jet& lhs, const Jet& rhs) {
  if (rhs.is_constant()) return lhs * rhs.coeffs_[0];
  if (lhs.is_constant()) return rhs * lhs.coeffs_[0];
  const JetSpace* s = common_space(lhs, rhs);
  Jet out(*s);
  const double* a = lhs.coeffs_.data();
  const double* b = rhs.coeffs_.data();
  double* r = out.coeffs_.data();
  for (const auto& p : s->products()) r[p.out] += a[p.lhs] * b[p.rhs];
  return out;
}

Jet operator/(const Jet& lhs, const Jet& rhs) {
  if (rhs.is_constant()) {
    if (rhs.coeffs_[0] == 0.0) throw DomainError("division by zero");
    return lhs * (1.0 / rhs.coeffs_[0]);
  }
  return lhs * reciprocal(rhs);
}

Jet operator-(Jet a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

// ---------------------------------------------------------------------------
// Elementary functions

Jet apply_univariate(const Jet& a, std::span<const double> taylor) {
  if (a.is_constant()) return Jet(taylor[0]);
  const int k = a.order();
  if (k == 0) return Jet::constant(*a.space(), taylor[0]);
  Jet delta = a;
  delta.coefficients()[0] = 0.0;
  Jet result = Jet::constant(*a.space(), taylor[static_cast<std::size_t>(k)]);
  for (int m = k - 1; m >= 0; --m) {
    result = result * delta;
    result.coefficients()[0] += taylor[static_cast<std::size_t>(m)];
  }
  return result;
}

namespace {

using Taylor = std::array<double, kMaxJetOrder + 1>;

Jet from_derivatives(const Jet& a, Taylor derivs) {
  for (int m = 2; m <= kMaxJetOrder; ++m) derivs[static_cast<std::size_t>(m)] /= factorial_of(m);
  return apply_univariate(a, derivs);
}

}  // namespace

Jet exp(const Jet& a) {
  Taylor t{};
  t.fill(std::exp(a.value()));
  return from_derivatives(a, t);
}

Jet log(const Jet& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw DomainError("log of non-positive value " + std::to_string(x));
  Taylor t{};
  t[0] = std::log(x);
  double p = 1.0;
  for (int m = 1; m <= kMaxJetOrder; ++m) {
    p /= x;
    t[static_cast<std::size_t>(m)] = ((m % 2 == 1) ? 1.0 : -1.0) * p / m;
  }
  return apply_univariate(a, t);
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 4> cycle{s, c, -s, -c};
  Taylor d{};
  for (int m = 0; m <= kMaxJetOrder; ++m) d[static_cast<std::size_t>(m)] = cycle[static_cast<std::size_t>(m % 4)];
  return from_derivatives(a, d);
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  const std::array<double, 4> cycle{c, -s, -c, s};
  Taylor d{};
  for (int m = 0; m <= kMaxJetOrder; ++m) d[static_cast<std::size_t>(m)] = cycle[static_cast<std::size_t>(m % 4)];
  return from_derivatives(a, d);
}

Jet sinh(const Jet& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  Taylor d{};
  for (int m = 0; m <= kMaxJetOrder; ++m) d[static_cast<std::size_t>(m)] = (m % 2 == 0) ? s : c;
  return from_derivatives(a, d);
}

Jet cosh(const Jet& a) {
  const double s = std::sinh(a.value());
  const double c = std::cosh(a.value());
  Taylor d{};
  for (int m = 0; m <= kMaxJetOrder; ++m) d[static_cast<std::size_t>(m)] = (m % 2 == 0) ? c : s;
  return from_derivatives(a, d);
}

Jet tanh(const Jet& a) {
  // d^m/dx^m tanh = P_m(tanh) with P_0(T) = T, P_{m+1} = P_m'(T) (1 - T^2).
  const double th = std::tanh(a.value());
  std::vector<double> poly{0.0, 1.0};
  Taylor d{};
  for (int m = 0; m <= kMaxJetOrder; ++m) {
    double v = 0.0;
    for (std::size_t i = poly.size(); i-- > 0;) v = v * th + poly[i];
    d[static_cast<std::size_t>(m)] = v;
    std::vector<double> deriv(poly.size() > 1 ? poly.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < poly.size(); ++i) deriv[i - 1] = static_cast<double>(i) * poly[i];
    std::vector<double> next(deriv.size() + 2, 0.0);
    for (std::size_t i = 0; i < deriv.size(); ++i) {
      next[i] += deriv[i];
      next[i + 2] -= deriv[i];
    }
    poly = std::move(next);
  }
  return from_derivatives(a, d);
}

Jet reciprocal(const Jet& a) {
  const double x = a.value();
  if (x == 0.0) throw DomainError("division by zero");
  Taylor t{};
  double p = 1.0 / x;
  for (int m = 0; m <= kMaxJetOrder; ++m) {
    t[static_cast<std::size_t>(m)] = ((m % 2 == 0) ? 1.0 : -1.0) * p;
    p /= x;
  }
  return apply_univariate(a, t);
}

Jet pow(const Jet& a, int exponent) {
  if (exponent < 0) return reciprocal(pow(a, -exponent));
  Jet result = a.is_constant() ? Jet(1.0) : Jet::constant(*a.space(), 1.0);
  Jet base = a;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Jet pow(const Jet& a, double exponent) {
  if (std::nearbyint(exponent) == exponent && std::fabs(exponent) <= 64.0) {
    return pow(a, static_cast<int>(exponent));
  }
  const double x = a.value();
  if (x < 0.0 || (x == 0.0 && (exponent < 0.0 || a.order() > 0))) {
    throw DomainError("non-integer power of non-positive value " + std::to_string(x));
  }
  Taylor t{};
  double coef = 1.0;
  for (int m = 0; m <= kMaxJetOrder; ++m) {
    t[static_cast<std::size_t>(m)] = x == 0.0 ? 0.0 : coef * std::pow(x, exponent - m);
    coef *= (exponent - m) / (m + 1.0);
  }
  return apply_univariate(a, t);
}

Jet sqrt(const Jet& a) {
  const double x = a.value();
  if (x < 0.0 || (x == 0.0 && a.order() > 0)) {
    throw DomainError("sqrt of non-positive value " + std::to_string(x));
  }
  return pow(a, 0.5);
}

Jet pow(const Jet& a, const Jet& exponent) {
  bool constant_exponent = exponent.is_constant();
  if (!constant_exponent) {
    constant_exponent = true;
    auto c = exponent.coefficients();
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (c[i] != 0.0) {
        constant_exponent = false;
        break;
      }
    }
  }
  if (constant_exponent) {
    Jet r = pow(a, exponent.value());
    if (r.is_constant() && !exponent.is_constant()) r = Jet::constant(*exponent.space(), r.value());
    return r;
  }
  return exp(exponent * log(a));
}

// ---------------------------------------------------------------------------
// Coordinates and composition

std::vector<Jet> coordinate_jets(std::span<const double> point, int order) {
  const JetSpace& space = JetSpace::get(static_cast<int>(point.size()), order);
  std::vector<Jet> out;
  out.reserve(point.size());
  for (std::size_t i = 0; i < point.size(); ++i) out.push_back(Jet::variable(space, static_cast<int>(i), point[i]));
  return out;
}

bool is_identity(std::span<const Jet> coords) {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const Jet& c = coords[i];
    if (c.is_constant()) return false;
    if (c.space()->dim() != static_cast<int>(coords.size())) return false;
    auto cf = c.coefficients();
    for (std::size_t k = 1; k < cf.size(); ++k) {
      const double expect = (c.order() >= 1 && k == 1 + i) ? 1.0 : 0.0;
      if (cf[k] != expect) return false;
    }
  }
  return true;
}

Jet promoted(const Jet& a, const JetSpace& space) {
  if (a.is_constant()) return Jet::constant(space, a.value());
  if (a.space()->dim() != space.dim()) throw DimensionError("promoted: jet lives in a different dimension");
  if (a.order() > space.order()) return a.truncated(space.order());
  if (a.order() < space.order()) throw Error("promoted: jet order too low");
  return a;
}

std::vector<double> values(std::span<const Jet> jets) {
  std::vector<double> out;
  out.reserve(jets.size());
  for (const auto& j : jets) out.push_back(j.value());
  return out;
}

Jet compose(const Jet& outer, std::span<const double> center, std::span<const Jet> inner) {
  if (outer.is_constant()) return Jet(outer.value());
  const JetSpace& os = *outer.space();
  if (inner.size() != static_cast<std::size_t>(os.dim()) || center.size() != inner.size()) {
    throw DimensionError("compose: inner map has wrong arity");
  }
  const int k = os.order();
  std::vector<std::vector<Jet>> powers(inner.size());
  int inner_order = kMaxJetOrder;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    Jet delta = inner[i] - center[i];
    inner_order = std::min(inner_order, delta.order());
    powers[i].reserve(static_cast<std::size_t>(k) + 1);
    powers[i].push_back(Jet(1.0));
    for (int e = 1; e <= k; ++e) powers[i].push_back(powers[i].back() * delta);
  }
  Jet result(0.0);
  for (std::size_t idx = 0; idx < os.size(); ++idx) {
    const double c = outer.coefficient(idx);
    if (c == 0.0) continue;
    auto e = os.exponents(idx);
    Jet term(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term = term * powers[i][e[i]];
    }
    result += term;
  }
  return result.truncated(std::min(k, inner_order));
}

}  // namespace gcinf
