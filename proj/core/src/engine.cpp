#include "gcinf/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "gcinf/error.hpp"

namespace gcinf {
namespace {

struct StencilTap {
  int offset;
  double weight;
};

// Second-order accurate central stencils for d^m/dx^m, weights for unit step.
const std::vector<StencilTap>& central_stencil(int m) {
  static const std::array<std::vector<StencilTap>, 4> stencils{{
      {{0, 1.0}},
      {{-1, -0.5}, {1, 0.5}},
      {{-1, 1.0}, {0, -2.0}, {1, 1.0}},
      {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}},
  }};
  return stencils[static_cast<std::size_t>(m)];
}

// Default steps per derivative degree, tuned for three-level Richardson
// extrapolation on the shipped catalog.
constexpr std::array<double, 4> kDefaultSteps{0.0, 4e-3, 1e-2, 2e-2};

class ValueCache {
 public:
  ValueCache(const Field& f, std::span<const double> p) : f_(f), p_(p.begin(), p.end()) {}

  const std::vector<double>& at(std::span<const int> offsets, double h) {
    std::vector<double> q = p_;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] += offsets[i] * h;
    auto it = cache_.find(q);
    if (it != cache_.end()) return it->second;
    auto v = f_.values_at(q);
    return cache_.emplace(std::move(q), std::move(v)).first->second;
  }

 private:
  const Field& f_;
  std::vector<double> p_;
  std::map<std::vector<double>, std::vector<double>> cache_;
};

// Tensor-product central difference for the monomial with exponents `e`.
std::vector<double> difference(ValueCache& cache, std::span<const std::uint8_t> e, double h, std::size_t size) {
  const std::size_t n = e.size();
  std::vector<double> out(size, 0.0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<int> offsets(n, 0);
  int degree = 0;
  for (auto x : e) degree += x;
  while (true) {
    double w = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& tap = central_stencil(e[i])[cursor[i]];
      offsets[i] = tap.offset;
      w *= tap.weight;
    }
    const auto& v = cache.at(offsets, h);
    for (std::size_t c = 0; c < size; ++c) out[c] += w * v[c];
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (++cursor[i] < central_stencil(e[i]).size()) break;
      cursor[i] = 0;
    }
    if (i == n) break;
  }
  const double scale = std::pow(h, -degree);
  for (auto& x : out) x *= scale;
  return out;
}

}  // namespace

std::string to_string(EngineMode mode) {
  return mode == EngineMode::forward_jets ? "ad" : "fd";
}

DerivEngine::DerivEngine(EngineMode mode, double step, bool richardson)
    : mode_(mode), step_(step), richardson_(richardson) {
  if (step < 0.0 || !std::isfinite(step)) throw Error("difference step must be positive");
}

double DerivEngine::step_for(int degree, std::span<const double> p) const {
  double scale = 1.0;
  for (double x : p) scale = std::max(scale, std::fabs(x));
  const double base = step_ > 0.0 ? step_ : kDefaultSteps[static_cast<std::size_t>(std::clamp(degree, 1, 3))];
  return base * scale;
}

std::vector<Jet> DerivEngine::jets(const Field& f, std::span<const double> p, int order) const {
  if (static_cast<int>(p.size()) != f.dim()) throw DimensionError("engine: point has wrong dimension");
  if (order < 0 || order > kMaxJetOrder) throw Error("engine: unsupported jet order");
  const JetSpace& space = JetSpace::get(f.dim(), order);
  std::vector<Jet> out;
  if (mode_ == EngineMode::forward_jets || order == 0) {
    out = f.evaluate(coordinate_jets(p, order));
  } else {
    out = differences(f, p, order);
  }
  for (auto& j : out) j = promoted(j, space);
  return out;
}

std::vector<Jet> DerivEngine::differences(const Field& f, std::span<const double> p, int order) const {
  if (order > kMaxDifferenceOrder) throw Error("central differences support derivative orders up to 3");
  const JetSpace& space = JetSpace::get(f.dim(), order);
  const std::size_t size = static_cast<std::size_t>(f.size());
  ValueCache cache(f, p);
  std::vector<Jet> out(size, Jet(space));
  for (std::size_t idx = 0; idx < space.size(); ++idx) {
    const auto e = space.exponents(idx);
    const int degree = space.degree(idx);
    std::vector<double> d;
    if (degree == 0) {
      const std::vector<int> zero(p.size(), 0);
      d = cache.at(zero, 0.0);
    } else {
      const double h = step_for(degree, p);
      if (!richardson_) {
        d = difference(cache, e, h, size);
      } else {
        const auto d0 = difference(cache, e, h, size);
        const auto d1 = difference(cache, e, h / 2.0, size);
        const auto d2 = difference(cache, e, h / 4.0, size);
        d.resize(size);
        for (std::size_t c = 0; c < size; ++c) {
          const double r0 = (4.0 * d1[c] - d0[c]) / 3.0;
          const double r1 = (4.0 * d2[c] - d1[c]) / 3.0;
          d[c] = (16.0 * r1 - r0) / 15.0;
        }
      }
    }
    const double inv_fact = 1.0 / space.factorial(idx);
    for (std::size_t c = 0; c < size; ++c) out[c].coefficients()[idx] = d[c] * inv_fact;
  }
  return out;
}

Jet DerivEngine::scalar(const ScalarField& u, std::span<const double> p, int order) const {
  return jets(*u.field(), p, order)[0];
}

JetMatrix DerivEngine::sym2(const Sym2Field& g, std::span<const double> p, int order) const {
  const int n = g.dim();
  return JetMatrix::from_components(jets(*g.field(), p, order), n, n).symmetrized();
}

JetMatrix DerivEngine::endo(const EndoField& b, std::span<const double> p, int order) const {
  const int n = b.dim();
  return JetMatrix::from_components(jets(*b.field(), p, order), n, n);
}

std::vector<Jet> DerivEngine::map(const MapField& m, std::span<const double> p, int order) const {
  return jets(*m.field(), p, order);
}

}  // namespace gcinf
