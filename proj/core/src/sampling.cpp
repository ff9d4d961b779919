#include "gcinf/sampling.hpp"

#include <array>
#include <cmath>

#include "gcinf/error.hpp"

namespace gcinf {
namespace {

constexpr std::array<int, kMaxJetDim> kPrimes{2, 3, 5, 7, 11, 13};

double radical_inverse(std::uint64_t i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
    i /= static_cast<std::uint64_t>(base);
  }
  return r;
}

}  // namespace

std::vector<std::vector<double>> sample_points(const Box& box, const SamplePlan& plan) {
  const int n = box.dim();
  if (n < 1 || n > kMaxJetDim) throw DimensionError("sample_points: unsupported box dimension");
  if (plan.count < 0) throw Error("sample_points: negative point count");
  UniformSource rng(plan.seed);
  std::vector<double> shift(static_cast<std::size_t>(n));
  for (auto& s : shift) s = rng.next();

  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(plan.count) + 2);
  for (int k = 0; k < plan.count; ++k) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double x = radical_inverse(static_cast<std::uint64_t>(k) + 1, kPrimes[static_cast<std::size_t>(i)]) +
                 shift[static_cast<std::size_t>(i)];
      x -= std::floor(x);
      p[static_cast<std::size_t>(i)] = box.lo(i) + x * (box.hi(i) - box.lo(i));
    }
    pts.push_back(std::move(p));
  }
  if (plan.include_center) pts.push_back(box.center());
  if (plan.include_near_boundary) {
    std::vector<double> p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = box.lo(i) + 0.02 * (box.hi(i) - box.lo(i));
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace gcinf
