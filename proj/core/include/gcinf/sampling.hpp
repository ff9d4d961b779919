#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gcinf/field.hpp"

namespace gcinf {

struct SamplePlan {
  int count = 32;
  std::uint64_t seed = 7;
  bool include_center = true;
  bool include_near_boundary = true;
};

// Deterministic sample points in a box: `count` points of a Halton
// sequence with a seeded Cranley-Patterson shift, then the box center, then
// one point 2% inside the lower corner.
std::vector<std::vector<double>> sample_points(const Box& box, const SamplePlan& plan);

// Uniform doubles in [0, 1) from a seeded std::mt19937_64. The conversion
// to double is done here (top 53 bits) rather than by a standard
// distribution, whose output is implementation defined.
class UniformSource {
 public:
  explicit UniformSource(std::uint64_t seed) : rng_(seed) {}
  double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double next(double lo, double hi) { return lo + (hi - lo) * next(); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gcinf
