#pragma once

#include <span>
#include <string>
#include <vector>

#include "gcinf/field.hpp"
#include "gcinf/jet.hpp"
#include "gcinf/jet_tensor.hpp"

namespace gcinf {

enum class EngineMode { forward_jets, central_differences };

std::string to_string(EngineMode mode);

// Produces Taylor expansions of fields at a point.
//
// forward_jets evaluates the field on identity coordinate jets (exact up to
// rounding). central_differences builds the same coefficients from
// tensor-product central difference stencils on plain field values, with
// optional Richardson extrapolation over steps h, h/2 (and h/4); it supports
// orders up to 3 and is meant as an independent cross-check.
class DerivEngine {
 public:
  static constexpr int kMaxDifferenceOrder = 3;

  explicit DerivEngine(EngineMode mode = EngineMode::forward_jets, double step = 0.0, bool richardson = true);

  EngineMode mode() const noexcept { return mode_; }
  // Base step; 0 selects an order-dependent default.
  double step() const noexcept { return step_; }
  bool richardson() const noexcept { return richardson_; }

  std::vector<Jet> jets(const Field& f, std::span<const double> p, int order) const;

  Jet scalar(const ScalarField& u, std::span<const double> p, int order) const;
  JetMatrix sym2(const Sym2Field& g, std::span<const double> p, int order) const;
  JetMatrix endo(const EndoField& b, std::span<const double> p, int order) const;
  std::vector<Jet> map(const MapField& m, std::span<const double> p, int order) const;

  // Step used for derivatives of total degree `degree` around p.
  double step_for(int degree, std::span<const double> p) const;

 private:
  std::vector<Jet> differences(const Field& f, std::span<const double> p, int order) const;

  EngineMode mode_;
  double step_;
  bool richardson_;
};

}  // namespace gcinf
