#pragma once

#include <span>
#include <vector>

#include "gcinf/duality.hpp"
#include "gcinf/engine.hpp"
#include "gcinf/field.hpp"
#include "gcinf/geometry.hpp"
#include "gcinf/jet_tensor.hpp"
#include "gcinf/multilinear.hpp"
#include "gcinf/report.hpp"

namespace gcinf {

// g^ = e^{2u} reference, with a flat reference metric (default: the
// Euclidean metric of the chart).
struct ConformalPresentation {
  Sym2Field reference;
  ScalarField factor;

  static ConformalPresentation euclidean(const ScalarField& u);
  Sym2Field metric() const { return conformal_metric(reference, factor); }
};

// Largest ||Rm(reference)|| over the points; a usable presentation has this
// near zero.
double reference_flatness(const ConformalPresentation& pres, const std::vector<std::vector<double>>& points,
                          const DerivEngine& engine);

// Osgood-Stowe tensor of e^{2u} g1 relative to g1:
//   Hess u - du (x) du - (1/n)(lap u - |grad u|^2) g1,
// everything taken with respect to g1. The jet version takes the
// geometry of g1 (order >= k+1) and u (order >= k+2) and returns order k.
JetMatrix osgood_stowe_jets(const LocalGeometry& base, const Jet& u);
Sym2Value osgood_stowe(const Sym2Field& base, const ScalarField& u, std::span<const double> p,
                       const DerivEngine& engine);
Sym2Value osgood_stowe(const ConformalPresentation& pres, std::span<const double> p, const DerivEngine& engine);

// With g2 = e^{2a} g1 and g3 = e^{2b} g2:
//   || OS(g3, g1) - OS(g3, g2) - OS(g2, g1) ||.
double os_cocycle_defect(const Sym2Field& g1, const ScalarField& a, const ScalarField& b, std::span<const double> p,
                         const DerivEngine& engine);

// phi^* g for a map phi into the chart of g.
Sym2Field pullback_by_map(const Sym2Field& g, const MapField& phi);

// || d phi^T d phi - (|d phi|^2 / n) Id || / (|d phi|^2 / n).
double conformality_defect(const MapField& phi, std::span<const double> p, const DerivEngine& engine);
// v = 1/2 log(|d phi|^2 / n), so phi^* delta = e^{2v} delta for conformal phi.
ScalarField conformal_log_factor(const MapField& phi);

// Relative difference between phi^* OS(g2, g1) and OS(phi^* g2, phi^* g1)
// for g2 = e^{2u} g1 given by `pres` on the target chart of phi.
double os_naturality_defect(const MapField& phi, const ConformalPresentation& pres, std::span<const double> p,
                            const DerivEngine& engine);

// ||OS(phi^* delta, delta)||; vanishes exactly for Moebius maps. Throws
// DomainError if phi is not conformal at p (defect above 1e-6).
double mobius_defect(const MapField& phi, std::span<const double> p, const DerivEngine& engine);

// Two presentations of one metric related by a conformal chart change
// y = m(x): e^{2u} delta in y, e^{2v} delta in x with v = u o m + log lambda.
// Returns the relative difference between OS_x(v) and m^* OS_y(u).
double os_patching_defect(const ScalarField& u, const MapField& m, std::span<const double> p,
                          const DerivEngine& engine);

// The pair at infinity (g^, B^) with
//   g^ B^ = 2 OS(g^) - S(g^) / (n(n-1)) g^.
DualityPair solution_at_infinity(const ConformalPresentation& pres);
// II^ = g^ B^ at a point, directly from the formula above.
Sym2Value solution_form(const ConformalPresentation& pres, std::span<const double> p, const DerivEngine& engine);
// 2 Hess u - 2 du (x) du + |grad u|^2 g (flat reference only).
Sym2Value solution_form_simplified(const ConformalPresentation& pres, std::span<const double> p,
                                   const DerivEngine& engine);

// Schouten tensor P = (Ric - S / (2(n-1)) g) / (n-2) and Weyl tensor
// W = Rm - P ^ g. Both throw DimensionError for n <= 2.
JetMatrix schouten_jets(const LocalGeometry& geo);
Sym2Value schouten(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine);
Tensor4Value weyl(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine);

// || (2 OS - S/(n(n-1)) g^) + 2 P(g^) || relative to max(1, ||2 P||).
double schouten_solution_check(const ConformalPresentation& pres, std::span<const double> p, const DerivEngine& engine);

// Conformal flatness obstruction sampled over points: max ||d^nabla P||
// (n = 3, check named "cotton") or max ||W|| in a g-orthonormal frame
// (n >= 4, check named "weyl").
ResidualReport weyl_schouten_check(const Sym2Field& g, const std::vector<std::vector<double>>& points,
                                   const DerivEngine& engine, double tolerance,
                                   Expectation expectation = Expectation::at_most);

// Both sides of g^{ab} (nabla_a W)(e_b, X, Y, Z) = -(n-3) d^nabla P(X, Y, Z)
// for n >= 4, with d^nabla P laid out as in LocalGeometry::dnabla_sym2.
struct WeylDivergence {
  Tensor3Value divergence;
  Tensor3Value predicted;
  double relative;
};
WeylDivergence weyl_divergence_identity(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine);

// Recovers S from Q = g ^ S by tracing twice:
//   tr S = tr_g(trace4 Q) / (2(n-1)),  S = (trace4 Q - tr S g) / (n-2).
// Throws DimensionError for n = 2, where g ^ . has a kernel.
Sym2Value kn_recover(const MetricValue& g, const Tensor4Value& Q);
// kn_recover(g, g ^ S).
Sym2Value kn_injectivity(const MetricValue& g, const Sym2Value& S);
// ||h - k|| <= C ||g ^ (h - k)|| with C = (1 + n/(2(n-1))) / (n-2).
double kn_uniqueness_constant(int n);

// G(h) = (1/(n-2)) (h - tr h / (2(n-1)) g) ^ g; trace4(g, G(h)) = h.
Tensor4Value right_inverse_G(const MetricValue& g, const Sym2Value& h);

}  // namespace gcinf
