#pragma once

#include <span>
#include <string>
#include <vector>

#include "gcinf/engine.hpp"
#include "gcinf/field.hpp"
#include "gcinf/jet_tensor.hpp"
#include "gcinf/multilinear.hpp"
#include "gcinf/report.hpp"

namespace gcinf {

enum class Side { finite, infinity };

std::string to_string(Side side);
Side side_from_string(const std::string& s);

// A metric with a self-adjoint shape operator: (g, B) on the finite side,
// (g^, B^) at infinity.
class DualityPair {
 public:
  DualityPair(Sym2Field g, EndoField B, Side side);

  const Sym2Field& g() const noexcept { return g_; }
  const EndoField& B() const noexcept { return B_; }
  Side side() const noexcept { return side_; }
  int dim() const { return g_.dim(); }

 private:
  Sym2Field g_;
  EndoField B_;
  Side side_;
};

// II = g(B., .) and III = g(B., B.) as fields.
Sym2Field second_fundamental(const DualityPair& pair);
Sym2Field third_fundamental(const DualityPair& pair);

// Points where Id + B is this close to singular are refused.
inline constexpr double kDualizeMargin = 1e-6;

// Pointwise dualization (also used for the inverse direction):
//   metric = scale * g(Id + B, Id + B),  shape = (Id + B)^{-1} (Id - B)
// with scale 1 going to infinity and 1/4 coming back. The shape is
// re-symmetrized with respect to the new metric; `asymmetry` is the
// relative asymmetry before that step and `margin` the smallest |eigenvalue|
// of Id + B. Throws DegenerateError when margin < kDualizeMargin.
struct DualJets {
  JetMatrix metric;
  JetMatrix shape;
  double asymmetry;
  double margin;
};
DualJets dualize_jets(const JetMatrix& g, const JetMatrix& B, double scale);

struct DualValue {
  Sym2Value metric;
  EndoValue shape;
  double asymmetry;
  double margin;
};
DualValue dualize_value(const Sym2Value& g, const EndoValue& B);
DualValue undualize_value(const Sym2Value& g_hat, const EndoValue& B_hat);

// Field-level maps between the two sides. Degenerate points surface as
// DegenerateError when the returned fields are evaluated there.
DualityPair dualize(const DualityPair& pair);
DualityPair undualize(const DualityPair& pair);
// (e^{2t} g^, e^{-2t} B^).
DualityPair scale_family(const DualityPair& pair, double t);

// Residuals of the finite equations
//   Rm = -1/2 g^g + 1/2 II^II,   d^nabla B = 0
// or of the equations at infinity
//   Rm^ = -1/2 g^ ^ II^,          d^nabla^ B^ = 0.
// gauss_relative = ||gauss|| / (1 + sum of the norms of the terms), norms
// taken in a g-orthonormal frame; codazzi_relative = ||d B|| / (1 + ||nabla B||)
// in coordinates.
struct EquationResidual {
  Tensor4Value gauss;
  Tensor3Value codazzi;
  double gauss_relative;
  double codazzi_relative;
};
EquationResidual gc_residual(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine);
EquationResidual gcinf_residual(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine);
// Dispatches on pair.side().
EquationResidual equation_residual(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine);

// n = 2: K - (-1 + det B).
double surface_gauss_defect(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine);

// tr B^ + S(g^) / (n - 1).
double trace_scalar_check(const DualityPair& pair, std::span<const double> p, const DerivEngine& engine);

// d^nabla^ B^ + (Id + B)^{-1} d^nabla B for a finite pair; both parts are
// returned alongside the defect.
struct CodazziTransport {
  Tensor3Value dual_side;
  Tensor3Value predicted;
  double relative;
};
CodazziTransport codazzi_transport(const DualityPair& finite, std::span<const double> p, const DerivEngine& engine);

// A_t^* g with A_t = cosh t Id + sinh t B.
Sym2Value parallel_metric(const Sym2Value& g, const EndoValue& B, double t);
// 1/4 e^{2t} g^ + 1/2 II^ + 1/4 e^{-2t} III^.
Sym2Value parallel_metric_from_dual(const Sym2Value& g_hat, const EndoValue& B_hat, double t);

// Sampled residual reports for the Gauss and Codazzi parts.
struct EquationReports {
  ResidualReport gauss;
  ResidualReport codazzi;
};
EquationReports equation_reports(const DualityPair& pair, const std::vector<std::vector<double>>& points,
                                 const DerivEngine& engine, double gauss_tol, double codazzi_tol);

}  // namespace gcinf
