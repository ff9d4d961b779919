#pragma once

#include <span>
#include <vector>

#include "gcinf/engine.hpp"
#include "gcinf/field.hpp"
#include "gcinf/multilinear.hpp"

namespace gcinf {

// g~ = e^{2u} g.
struct ConformalPair {
  Sym2Field base;
  ScalarField factor;

  Sym2Field metric() const { return conformal_metric(base, factor); }
};

// g^(X, Y) = g(AX, AY).
struct EndoPullback {
  Sym2Field base;
  EndoField A;

  Sym2Field metric() const;
};

Sym2Field pullback_metric(const Sym2Field& g, const EndoField& A);

// nabla_X Y of the metric g for constant coordinate vectors X, Y (direct,
// from its Christoffel symbols).
std::vector<double> connection(const Sym2Field& g, std::span<const double> p, std::span<const double> X,
                               std::span<const double> Y, const DerivEngine& engine);

// Predictions of the conformal change formulas in terms of g and u:
//   nabla~_X Y = nabla_X Y + du(X) Y + du(Y) X - g(X, Y) grad u
//   Rm~ = e^{2u} Rm - g~ ^ (Hess u - du (x) du + |grad u|^2 g / 2)
//   S~ = e^{-2u} (S - 2(n-1) lap u - (n-2)(n-1) |grad u|^2)
std::vector<double> conf_connection(const ConformalPair& pair, std::span<const double> p, std::span<const double> X,
                                    std::span<const double> Y, const DerivEngine& engine);
Tensor4Value conf_riemann(const ConformalPair& pair, std::span<const double> p, const DerivEngine& engine);
double conf_scalar(const ConformalPair& pair, std::span<const double> p, const DerivEngine& engine);

// d^nabla~ T (X,Y,Z) = d^nabla T (X,Y,Z) + (T ^ g)(grad u, X, Y, Z), laid out
// like LocalGeometry::dnabla_sym2.
Tensor3Value conf_dnabla(const ConformalPair& pair, const Sym2Field& T, std::span<const double> p,
                         const DerivEngine& engine);

// Connection of g(A., A.) predicted by A(nabla^_X Y) = nabla_X (A Y), for
// constant X, Y.
std::vector<double> pullback_connection(const EndoPullback& pb, std::span<const double> p, std::span<const double> X,
                                        std::span<const double> Y, const DerivEngine& engine);
// Rm(g)(X, Y, AZ, AW); equals Rm(g(A., A.)) when d^nabla A = 0.
Tensor4Value pullback_riemann(const EndoPullback& pb, std::span<const double> p, const DerivEngine& engine);

// Both sides of d^nabla(Hess u)(X, Y, Z) = Rm(grad u, X, Y, Z).
struct HessianIdentity {
  Tensor3Value lhs;
  Tensor3Value rhs;
};
HessianIdentity hessian_identity(const Sym2Field& g, const ScalarField& u, std::span<const double> p,
                                 const DerivEngine& engine);

// Direct computations used as the other side of the predictions.
Tensor4Value riemann(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine);
double scalar_curvature(const Sym2Field& g, std::span<const double> p, const DerivEngine& engine);
Tensor3Value dnabla_sym2(const Sym2Field& g, const Sym2Field& T, std::span<const double> p, const DerivEngine& engine);
Tensor3Value dnabla_endo(const Sym2Field& g, const EndoField& B, std::span<const double> p, const DerivEngine& engine);

}  // namespace gcinf
