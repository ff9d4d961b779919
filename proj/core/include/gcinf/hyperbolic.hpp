#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "gcinf/duality.hpp"
#include "gcinf/engine.hpp"
#include "gcinf/field.hpp"
#include "gcinf/multilinear.hpp"

namespace gcinf {

// Vectors of R^{n+1,1}: n+2 components, the last one timelike.
using MinkowskiVec = Eigen::VectorXd;

double minkowski_inner(const MinkowskiVec& x, const MinkowskiVec& y);
Jet minkowski_inner(std::span<const Jet> x, std::span<const Jet> y);

// (p, v) with <p,p> = -1, p_last > 0, <v,v> = 1 and <p,v> = 0.
class UnitTangent {
 public:
  // Throws DomainError if the invariants fail by more than `tol`.
  UnitTangent(MinkowskiVec p, MinkowskiVec v, double tol = 1e-12);
  // v is the component of `w` orthogonal to p, scaled to unit length.
  static UnitTangent from_direction(const MinkowskiVec& p, const MinkowskiVec& w);

  const MinkowskiVec& p() const noexcept { return p_; }
  const MinkowskiVec& v() const noexcept { return v_; }
  int ambient_dim() const noexcept { return static_cast<int>(p_.size()); }

 private:
  MinkowskiVec p_;
  MinkowskiVec v_;
};

// Throws DomainError unless (x, y) is tangent to the unit tangent bundle at
// (p, v) in the split form: <x,p> = 0, <y,p> = 0, <y,v> = 0.
void check_split_tangent(const UnitTangent& ut, const MinkowskiVec& x, const MinkowskiVec& y, double tol = 1e-9);

// cosh(t) p + sinh(t) v.
MinkowskiVec geodesic_flow(const UnitTangent& ut, double t);
// cosh(t) x + sinh(t) y + sinh(t) <x,v> p.
MinkowskiVec flow_derivative(const UnitTangent& ut, double t, const MinkowskiVec& x, const MinkowskiVec& y);

// Projection of the hyperboloid to the unit ball: spatial part / (1 + p_last).
Eigen::VectorXd stereographic(const MinkowskiVec& p);
// Ideal endpoint of the geodesic through (p, v), as a unit vector of R^{n+1}:
// spatial part of (p + v) / (p + v)_last.
Eigen::VectorXd gauss_map(const UnitTangent& ut);
// With w = x + y + <x,v> p and q = p + v:
//   <w,e>/<q,e>^2 q - w/<q,e>,  e the timelike basis vector
// (spatial part returned; the timelike part vanishes).
Eigen::VectorXd gauss_map_derivative(const UnitTangent& ut, const MinkowskiVec& x, const MinkowskiVec& y);

// Immersion f of an n-dimensional chart into the hyperboloid of R^{n+1,1}
// together with a unit normal N along it.
class Immersion {
 public:
  Immersion(MapField f, MapField N);
  // N computed from df: the unit vector orthogonal to f and to the image of
  // df, signed so that det[df, f, N] has the sign of `orientation`.
  static Immersion with_computed_normal(MapField f, int orientation = 1);

  const MapField& f() const noexcept { return f_; }
  const MapField& N() const noexcept { return N_; }
  int dim() const { return f_.dim(); }
  int ambient_dim() const { return f_.size(); }

 private:
  MapField f_;
  MapField N_;
};

// Largest violations of the immersion invariants at a point.
struct ImmersionDefects {
  double hyperboloid;  // |<f,f> + 1|
  double future;       // max(0, -f_last)
  double normal_unit;  // |<N,N> - 1|
  double normal_f;     // |<N,f>|
  double normal_df;    // max |<N, d_i f>|
  double rank_margin;  // smallest singular value of df, relative to the largest
};
ImmersionDefects immersion_defects(const Immersion& imm, std::span<const double> p);
// Throws DomainError when a defect exceeds its tolerance (1e-12 on the
// hyperboloid, 1e-10 for the normal) and DegenerateError on rank loss.
void check_immersion(const Immersion& imm, std::span<const double> p);

// g_ij = <d_i f, d_j f>.
Sym2Field induced_metric(const Immersion& imm);
// B = g^{-1} II with II_ij = -<d_i N, d_j f> symmetrized.
EndoField shape_operator(const Immersion& imm);
// (g, B) as a finite-side pair.
DualityPair induced_pair(const Immersion& imm);

struct InducedValue {
  Sym2Value g;
  EndoValue B;
  // |II_ij - II_ji| relative to max(1, max |II|) before symmetrization.
  double asymmetry;
};
// Checks the immersion invariants, then returns (g, B) at p.
InducedValue induced_data(const Immersion& imm, std::span<const double> p, const DerivEngine& engine);

// Unit normal lift F = (f, -N). dF(u) in split form: (df(u), df(Bu)).
struct SplitVector {
  MinkowskiVec horizontal;
  MinkowskiVec vertical;
};
SplitVector normal_lift_derivative(const Immersion& imm, std::span<const double> p, std::span<const double> u,
                                   const DerivEngine& engine);

// Parallel hypersurface obtained by flowing distance t along -N:
//   f^t = cosh(t) f - sinh(t) N,  N^t = cosh(t) N - sinh(t) f.
// It stops being an immersion where B has eigenvalue -coth(t).
Immersion parallel_immersion(const Immersion& imm, double t);
// Smallest |eigenvalue| of cosh(t) Id + sinh(t) B at p.
double parallel_margin(const Immersion& imm, double t, std::span<const double> p, const DerivEngine& engine);

// f_inf = Gauss map of (f, -N), a map into the unit sphere of R^{n+1}.
MapField boundary_map(const Immersion& imm);
// || f_inf^* round - g^ / (f - N)_last^2 || / || g^ / (f - N)_last^2 ||.
double metric_at_infinity_check(const Immersion& imm, std::span<const double> p, const DerivEngine& engine);

// For a patch phi of the hyperboloid: max over i, j of
// || (d_ij phi - tangential part) - <d_i phi, d_j phi> phi ||.
double hyperboloid_gauss_defect(const MapField& patch, std::span<const double> p);

}  // namespace gcinf
