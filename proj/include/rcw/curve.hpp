#pragma once

// Real rational plane curves x = p1/q, y = p2/q with q > 0 on the real line.
// The parameter sphere plays the role of the normalization; conjugation acts on
// the parameter, the upper half-plane {Im t > 0} maps onto the half CA+, and
// the real locus is oriented by increasing t.

#include <Eigen/Dense>

#include <optional>
#include <random>

#include "rcw/poly.hpp"

namespace rcw {

/// A point of the parameter sphere C ∪ {∞}.
struct Parameter {
  Complex t{0.0, 0.0};
  bool at_infinity = false;

  static Parameter finite(Complex v) { return {v, false}; }
  static Parameter infinity() { return {Complex(0.0), true}; }
  bool is_real() const { return at_infinity || t.imag() == 0.0; }
  Parameter conj() const { return at_infinity ? *this : finite(std::conj(t)); }
};

/// Homogeneous coordinates (z0 : z1 : z2), affine point (z1/z0, z2/z0).
using ProjPoint = Eigen::Vector3cd;

/// Scales so the largest-magnitude coordinate becomes 1; tiny entries snap to 0.
ProjPoint normalized(const ProjPoint& p, double snap = 1e-12);

/// Sine of the angle between two projective points (0 when equal).
double projective_distance(const ProjPoint& a, const ProjPoint& b);

/// Three polynomials (q, p1, p2) over one affine chart of the parameter sphere.
struct ParamTriple {
  RealPoly p1, p2, q;
};

class RationalPlaneCurve {
 public:
  const RealPoly& p1() const { return p1_; }
  const RealPoly& p2() const { return p2_; }
  const RealPoly& q() const { return q_; }
  /// Degree n = deg q (even, q monic).
  int degree() const { return q_.degree(); }

  /// The chart s = -1/t around t = ∞: (s^n p1(-1/s), s^n p2(-1/s), s^n q(-1/s)).
  ParamTriple infinity_chart() const;
  ParamTriple finite_chart() const { return {p1_, p2_, q_}; }

 private:
  friend RationalPlaneCurve make_curve(const RealPoly&, const RealPoly&, const RealPoly&, const Tolerances&);
  RealPoly p1_, p2_, q_;
};

/// Validates and normalizes: gcd-cleared, q monic without real roots,
/// deg p1, deg p2 <= deg q, immersed on the real locus including t = ∞.
RationalPlaneCurve make_curve(const RealPoly& p1, const RealPoly& p2, const RealPoly& q,
                              const Tolerances& tol = {});

ProjPoint point_at(const RationalPlaneCurve& c, const Parameter& t);
/// Affine point for real t (or ∞).
Eigen::Vector2d affine_point(const RationalPlaneCurve& c, const Parameter& t);

/// Velocity (x'(t), y'(t)); at ∞ the derivative in the chart s = -1/t, which
/// has the same direction as increasing t.
Eigen::Vector2d velocity(const RationalPlaneCurve& c, const Parameter& t);
/// Second derivative in the same chart convention.
Eigen::Vector2d acceleration(const RationalPlaneCurve& c, const Parameter& t);

/// x'-numerator p1' q - p1 q' and its y counterpart; x' = xnum / q^2.
struct VelocityNumerators {
  RealPoly x, y;
};
VelocityNumerators velocity_numerators(const ParamTriple& chart);

/// Uniform angle in [0, 2π) from the top 53 bits of one draw, identical on every platform.
double random_angle(std::mt19937_64& gen);

/// (x, y) -> A (x, y) + b.
RationalPlaneCurve transform_affine(const RationalPlaneCurve& c, const Eigen::Matrix2d& a,
                                    const Eigen::Vector2d& b);
RationalPlaneCurve rotate(const RationalPlaneCurve& c, double phi);
/// y -> -y
RationalPlaneCurve reflect_y(const RationalPlaneCurve& c);
/// t -> -t; swaps the parameter half-planes.
RationalPlaneCurve reverse_parameter(const RationalPlaneCurve& c);

}  // namespace rcw
