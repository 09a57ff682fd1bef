#pragma once

// Intersections of the upper half CA+ with the two hemispheres of the line at
// infinity, read off from the poles of the parametrization. The hemisphere
// CP1+ is {(0 : a : b) : Im(b / a) > 0} in the slope coordinate b / a.

#include <vector>

#include "rcw/curve.hpp"

namespace rcw {

enum class Side { Plus, Minus, RealDegenerate };

std::string_view to_string(Side side);

struct PoleRecord {
  Complex t0;
  int mult = 1;
  ProjPoint infinity_point;  // (0 : p1(t0) : p2(t0)), normalized
  Side side = Side::RealDegenerate;
};

struct Pole {
  Complex t0;
  int mult = 1;
};

/// Roots of q in the upper half-plane; their multiplicities add up to n / 2.
std::vector<Pole> upper_poles(const RationalPlaneCurve& c, const Tolerances& tol = {});

/// Side of the asymptotic point of the branch through the pole t0. The sign of
/// Im(b conj(a)) relative to |a|^2 + |b|^2 decides; within side_tol the point
/// counts as real.
PoleRecord classify_at_infinity(const RationalPlaneCurve& c, Complex t0, int mult = 1,
                                double side_tol = 1e-8);

/// Classified upper poles, in the order of upper_poles.
std::vector<PoleRecord> pole_table(const RationalPlaneCurve& c, const Tolerances& tol = {});
/// Every pole of the parametrization, both half-planes.
std::vector<PoleRecord> all_poles(const RationalPlaneCurve& c, const Tolerances& tol = {});

/// Sum over the table of mult * (+1 for Plus, -1 for Minus). Throws
/// ErrorKind::RealPointAtInfinity when a pole is RealDegenerate.
int hemisphere_balance(const std::vector<PoleRecord>& table);
int hemisphere_balance(const RationalPlaneCurve& c, const Tolerances& tol = {});

}  // namespace rcw
