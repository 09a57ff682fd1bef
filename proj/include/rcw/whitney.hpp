#pragma once

// Whitney (rotation) number of the real locus, oriented by increasing t.

#include <cstdint>

#include "rcw/curve.hpp"

namespace rcw {

struct WindingResult {
  int w = 0;
  double raw_turn = 0.0;  // total turning of the velocity / 2π
  int samples_used = 0;
};

/// Accumulates the velocity angle over t = tan(u/2), u ∈ [0, 2π), bisecting
/// every step whose angle increment reaches π/2.
WindingResult gauss_winding(const RationalPlaneCurve& c, int initial_samples = 512);

/// Degree of the Gauss map counted over the direction (−1, 0) after a seeded
/// generic rotation; both counting rules are evaluated and must agree.
int regular_value_degree(const RationalPlaneCurve& c, std::uint64_t seed);

/// Real parameters where the x-velocity vanishes, with their x'' and y' signs.
struct VerticalTangent {
  double t = 0.0;
  int sign_x2 = 0;  // sign of x''
  int sign_y1 = 0;  // sign of y'
};

/// Vertical tangencies of the curve as given (no rotation). Returns nothing
/// when the configuration is not generic: a multiple real or a near-real
/// complex root of the x'-numerator, y' = 0 at a root, or a vertical tangent at t = ∞.
std::optional<std::vector<VerticalTangent>> vertical_tangents(const RationalPlaneCurve& c);

}  // namespace rcw
