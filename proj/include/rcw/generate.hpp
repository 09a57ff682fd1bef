#pragma once

// Random closed trigonometric loops
//   x(u) = sum_{k<=K} ax_k cos ku + bx_k sin ku,  y(u) likewise,
// rewritten in t = tan(u/2) over the denominator (1 + t^2)^K.

#include <cstdint>
#include <string>
#include <vector>

#include "rcw/audit.hpp"
#include "rcw/curve.hpp"

namespace rcw {

struct TrigLoop {
  // index k = 0..K; the k = 0 sine entries are ignored
  Eigen::VectorXd ax, bx, ay, by;
  int harmonics() const { return int(ax.size()) - 1; }
};

/// (p1, p2, q) with q = (1 + t^2)^K, before any gcd clearing.
ParamTriple trig_to_rational(const TrigLoop& loop);

struct GeneratedCurve {
  RationalPlaneCurve curve;
  TrigLoop loop;
  AuditReport audit;
  int redraws = 0;                     // rejected draws before this one
  std::vector<std::string> rejections; // one reason per rejected draw
};

/// Draws loops with coefficients uniform in [-1, 1] until one passes
/// validation and the audit (at most 64 redraws).
GeneratedCurve generate_curve(std::uint64_t seed, int harmonics);

}  // namespace rcw
