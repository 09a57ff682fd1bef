#pragma once

// Sweep of the plane by the vertical lines x = c, oriented upward, with c
// increasing. Vertical tangencies of the real locus fall into four classes;
// between consecutive tangencies the signed number of imaginary intersections
// of CA+ with the two halves of the line stays constant.

#include <cstdint>
#include <optional>
#include <vector>

#include "rcw/audit.hpp"
#include "rcw/curve.hpp"

namespace rcw {

enum class Extremum { Min, Max };          // Min: x'' > 0
enum class Alignment { Plus, Minus };      // Plus: y' > 0

std::string_view to_string(Extremum e);
std::string_view to_string(Alignment a);

struct TangencyEvent {
  double t = 0.0;
  double c = 0.0;  // x-value in the rotated frame
  double y = 0.0;  // y-value in the rotated frame
  Extremum kind = Extremum::Min;
  Alignment align = Alignment::Plus;
};

struct SweepCensus {
  int min_plus = 0, min_minus = 0, max_plus = 0, max_minus = 0;
  int w_plus = 0;   // #(Max, Plus) - #(Min, Plus)
  int w_minus = 0;  // #(Min, Minus) - #(Max, Minus)
};

/// Rotation angle phi for which the sweep is generic: simple vertical
/// tangencies with y' != 0, none at t = ∞ or at a node parameter, and distinct
/// tangencies at distinct c unless they share an image point (improper covers).
/// phi = 0 is tried first, then seeded random angles.
double choose_direction(const RationalPlaneCurve& c, std::uint64_t seed, const AuditReport& audit = {});

/// Tangency events of the phi-rotated curve ordered by c.
std::vector<TangencyEvent> detect_events(const RationalPlaneCurve& c, double phi);

/// Throws ErrorKind::CensusMismatch when the two class formulas disagree.
SweepCensus census(const std::vector<TangencyEvent>& events);

/// Intersection counts of CA+ with one sweep line.
struct SideCounts {
  int plus = 0;   // Im y > 0
  int minus = 0;  // Im y < 0
  int d() const { return plus - minus; }
  friend bool operator==(const SideCounts&, const SideCounts&) = default;
};

struct LedgerJump {
  double c = 0.0;
  int events = 1;  // tangencies sharing this c
  int delta_plus = 0, delta_minus = 0;
  int delta() const { return delta_plus - delta_minus; }
};

struct JumpLedger {
  std::vector<SideCounts> gaps;  // before the first c, between consecutive c, after the last
  std::vector<LedgerJump> jumps;
  int net = 0;                   // D after the last event minus D before the first
  int samples = 0;
  std::vector<int> gap_values() const;
};

/// Counts at one sweep position of the phi-rotated curve. Throws
/// ErrorKind::DegenerateSample when an intersection lies too close to the
/// real plane to be classified.
SideCounts side_counts(const RationalPlaneCurve& rotated, double c);

/// Samples every gap three times and beyond both extreme events, then checks
/// gap constancy, the per-event jump rule and, when supplied, the end values
/// -rhs / +rhs and the net change 2w. Throws ErrorKind::LedgerViolation.
JumpLedger jump_ledger(const RationalPlaneCurve& c, double phi, const std::vector<TangencyEvent>& events,
                       std::optional<int> rhs = std::nullopt, std::optional<int> w = std::nullopt);

}  // namespace rcw
