#pragma once

// End-to-end check of one curve: validation, audit, the three rotation-number
// computations, the pole balance at infinity and the sweep ledger.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcw/audit.hpp"
#include "rcw/infinity.hpp"
#include "rcw/spec.hpp"
#include "rcw/sweep.hpp"
#include "rcw/whitney.hpp"

namespace rcw {

enum class TheoremVerdict { Verified, Failed, NotApplicable };

std::string_view to_string(TheoremVerdict v);

/// Outcome class, one per CLI exit code.
enum class Outcome {
  Verified = 0,
  HypothesesViolated = 2,
  DegenerateAtInfinity = 3,
  NumericalFailure = 4,
};

struct StageTimings {
  double audit_ms = 0, whitney_ms = 0, infinity_ms = 0, sweep_ms = 0, total_ms = 0;
};

struct VerificationReport {
  std::string name;
  int degree = 0;
  std::vector<double> p1, p2, q;  // normalized coefficients, ascending
  std::uint64_t seed = 0;

  std::optional<AuditReport> audit;

  std::optional<WindingResult> gauss;
  std::optional<int> w_regular;

  std::optional<double> sweep_angle;
  std::vector<TangencyEvent> events;
  std::optional<SweepCensus> census;
  std::optional<int> w_sweep;
  std::optional<JumpLedger> ledger;

  std::vector<PoleRecord> poles;
  std::optional<int> rhs;

  bool hypotheses_ok = false;
  bool methods_agree = false;
  TheoremVerdict main_theorem = TheoremVerdict::NotApplicable;
  Outcome outcome = Outcome::NumericalFailure;
  std::vector<std::string> violations;  // failed hypotheses
  std::vector<std::string> errors;      // stage failures, "stage: message"
  std::vector<std::string> warnings;

  StageTimings timings;

  std::optional<int> w_gauss() const { return gauss ? std::optional<int>(gauss->w) : std::nullopt; }
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  Tolerances tol{};
};

VerificationReport verify_all(const RationalPlaneCurve& c, const VerifyOptions& opts = {}, std::string name = {});

/// Validation failures of the parsed curve become hypothesis violations.
VerificationReport verify_all(const CurveSpec& spec, const VerifyOptions& opts = {});

/// Stable JSON layout; timings are included only on request so that repeated
/// runs produce identical bytes.
nlohmann::ordered_json to_json(const VerificationReport& r, bool include_timings = false);
nlohmann::ordered_json to_json(const AuditReport& a);
nlohmann::ordered_json to_json(const PoleRecord& p);
nlohmann::ordered_json to_json(const TangencyEvent& e);
nlohmann::ordered_json to_json(const SweepCensus& s);
nlohmann::ordered_json to_json(const JumpLedger& l);

}  // namespace rcw
