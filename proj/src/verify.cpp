#include "rcw/verify.hpp"

#include <chrono>

namespace rcw {

std::string_view to_string(TheoremVerdict v) {
  switch (v) {
    case TheoremVerdict::Verified: return "verified";
    case TheoremVerdict::Failed: return "failed";
    case TheoremVerdict::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<double> coeff_vector(const RealPoly& p) {
  return std::vector<double>(p.coeffs().data(), p.coeffs().data() + p.coeffs().size());
}

bool is_hypothesis_error(ErrorKind k) {
  return k == ErrorKind::NoncompactRealPole || k == ErrorKind::NoncompactAtInfinity ||
         k == ErrorKind::CuspOnRealLocus;
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::HypothesesViolated: return "hypotheses-violated";
    case Outcome::DegenerateAtInfinity: return "degenerate-at-infinity";
    case Outcome::NumericalFailure: return "numerical-failure";
  }
  return "unknown";
}

nlohmann::ordered_json complex_json(Complex z) {
  nlohmann::ordered_json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

nlohmann::ordered_json param_json(const Parameter& p) {
  if (p.at_infinity) return "inf";
  return complex_json(p.t);
}

nlohmann::ordered_json point_json(const ProjPoint& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < 3; ++i) j.push_back(complex_json(p[i]));
  return j;
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

VerificationReport verify_all(const RationalPlaneCurve& c, const VerifyOptions& opts, std::string name) {
  const auto start = Clock::now();
  VerificationReport r;
  r.name = std::move(name);
  r.degree = c.degree();
  r.p1 = coeff_vector(c.p1());
  r.p2 = coeff_vector(c.p2());
  r.q = coeff_vector(c.q());
  r.seed = opts.seed;

  bool numeric_failure = false, audit_rejected = false, degenerate = false;
  auto fail = [&](const char* stage, const Error& e) {
    r.errors.push_back(std::string(stage) + ": " + e.what());
    numeric_failure = true;
  };

  auto t0 = Clock::now();
  try {
    r.audit = audit(c, opts.tol);
    r.warnings.insert(r.warnings.end(), r.audit->warnings.begin(), r.audit->warnings.end());
    if (!r.audit->admissible) {
      audit_rejected = true;
      r.violations.insert(r.violations.end(), r.audit->reasons.begin(), r.audit->reasons.end());
    }
  } catch (const Error& e) {
    fail("audit", e);
  }
  r.timings.audit_ms = elapsed_ms(t0);

  t0 = Clock::now();
  try {
    r.poles = pole_table(c, opts.tol);
    r.rhs = hemisphere_balance(r.poles);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::RealPointAtInfinity) {
      degenerate = true;
      r.violations.push_back(std::string(e.what()) +
                             "; real points at infinity stay real under every real projective change of "
                             "coordinates, only a perturbation of the curve removes them");
    } else {
      fail("infinity", e);
    }
  }
  r.timings.infinity_ms = elapsed_ms(t0);

  t0 = Clock::now();
  try {
    r.gauss = gauss_winding(c);
  } catch (const Error& e) {
    fail("gauss_winding", e);
  }
  try {
    r.w_regular = regular_value_degree(c, opts.seed);
  } catch (const Error& e) {
    fail("regular_value_degree", e);
  }
  r.timings.whitney_ms = elapsed_ms(t0);

  t0 = Clock::now();
  if (r.audit && r.audit->admissible) {
    try {
      r.sweep_angle = choose_direction(c, opts.seed, *r.audit);
      r.events = detect_events(c, *r.sweep_angle);
      r.census = census(r.events);
      r.w_sweep = r.census->w_plus;
      r.ledger = jump_ledger(c, *r.sweep_angle, r.events, r.rhs, r.w_gauss());
    } catch (const Error& e) {
      fail("sweep", e);
    }
  }
  r.timings.sweep_ms = elapsed_ms(t0);

  r.hypotheses_ok = r.audit.has_value() && !audit_rejected && !degenerate && r.rhs.has_value();
  r.methods_agree = r.gauss && r.w_regular && r.w_sweep && r.ledger && r.gauss->w == *r.w_regular &&
                    r.gauss->w == *r.w_sweep;
  if (!r.hypotheses_ok) {
    r.main_theorem = TheoremVerdict::NotApplicable;
  } else {
    r.main_theorem = r.methods_agree && *r.rhs == r.gauss->w ? TheoremVerdict::Verified : TheoremVerdict::Failed;
  }

  if (audit_rejected) r.outcome = Outcome::HypothesesViolated;
  else if (degenerate) r.outcome = Outcome::DegenerateAtInfinity;
  else if (r.main_theorem == TheoremVerdict::Verified && !numeric_failure) r.outcome = Outcome::Verified;
  else r.outcome = Outcome::NumericalFailure;

  r.timings.total_ms = elapsed_ms(start);
  return r;
}

VerificationReport verify_all(const CurveSpec& spec, const VerifyOptions& opts) {
  VerifyOptions o = opts;
  o.tol = spec.tolerances();
  try {
    return verify_all(to_curve(spec), o, spec.name);
  } catch (const Error& e) {
    VerificationReport r;
    r.name = spec.name;
    r.seed = opts.seed;
    r.p1 = to_double(spec.p1);
    r.p2 = to_double(spec.p2);
    r.q = to_double(spec.q);
    r.degree = int(spec.q.size()) - 1;
    if (is_hypothesis_error(e.kind())) {
      r.violations.push_back(e.what());
      r.outcome = Outcome::HypothesesViolated;
    } else {
      r.errors.push_back(std::string("make_curve: ") + e.what());
      r.outcome = Outcome::NumericalFailure;
    }
    return r;
  }
}

nlohmann::ordered_json to_json(const AuditReport& a) {
  nlohmann::ordered_json j;
  j["admissible"] = a.admissible;
  j["proper"] = a.proper;
  j["cover_degree"] = a.cover_degree;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : a.nodes) {
    nlohmann::ordered_json nj;
    nj["kind"] = to_string(n.kind);
    nj["params"] = {param_json(n.params[0]), param_json(n.params[1])};
    nj["image"] = point_json(n.image);
    nj["transversal"] = n.transversal;
    j["nodes"].push_back(nj);
  }
  j["cusp_params"] = a.cusp_params;
  j["multiple_points"] = nlohmann::ordered_json::array();
  for (const auto& m : a.multiple_points) {
    nlohmann::ordered_json mj;
    mj["params"] = nlohmann::ordered_json::array();
    for (const auto& p : m.params) mj["params"].push_back(param_json(p));
    mj["image"] = point_json(m.image);
    j["multiple_points"].push_back(mj);
  }
  j["reasons"] = a.reasons;
  j["warnings"] = a.warnings;
  return j;
}

nlohmann::ordered_json to_json(const PoleRecord& p) {
  nlohmann::ordered_json j;
  j["t0"] = complex_json(p.t0);
  j["mult"] = p.mult;
  j["infinity_point"] = point_json(p.infinity_point);
  j["side"] = to_string(p.side);
  return j;
}

nlohmann::ordered_json to_json(const TangencyEvent& e) {
  nlohmann::ordered_json j;
  j["t"] = e.t;
  j["c"] = e.c;
  j["kind"] = to_string(e.kind);
  j["align"] = to_string(e.align);
  return j;
}

nlohmann::ordered_json to_json(const SweepCensus& s) {
  nlohmann::ordered_json j;
  j["min_plus"] = s.min_plus;
  j["min_minus"] = s.min_minus;
  j["max_plus"] = s.max_plus;
  j["max_minus"] = s.max_minus;
  j["w_plus"] = s.w_plus;
  j["w_minus"] = s.w_minus;
  return j;
}

nlohmann::ordered_json to_json(const JumpLedger& l) {
  nlohmann::ordered_json j;
  j["gaps"] = l.gap_values();
  j["gap_counts"] = nlohmann::ordered_json::array();
  for (const auto& g : l.gaps) j["gap_counts"].push_back({{"plus", g.plus}, {"minus", g.minus}});
  j["jumps"] = nlohmann::ordered_json::array();
  for (const auto& jump : l.jumps) {
    nlohmann::ordered_json jj;
    jj["c"] = jump.c;
    jj["events"] = jump.events;
    jj["delta_plus"] = jump.delta_plus;
    jj["delta_minus"] = jump.delta_minus;
    jj["delta"] = jump.delta();
    j["jumps"].push_back(jj);
  }
  j["net"] = l.net;
  j["samples"] = l.samples;
  return j;
}

nlohmann::ordered_json to_json(const VerificationReport& r, bool include_timings) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["degree"] = r.degree;
  j["seed"] = r.seed;
  j["curve"] = {{"p1", r.p1}, {"p2", r.p2}, {"q", r.q}};
  j["audit"] = r.audit ? to_json(*r.audit) : nlohmann::ordered_json(nullptr);
  j["w_gauss"] = optional_json(r.w_gauss());
  j["raw_turn"] = r.gauss ? nlohmann::ordered_json(r.gauss->raw_turn) : nlohmann::ordered_json(nullptr);
  j["w_regular"] = optional_json(r.w_regular);
  j["w_sweep"] = optional_json(r.w_sweep);
  j["rhs"] = optional_json(r.rhs);
  j["poles"] = nlohmann::ordered_json::array();
  for (const auto& p : r.poles) j["poles"].push_back(to_json(p));
  nlohmann::ordered_json sweep;
  sweep["angle"] = optional_json(r.sweep_angle);
  sweep["events"] = nlohmann::ordered_json::array();
  for (const auto& e : r.events) sweep["events"].push_back(to_json(e));
  sweep["census"] = r.census ? to_json(*r.census) : nlohmann::ordered_json(nullptr);
  sweep["ledger"] = r.ledger ? to_json(*r.ledger) : nlohmann::ordered_json(nullptr);
  j["sweep"] = sweep;
  nlohmann::ordered_json verdicts;
  verdicts["hypotheses_ok"] = r.hypotheses_ok;
  verdicts["methods_agree"] = r.methods_agree;
  if (r.main_theorem == TheoremVerdict::NotApplicable) verdicts["main_theorem_verified"] = "not-applicable";
  else verdicts["main_theorem_verified"] = r.main_theorem == TheoremVerdict::Verified;
  j["verdicts"] = verdicts;
  j["outcome"] = outcome_name(r.outcome);
  j["exit_code"] = int(r.outcome);
  j["violations"] = r.violations;
  j["errors"] = r.errors;
  j["warnings"] = r.warnings;
  if (include_timings) {
    j["timings_ms"] = {{"audit", r.timings.audit_ms},
                       {"whitney", r.timings.whitney_ms},
                       {"infinity", r.timings.infinity_ms},
                       {"sweep", r.timings.sweep_ms},
                       {"total", r.timings.total_ms}};
  }
  return j;
}

}  // namespace rcw
