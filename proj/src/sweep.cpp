#include "rcw/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "rcw/whitney.hpp"

namespace rcw {

std::string_view to_string(Extremum e) { return e == Extremum::Min ? "Min" : "Max"; }
std::string_view to_string(Alignment a) { return a == Alignment::Plus ? "Plus" : "Minus"; }

std::vector<int> JumpLedger::gap_values() const {
  std::vector<int> out;
  for (const auto& g : gaps) out.push_back(g.d());
  return out;
}

namespace {

std::optional<std::vector<TangencyEvent>> events_of(const RationalPlaneCurve& rotated) {
  const auto vt = vertical_tangents(rotated);
  if (!vt) return std::nullopt;
  std::vector<TangencyEvent> out;
  for (const auto& v : *vt) {
    const Eigen::Vector2d p = affine_point(rotated, Parameter::finite(v.t));
    out.push_back({v.t, p[0], p[1], v.sign_x2 > 0 ? Extremum::Min : Extremum::Max,
                   v.sign_y1 > 0 ? Alignment::Plus : Alignment::Minus});
  }
  std::sort(out.begin(), out.end(), [](const TangencyEvent& a, const TangencyEvent& b) {
    return a.c != b.c ? a.c < b.c : a.t < b.t;
  });
  return out;
}

double extent(const std::vector<TangencyEvent>& events) {
  double s = 1.0;
  for (const auto& e : events) s = std::max({s, std::abs(e.c), std::abs(e.y)});
  return s;
}

bool same_image(const TangencyEvent& a, const TangencyEvent& b, double scale) {
  return std::abs(a.c - b.c) <= 1e-9 * scale && std::abs(a.y - b.y) <= 1e-7 * scale;
}

// Events sharing a sweep position; consecutive in the sorted list.
std::vector<std::vector<TangencyEvent>> group_events(const std::vector<TangencyEvent>& events) {
  const double scale = extent(events);
  std::vector<std::vector<TangencyEvent>> out;
  for (const auto& e : events) {
    if (!out.empty() && same_image(out.back().front(), e, scale)) out.back().push_back(e);
    else out.push_back({e});
  }
  return out;
}

bool generic_events(const std::vector<TangencyEvent>& events, const AuditReport& audit) {
  const double scale = extent(events);
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    const auto& a = events[i];
    const auto& b = events[i + 1];
    if (std::abs(a.c - b.c) <= 1e-6 * scale && !same_image(a, b, scale)) return false;
  }
  for (const auto& node : audit.nodes) {
    if (node.kind != NodeKind::RealNode) continue;
    for (const auto& p : node.params) {
      if (p.at_infinity) continue;
      const double tn = p.t.real();
      for (const auto& e : events)
        if (std::abs(e.t - tn) <= 1e-6 * (1.0 + std::abs(tn))) return false;
    }
  }
  return true;
}

int jump_of(const TangencyEvent& e) { return e.kind == Extremum::Max ? 1 : -1; }

}  // namespace

double choose_direction(const RationalPlaneCurve& c, std::uint64_t seed, const AuditReport& audit) {
  auto acceptable = [&](double phi) {
    const auto ev = events_of(rotate(c, phi));
    return ev && generic_events(*ev, audit);
  };
  if (acceptable(0.0)) return 0.0;
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const double phi = random_angle(gen);
    if (acceptable(phi)) return phi;
  }
  throw Error(ErrorKind::GenericityNotFound, "genericity not found: no generic sweep direction in 32 attempts");
}

std::vector<TangencyEvent> detect_events(const RationalPlaneCurve& c, double phi) {
  auto ev = events_of(rotate(c, phi));
  if (!ev) throw Error(ErrorKind::GenericityNotFound, "sweep direction is not generic");
  return *ev;
}

SweepCensus census(const std::vector<TangencyEvent>& events) {
  SweepCensus s;
  for (const auto& e : events) {
    const bool plus = e.align == Alignment::Plus;
    if (e.kind == Extremum::Min) (plus ? s.min_plus : s.min_minus)++;
    else (plus ? s.max_plus : s.max_minus)++;
  }
  s.w_plus = s.max_plus - s.min_plus;
  s.w_minus = s.min_minus - s.max_minus;
  if (s.w_plus != s.w_minus) {
    std::ostringstream os;
    os << "census mismatch: w_plus = " << s.w_plus << ", w_minus = " << s.w_minus;
    throw Error(ErrorKind::CensusMismatch, os.str());
  }
  return s;
}

SideCounts side_counts(const RationalPlaneCurve& rotated, double c) {
  const RealPoly section = rotated.p1() - c * rotated.q();
  SideCounts out;
  if (section.degree() < 1) return out;
  for (const auto& r : roots(section)) {
    if (r.z.imag() <= 0.0) continue;
    const Complex y = rotated.p2()(r.z) / rotated.q()(r.z);
    if (r.multiplicity > 1 || std::abs(y.imag()) <= 1e-9 * (1.0 + std::abs(y))) {
      std::ostringstream os;
      os << "degenerate sample at c = " << c;
      throw Error(ErrorKind::DegenerateSample, os.str());
    }
    (y.imag() > 0.0 ? out.plus : out.minus) += 1;
  }
  return out;
}

JumpLedger jump_ledger(const RationalPlaneCurve& c, double phi, const std::vector<TangencyEvent>& events,
                       std::optional<int> rhs, std::optional<int> w) {
  if (events.empty()) throw Error(ErrorKind::InvalidArgument, "jump ledger needs at least one event");
  const RationalPlaneCurve rotated = rotate(c, phi);
  const auto groups = group_events(events);
  std::vector<double> cs;
  for (const auto& g : groups) cs.push_back(g.front().c);
  const double span = std::max(cs.back() - cs.front(), 1e-3 * extent(events));
  const double x_inf = rotated.p1()[rotated.degree()];

  JumpLedger ledger;
  auto sample = [&](double lo, double hi, double f) {
    const double width = hi - lo;
    double at = lo + f * width;
    if (std::abs(at - x_inf) < 1e-3 * width) at += 0.1 * width;
    ++ledger.samples;
    try {
      return side_counts(rotated, at);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateSample) throw;
      ++ledger.samples;
      return side_counts(rotated, at + 0.07 * width);
    }
  };
  auto gap = [&](double lo, double hi, const char* label, std::size_t index) {
    const SideCounts a = sample(lo, hi, 0.25), b = sample(lo, hi, 0.5), d = sample(lo, hi, 0.75);
    if (!(a == b && b == d)) {
      std::ostringstream os;
      os << "ledger violation: counts vary inside " << label << " gap " << index << " (" << lo << ", " << hi
         << "): D = " << a.d() << ", " << b.d() << ", " << d.d();
      throw Error(ErrorKind::LedgerViolation, os.str());
    }
    return b;
  };

  ledger.gaps.push_back(gap(cs.front() - 2.0 * span, cs.front(), "leading", 0));
  for (std::size_t k = 1; k < cs.size(); ++k) ledger.gaps.push_back(gap(cs[k - 1], cs[k], "interior", k));
  ledger.gaps.push_back(gap(cs.back(), cs.back() + 2.0 * span, "trailing", cs.size()));

  for (std::size_t k = 0; k < groups.size(); ++k) {
    LedgerJump j;
    j.c = cs[k];
    j.events = int(groups[k].size());
    j.delta_plus = ledger.gaps[k + 1].plus - ledger.gaps[k].plus;
    j.delta_minus = ledger.gaps[k + 1].minus - ledger.gaps[k].minus;
    int want_plus = 0, want_minus = 0;
    for (const auto& e : groups[k]) (e.align == Alignment::Plus ? want_plus : want_minus) += jump_of(e);
    if (j.delta_plus != want_plus || j.delta_minus != want_minus) {
      std::ostringstream os;
      os << "ledger violation at event c = " << j.c << " (" << to_string(groups[k].front().kind) << ", "
         << to_string(groups[k].front().align) << "): one-sided jumps (" << j.delta_plus << ", " << j.delta_minus
         << "), expected (" << want_plus << ", " << want_minus << ")";
      throw Error(ErrorKind::LedgerViolation, os.str());
    }
    ledger.jumps.push_back(j);
  }

  const int first = ledger.gaps.front().d(), last = ledger.gaps.back().d();
  ledger.net = last - first;
  if (rhs && (first != -*rhs || last != *rhs)) {
    std::ostringstream os;
    os << "ledger violation: end values " << first << ", " << last << " differ from " << -*rhs << ", " << *rhs;
    throw Error(ErrorKind::LedgerViolation, os.str());
  }
  if (w && ledger.net != 2 * *w) {
    std::ostringstream os;
    os << "ledger violation: net change " << ledger.net << " differs from 2w = " << 2 * *w;
    throw Error(ErrorKind::LedgerViolation, os.str());
  }
  return ledger;
}

}  // namespace rcw
