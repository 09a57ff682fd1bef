#include <algorithm>
#include <numbers>

#include <gtest/gtest.h>

#include "rcw/audit.hpp"
#include "rcw/generate.hpp"
#include "rcw/infinity.hpp"
#include "rcw/sweep.hpp"
#include "rcw/whitney.hpp"
#include "support.hpp"

namespace rcw {
namespace {

int count(const std::vector<TangencyEvent>& ev, Extremum k, Alignment a) {
  int n = 0;
  for (const auto& e : ev) n += e.kind == k && e.align == a;
  return n;
}

// Intersections of CA+ with x = c counted by direct root finding on p1 - c q.
SideCounts oracle_counts(const RationalPlaneCurve& c, double phi, double at) {
  const auto r = rotate(c, phi);
  const testing::PlainCurve pc(r);
  const RealPoly section = r.p1() - at * r.q();
  SideCounts out;
  for (const auto& root : roots(section)) {
    if (root.z.imag() <= 0.0) continue;
    const Complex y = pc.at(root.z).second;
    (y.imag() > 0 ? out.plus : out.minus) += root.multiplicity;
  }
  return out;
}

TEST(ChooseDirection, CircleRejectsTheUnrotatedFrame) {
  const auto c = testing::circle();
  const double phi = choose_direction(c, 1);
  EXPECT_NE(phi, 0.0);
  EXPECT_EQ(detect_events(c, phi).size(), 2u);
  EXPECT_THROW(detect_events(c, 0.0), Error);
}

TEST(ChooseDirection, BernoulliAcceptsTheUnrotatedFrame) {
  const auto c = testing::bernoulli();
  EXPECT_EQ(choose_direction(c, 1, audit(c)), 0.0);
}

TEST(ChooseDirection, EqualTangencyAbscissaeAreRejected) {
  // a quarter turn of the lemniscate has its vertical tangencies in pairs at
  // equal x, each pair at two distinct points
  const auto c = rotate(testing::bernoulli(), std::numbers::pi / 2);
  const auto vt = vertical_tangents(c);
  ASSERT_TRUE(vt.has_value());
  ASSERT_EQ(vt->size(), 4u);
  std::vector<double> xs;
  for (const auto& v : *vt) xs.push_back(affine_point(c, Parameter::finite(v.t))[0]);
  std::sort(xs.begin(), xs.end());
  EXPECT_NEAR(xs[0], xs[1], 1e-12);
  EXPECT_NEAR(xs[2], xs[3], 1e-12);
  EXPECT_NE(choose_direction(c, 7, audit(c)), 0.0);
}

TEST(DetectEvents, BernoulliEvents) {
  const auto ev = detect_events(testing::bernoulli(), 0.0);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0].t, -1.0, 1e-12);
  EXPECT_NEAR(ev[0].c, -1.0, 1e-12);
  EXPECT_EQ(ev[0].kind, Extremum::Min);
  EXPECT_EQ(ev[0].align, Alignment::Minus);
  EXPECT_NEAR(ev[1].t, 1.0, 1e-12);
  EXPECT_NEAR(ev[1].c, 1.0, 1e-12);
  EXPECT_EQ(ev[1].kind, Extremum::Max);
  EXPECT_EQ(ev[1].align, Alignment::Minus);
}

TEST(DetectEvents, EventClassesMatchFiniteDifferences) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto g = generate_curve(seed, 1 + int(seed % 4));
    const double phi = choose_direction(g.curve, seed, g.audit);
    const auto r = rotate(g.curve, phi);
    const testing::PlainCurve pc(r);
    for (const auto& e : detect_events(g.curve, phi)) {
      const double h = 1e-4 * (1.0 + std::abs(e.t));
      const auto [xm, ym] = pc.at(e.t - h);
      const auto [x0, y0] = pc.at(e.t);
      const auto [xp, yp] = pc.at(e.t + h);
      EXPECT_NEAR(x0, e.c, 1e-9 * (1.0 + std::abs(e.c)));
      const double x2 = (xp - 2 * x0 + xm) / (h * h);
      const double y1 = (yp - ym) / (2 * h);
      EXPECT_EQ(e.kind, x2 > 0 ? Extremum::Min : Extremum::Max) << seed;
      EXPECT_EQ(e.align, y1 > 0 ? Alignment::Plus : Alignment::Minus) << seed;
    }
  }
}

TEST(Census, NamedCurves) {
  const auto circle = testing::circle();
  const auto ec = detect_events(circle, choose_direction(circle, 1));
  EXPECT_EQ(count(ec, Extremum::Max, Alignment::Plus), 1);
  EXPECT_EQ(count(ec, Extremum::Min, Alignment::Minus), 1);
  const SweepCensus sc = census(ec);
  EXPECT_EQ(sc.w_plus, 1);
  EXPECT_EQ(sc.w_minus, 1);

  const SweepCensus sb = census(detect_events(testing::bernoulli(), 0.0));
  EXPECT_EQ(sb.w_plus, 0);
  EXPECT_EQ(sb.w_minus, 0);

  const auto dbl = testing::double_circle();
  const auto ed = detect_events(dbl, choose_direction(dbl, 1));
  ASSERT_EQ(ed.size(), 4u);
  EXPECT_EQ(count(ed, Extremum::Max, Alignment::Plus), 2);
  EXPECT_EQ(count(ed, Extremum::Min, Alignment::Minus), 2);
  EXPECT_EQ(census(ed).w_plus, 2);
}

TEST(Census, MismatchIsReported) {
  std::vector<TangencyEvent> ev{{0.0, 0.0, 0.0, Extremum::Max, Alignment::Plus}};
  EXPECT_THROW(census(ev), Error);
}

TEST(JumpLedger, CircleGapsAndJumps) {
  const auto c = testing::circle();
  const double phi = choose_direction(c, 1);
  const auto ev = detect_events(c, phi);
  const JumpLedger l = jump_ledger(c, phi, ev, 1, 1);
  EXPECT_EQ(l.gap_values(), (std::vector<int>{-1, 0, 1}));
  ASSERT_EQ(l.jumps.size(), 2u);
  EXPECT_EQ(l.jumps[0].delta(), 1);
  EXPECT_EQ(l.jumps[1].delta(), 1);
  EXPECT_EQ(l.net, 2);
}

TEST(JumpLedger, BernoulliGapsAndJumps) {
  const auto c = testing::bernoulli();
  const auto ev = detect_events(c, 0.0);
  const JumpLedger l = jump_ledger(c, 0.0, ev, 0, 0);
  EXPECT_EQ(l.gap_values(), (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(l.jumps[0].delta(), 1);
  EXPECT_EQ(l.jumps[1].delta(), -1);
  EXPECT_EQ(l.net, 0);
}

TEST(JumpLedger, DoubleCircleEndpoints) {
  const auto c = testing::double_circle();
  const double phi = choose_direction(c, 1);
  const JumpLedger l = jump_ledger(c, phi, detect_events(c, phi), 2, 2);
  EXPECT_EQ(l.gap_values().front(), -2);
  EXPECT_EQ(l.gap_values().back(), 2);
  EXPECT_EQ(l.net, 4);
}

TEST(JumpLedger, WrongEndpointsAreViolations) {
  const auto c = testing::circle();
  const double phi = choose_direction(c, 1);
  try {
    jump_ledger(c, phi, detect_events(c, phi), -1, std::nullopt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::LedgerViolation);
  }
}

TEST(SweepProperties, GapCountsMatchDirectRootCount) {
  for (std::uint64_t seed = 30; seed < 36; ++seed) {
    const auto g = generate_curve(seed, 1 + int(seed % 4));
    const double phi = choose_direction(g.curve, seed, g.audit);
    const auto ev = detect_events(g.curve, phi);
    const JumpLedger l = jump_ledger(g.curve, phi, ev);
    // midpoints of the interior gaps
    std::vector<double> cs;
    for (const auto& e : ev)
      if (cs.empty() || e.c - cs.back() > 1e-9) cs.push_back(e.c);
    ASSERT_EQ(l.gaps.size(), cs.size() + 1);
    for (std::size_t k = 1; k < cs.size(); ++k) {
      const SideCounts o = oracle_counts(g.curve, phi, 0.5 * (cs[k - 1] + cs[k]));
      EXPECT_EQ(o.plus, l.gaps[k].plus) << seed << " gap " << k;
      EXPECT_EQ(o.minus, l.gaps[k].minus) << seed << " gap " << k;
    }
  }
}

TEST(SweepProperties, OneSidedJumpsAndIdentities) {
  for (std::uint64_t seed = 50; seed < 62; ++seed) {
    const auto g = generate_curve(seed, 1 + int(seed % 4));
    const double phi = choose_direction(g.curve, seed, g.audit);
    const auto ev = detect_events(g.curve, phi);
    const SweepCensus s = census(ev);
    const int w = gauss_winding(g.curve).w;
    EXPECT_EQ(s.w_plus, w);
    EXPECT_EQ(s.w_minus, w);
    EXPECT_EQ(ev.size() % 2, 0u);
    const JumpLedger l = jump_ledger(g.curve, phi, ev, hemisphere_balance(g.curve), w);
    for (const auto& j : l.jumps) {
      if (j.events != 1) continue;
      EXPECT_EQ(std::abs(j.delta_plus) + std::abs(j.delta_minus), 1) << seed;
    }
    EXPECT_EQ(l.net, 2 * w);
  }
}

TEST(SweepProperties, LedgerIndependentOfDirection) {
  for (std::uint64_t seed = 70; seed < 74; ++seed) {
    const auto g = generate_curve(seed, 2 + int(seed % 3));
    const double a = choose_direction(g.curve, seed, g.audit);
    const double b = choose_direction(rotate(g.curve, 1.1), seed + 1, g.audit);
    const auto la = jump_ledger(g.curve, a, detect_events(g.curve, a));
    const auto rb = rotate(g.curve, 1.1);
    const auto lb = jump_ledger(rb, b, detect_events(rb, b));
    EXPECT_EQ(la.gap_values().front(), lb.gap_values().front());
    EXPECT_EQ(la.gap_values().back(), lb.gap_values().back());
    EXPECT_EQ(la.net, lb.net);
  }
}

}  // namespace
}  // namespace rcw
