#include <regex>

#include <gtest/gtest.h>

#include "rcw/batch.hpp"
#include "rcw/generate.hpp"
#include "rcw/render.hpp"
#include "rcw/spec.hpp"
#include "rcw/verify.hpp"
#include "support.hpp"

namespace rcw {
namespace {

ExactPoly exact(std::initializer_list<int> c) {
  ExactPoly p;
  for (int v : c) p.push_back(Rational(v));
  return p;
}

int occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

TEST(ParseCurveSpec, CircleExpression) {
  const CurveSpec s = parse_curve_spec("x = (1 - t^2)/(1 + t^2); y = 2*t/(1 + t^2)");
  EXPECT_EQ(s.p1, exact({1, 0, -1}));
  EXPECT_EQ(s.p2, exact({0, 2}));
  EXPECT_EQ(s.q, exact({1, 0, 1}));
}

TEST(ParseCurveSpec, CommonDenominatorAndComments) {
  const CurveSpec s = parse_curve_spec(
      "# lemniscate\n"
      "name = \"lemniscate\"\n"
      "x = (t + t^3) / (1 + t^4)\n"
      "y = t/(1 + t^4) - t^3/(1 + t^4)\n");
  EXPECT_EQ(s.name, "lemniscate");
  EXPECT_EQ(s.p1, exact({0, 1, 0, 1}));
  EXPECT_EQ(s.p2, exact({0, 1, 0, -1}));
  EXPECT_EQ(s.q, exact({1, 0, 0, 0, 1}));
}

TEST(ParseCurveSpec, CoefficientBlock) {
  const CurveSpec s = parse_curve_spec(
      "```coeffs\n"
      "p1: 1, 0, -6, 0, 1\n"
      "p2: 0 4 0 -4\n"
      "q: 1, 0, 2, 0, 1\n"
      "```\n");
  EXPECT_EQ(s.p1, exact({1, 0, -6, 0, 1}));
  EXPECT_EQ(s.q, exact({1, 0, 2, 0, 1}));
}

TEST(ParseCurveSpec, ToleranceOverrides) {
  const CurveSpec s = parse_curve_spec("x = t/(1+t^2); y = 1/(1+t^2); tol_cluster = 1e-6");
  EXPECT_EQ(s.tolerances().cluster, 1e-6);
  EXPECT_EQ(s.tolerances().residual, Tolerances{}.residual);
}

TEST(ParseCurveSpec, DoubleCaretIsASyntaxError) {
  try {
    parse_curve_spec("x = t^^2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 7);
  }
}

TEST(ParseCurveSpec, ErrorsCarryLocations) {
  try {
    parse_curve_spec("x = t/(1+t^2)\ny = (t + ) / 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 10);
  }
  EXPECT_THROW(parse_curve_spec("x = t^t"), ParseError);
  EXPECT_THROW(parse_curve_spec("y = t/(1+t^2)"), ParseError);
}

TEST(ParseCurveSpec, RealPoleParsesButFailsValidation) {
  const CurveSpec s = parse_curve_spec("x = 1/(t - 1); y = t");
  try {
    to_curve(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoncompactRealPole);
    EXPECT_NE(std::string(e.what()).find("noncompact: real pole"), std::string::npos);
  }
}

TEST(ParseCurveSpec, PrintParseRoundTrip) {
  const std::vector<std::string> texts{
      "x = (1 - t^2)/(1 + t^2); y = 2*t/(1 + t^2)",
      "x = (1 - t^4 + 1/10*t^2)/(1 + t^2)^2; y = (2*t - 2*t^3)/(1 + t^2)^2",
      "x = 3/7 + t/(t^2 + 2); y = -t^2/(t^2 + 2) + 1e-3",
  };
  for (const auto& text : texts) {
    const CurveSpec a = parse_curve_spec(text);
    const CurveSpec b = parse_curve_spec(print_curve_spec(a));
    EXPECT_EQ(a.p1, b.p1) << text;
    EXPECT_EQ(a.p2, b.p2) << text;
    EXPECT_EQ(a.q, b.q) << text;
  }
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const CurveSpec a = spec_from_curve(generate_curve(seed, 1 + int(seed % 4)).curve);
    const CurveSpec b = parse_curve_spec(print_curve_spec(a));
    EXPECT_EQ(a.p1, b.p1);
    EXPECT_EQ(a.p2, b.p2);
    EXPECT_EQ(a.q, b.q);
  }
}

TEST(Generate, FirstHarmonicIsTheCircle) {
  TrigLoop loop;
  loop.ax = Eigen::Vector2d(0, 1);
  loop.bx = Eigen::Vector2d(0, 0);
  loop.ay = Eigen::Vector2d(0, 0);
  loop.by = Eigen::Vector2d(0, 1);
  const ParamTriple p = trig_to_rational(loop);
  EXPECT_EQ(p.p1, RealPoly({1, 0, -1}));
  EXPECT_EQ(p.p2, RealPoly({0, 2}));
  EXPECT_EQ(p.q, RealPoly({1, 0, 1}));
}

TEST(Generate, DenominatorIsAPowerOfOnePlusTSquared) {
  for (int k = 1; k <= 4; ++k) {
    TrigLoop loop;
    loop.ax = loop.bx = loop.ay = loop.by = Eigen::VectorXd::Constant(k + 1, 0.5);
    RealPoly want = RealPoly::constant(1);
    for (int j = 0; j < k; ++j) want *= RealPoly({1, 0, 1});
    EXPECT_EQ(trig_to_rational(loop).q, want);
  }
}

TEST(Generate, ConversionMatchesTrigonometricEvaluation) {
  const auto g = generate_curve(17, 3);
  const ParamTriple p = trig_to_rational(g.loop);
  for (double u : {-2.5, -0.4, 0.3, 1.7, 3.0}) {
    double x = 0, y = 0;
    for (int k = 0; k <= 3; ++k) {
      x += g.loop.ax[k] * std::cos(k * u) + (k ? g.loop.bx[k] * std::sin(k * u) : 0.0);
      y += g.loop.ay[k] * std::cos(k * u) + (k ? g.loop.by[k] * std::sin(k * u) : 0.0);
    }
    const double t = std::tan(0.5 * u);
    EXPECT_NEAR(p.p1(t) / p.q(t), x, 1e-12);
    EXPECT_NEAR(p.p2(t) / p.q(t), y, 1e-12);
  }
}

TEST(Generate, OneHarmonicGivesAnEllipse) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto g = generate_curve(seed, 1);
    EXPECT_EQ(g.curve.degree(), 2);
    EXPECT_TRUE(g.audit.admissible);
    const int w = gauss_winding(g.curve).w;
    EXPECT_TRUE(w == 1 || w == -1);
  }
}

TEST(Generate, IsDeterministic) {
  const auto a = generate_curve(99, 4), b = generate_curve(99, 4);
  EXPECT_EQ(a.curve.p1(), b.curve.p1());
  EXPECT_EQ(a.curve.p2(), b.curve.p2());
  EXPECT_EQ(a.redraws, b.redraws);
}

TEST(VerifyAll, CircleIsVerified) {
  const auto r = verify_all(testing::circle());
  EXPECT_EQ(r.outcome, Outcome::Verified);
  EXPECT_EQ(r.main_theorem, TheoremVerdict::Verified);
  EXPECT_EQ(r.w_gauss(), 1);
  EXPECT_EQ(r.w_regular, 1);
  EXPECT_EQ(r.w_sweep, 1);
  EXPECT_EQ(r.rhs, 1);
  const auto j = to_json(r);
  EXPECT_EQ(j["verdicts"]["main_theorem_verified"], true);
  EXPECT_TRUE(j["w_gauss"].is_number_integer());
  EXPECT_TRUE(j["rhs"].is_number_integer());
  EXPECT_FALSE(j.contains("timings_ms"));
  EXPECT_TRUE(to_json(r, true).contains("timings_ms"));
}

TEST(VerifyAll, PerturbedGeronoViolatesHypotheses) {
  const auto r = verify_all(testing::gerono(0.1));
  EXPECT_EQ(r.outcome, Outcome::HypothesesViolated);
  EXPECT_FALSE(r.hypotheses_ok);
  EXPECT_EQ(r.main_theorem, TheoremVerdict::NotApplicable);
  ASSERT_TRUE(r.rhs.has_value());
  EXPECT_EQ(std::abs(*r.rhs), 2);
  EXPECT_NE(std::find(r.violations.begin(), r.violations.end(), "solitary real double points (2)"),
            r.violations.end());
  EXPECT_EQ(to_json(r)["verdicts"]["main_theorem_verified"], "not-applicable");
}

TEST(VerifyAll, GeronoIsDegenerateAtInfinity) {
  const auto r = verify_all(testing::gerono());
  EXPECT_EQ(r.outcome, Outcome::DegenerateAtInfinity);
  EXPECT_EQ(r.main_theorem, TheoremVerdict::NotApplicable);
  ASSERT_FALSE(r.violations.empty());
  EXPECT_EQ(r.violations[0].rfind("real point at infinity (0:0:1)", 0), 0u);
}

TEST(VerifyAll, SpecValidationFailureIsAHypothesisViolation) {
  const auto r = verify_all(parse_curve_spec("x = 1/(t - 1); y = t"));
  EXPECT_EQ(r.outcome, Outcome::HypothesesViolated);
  ASSERT_EQ(r.violations.size(), 1u);
}

TEST(VerifyAll, RejectedReportsNameAViolation) {
  for (const auto& c : {testing::gerono(), testing::gerono(0.1), testing::gerono(0.2)}) {
    const auto r = verify_all(c);
    EXPECT_FALSE(r.hypotheses_ok);
    EXPECT_FALSE(r.violations.empty());
  }
}

TEST(Generate, SolitaryPointsCloseToADoublePoleAreRejected) {
  // a draw for this seed has solitary points about 1e10 from the origin, with
  // parameters within 1e-3 of a pole of multiplicity 4
  const auto g = generate_curve(5223588038455119222ull, 4);
  EXPECT_GT(g.redraws, 0);
  for (const auto& r : g.rejections) EXPECT_EQ(r.rfind("solitary real double points", 0), 0u) << r;
  EXPECT_EQ(verify_all(g.curve).outcome, Outcome::Verified);
}

TEST(RenderSvg, CircleStructure) {
  const auto c = testing::circle();
  const std::string svg = render_svg(c, verify_all(c));
  EXPECT_EQ(occurrences(svg, "<path class=\"curve\""), 1);
  EXPECT_EQ(occurrences(svg, "class=\"arrow\""), 4);
  EXPECT_EQ(occurrences(svg, "class=\"event "), 2);
  const std::regex closed("<path class=\"curve\" d=\"M[^\"]*Z\"");
  EXPECT_TRUE(std::regex_search(svg, closed));
}

TEST(RenderSvg, BernoulliNodeMarker) {
  const auto c = testing::bernoulli();
  const std::string svg = render_svg(c, verify_all(c));
  EXPECT_EQ(occurrences(svg, "<path class=\"curve\""), 1);
  EXPECT_EQ(occurrences(svg, "class=\"node real\""), 1);
  EXPECT_EQ(svg, render_svg(c, verify_all(c)));
}

TEST(Batch, SmallCampaignPasses) {
  BatchOptions o;
  o.seed = 5;
  o.count = 12;
  o.threads = 2;
  const BatchSummary s = run_batch(o);
  EXPECT_EQ(s.requested, 12);
  EXPECT_TRUE(s.all_passed());
  for (const auto& item : s.items) {
    if (!item.generated) continue;
    EXPECT_TRUE(item.passed) << item.index;
    EXPECT_EQ(item.harmonics, 1 + item.index % 4);
  }
  // the item seeds do not depend on the thread count
  o.threads = 1;
  EXPECT_EQ(to_json(s, true).dump(), to_json(run_batch(o), true).dump());
}

}  // namespace
}  // namespace rcw
