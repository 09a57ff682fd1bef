#include <gtest/gtest.h>

#include "rcw/generate.hpp"
#include "rcw/whitney.hpp"
#include "support.hpp"

namespace rcw {
namespace {

TEST(GaussWinding, Calibration) {
  EXPECT_EQ(gauss_winding(testing::circle()).w, 1);
  EXPECT_EQ(gauss_winding(testing::mirrored_circle()).w, -1);
  EXPECT_EQ(gauss_winding(testing::double_circle()).w, 2);
}

TEST(GaussWinding, BernoulliAgreesWithFineGrid) {
  const auto c = testing::bernoulli();
  const WindingResult r = gauss_winding(c);
  EXPECT_EQ(r.w, 0);
  EXPECT_LT(std::abs(r.raw_turn), 1e-6);
  const double grid = testing::grid_turning(c, 1000000);
  EXPECT_NEAR(grid, 0.0, 1e-6);
}

TEST(GaussWinding, GeneratedCurvesAgreeWithFineGrid) {
  for (int k = 1; k <= 4; ++k) {
    const auto g = generate_curve(100 + k, k);
    const int w = gauss_winding(g.curve).w;
    EXPECT_NEAR(testing::grid_turning(g.curve, 1000000), double(w), 1e-3) << "K=" << k;
  }
}

TEST(GaussWinding, StableUnderDoubledSampling) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const auto g = generate_curve(seed, 1 + int(seed % 4));
    EXPECT_EQ(gauss_winding(g.curve, 512).w, gauss_winding(g.curve, 1024).w) << seed;
  }
}

TEST(GaussWinding, RejectsTinySampleCounts) { EXPECT_THROW(gauss_winding(testing::circle(), 2), Error); }

TEST(RegularValueDegree, NamedCurves) {
  EXPECT_EQ(regular_value_degree(testing::circle(), 1), 1);
  EXPECT_EQ(regular_value_degree(testing::mirrored_circle(), 1), -1);
  EXPECT_EQ(regular_value_degree(testing::double_circle(), 1), 2);
  EXPECT_EQ(regular_value_degree(testing::bernoulli(), 1), 0);
}

TEST(VerticalTangents, BernoulliRootsAreMinusOneAndOne) {
  // x'-numerator -(t^2 - 1)(t^4 + 4 t^2 + 1)
  const auto vt = vertical_tangents(testing::bernoulli());
  ASSERT_TRUE(vt.has_value());
  ASSERT_EQ(vt->size(), 2u);
  EXPECT_NEAR((*vt)[0].t, -1.0, 1e-12);
  EXPECT_NEAR((*vt)[1].t, 1.0, 1e-12);
  for (const auto& v : *vt) EXPECT_EQ(v.sign_y1, -1);
  EXPECT_EQ((*vt)[0].sign_x2, 1);
  EXPECT_EQ((*vt)[1].sign_x2, -1);
}

TEST(VerticalTangents, UnrotatedCircleHasATangentAtInfinity) {
  EXPECT_FALSE(vertical_tangents(testing::circle()).has_value());
  EXPECT_TRUE(vertical_tangents(rotate(testing::circle(), 0.3)).has_value());
}

TEST(WhitneyProperties, ReversalReflectionAndAffineMaps) {
  Eigen::Matrix2d a;
  a << 0.7, 1.2, -0.9, 0.4;  // det > 0
  for (std::uint64_t seed = 20; seed < 26; ++seed) {
    const auto g = generate_curve(seed, 1 + int(seed % 4));
    const int w = gauss_winding(g.curve).w;
    EXPECT_EQ(regular_value_degree(g.curve, seed), w);
    EXPECT_EQ(gauss_winding(reverse_parameter(g.curve)).w, -w);
    EXPECT_EQ(gauss_winding(reflect_y(g.curve)).w, -w);
    EXPECT_EQ(gauss_winding(transform_affine(g.curve, a, {1.0, -2.0})).w, w);
    EXPECT_LE(std::abs(w), g.curve.degree() / 2);
  }
}

}  // namespace
}  // namespace rcw
