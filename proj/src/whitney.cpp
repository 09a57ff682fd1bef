#include "rcw/whitney.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace rcw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double a) {
  a = std::remainder(a, kTwoPi);
  return a;
}

// Direction of the velocity at u, where t = tan(u/2); the chart s = -1/t is
// used on the half of the circle around t = ∞.
class VelocityAngle {
 public:
  explicit VelocityAngle(const RationalPlaneCurve& c)
      : finite_(velocity_numerators(c.finite_chart())), infinite_(velocity_numerators(c.infinity_chart())) {}

  double operator()(double u) const {
    const double h = 0.5 * u;
    const double sn = std::sin(h), cs = std::cos(h);
    if (std::abs(sn) <= std::abs(cs)) {
      const double t = sn / cs;
      return std::atan2(finite_.y(t), finite_.x(t));
    }
    const double s = -cs / sn;
    return std::atan2(infinite_.y(s), infinite_.x(s));
  }

 private:
  VelocityNumerators finite_, infinite_;
};

struct Accumulator {
  const VelocityAngle& angle;
  int samples = 0;
  int budget = 1 << 22;

  double step(double u0, double a0, double u1, double a1, int depth) {
    const double d = wrap(a1 - a0);
    if (std::abs(d) < 0.5 * std::numbers::pi || depth >= 48 || samples >= budget) return d;
    const double um = 0.5 * (u0 + u1);
    const double am = angle(um);
    ++samples;
    return step(u0, a0, um, am, depth + 1) + step(um, am, u1, a1, depth + 1);
  }
};

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

WindingResult gauss_winding(const RationalPlaneCurve& c, int initial_samples) {
  if (initial_samples < 4) throw Error(ErrorKind::InvalidArgument, "gauss_winding needs at least 4 samples");
  const VelocityAngle angle(c);
  Accumulator acc{angle};
  const double a_start = angle(0.0);
  double total = 0.0;
  double u_prev = 0.0, a_prev = a_start;
  acc.samples = 1;
  for (int k = 1; k <= initial_samples; ++k) {
    const double u = kTwoPi * k / initial_samples;
    const double a = (k == initial_samples) ? a_start : angle(u);
    if (k < initial_samples) ++acc.samples;
    total += acc.step(u_prev, a_prev, u, a, 0);
    u_prev = u;
    a_prev = a;
  }
  WindingResult r;
  r.raw_turn = total / kTwoPi;
  r.w = int(std::lround(r.raw_turn));
  r.samples_used = acc.samples;
  if (!(std::abs(r.raw_turn - r.w) < 1e-6)) {
    std::ostringstream os;
    os << "winding non-integral: total turn " << r.raw_turn;
    throw Error(ErrorKind::WindingNonIntegral, os.str());
  }
  return r;
}

std::optional<std::vector<VerticalTangent>> vertical_tangents(const RationalPlaneCurve& c) {
  const VelocityNumerators nums = velocity_numerators(c.finite_chart());
  const VelocityNumerators at_inf = velocity_numerators(c.infinity_chart());
  const double ref_inf = std::max(at_inf.x.norm_inf(), at_inf.y.norm_inf());
  if (std::abs(at_inf.x(0.0)) <= 1e-9 * ref_inf) return std::nullopt;
  if (nums.x.degree() < 1) return std::nullopt;

  const RealPoly dx = derivative(nums.x);
  std::vector<VerticalTangent> out;
  for (const auto& r : roots(nums.x)) {
    if (r.z.imag() != 0.0) {
      if (std::abs(r.z.imag()) < 1e-6 * (1.0 + std::abs(r.z))) return std::nullopt;
      continue;
    }
    if (r.multiplicity != 1) return std::nullopt;
    const double t = r.z.real();
    const double scale = std::max(nums.y.magnitude_at(std::abs(t)), nums.x.magnitude_at(std::abs(t)));
    const double vy = nums.y(t), ax = dx(t);
    if (std::abs(vy) <= 1e-9 * scale || std::abs(ax) <= 1e-9 * dx.magnitude_at(std::abs(t))) return std::nullopt;
    // at a root of the numerator, x'' = (numerator)' / q^2
    out.push_back({t, sign_of(ax), sign_of(vy)});
  }
  return out;
}

int regular_value_degree(const RationalPlaneCurve& c, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  for (int attempt = 0; attempt < 32; ++attempt) {
    const double phi = random_angle(gen);
    const auto vt = vertical_tangents(rotate(c, phi));
    if (!vt) continue;
    int upward = 0, downward = 0;
    for (const auto& v : *vt) {
      if (v.sign_y1 > 0) upward -= v.sign_x2;
      else downward += v.sign_x2;
    }
    if (upward != downward) {
      std::ostringstream os;
      os << "internal mismatch: regular-value counts " << upward << " and " << downward;
      throw Error(ErrorKind::InternalMismatch, os.str());
    }
    return upward;
  }
  throw Error(ErrorKind::GenericityNotFound, "genericity not found after 32 rotations");
}

}  // namespace rcw
