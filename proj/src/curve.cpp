#include "rcw/curve.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace rcw {

ProjPoint normalized(const ProjPoint& p, double snap) {
  Eigen::Index imax = 0;
  for (Eigen::Index i = 1; i < 3; ++i)
    if (std::abs(p[i]) > std::abs(p[imax])) imax = i;
  if (p[imax] == 0.0) return p;
  ProjPoint out = p / p[imax];
  for (Eigen::Index i = 0; i < 3; ++i) {
    if (std::abs(out[i].real()) <= snap) out[i] = Complex(0.0, out[i].imag());
    if (std::abs(out[i].imag()) <= snap) out[i] = Complex(out[i].real(), 0.0);
  }
  return out;
}

double projective_distance(const ProjPoint& a, const ProjPoint& b) {
  const double na = a.norm(), nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  // |a ∧ b| / (|a||b|), the sine of the Hermitian angle
  const Complex c01 = a[0] * b[1] - a[1] * b[0];
  const Complex c02 = a[0] * b[2] - a[2] * b[0];
  const Complex c12 = a[1] * b[2] - a[2] * b[1];
  return std::sqrt(std::norm(c01) + std::norm(c02) + std::norm(c12)) / (na * nb);
}

ParamTriple RationalPlaneCurve::infinity_chart() const {
  const int n = degree();
  return {rcw::infinity_chart(p1_, n), rcw::infinity_chart(p2_, n), rcw::infinity_chart(q_, n)};
}

VelocityNumerators velocity_numerators(const ParamTriple& ch) {
  const RealPoly dq = derivative(ch.q);
  return {derivative(ch.p1) * ch.q - ch.p1 * dq, derivative(ch.p2) * ch.q - ch.p2 * dq};
}

namespace {

// Immersion at every real t of a chart: the two velocity numerators share no real root.
void check_immersion(const ParamTriple& ch, const Tolerances& tol) {
  const auto nums = velocity_numerators(ch);
  if (nums.x.is_zero() && nums.y.is_zero())
    throw Error(ErrorKind::CuspOnRealLocus, "cusp on real locus: constant curve");
  const RealPoly& a = nums.x.is_zero() ? nums.y : nums.x;
  const RealPoly& b = nums.x.is_zero() ? nums.x : nums.y;
  if (a.degree() < 1) return;
  for (const auto& r : real_roots(roots(a, tol))) {
    const double t = r.z.real();
    if (std::abs(b(t)) <= 1e-9 * std::max(b.magnitude_at(std::abs(t)), a.magnitude_at(std::abs(t)))) {
      std::ostringstream os;
      os << "cusp on real locus at t = " << t;
      throw Error(ErrorKind::CuspOnRealLocus, os.str());
    }
  }
}

// The point s = 0 of the chart at parameter infinity.
void check_immersion_at_infinity(const ParamTriple& ch) {
  const auto nums = velocity_numerators(ch);
  const double ref = std::max(nums.x.norm_inf(), nums.y.norm_inf());
  if (!(std::hypot(nums.x(0.0), nums.y(0.0)) > 1e-9 * ref))
    throw Error(ErrorKind::CuspOnRealLocus, "cusp on real locus at t = inf");
}

}  // namespace

RationalPlaneCurve make_curve(const RealPoly& p1, const RealPoly& p2, const RealPoly& q,
                              const Tolerances& tol) {
  if (q.is_zero()) throw Error(ErrorKind::InvalidArgument, "denominator q must be nonzero");
  const std::array<RealPoly, 3> in{p1, p2, q};
  const GcdResult g = gcd_clear(in, tol);
  RealPoly np1 = g.quotients[0], np2 = g.quotients[1], nq = g.quotients[2];
  const double lead = nq.leading();
  np1 /= lead;
  np2 /= lead;
  nq = monic(nq);

  if (nq.degree() >= 1) {
    for (const auto& r : roots(nq, tol)) {
      if (r.z.imag() == 0.0) {
        std::ostringstream os;
        os << "noncompact: real pole at t = " << r.z.real() << " (real point escapes to infinity)";
        throw Error(ErrorKind::NoncompactRealPole, os.str());
      }
    }
  }
  if (np1.degree() > nq.degree() || np2.degree() > nq.degree())
    throw Error(ErrorKind::NoncompactAtInfinity, "noncompact at parameter infinity: deg p > deg q");
  if (nq.degree() % 2 != 0)
    throw Error(ErrorKind::NoncompactRealPole, "noncompact: odd-degree denominator has a real pole");

  RationalPlaneCurve c;
  c.p1_ = np1;
  c.p2_ = np2;
  c.q_ = nq;
  check_immersion(c.finite_chart(), tol);
  check_immersion_at_infinity(c.infinity_chart());
  return c;
}

ProjPoint point_at(const RationalPlaneCurve& c, const Parameter& t) {
  if (t.at_infinity) {
    const int n = c.degree();
    return ProjPoint(c.q()[n], c.p1()[n], c.p2()[n]);
  }
  return ProjPoint(c.q()(t.t), c.p1()(t.t), c.p2()(t.t));
}

Eigen::Vector2d affine_point(const RationalPlaneCurve& c, const Parameter& t) {
  const ProjPoint p = point_at(c, t);
  return {(p[1] / p[0]).real(), (p[2] / p[0]).real()};
}

namespace {

struct ChartPoint {
  const ParamTriple chart;
  double s;
};

ChartPoint chart_for(const RationalPlaneCurve& c, const Parameter& t) {
  if (t.at_infinity) return {c.infinity_chart(), 0.0};
  return {c.finite_chart(), t.t.real()};
}

}  // namespace

Eigen::Vector2d velocity(const RationalPlaneCurve& c, const Parameter& t) {
  const auto cp = chart_for(c, t);
  const auto nums = velocity_numerators(cp.chart);
  const double q = cp.chart.q(cp.s);
  return Eigen::Vector2d(nums.x(cp.s), nums.y(cp.s)) / (q * q);
}

Eigen::Vector2d acceleration(const RationalPlaneCurve& c, const Parameter& t) {
  const auto cp = chart_for(c, t);
  const auto nums = velocity_numerators(cp.chart);
  const RealPoly q2 = cp.chart.q * cp.chart.q;
  const RealPoly dq2 = derivative(q2);
  // (N / q^2)' = (N' q^2 - N (q^2)') / q^4
  const double s = cp.s;
  const double q2v = q2(s);
  auto second = [&](const RealPoly& num) {
    return (derivative(num)(s) * q2v - num(s) * dq2(s)) / (q2v * q2v);
  };
  return {second(nums.x), second(nums.y)};
}

RationalPlaneCurve transform_affine(const RationalPlaneCurve& c, const Eigen::Matrix2d& a,
                                    const Eigen::Vector2d& b) {
  const RealPoly p1 = a(0, 0) * c.p1() + a(0, 1) * c.p2() + b[0] * c.q();
  const RealPoly p2 = a(1, 0) * c.p1() + a(1, 1) * c.p2() + b[1] * c.q();
  return make_curve(p1, p2, c.q());
}

double random_angle(std::mt19937_64& gen) {
  return 2.0 * std::numbers::pi * double(gen() >> 11) * 0x1.0p-53;
}

RationalPlaneCurve rotate(const RationalPlaneCurve& c, double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return transform_affine(c, r, Eigen::Vector2d::Zero());
}

RationalPlaneCurve reflect_y(const RationalPlaneCurve& c) {
  return make_curve(c.p1(), -c.p2(), c.q());
}

RationalPlaneCurve reverse_parameter(const RationalPlaneCurve& c) {
  return make_curve(negate_argument(c.p1()), negate_argument(c.p2()), negate_argument(c.q()));
}

}  // namespace rcw
