#include "rcw/infinity.hpp"

#include <sstream>

namespace rcw {

std::string_view to_string(Side side) {
  switch (side) {
    case Side::Plus: return "Plus";
    case Side::Minus: return "Minus";
    case Side::RealDegenerate: return "RealDegenerate";
  }
  return "unknown";
}

std::vector<Pole> upper_poles(const RationalPlaneCurve& c, const Tolerances& tol) {
  std::vector<Pole> out;
  int total = 0;
  for (const auto& r : roots(c.q(), tol)) {
    if (r.z.imag() > 0.0) {
      out.push_back({r.z, r.multiplicity});
      total += r.multiplicity;
    }
  }
  if (2 * total != c.degree())
    throw Error(ErrorKind::RootFinding, "upper poles do not account for half the degree");
  return out;
}

PoleRecord classify_at_infinity(const RationalPlaneCurve& c, Complex t0, int mult, double side_tol) {
  const Complex a = c.p1()(t0), b = c.p2()(t0);
  const double mag = std::norm(a) + std::norm(b);
  const double scale = std::max(c.p1().magnitude_at(std::abs(t0)), c.p2().magnitude_at(std::abs(t0)));
  if (!(std::sqrt(mag) > 1e-9 * scale)) {
    std::ostringstream os;
    os << "base point at t = " << t0;
    throw Error(ErrorKind::BasePoint, os.str());
  }
  PoleRecord r;
  r.t0 = t0;
  r.mult = mult;
  r.infinity_point = normalized(ProjPoint(Complex(0.0), a, b));
  const double side = (b * std::conj(a)).imag() / mag;
  r.side = side > side_tol ? Side::Plus : (side < -side_tol ? Side::Minus : Side::RealDegenerate);
  return r;
}

std::vector<PoleRecord> pole_table(const RationalPlaneCurve& c, const Tolerances& tol) {
  std::vector<PoleRecord> out;
  for (const auto& p : upper_poles(c, tol)) out.push_back(classify_at_infinity(c, p.t0, p.mult));
  return out;
}

std::vector<PoleRecord> all_poles(const RationalPlaneCurve& c, const Tolerances& tol) {
  std::vector<PoleRecord> out;
  for (const auto& r : roots(c.q(), tol)) out.push_back(classify_at_infinity(c, r.z, r.multiplicity));
  return out;
}

int hemisphere_balance(const std::vector<PoleRecord>& table) {
  int sum = 0;
  for (const auto& p : table) {
    if (p.side == Side::RealDegenerate) {
      const ProjPoint& z = p.infinity_point;
      std::ostringstream os;
      os << "real point at infinity (0:" << z[1].real() << ":" << z[2].real() << ")";
      throw Error(ErrorKind::RealPointAtInfinity, os.str());
    }
    sum += p.side == Side::Plus ? p.mult : -p.mult;
  }
  return sum;
}

int hemisphere_balance(const RationalPlaneCurve& c, const Tolerances& tol) {
  return hemisphere_balance(pole_table(c, tol));
}

}  // namespace rcw
