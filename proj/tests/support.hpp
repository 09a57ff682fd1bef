#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rcw/curve.hpp"

namespace rcw::testing {

inline RationalPlaneCurve circle() { return make_curve({1, 0, -1}, {0, 2}, {1, 0, 1}); }
inline RationalPlaneCurve mirrored_circle() { return make_curve({1, 0, -1}, {0, -2}, {1, 0, 1}); }
inline RationalPlaneCurve bernoulli() { return make_curve({0, 1, 0, 1}, {0, 1, 0, -1}, {1, 0, 0, 0, 1}); }
inline RationalPlaneCurve double_circle() {
  return make_curve({1, 0, -6, 0, 1}, {0, 4, 0, -4}, {1, 0, 2, 0, 1});
}
inline RationalPlaneCurve gerono(double eps = 0.0) {
  return make_curve({1, 0, eps, 0, -1}, {0, 2, 0, -2}, {1, 0, 2, 0, 1});
}

// Plain Horner on ascending coefficients, kept apart from the library evaluator.
template <typename T>
T horner(const std::vector<double>& c, T z) {
  T acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + T(*it);
  return acc;
}

inline std::vector<double> coeffs(const RealPoly& p) {
  return std::vector<double>(p.coeffs().data(), p.coeffs().data() + p.coeffs().size());
}

struct PlainCurve {
  std::vector<double> p1, p2, q;
  explicit PlainCurve(const RationalPlaneCurve& c) : p1(coeffs(c.p1())), p2(coeffs(c.p2())), q(coeffs(c.q())) {}

  template <typename T>
  std::pair<T, T> at(T t) const {
    const T d = horner(q, t);
    return {horner(p1, t) / d, horner(p2, t) / d};
  }

  // Point at u on the circle of parameters, t = tan(u/2); u = π is t = ∞.
  std::pair<double, double> at_angle(double u) const {
    const double h = 0.5 * u;
    if (std::abs(std::cos(h)) > 1e-3) return at(std::tan(h));
    // near t = ∞ use the leading terms through t = -1/s
    const double s = -std::cos(h) / std::sin(h);
    const int n = int(q.size()) - 1;
    auto flip = [&](const std::vector<double>& c) {
      double acc = 0.0, sp = 1.0;
      for (int k = n; k >= 0; --k, sp *= s) {
        const double ck = k < int(c.size()) ? c[k] : 0.0;
        acc += ck * ((k % 2) ? -1.0 : 1.0) * sp;
      }
      return acc;
    };
    const double d = flip(q);
    return {flip(p1) / d, flip(p2) / d};
  }
};

// Turning number of the real locus from a uniform grid in u: tangent directions
// from chords between consecutive samples.
inline double grid_turning(const RationalPlaneCurve& c, int samples) {
  const PlainCurve pc(c);
  const double step = 2.0 * std::numbers::pi / samples;
  std::vector<std::pair<double, double>> pts(samples);
  for (int k = 0; k < samples; ++k) pts[k] = pc.at_angle(step * k);
  auto chord_angle = [&](int k) {
    const auto& a = pts[k];
    const auto& b = pts[(k + 1) % samples];
    return std::atan2(b.second - a.second, b.first - a.first);
  };
  double total = 0.0;
  double prev = chord_angle(0);
  for (int k = 1; k <= samples; ++k) {
    const double cur = chord_angle(k % samples);
    total += std::remainder(cur - prev, 2.0 * std::numbers::pi);
    prev = cur;
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace rcw::testing
