#include "rcw/generate.hpp"

#include <random>

namespace rcw {

namespace {

constexpr int kMaxRedraws = 64;

// Uniform in [-1, 1] from the top 53 bits; identical on every platform.
double unit_draw(std::mt19937_64& gen) {
  return 2.0 * double(gen() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

ParamTriple trig_to_rational(const TrigLoop& loop) {
  const int big_k = loop.harmonics();
  if (big_k < 0 || loop.bx.size() != loop.ax.size() || loop.ay.size() != loop.ax.size() ||
      loop.by.size() != loop.ax.size())
    throw Error(ErrorKind::InvalidArgument, "trigonometric loop needs four coefficient vectors of equal length");
  const RealPoly one_plus_t2{1.0, 0.0, 1.0};
  const ComplexPoly one_plus_it{Complex(1.0, 0.0), Complex(0.0, 1.0)};

  ParamTriple out;
  out.q = RealPoly::constant(1.0);
  for (int k = 0; k < big_k; ++k) out.q *= one_plus_t2;

  // e^{iku} (1 + t^2)^k = (1 + it)^{2k}
  ComplexPoly e = ComplexPoly::constant(Complex(1.0));
  RealPoly tail = out.q;  // (1 + t^2)^{K - k}
  std::vector<RealPoly> tails{tail};
  for (int k = 1; k <= big_k; ++k) tails.push_back(divmod(tails.back(), one_plus_t2).first);
  for (int k = 0; k <= big_k; ++k) {
    if (k > 0) e = e * one_plus_it * one_plus_it;
    const RealPoly cos_num = real_part(e);
    const RealPoly sin_num(RealPoly::Coeffs(e.coeffs().imag()));
    const RealPoly c = cos_num * tails[k], s = sin_num * tails[k];
    out.p1 += loop.ax[k] * c + (k > 0 ? loop.bx[k] * s : RealPoly());
    out.p2 += loop.ay[k] * c + (k > 0 ? loop.by[k] * s : RealPoly());
  }
  return out;
}

GeneratedCurve generate_curve(std::uint64_t seed, int harmonics) {
  if (harmonics < 1) throw Error(ErrorKind::InvalidArgument, "harmonic bound must be at least 1");
  std::mt19937_64 gen(seed);
  std::vector<std::string> rejections;
  for (int draw = 0; draw <= kMaxRedraws; ++draw) {
    TrigLoop loop;
    for (Eigen::VectorXd* v : {&loop.ax, &loop.bx, &loop.ay, &loop.by}) {
      v->resize(harmonics + 1);
      for (int k = 0; k <= harmonics; ++k) (*v)[k] = unit_draw(gen);
    }
    loop.bx[0] = loop.by[0] = 0.0;
    try {
      const ParamTriple raw = trig_to_rational(loop);
      RationalPlaneCurve curve = make_curve(raw.p1, raw.p2, raw.q);
      AuditReport report = audit(curve);
      if (!report.admissible) {
        std::string why;
        for (const auto& r : report.reasons) why += (why.empty() ? "" : "; ") + r;
        rejections.push_back(why);
        continue;
      }
      return {std::move(curve), std::move(loop), std::move(report), draw, std::move(rejections)};
    } catch (const Error& e) {
      rejections.push_back(e.what());
    }
  }
  throw Error(ErrorKind::GenerationExhausted,
              "generation exhausted after " + std::to_string(kMaxRedraws) + " redraws");
}

}  // namespace rcw
