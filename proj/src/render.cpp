#include "rcw/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace rcw {

namespace {

struct Charts {
  ParamTriple finite, infinite;
};

// Affine point and velocity at u, where t = tan(u/2).
struct Sample {
  Eigen::Vector2d p, v;
};

Sample sample_at(const Charts& ch, double u) {
  const double h = 0.5 * u;
  const double sn = std::sin(h), cs = std::cos(h);
  const bool use_finite = std::abs(sn) <= std::abs(cs);
  const ParamTriple& tr = use_finite ? ch.finite : ch.infinite;
  const double s = use_finite ? sn / cs : -cs / sn;
  const double q = tr.q(s);
  const RealPoly dq = derivative(tr.q);
  Sample out;
  out.p = {tr.p1(s) / q, tr.p2(s) / q};
  out.v = {derivative(tr.p1)(s) * q - tr.p1(s) * dq(s), derivative(tr.p2)(s) * q - tr.p2(s) * dq(s)};
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string class_label(const TangencyEvent& e) {
  return std::string(e.kind == Extremum::Min ? "min" : "max") + "-" + (e.align == Alignment::Plus ? "plus" : "minus");
}

std::string text_label(const TangencyEvent& e) {
  return std::string(to_string(e.kind)) + (e.align == Alignment::Plus ? ",+" : ",-");
}

}  // namespace

std::string render_svg(const RationalPlaneCurve& c, const VerificationReport& report, const RenderOptions& opts) {
  const Charts ch{c.finite_chart(), c.infinity_chart()};
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<double> us;
  for (int k = 0; k < opts.base_samples; ++k) us.push_back(two_pi * k / opts.base_samples);
  Eigen::Vector2d lo = sample_at(ch, 0.0).p, hi = lo;
  for (double u : us) {
    const auto p = sample_at(ch, u).p;
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const double extent = std::max((hi - lo).maxCoeff(), 1e-12);

  // refine until each chord stays within 0.1% of the extent of the arc
  std::vector<Eigen::Vector2d> pts;
  const double tol = 1e-3 * extent;
  auto refine = [&](auto&& self, double u0, const Eigen::Vector2d& a, double u1, const Eigen::Vector2d& b,
                    int depth) -> void {
    const double um = 0.5 * (u0 + u1);
    const Eigen::Vector2d m = sample_at(ch, um).p;
    if (depth < 8 && (m - 0.5 * (a + b)).norm() > tol) {
      self(self, u0, a, um, m, depth + 1);
      self(self, um, m, u1, b, depth + 1);
      return;
    }
    pts.push_back(b);
  };
  pts.push_back(sample_at(ch, 0.0).p);
  for (std::size_t k = 0; k < us.size(); ++k) {
    const double u0 = us[k], u1 = k + 1 < us.size() ? us[k + 1] : two_pi;
    refine(refine, u0, sample_at(ch, u0).p, u1, sample_at(ch, u1).p, 0);
  }
  pts.pop_back();  // the last point repeats u = 0; the path is closed with Z

  for (const auto& p : pts) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const Eigen::Vector2d span = (hi - lo).cwiseMax(1e-12 * extent + 1e-300);
  const Eigen::Vector2d margin = 0.1 * span;
  const double scale = opts.width / (span.x() + 2 * margin.x());
  const double height = (span.y() + 2 * margin.y()) * scale;
  auto px = [&](const Eigen::Vector2d& p) {
    return Eigen::Vector2d((p.x() - lo.x() + margin.x()) * scale, (hi.y() + margin.y() - p.y()) * scale);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(opts.width) + "\" height=\"" + num(height) +
         "\" viewBox=\"0 0 " + num(opts.width) + " " + num(height) + "\">\n";
  svg += "<style>.curve{fill:none;stroke:#1f4e79;stroke-width:1.5}.arrow{fill:#1f4e79}"
         ".event{fill:#c0392b}.node{fill:none;stroke:#27ae60;stroke-width:2}"
         "text{font:11px sans-serif;fill:#333}</style>\n";
  if (!report.name.empty()) svg += "<title>" + report.name + "</title>\n";

  svg += "<path class=\"curve\" d=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto q = px(pts[i]);
    svg += (i == 0 ? "M" : " L") + num(q.x()) + "," + num(q.y());
  }
  svg += " Z\"/>\n";

  const double size = 0.02 * opts.width;
  for (int k = 0; k < opts.arrows; ++k) {
    const double u = two_pi * (k + 0.5) / opts.arrows;
    const Sample s = sample_at(ch, u);
    const Eigen::Vector2d tip = px(s.p);
    Eigen::Vector2d dir(s.v.x(), -s.v.y());
    dir.normalize();
    const Eigen::Vector2d normal(-dir.y(), dir.x());
    const Eigen::Vector2d back = tip - size * dir;
    const Eigen::Vector2d l = back + 0.5 * size * normal, r = back - 0.5 * size * normal;
    svg += "<polygon class=\"arrow\" points=\"" + num(tip.x()) + "," + num(tip.y()) + " " + num(l.x()) + "," +
           num(l.y()) + " " + num(r.x()) + "," + num(r.y()) + "\"/>\n";
  }

  for (const auto& e : report.events) {
    const auto q = px(affine_point(c, Parameter::finite(Complex(e.t, 0.0))));
    svg += "<circle class=\"event " + class_label(e) + "\" cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) +
           "\" r=\"4\"/>\n";
    svg += "<text x=\"" + num(q.x() + 6) + "\" y=\"" + num(q.y() - 6) + "\">" + text_label(e) + "</text>\n";
  }

  if (report.audit) {
    for (const auto& n : report.audit->nodes) {
      if (n.kind == NodeKind::ImaginaryNode || std::abs(n.image[0]) == 0.0) continue;
      const Eigen::Vector2d p((n.image[1] / n.image[0]).real(), (n.image[2] / n.image[0]).real());
      const auto q = px(p);
      const std::string kind = n.kind == NodeKind::RealNode ? "real" : "solitary";
      svg += "<circle class=\"node " + kind + "\" cx=\"" + num(q.x()) + "\" cy=\"" + num(q.y()) + "\" r=\"6\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

void render_svg(const RationalPlaneCurve& c, const VerificationReport& report, const std::string& path,
                const RenderOptions& opts) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path + " for writing");
  out << render_svg(c, report, opts);
  if (!out) throw Error(ErrorKind::Io, "write to " + path + " failed");
}

}  // namespace rcw
