#include "rcw/audit.hpp"

#include <Eigen/QR>

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

namespace rcw {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::RealNode: return "real";
    case NodeKind::SolitaryNode: return "solitary";
    case NodeKind::ImaginaryNode: return "imaginary";
  }
  return "unknown";
}

int AuditReport::count(NodeKind kind) const {
  return int(std::count_if(nodes.begin(), nodes.end(), [kind](const NodeRecord& r) { return r.kind == kind; }));
}

namespace {

constexpr int kAttempts = 4;
constexpr double kMatchTol = 1e-6;

// The curve after a real projective change of plane coordinates and a real
// rotation of the parameter line, t = (a τ + b) / (c τ + d). In these
// coordinates the self-intersection system has no spurious solutions at
// multiple poles and no node parameter at τ = ∞.
struct AuxSystem {
  std::array<RealPoly, 3> z;
  std::array<RealPoly, 3> dz;
  double a = 1, b = 0, c = 0, d = 1;

  ProjPoint at(Complex tau) const { return {z[0](tau), z[1](tau), z[2](tau)}; }
  ProjPoint d_at(Complex tau) const { return {dz[0](tau), dz[1](tau), dz[2](tau)}; }

  Parameter to_t(Complex tau) const {
    const Complex num = a * tau + b, den = c * tau + d;
    if (std::abs(den) <= 1e-12 * std::abs(num)) return Parameter::infinity();
    Complex t = tau.imag() == 0.0 ? Complex((a * tau.real() + b) / (c * tau.real() + d), 0.0) : num / den;
    if (std::abs(t) <= 1e-13) t = 0.0;
    return Parameter::finite(t);
  }
};

Eigen::Matrix3d aux_frame(int attempt) {
  std::mt19937 gen(0x5eedu + unsigned(attempt));
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = double(gen()) / 4294967296.0 - 0.5;
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  return qr.householderQ();
}

AuxSystem make_aux(const RationalPlaneCurve& c, int attempt) {
  const int n = c.degree();
  const double qn = c.q().coeffs().norm();
  auto scaled = [qn](const RealPoly& p) {
    const double pn = p.coeffs().norm();
    return pn > 0.0 ? p * (qn / pn) : p;
  };
  const std::array<RealPoly, 3> base{c.q(), scaled(c.p1()), scaled(c.p2())};
  const Eigen::Matrix3d m = aux_frame(attempt);
  const double theta = 0.7317 + 0.4 * attempt;

  AuxSystem aux;
  aux.a = std::cos(theta);
  aux.b = std::sin(theta);
  aux.c = -std::sin(theta);
  aux.d = std::cos(theta);
  for (int i = 0; i < 3; ++i) {
    RealPoly mixed;
    for (int j = 0; j < 3; ++j) mixed += m(i, j) * base[j];
    aux.z[i] = mobius_transform(mixed, n, aux.a, aux.b, aux.c, aux.d);
    aux.dz[i] = derivative(aux.z[i]);
  }
  return aux;
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::AuditFailure, "audit failure: " + what); }

// Newton on Z(a) ∧ Z(b) = 0 starting from a matched pair.
std::pair<Complex, Complex> refine_pair(const AuxSystem& aux, Complex a, Complex b) {
  auto residual = [&](Complex u, Complex v, Eigen::Vector2cd& f, Eigen::Matrix2cd* jac) {
    const ProjPoint zu = aux.at(u), zv = aux.at(v);
    Eigen::Index k = 0;
    for (Eigen::Index i = 1; i < 3; ++i)
      if (std::abs(zu[i]) > std::abs(zu[k])) k = i;
    int row = 0;
    for (Eigen::Index i = 0; i < 3; ++i) {
      if (i == k) continue;
      f[row] = zu[i] * zv[k] - zu[k] * zv[i];
      if (jac != nullptr) {
        const ProjPoint du = aux.d_at(u), dv = aux.d_at(v);
        (*jac)(row, 0) = du[i] * zv[k] - du[k] * zv[i];
        (*jac)(row, 1) = zu[i] * dv[k] - zu[k] * dv[i];
      }
      ++row;
    }
  };
  Eigen::Vector2cd f;
  Eigen::Matrix2cd jac;
  residual(a, b, f, &jac);
  for (int it = 0; it < 30 && f.norm() > 0.0; ++it) {
    const auto lu = jac.fullPivLu();
    if (!lu.isInvertible()) break;
    const Eigen::Vector2cd step = lu.solve(f);
    const Complex na = a - step[0], nb = b - step[1];
    if (std::abs(na - nb) < 0.5 * std::abs(a - b)) break;
    Eigen::Vector2cd nf;
    Eigen::Matrix2cd njac;
    residual(na, nb, nf, &njac);
    if (!(nf.norm() < f.norm())) break;
    a = na;
    b = nb;
    f = nf;
    jac = njac;
  }
  return {a, b};
}

Complex snap_real(Complex tau) {
  if (std::abs(tau.imag()) <= 1e-8 * (1.0 + std::abs(tau))) return {tau.real(), 0.0};
  return tau;
}

bool at_infinity(const ProjPoint& p) { return std::abs(p[0]) <= 1e-8 * p.norm(); }

// A parameter recovered from a k-fold resultant root is accurate to about
// eps^(1/k); far-away nodes close to a pole must not be mistaken for poles.
bool on_pole(const Parameter& t, const RootSet& poles, int fold) {
  if (t.at_infinity) return false;
  const double tol = 1e3 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / std::max(fold, 1));
  for (const auto& r : poles)
    if (std::abs(t.t - r.z) <= tol * (1.0 + std::abs(r.z))) return true;
  return false;
}

// Number of further parameters sharing the image of the generic parameter tau0.
int extra_preimages(const AuxSystem& aux, double tau0) {
  const BivarPoly<double> h = divided_difference(aux.z[1], aux.z[0]);
  const RealPoly slice(h.t_coeffs_at(tau0));
  if (slice.degree() < 1) return 0;
  const ProjPoint base = aux.at(tau0);
  int extra = 0;
  for (const auto& r : roots(slice))
    if (projective_distance(aux.at(r.z), base) < 1e-8) extra += r.multiplicity;
  return extra;
}

struct Dsu {
  std::vector<std::size_t> parent;
  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(std::size_t i, std::size_t j) { parent[find(i)] = find(j); }
};

std::string format_point(const ProjPoint& p) {
  std::ostringstream os;
  if (std::abs(p[0]) > 0.0) {
    const Complex x = p[1] / p[0], y = p[2] / p[0];
    os << "(" << x.real() << ", " << y.real() << ")";
  } else {
    os << "(0:" << p[1].real() << ":" << p[2].real() << ")";
  }
  return os.str();
}

AuditReport audit_attempt(const RationalPlaneCurve& curve, int attempt) {
  const int n = curve.degree();
  AuditReport report;
  if (n < 3) return report;  // conics have no double points

  const AuxSystem aux = make_aux(curve, attempt);

  const int extra = std::min(extra_preimages(aux, 0.3183), extra_preimages(aux, -0.5772));
  if (extra > 0) {
    report.proper = false;
    report.cover_degree = 1 + extra;
    report.warnings.push_back("improper parametrization: generic image point has " +
                              std::to_string(1 + extra) + " preimages");
    return report;
  }

  const RootSet poles = roots(curve.q());
  const BivarPoly<double> h1 = divided_difference(aux.z[1], aux.z[0]);
  const BivarPoly<double> h2 = divided_difference(aux.z[2], aux.z[0]);
  const auto eig = resultant_roots(h1, h2);
  if (int(eig.size()) != 2 * (n - 1) * (n - 1)) fail("unexpected resultant degree");

  std::vector<Complex> finite;
  for (const auto& e : eig) {
    if (!e.finite()) fail("node parameter at auxiliary infinity");
    finite.push_back(e.value());
  }

  // Spurious solutions: both parameters on the auxiliary line z0 = 0.
  const RootSet section = roots(aux.z[0]);
  std::vector<bool> removed(finite.size(), false);
  for (const auto& r : section) {
    if (r.multiplicity != 1) fail("auxiliary line is tangent to the curve");
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < finite.size(); ++i)
      if (!removed[i]) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      return std::abs(finite[i] - r.z) < std::abs(finite[j] - r.z);
    });
    if (int(order.size()) < n - 1) fail("too few resultant roots");
    for (int k = 0; k < n - 1; ++k) {
      if (std::abs(finite[order[k]] - r.z) > 1e-6 * (1.0 + std::abs(r.z))) fail("spurious roots not isolated");
      removed[order[k]] = true;
    }
  }
  std::vector<Complex> cand;
  for (std::size_t i = 0; i < finite.size(); ++i)
    if (!removed[i]) cand.push_back(finite[i]);

  // Group candidate parameters by coincident image points.
  std::vector<ProjPoint> images;
  for (const auto& tau : cand) images.push_back(aux.at(tau));
  Dsu dsu(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
    for (std::size_t j = i + 1; j < cand.size(); ++j)
      if (projective_distance(images[i], images[j]) < kMatchTol) dsu.unite(i, j);
  std::map<std::size_t, std::vector<std::size_t>> components;
  for (std::size_t i = 0; i < cand.size(); ++i) components[dsu.find(i)].push_back(i);

  for (const auto& [root, members] : components) {
    // distinct parameters inside the component, with their counts
    std::vector<std::pair<Complex, int>> distinct;
    for (std::size_t i : members) {
      bool found = false;
      for (auto& [tau, count] : distinct) {
        if (std::abs(tau - cand[i]) <= 1e-6 * (1.0 + std::abs(tau))) {
          ++count;
          found = true;
          break;
        }
      }
      if (!found) distinct.push_back({cand[i], 1});
    }

    if (distinct.size() == 1) {
      if (distinct[0].second < 2) fail("unmatched resultant root");
      const Complex tau = snap_real(distinct[0].first);
      const Parameter t = aux.to_t(tau);
      if (at_infinity(point_at(curve, t))) continue;
      if (t.is_real()) report.cusp_params.push_back(t.at_infinity ? std::numeric_limits<double>::infinity() : t.t.real());
      continue;
    }

    if (distinct.size() >= 3) {
      MultiplePoint mp;
      for (const auto& [tau, count] : distinct) mp.params.push_back(aux.to_t(snap_real(tau)));
      mp.image = normalized(point_at(curve, mp.params[0]));
      if (at_infinity(point_at(curve, mp.params[0]))) continue;
      report.multiple_points.push_back(mp);
      continue;
    }

    auto [ta, tb] = refine_pair(aux, distinct[0].first, distinct[1].first);
    ta = snap_real(ta);
    tb = snap_real(tb);
    NodeRecord node;
    node.params = {aux.to_t(ta), aux.to_t(tb)};
    const ProjPoint raw_image = point_at(curve, node.params[0]);
    const int fold = std::max(distinct[0].second, distinct[1].second);
    if (on_pole(node.params[0], poles, fold) && on_pole(node.params[1], poles, fold)) continue;
    node.image = normalized(raw_image);
    const bool simple = distinct[0].second == 1 && distinct[1].second == 1;
    if (node.params[0].is_real() && node.params[1].is_real()) {
      node.kind = NodeKind::RealNode;
      const Eigen::Vector2d va = velocity(curve, node.params[0]), vb = velocity(curve, node.params[1]);
      const double sine = std::abs(va[0] * vb[1] - va[1] * vb[0]) / (va.norm() * vb.norm());
      node.transversal = simple && sine > 1e-6;
    } else if (!node.params[0].is_real() && !node.params[1].is_real() &&
               std::abs(tb - std::conj(ta)) <= 1e-6 * (1.0 + std::abs(ta))) {
      node.kind = NodeKind::SolitaryNode;
      node.params[1] = node.params[0].conj();
      node.image = normalized(ProjPoint(raw_image.real().cast<Complex>()));
      node.transversal = simple;
    } else {
      node.kind = NodeKind::ImaginaryNode;
      node.transversal = simple;
    }
    // order the pair: lower imaginary part first, then real part; ∞ last
    auto key = [](const Parameter& p) {
      return std::make_tuple(p.at_infinity, p.t.imag(), p.t.real());
    };
    if (key(node.params[1]) < key(node.params[0])) std::swap(node.params[0], node.params[1]);
    report.nodes.push_back(node);
  }

  std::sort(report.nodes.begin(), report.nodes.end(), [](const NodeRecord& a, const NodeRecord& b) {
    auto key = [](const NodeRecord& r) {
      const ProjPoint& p = r.image;
      return std::make_tuple(int(r.kind), p[1].real(), p[2].real(), p[1].imag(), p[2].imag(), p[0].real());
    };
    return key(a) < key(b);
  });
  std::sort(report.cusp_params.begin(), report.cusp_params.end());
  return report;
}

void assign_verdict(AuditReport& r) {
  r.reasons.clear();
  if (const int k = r.count(NodeKind::SolitaryNode); k > 0)
    r.reasons.push_back("solitary real double points (" + std::to_string(k) + ")");
  for (const auto& node : r.nodes)
    if (node.kind == NodeKind::RealNode && !node.transversal)
      r.reasons.push_back("non-transversal real double point at " + format_point(node.image));
  if (!r.cusp_params.empty())
    r.reasons.push_back("real cusps (" + std::to_string(r.cusp_params.size()) + ")");
  for (const auto& mp : r.multiple_points)
    r.reasons.push_back("point with " + std::to_string(mp.params.size()) + " parameter preimages at " +
                        format_point(mp.image));
  r.admissible = r.reasons.empty();
}

}  // namespace

AuditReport audit(const RationalPlaneCurve& c, const Tolerances&) {
  std::string last;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    try {
      AuditReport r = audit_attempt(c, attempt);
      assign_verdict(r);
      return r;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::AuditFailure && e.kind() != ErrorKind::RootFinding &&
          e.kind() != ErrorKind::Resultant)
        throw;
      last = e.what();
    }
  }
  throw Error(ErrorKind::AuditFailure, last);
}

}  // namespace rcw
