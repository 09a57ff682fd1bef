#include "rcw/poly.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <numbers>
#include <numeric>
#include <sstream>

namespace rcw {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::RootFinding: return "root-finding failure";
    case ErrorKind::Gcd: return "gcd failure";
    case ErrorKind::Resultant: return "resultant failure";
    case ErrorKind::NoncompactRealPole: return "noncompact: real pole";
    case ErrorKind::NoncompactAtInfinity: return "noncompact at parameter infinity";
    case ErrorKind::CuspOnRealLocus: return "cusp on real locus";
    case ErrorKind::AuditFailure: return "audit failure";
    case ErrorKind::WindingNonIntegral: return "winding non-integral";
    case ErrorKind::GenericityNotFound: return "genericity not found";
    case ErrorKind::InternalMismatch: return "internal mismatch";
    case ErrorKind::BasePoint: return "base point";
    case ErrorKind::RealPointAtInfinity: return "real point at infinity";
    case ErrorKind::CensusMismatch: return "census mismatch";
    case ErrorKind::LedgerViolation: return "ledger violation";
    case ErrorKind::DegenerateSample: return "degenerate sample";
    case ErrorKind::GenerationExhausted: return "generation exhausted";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Io: return "i/o error";
  }
  return "unknown";
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Parlett-Reinsch diagonal balancing; eigenvalues are unchanged.
template <typename Matrix>
void balance(Matrix& a) {
  const Eigen::Index n = a.rows();
  bool done = false;
  for (int sweep = 0; !done && sweep < 100; ++sweep) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2) { c *= 2; r /= 2; f *= 2; }
      while (c >= r * 2) { c /= 2; r *= 2; f /= 2; }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

template <typename Scalar>
std::vector<Complex> companion_eigenvalues(const typename Poly<Scalar>::Coeffs& c) {
  // c ascending, c[0] != 0, c[m] != 0
  const Eigen::Index m = c.size() - 1;
  const double sigma = std::pow(std::abs(c[0]) / std::abs(c[m]), 1.0 / double(m));
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat comp = Mat::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) comp(i, i - 1) = Scalar(1);
  double pw = 1.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    comp(k, m - 1) = -c[k] * pw / (c[m] * std::pow(sigma, double(m)));
    pw *= sigma;
  }
  balance(comp);
  std::vector<Complex> out;
  out.reserve(m);
  if constexpr (is_complex_v<Scalar>) {
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::RootFinding, "companion eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < m; ++i) out.push_back(es.eigenvalues()[i] * sigma);
  } else {
    Eigen::EigenSolver<Mat> es(comp, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::RootFinding, "companion eigenvalue iteration did not converge");
    for (Eigen::Index i = 0; i < m; ++i) out.push_back(es.eigenvalues()[i] * sigma);
  }
  return out;
}

template <typename Scalar>
Complex polish(const Poly<Scalar>& p, const Poly<Scalar>& dp, Complex z, int max_iter = 12) {
  Complex pz = p(z);
  for (int it = 0; it < max_iter && pz != 0.0; ++it) {
    const Complex d = dp(z);
    if (d == 0.0) break;
    const Complex step = pz / d;
    const Complex zn = z - step;
    const Complex pn = p(zn);
    if (!(std::abs(pn) < std::abs(pz))) break;
    z = zn;
    pz = pn;
    if (std::abs(step) <= 4 * kEps * std::abs(z)) break;
  }
  return z;
}

struct Cluster {
  std::vector<Complex> members;
  Complex center;
  double radius = 0.0;
};

Cluster merged(const Cluster& a, const Cluster& b) {
  Cluster out;
  out.members = a.members;
  out.members.insert(out.members.end(), b.members.begin(), b.members.end());
  Complex sum = 0.0;
  for (const auto& z : out.members) sum += z;
  out.center = sum / double(out.members.size());
  for (const auto& z : out.members) out.radius = std::max(out.radius, std::abs(z - out.center));
  return out;
}

// Radius within which rounding alone can scatter an m-fold root of p located at c.
template <typename Scalar>
double pseudo_radius(const Poly<Scalar>& p, int m, Complex c, const Tolerances& tol) {
  const double scale = p.magnitude_at(std::abs(c));
  double fact = 1.0;
  for (int j = 2; j <= m; ++j) fact *= j;
  const double local = std::abs(derivative(p, m)(c)) / fact;
  // a vanishing m-th derivative means the cluster is not an m-fold root
  const double spread = local > 0.0 ? 4.0 * std::pow(16 * kEps * scale / local, 1.0 / m) : 0.0;
  return std::max(tol.cluster * (1.0 + std::abs(c)), spread);
}

}  // namespace

template <typename Scalar>
RootSet roots(const Poly<Scalar>& p, const Tolerances& tol) {
  if (p.degree() < 1) throw Error(ErrorKind::InvalidArgument, "roots: polynomial of degree >= 1 required");
  const int deg = p.degree();
  int zeros = 0;
  while (p[zeros] == Scalar(0)) ++zeros;

  std::vector<Complex> raw(zeros, Complex(0.0));
  if (deg - zeros >= 1) {
    typename Poly<Scalar>::Coeffs c = p.coeffs().tail(deg + 1 - zeros);
    const Poly<Scalar> dp = derivative(p);
    for (Complex z : companion_eigenvalues<Scalar>(c)) raw.push_back(polish(p, dp, z));
  }

  std::vector<Cluster> clusters;
  for (const auto& z : raw) clusters.push_back({{z}, z, 0.0});
  for (;;) {
    struct Candidate { double dist; std::size_t i, j; };
    std::vector<Candidate> cands;
    for (std::size_t i = 0; i < clusters.size(); ++i)
      for (std::size_t j = i + 1; j < clusters.size(); ++j)
        cands.push_back({std::abs(clusters[i].center - clusters[j].center), i, j});
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      return a.dist < b.dist || (a.dist == b.dist && std::tie(a.i, a.j) < std::tie(b.i, b.j));
    });
    bool merged_any = false;
    for (const auto& cand : cands) {
      Cluster m = merged(clusters[cand.i], clusters[cand.j]);
      const int mult = int(m.members.size());
      // the centroid of a scattered multiple root is far more accurate than its members
      const bool vanishes = std::abs(p(m.center)) <= 1e3 * kEps * p.magnitude_at(std::abs(m.center));
      if (vanishes && m.radius <= pseudo_radius(p, mult, m.center, tol)) {
        clusters[cand.i] = std::move(m);
        clusters.erase(clusters.begin() + cand.j);
        merged_any = true;
        break;
      }
    }
    if (!merged_any) break;
  }

  RootSet out;
  for (auto& cl : clusters) {
    const int mult = int(cl.members.size());
    Complex z = cl.center;
    if (mult > 1) {
      const Poly<Scalar> dm = derivative(p, mult - 1);
      const Complex zp = polish(dm, derivative(dm), z);
      if (std::abs(zp - z) <= pseudo_radius(p, mult, z, tol)) z = zp;
    }
    out.push_back({z, mult});
  }

  if constexpr (!is_complex_v<Scalar>) {
    for (auto& r : out)
      if (std::abs(r.z.imag()) <= tol.real_snap * (1.0 + std::abs(r.z))) r.z = Complex(r.z.real(), 0.0);
    std::vector<std::size_t> upper, lower;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].z.imag() > 0) upper.push_back(i);
      if (out[i].z.imag() < 0) lower.push_back(i);
    }
    std::vector<bool> used(out.size(), false);
    for (std::size_t ui : upper) {
      std::size_t best = out.size();
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t li : lower) {
        if (used[li] || out[li].multiplicity != out[ui].multiplicity) continue;
        const double d = std::abs(out[li].z - std::conj(out[ui].z));
        if (d < best_d) { best_d = d; best = li; }
      }
      if (best == out.size()) throw Error(ErrorKind::RootFinding, "roots of a real polynomial are not conjugation-closed");
      used[best] = true;
      out[best].z = std::conj(out[ui].z);
    }
    for (std::size_t li : lower)
      if (!used[li]) throw Error(ErrorKind::RootFinding, "roots of a real polynomial are not conjugation-closed");
  }

  const double cmax = p.norm_inf();
  for (const auto& r : out) {
    const double bound = tol.residual * cmax * std::pow(1.0 + std::abs(r.z), deg);
    if (!(std::abs(p(r.z)) <= bound)) {
      std::ostringstream os;
      os << "root-finding failure: residual " << std::abs(p(r.z)) << " exceeds " << bound << " at " << r.z;
      throw Error(ErrorKind::RootFinding, os.str());
    }
  }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return out;
}

template RootSet roots<double>(const RealPoly&, const Tolerances&);
template RootSet roots<Complex>(const ComplexPoly&, const Tolerances&);

std::vector<Root> real_roots(const RootSet& rs) {
  std::vector<Root> out;
  for (const auto& r : rs)
    if (r.z.imag() == 0.0) out.push_back(r);
  return out;
}

int total_multiplicity(const RootSet& rs) {
  return std::accumulate(rs.begin(), rs.end(), 0, [](int acc, const Root& r) { return acc + r.multiplicity; });
}

namespace {

// Largest j <= cap with p^(k)(z)/k! negligible for all k < j.
int vanishing_order(const RealPoly& p, Complex z, int cap, double rel) {
  if (p.is_zero()) return cap;
  RealPoly d = p;
  double fact = 1.0;
  for (int k = 0; k < cap; ++k) {
    if (k > 0) {
      d = derivative(d);
      fact *= k;
    }
    if (d.is_zero()) return cap;
    if (std::abs(d(z)) / fact > rel * d.magnitude_at(std::abs(z)) / fact) return k;
  }
  return cap;
}

}  // namespace

GcdResult gcd_clear(std::span<const RealPoly> ps, const Tolerances& tol) {
  const RealPoly* lowest = nullptr;
  for (const auto& p : ps)
    if (!p.is_zero() && (lowest == nullptr || p.degree() < lowest->degree())) lowest = &p;
  if (lowest == nullptr) throw Error(ErrorKind::Gcd, "gcd failure: all inputs are zero");

  GcdResult out;
  out.divisor = RealPoly::constant(1.0);
  if (lowest->degree() >= 1) {
    constexpr double kRel = 1e-8;
    ComplexPoly divisor = ComplexPoly::constant(1.0);
    for (const auto& r : roots(*lowest, tol)) {
      int common = r.multiplicity;
      for (const auto& p : ps) common = std::min(common, vanishing_order(p, r.z, common, kRel));
      for (int k = 0; k < common; ++k) divisor *= ComplexPoly::linear_factor(r.z);
    }
    out.divisor = real_part(divisor);
  }
  for (const auto& p : ps) {
    if (p.is_zero() || out.divisor.degree() == 0) {
      out.quotients.push_back(p);
      continue;
    }
    auto [quot, rem] = divmod(p, out.divisor);
    if (rem.norm_inf() > 1e-7 * p.norm_inf())
      throw Error(ErrorKind::Gcd, "gcd failure: ill-conditioned division by the common divisor");
    out.quotients.push_back(quot);
  }
  return out;
}

namespace {

template <typename Scalar>
auto sylvester_at(const BivarPoly<Scalar>& h1, const BivarPoly<Scalar>& h2, Scalar s) {
  return sylvester_matrix(h1.t_coeffs_at(s), h2.t_coeffs_at(s));
}

template <typename Mat>
double hadamard_bound(const Mat& m) {
  double b = 1.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) b *= m.row(i).norm();
  return b;
}

template <typename Mat>
auto determinant(const Mat& m) {
  using S = typename Mat::Scalar;
  if (m.rows() == 0) return S(1);
  return m.fullPivLu().determinant();
}

}  // namespace

double sylvester_relative_det(const BivarPoly<double>& h1, const BivarPoly<double>& h2, Complex s) {
  const auto m = sylvester_matrix(h1.t_coeffs_at(s), h2.t_coeffs_at(s));
  if (m.rows() == 0) return 1.0;
  const double h = hadamard_bound(m);
  return h == 0.0 ? 0.0 : std::abs(determinant(m)) / h;
}

template <typename Scalar>
Resultant<Scalar> resultant_t(const BivarPoly<Scalar>& h1, const BivarPoly<Scalar>& h2) {
  if (h1.is_zero() || h2.is_zero()) return {Poly<Scalar>(), true};
  const int dt1 = h1.degree_t(), dt2 = h2.degree_t();
  const int bound = dt2 * h1.degree_s() + dt1 * h2.degree_s();
  const int n = bound + 1;

  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Vec nodes(n), values(n);
  bool all_tiny = true;
  double max_abs = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = std::cos(std::numbers::pi * (k + 0.5) / n);
    nodes[k] = Scalar(x);
    const Mat syl = sylvester_at(h1, h2, Scalar(x));
    values[k] = determinant(syl);
    max_abs = std::max(max_abs, std::abs(values[k]));
    if (std::abs(values[k]) > 1e-11 * hadamard_bound(syl)) all_tiny = false;
  }
  if (all_tiny) return {Poly<Scalar>(), true};

  Mat vander(n, n);
  for (int k = 0; k < n; ++k) {
    Scalar pw(1);
    for (int j = 0; j < n; ++j) {
      vander(k, j) = pw;
      pw *= nodes[k];
    }
  }
  Vec coeffs = vander.colPivHouseholderQr().solve(values);
  const double cmax = coeffs.cwiseAbs().maxCoeff();
  for (int j = 0; j < n; ++j)
    if (std::abs(coeffs[j]) <= 64 * kEps * cmax) coeffs[j] = Scalar(0);
  Poly<Scalar> res(coeffs);

  for (double x : {0.3137, -0.7771, 0.9123}) {
    const Scalar direct = determinant(sylvester_at(h1, h2, Scalar(x)));
    if (std::abs(direct - res(Scalar(x))) > 1e-6 * std::max(max_abs, std::abs(direct)))
      throw Error(ErrorKind::Resultant, "resultant failure: interpolation does not reproduce the determinant");
  }
  return {res, false};
}

template Resultant<double> resultant_t<double>(const BivarPoly<double>&, const BivarPoly<double>&);
template Resultant<Complex> resultant_t<Complex>(const BivarPoly<Complex>&, const BivarPoly<Complex>&);

std::vector<HomogeneousRoot> resultant_roots(const BivarPoly<double>& h1, const BivarPoly<double>& h2) {
  if (h1.is_zero() || h2.is_zero()) throw Error(ErrorKind::Resultant, "resultant failure: zero input");
  const int dt1 = h1.degree_t(), dt2 = h2.degree_t();
  const int m = dt1 + dt2;
  const int d = std::max(h1.degree_s(), h2.degree_s());
  if (m == 0 || d == 0) return {};

  // Sylvester matrix polynomial S(s) = sum_k A_k s^k
  std::vector<Eigen::MatrixXd> a(d + 1, Eigen::MatrixXd::Zero(m, m));
  for (int i = 0; i < dt2; ++i)
    for (int k = 0; k <= dt1; ++k)
      for (int j = 0; j <= h1.degree_s(); ++j) a[j](i, i + k) = h1.coeffs()(j, dt1 - k);
  for (int i = 0; i < dt1; ++i)
    for (int k = 0; k <= dt2; ++k)
      for (int j = 0; j <= h2.degree_s(); ++j) a[j](dt2 + i, i + k) = h2.coeffs()(j, dt2 - k);

  const int big = m * d;
  Eigen::MatrixXd x = Eigen::MatrixXd::Identity(big, big);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(big, big);
  x.topLeftCorner(m, m) = a[d];
  for (int k = 0; k < d; ++k) y.block(0, k * m, m, m) = a[d - 1 - k];
  for (int k = 1; k < d; ++k) y.block(k * m, (k - 1) * m, m, m) = -Eigen::MatrixXd::Identity(m, m);

  std::vector<HomogeneousRoot> out;
  out.reserve(big);
  Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
  ges.compute(-y, x, false);
  if (ges.info() == Eigen::Success) {
    for (int i = 0; i < big; ++i) out.push_back({ges.alphas()[i], ges.betas()[i]});
    return out;
  }
  // QZ occasionally stalls; with a well-conditioned leading block the
  // standard eigenproblem of X^-1 Y has the same finite eigenvalues.
  const Eigen::FullPivLU<Eigen::MatrixXd> lead(a[d]);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a[d]);
  const auto sv = svd.singularValues();
  if (!lead.isInvertible() || sv[sv.size() - 1] < 1e-8 * sv[0])
    throw Error(ErrorKind::Resultant, "resultant failure: QZ iteration did not converge");
  Eigen::MatrixXd xinv_y = -y;
  xinv_y.topRows(m) = lead.solve(xinv_y.topRows(m));
  Eigen::EigenSolver<Eigen::MatrixXd> es(xinv_y, false);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::Resultant, "resultant failure: eigenvalue iteration did not converge");
  for (int i = 0; i < big; ++i) out.push_back({es.eigenvalues()[i], 1.0});
  return out;
}

}  // namespace rcw
