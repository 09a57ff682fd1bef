#pragma once

// Dense univariate and bivariate polynomials over double or std::complex<double>,
// plus the numerical kernels built on them: root finding with multiplicity
// clustering, approximate gcd clearing and bivariate resultants.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "rcw/errors.hpp"

namespace rcw {

using Complex = std::complex<double>;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Tolerance profile shared by the numerical kernels.
struct Tolerances {
  double residual = 1e-10;
  double cluster = 1e-7;
  double real_snap = 1e-8;
};

/// Polynomial with coefficients stored in ascending degree. The leading
/// coefficient is nonzero; the zero polynomial has no coefficients and
/// degree kZeroDegree.
template <typename Scalar>
class Poly {
 public:
  using Coeffs = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  static constexpr int kZeroDegree = std::numeric_limits<int>::min();

  Poly() = default;
  explicit Poly(Coeffs coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<Scalar> coeffs) : c_(Eigen::Index(coeffs.size())) {
    std::copy(coeffs.begin(), coeffs.end(), c_.data());
    trim();
  }
  explicit Poly(const std::vector<Scalar>& coeffs) : c_(Eigen::Index(coeffs.size())) {
    std::copy(coeffs.begin(), coeffs.end(), c_.data());
    trim();
  }

  static Poly constant(Scalar v) { return Poly({v}); }
  static Poly monomial(int k, Scalar v = Scalar(1)) {
    Coeffs c = Coeffs::Zero(k + 1);
    c[k] = v;
    return Poly(std::move(c));
  }
  /// x - root
  static Poly linear_factor(Scalar root) { return Poly({-root, Scalar(1)}); }

  int degree() const { return c_.size() == 0 ? kZeroDegree : int(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 0; }
  const Coeffs& coeffs() const { return c_; }
  Scalar operator[](int k) const {
    return (k >= 0 && k < c_.size()) ? c_[k] : Scalar(0);
  }
  Scalar leading() const { return is_zero() ? Scalar(0) : c_[c_.size() - 1]; }
  double norm_inf() const { return is_zero() ? 0.0 : c_.cwiseAbs().maxCoeff(); }

  /// Horner evaluation; a real polynomial evaluated at a complex point yields a complex value.
  template <typename T>
  auto operator()(const T& z) const {
    using R = decltype(Scalar() * T());
    R acc(0);
    for (Eigen::Index k = c_.size() - 1; k >= 0; --k) acc = acc * z + R(c_[k]);
    return acc;
  }

  /// Sum of |a_k| |z|^k, the natural scale for the rounding error of p(z).
  double magnitude_at(double abs_z) const {
    double acc = 0.0;
    for (Eigen::Index k = c_.size() - 1; k >= 0; --k) acc = acc * abs_z + std::abs(c_[k]);
    return acc;
  }

  Poly& operator+=(const Poly& o) {
    Coeffs r = Coeffs::Zero(std::max(c_.size(), o.c_.size()));
    r.head(c_.size()) = c_;
    r.head(o.c_.size()) += o.c_;
    c_ = std::move(r);
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    Coeffs r = Coeffs::Zero(std::max(c_.size(), o.c_.size()));
    r.head(c_.size()) = c_;
    r.head(o.c_.size()) -= o.c_;
    c_ = std::move(r);
    trim();
    return *this;
  }
  Poly& operator*=(const Poly& o) {
    if (is_zero() || o.is_zero()) {
      c_.resize(0);
      return *this;
    }
    Coeffs r = Coeffs::Zero(c_.size() + o.c_.size() - 1);
    for (Eigen::Index i = 0; i < c_.size(); ++i)
      r.segment(i, o.c_.size()) += c_[i] * o.c_;
    c_ = std::move(r);
    trim();
    return *this;
  }
  Poly& operator*=(Scalar s) {
    c_ *= s;
    trim();
    return *this;
  }
  Poly& operator/=(Scalar s) {
    c_ /= s;
    trim();
    return *this;
  }
  Poly operator-() const { return Poly(Coeffs(-c_)); }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, Scalar s) { return a *= s; }
  friend Poly operator*(Scalar s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, Scalar s) { return a /= s; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.c_.size() == b.c_.size() && a.c_ == b.c_;
  }

 private:
  void trim() {
    Eigen::Index n = c_.size();
    while (n > 0 && c_[n - 1] == Scalar(0)) --n;
    if (n != c_.size()) c_.conservativeResize(n);
  }

  Coeffs c_;
};

using RealPoly = Poly<double>;
using ComplexPoly = Poly<Complex>;

template <typename Scalar>
Poly<Scalar> derivative(const Poly<Scalar>& p, int order = 1) {
  if (p.degree() < order) return {};
  typename Poly<Scalar>::Coeffs d(p.degree() + 1 - order);
  for (int k = order; k <= p.degree(); ++k) {
    double f = 1.0;
    for (int j = 0; j < order; ++j) f *= double(k - j);
    d[k - order] = p[k] * f;
  }
  return Poly<Scalar>(std::move(d));
}

/// Euclidean division a = quot * b + rem with deg rem < deg b.
template <typename Scalar>
std::pair<Poly<Scalar>, Poly<Scalar>> divmod(const Poly<Scalar>& a, const Poly<Scalar>& b) {
  if (b.is_zero()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly<Scalar>(), a};
  typename Poly<Scalar>::Coeffs rem = a.coeffs();
  typename Poly<Scalar>::Coeffs quot = Poly<Scalar>::Coeffs::Zero(a.degree() - b.degree() + 1);
  const Scalar lead = b.leading();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    const Scalar f = rem[k + b.degree()] / lead;
    quot[k] = f;
    rem.segment(k, b.degree() + 1) -= f * b.coeffs();
    rem[k + b.degree()] = Scalar(0);
  }
  rem.conservativeResize(std::max(b.degree(), 0));
  return {Poly<Scalar>(std::move(quot)), Poly<Scalar>(std::move(rem))};
}

/// p(-t)
template <typename Scalar>
Poly<Scalar> negate_argument(const Poly<Scalar>& p) {
  typename Poly<Scalar>::Coeffs c = p.coeffs();
  for (Eigen::Index k = 1; k < c.size(); k += 2) c[k] = -c[k];
  return Poly<Scalar>(std::move(c));
}

/// s^n p(-1/s): the chart at parameter infinity with s = -1/t.
template <typename Scalar>
Poly<Scalar> infinity_chart(const Poly<Scalar>& p, int n) {
  typename Poly<Scalar>::Coeffs c = Poly<Scalar>::Coeffs::Zero(n + 1);
  for (int k = 0; k <= std::min(p.degree(), n); ++k)
    c[n - k] = (k % 2 == 0) ? p[k] : -p[k];
  return Poly<Scalar>(std::move(c));
}

/// (c t + d)^n p((a t + b)/(c t + d))
template <typename Scalar>
Poly<Scalar> mobius_transform(const Poly<Scalar>& p, int n, double a, double b, double c, double d) {
  const Poly<Scalar> num({Scalar(b), Scalar(a)});
  const Poly<Scalar> den({Scalar(d), Scalar(c)});
  std::vector<Poly<Scalar>> num_pow{Poly<Scalar>::constant(Scalar(1))};
  std::vector<Poly<Scalar>> den_pow{Poly<Scalar>::constant(Scalar(1))};
  for (int k = 1; k <= n; ++k) {
    num_pow.push_back(num_pow.back() * num);
    den_pow.push_back(den_pow.back() * den);
  }
  Poly<Scalar> out;
  for (int k = 0; k <= std::min(p.degree(), n); ++k)
    out += p[k] * (num_pow[k] * den_pow[n - k]);
  return out;
}

template <typename To, typename From>
Poly<To> poly_cast(const Poly<From>& p) {
  return Poly<To>(typename Poly<To>::Coeffs(p.coeffs().template cast<To>()));
}

inline RealPoly real_part(const ComplexPoly& p) {
  return RealPoly(RealPoly::Coeffs(p.coeffs().real()));
}

template <typename Scalar>
Poly<Scalar> monic(const Poly<Scalar>& p) {
  if (p.is_zero()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no monic form");
  return p / p.leading();
}

/// Drops leading coefficients whose magnitude is below rel * max|coeff|.
template <typename Scalar>
Poly<Scalar> trim_leading(const Poly<Scalar>& p, double rel) {
  if (p.is_zero()) return p;
  const double cut = rel * p.norm_inf();
  int n = p.degree();
  while (n >= 0 && std::abs(p[n]) <= cut) --n;
  return Poly<Scalar>(typename Poly<Scalar>::Coeffs(p.coeffs().head(n + 1)));
}

/// Bivariate polynomial; coeffs()(j, k) multiplies s^j t^k.
template <typename Scalar>
class BivarPoly {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BivarPoly() = default;
  explicit BivarPoly(Matrix c) : c_(std::move(c)) { trim(); }

  const Matrix& coeffs() const { return c_; }
  bool is_zero() const { return c_.size() == 0; }
  int degree_s() const { return is_zero() ? Poly<Scalar>::kZeroDegree : int(c_.rows()) - 1; }
  int degree_t() const { return is_zero() ? Poly<Scalar>::kZeroDegree : int(c_.cols()) - 1; }

  /// Coefficients in t after fixing s, kept at the formal t-degree (no trimming).
  template <typename T>
  auto t_coeffs_at(const T& s) const {
    using R = decltype(Scalar() * T());
    Eigen::Matrix<R, Eigen::Dynamic, 1> out = Eigen::Matrix<R, Eigen::Dynamic, 1>::Zero(c_.cols());
    for (Eigen::Index k = 0; k < c_.cols(); ++k) {
      R acc(0);
      for (Eigen::Index j = c_.rows() - 1; j >= 0; --j) acc = acc * s + R(c_(j, k));
      out[k] = acc;
    }
    return out;
  }

  template <typename T>
  auto at_s(const T& s) const {
    using R = decltype(Scalar() * T());
    return Poly<R>(t_coeffs_at(s));
  }

  template <typename T>
  auto operator()(const T& s, const T& t) const {
    return at_s(s)(t);
  }

 private:
  void trim() {
    Eigen::Index rows = c_.rows(), cols = c_.cols();
    while (rows > 0 && (c_.row(rows - 1).head(cols).array() == Scalar(0)).all()) --rows;
    while (cols > 0 && (c_.col(cols - 1).head(rows).array() == Scalar(0)).all()) --cols;
    if (rows == 0 || cols == 0) {
      c_.resize(0, 0);
    } else if (rows != c_.rows() || cols != c_.cols()) {
      c_ = Matrix(c_.topLeftCorner(rows, cols));
    }
  }

  Matrix c_;
};

/// (p(s) q(t) - p(t) q(s)) / (s - t), exact coefficient-wise.
template <typename Scalar>
BivarPoly<Scalar> divided_difference(const Poly<Scalar>& p, const Poly<Scalar>& q) {
  const int n = std::max({p.degree(), q.degree(), 1});
  typename BivarPoly<Scalar>::Matrix c = BivarPoly<Scalar>::Matrix::Zero(n, n);
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      if (a == b) continue;
      const Scalar coef = p[a] * q[b];
      if (coef == Scalar(0)) continue;
      // coef * (s^a t^b - s^b t^a) / (s - t)
      const int lo = std::min(a, b);
      const int gap = std::abs(a - b);
      const Scalar signed_coef = a > b ? coef : -coef;
      for (int i = 0; i < gap; ++i) c(lo + i, lo + gap - 1 - i) += signed_coef;
    }
  }
  return BivarPoly<Scalar>(std::move(c));
}

/// Sylvester matrix of f (formal degree df) and g (formal degree dg), coefficient
/// vectors ascending. det equals Res(f, g).
template <typename Vec>
auto sylvester_matrix(const Vec& f, const Vec& g) {
  using S = typename Vec::Scalar;
  const Eigen::Index df = f.size() - 1, dg = g.size() - 1;
  const Eigen::Index m = df + dg;
  Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic> out =
      Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
  for (Eigen::Index i = 0; i < dg; ++i)
    for (Eigen::Index k = 0; k <= df; ++k) out(i, i + k) = f[df - k];
  for (Eigen::Index i = 0; i < df; ++i)
    for (Eigen::Index k = 0; k <= dg; ++k) out(dg + i, i + k) = g[dg - k];
  return out;
}

struct Root {
  Complex z;
  int multiplicity = 1;
};
using RootSet = std::vector<Root>;

/// All complex roots with multiplicities. For real input the set is closed
/// under conjugation (bit-equal pairs) and near-real roots sit exactly on the
/// real axis. Throws ErrorKind::RootFinding when the residual bound fails.
template <typename Scalar>
RootSet roots(const Poly<Scalar>& p, const Tolerances& tol = {});

extern template RootSet roots<double>(const RealPoly&, const Tolerances&);
extern template RootSet roots<Complex>(const ComplexPoly&, const Tolerances&);

/// Real roots (imaginary part exactly zero after snapping), ascending, with multiplicity.
std::vector<Root> real_roots(const RootSet& rs);
int total_multiplicity(const RootSet& rs);

struct GcdResult {
  std::vector<RealPoly> quotients;
  RealPoly divisor;  // monic
};

/// Divides the inputs by their approximate common divisor.
GcdResult gcd_clear(std::span<const RealPoly> ps, const Tolerances& tol = {});

template <typename Scalar>
struct Resultant {
  Poly<Scalar> value;
  bool vanishes = false;
};

/// Res_t(h1, h2) as a polynomial in s by sampling the Sylvester determinant at
/// Chebyshev nodes and interpolating up to the Sylvester degree bound.
template <typename Scalar>
Resultant<Scalar> resultant_t(const BivarPoly<Scalar>& h1, const BivarPoly<Scalar>& h2);

extern template Resultant<double> resultant_t<double>(const BivarPoly<double>&, const BivarPoly<double>&);
extern template Resultant<Complex> resultant_t<Complex>(const BivarPoly<Complex>&, const BivarPoly<Complex>&);

/// Relative size of det Syl(s) against its Hadamard bound; ~0 when the
/// resultant vanishes at s.
double sylvester_relative_det(const BivarPoly<double>& h1, const BivarPoly<double>& h2, Complex s);

/// Root of the resultant in homogeneous form s = alpha / beta (beta == 0 at infinity).
struct HomogeneousRoot {
  Complex alpha;
  double beta = 1.0;
  bool finite(double rel = 1e-13) const { return std::abs(beta) > rel * std::abs(alpha); }
  Complex value() const { return alpha / beta; }
};

/// Roots of Res_t(h1, h2) in s, computed as generalized eigenvalues of the
/// first companion linearization of the Sylvester matrix polynomial.
std::vector<HomogeneousRoot> resultant_roots(const BivarPoly<double>& h1, const BivarPoly<double>& h2);

}  // namespace rcw
