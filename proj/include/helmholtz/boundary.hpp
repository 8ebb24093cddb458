#pragma once

// Order-by-order Fourier description of a lambda-family of closed star-shaped
// boundaries r(theta; lambda) = R0(lambda) [1 + lambda f1 + lambda^2 f2 + ...]
// expanded about the equal-area circle, with closed-form generators for
// supercircles and ellipses and a quadrature-based fallback for arbitrary
// smooth families.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "helmholtz/specfun.hpp"

namespace helmholtz::boundary {

/// One expansion order sigma: f^(sigma)(theta) = sum_n [C_n cos + S_n sin](n theta).
/// Coefficients beyond n_max are implicitly zero.
struct FourierOrder {
  int sigma = 1;
  std::vector<double> cos_coeffs;  // index n = 0..n_max
  std::vector<double> sin_coeffs;

  int n_max() const { return static_cast<int>(cos_coeffs.size()) - 1; }
  double c(int n) const {
    return (n >= 0 && n < static_cast<int>(cos_coeffs.size())) ? cos_coeffs[static_cast<size_t>(n)]
                                                               : 0.0;
  }
  double s(int n) const {
    return (n >= 1 && n < static_cast<int>(sin_coeffs.size())) ? sin_coeffs[static_cast<size_t>(n)]
                                                               : 0.0;
  }
  double evaluate(double theta) const {
    double v = c(0);
    for (int n = 1; n <= n_max(); ++n)
      v += c(n) * std::cos(n * theta) + s(n) * std::sin(n * theta);
    return v;
  }
};

enum class Provenance { Supercircle, Ellipse, Numeric };

/// Lame curve |x|^t + |y|^t = a^t. t >= 1 keeps the curve convex; t = 2 is the
/// circle and the deformation parameter of the family is lambda = t - 2.
struct SupercircleSpec {
  double t = 2.0;
  double a = 1.0;
};

/// Semi-axes a >= b; the family's deformation parameter is (a-b)/(a+b).
struct EllipseSpec {
  double a = 1.0;
  double b = 1.0;
};

class FourierBoundary {
 public:
  FourierBoundary(double r0, double lambda, FourierOrder order1, FourierOrder order2,
                  Provenance provenance)
      : r0_(r0),
        lambda_(lambda),
        order1_(std::move(order1)),
        order2_(std::move(order2)),
        provenance_(provenance) {
    if (!(r0_ > 0.0)) throw std::invalid_argument("FourierBoundary: R0 must be positive");
    order1_.sigma = 1;
    order2_.sigma = 2;
  }

  double r0() const { return r0_; }
  double lambda() const { return lambda_; }
  Provenance provenance() const { return provenance_; }
  const FourierOrder& order(int sigma) const {
    if (sigma == 1) return order1_;
    if (sigma == 2) return order2_;
    throw std::invalid_argument("FourierBoundary: only orders 1 and 2 are carried");
  }

  bool has_sine_terms(double tol = 1e-12) const {
    for (const auto& o : {order1_, order2_})
      for (double v : o.sin_coeffs)
        if (std::fabs(v) > tol) return true;
    return false;
  }

  /// Truncated reconstruction R0 [1 + lam f1 + lam^2 f2] at this boundary's lambda.
  double radius(double theta) const { return radius(theta, lambda_); }
  double radius(double theta, double lam) const {
    return r0_ * (1.0 + lam * order1_.evaluate(theta) + lam * lam * order2_.evaluate(theta));
  }

 private:
  double r0_;
  double lambda_;
  FourierOrder order1_;
  FourierOrder order2_;
  Provenance provenance_;
};

// ---------------------------------------------------------------------------
// quadrature helpers (uniform periodic grid: trapezoid = plain average)
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<double> uniform_grid(int nodes) {
  std::vector<double> th(static_cast<size_t>(nodes));
  for (int i = 0; i < nodes; ++i) th[static_cast<size_t>(i)] = 2.0 * M_PI * i / nodes;
  return th;
}

// Projects samples on a uniform periodic grid onto cos/sin harmonics 0..n_max.
// Extended-precision accumulation: the lambda-difference stencils upstream
// carry weights ~1/h^2, so double-width sums would leave ~1e-9 noise on the
// small coefficients.
inline FourierOrder project(const std::vector<long double>& values, int n_max, int sigma) {
  const int n = static_cast<int>(values.size());
  FourierOrder out;
  out.sigma = sigma;
  out.cos_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  out.sin_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  long double mean = 0.0L;
  for (long double v : values) mean += v;
  out.cos_coeffs[0] = static_cast<double>(mean / n);
  for (int h = 1; h <= n_max; ++h) {
    long double sc = 0.0L, ss = 0.0L;
    for (int i = 0; i < n; ++i) {
      const double ang = 2.0 * M_PI * h * i / n;
      sc += values[static_cast<size_t>(i)] * std::cos(ang);
      ss += values[static_cast<size_t>(i)] * std::sin(ang);
    }
    out.cos_coeffs[static_cast<size_t>(h)] = static_cast<double>(2.0L * sc / n);
    out.sin_coeffs[static_cast<size_t>(h)] = static_cast<double>(2.0L * ss / n);
  }
  return out;
}

inline long double equal_area_radius_ld(const std::function<double(double)>& r, int nodes) {
  long double acc = 0.0L;
  for (int i = 0; i < nodes; ++i) {
    const long double ri = r(2.0 * M_PI * i / nodes);
    if (!(ri > 0.0L)) throw std::domain_error("equal_area_radius: non-positive radius sample");
    acc += ri * ri;
  }
  return sqrtl(acc / nodes);
}

}  // namespace detail

/// Equal-area radius R0 = sqrt((1/2pi) \int r^2 dtheta) by periodic trapezoid
/// quadrature (spectrally accurate for analytic r).
inline double equal_area_radius(const std::function<double(double)>& r, int nodes = 1024) {
  if (nodes < 512) throw std::invalid_argument("equal_area_radius: need >= 512 nodes");
  return static_cast<double>(detail::equal_area_radius_ld(r, nodes));
}

// ---------------------------------------------------------------------------
// closed-form family shapes
// ---------------------------------------------------------------------------

/// r(theta) of the supercircle |x|^t + |y|^t = a^t.
inline double supercircle_radius(double t, double a, double theta) {
  const double c = std::fabs(std::cos(theta)), s = std::fabs(std::sin(theta));
  return a * std::pow(std::pow(c, t) + std::pow(s, t), -1.0 / t);
}

/// dr/dtheta of the supercircle.
inline double supercircle_dradius(double t, double a, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double ac = std::fabs(c), as = std::fabs(s);
  const double g = std::pow(ac, t) + std::pow(as, t);
  const double dg = t * (-std::pow(ac, t - 1.0) * (c < 0 ? -1.0 : 1.0) * s +
                         std::pow(as, t - 1.0) * (s < 0 ? -1.0 : 1.0) * c);
  return -(a / t) * std::pow(g, -1.0 / t - 1.0) * dg;
}

/// Closed-form equal-area radius of the supercircle, a sqrt(A(t)/pi) with the
/// Gamma-duplication form of the area (stable for every t >= 1).
inline double supercircle_equal_area_radius(double t, double a = 1.0) {
  const double area = 4.0 * std::sqrt(M_PI) * specfun::gamma_fn(1.0 + 1.0 / t) /
                      (std::pow(2.0, 2.0 / t) * specfun::gamma_fn(0.5 + 1.0 / t));
  return a * std::sqrt(area / M_PI);
}

inline double ellipse_radius(double a, double b, double theta) {
  const double bc = b * std::cos(theta), as = a * std::sin(theta);
  return a * b / std::sqrt(bc * bc + as * as);
}

inline double ellipse_dradius(double a, double b, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  const double d = b * b * c * c + a * a * s * s;
  return -a * b * (a * a - b * b) * s * c / (d * std::sqrt(d));
}

// ---------------------------------------------------------------------------
// numeric order extraction for an arbitrary family r(theta, lambda)
// ---------------------------------------------------------------------------

/// First-order profile f1 = d(r/R0)/dlambda at lambda = 0, central differences
/// with one Richardson level (h and 2h), projected on the harmonic basis.
inline FourierOrder fourier_order1_numeric(
    const std::function<double(double, double)>& family, int n_max, double h = 1e-3,
    int nodes = 2048) {
  const auto th = detail::uniform_grid(nodes);
  std::vector<long double> d1(static_cast<size_t>(nodes), 0.0L);
  for (int s : {-2, -1, 1, 2}) {
    const double lam = s * h;
    const long double r0 =
        detail::equal_area_radius_ld([&](double a) { return family(a, lam); }, nodes);
    const long double w = (s == 1 ? 8.0L : s == -1 ? -8.0L : s == 2 ? -1.0L : 1.0L) / (12.0L * h);
    for (int i = 0; i < nodes; ++i)
      d1[static_cast<size_t>(i)] += w * family(th[static_cast<size_t>(i)], lam) / r0;
  }
  return detail::project(d1, n_max, 1);
}

/// Second-order profile f2 = (1/2) d^2(r/R0)/dlambda^2 at lambda = 0, again
/// with one Richardson level, projected on the harmonic basis.
inline FourierOrder fourier_order2_numeric(
    const std::function<double(double, double)>& family, int n_max, double h = 1e-3,
    int nodes = 2048) {
  const auto th = detail::uniform_grid(nodes);
  std::vector<long double> f0(static_cast<size_t>(nodes)), d2(static_cast<size_t>(nodes), 0.0L);
  {
    const long double r0 =
        detail::equal_area_radius_ld([&](double a) { return family(a, 0.0); }, nodes);
    for (int i = 0; i < nodes; ++i)
      f0[static_cast<size_t>(i)] = family(th[static_cast<size_t>(i)], 0.0) / r0;
  }
  // five-point second-derivative stencil (-1, 16, -30, 16, -1)/(12 h^2),
  // i.e. one Richardson level on the centered difference; halved at the end
  // for the series convention f2 = (d^2/dlambda^2)(r/R0) / 2.
  for (int s : {-2, -1, 1, 2}) {
    const double lam = s * h;
    const long double r0 =
        detail::equal_area_radius_ld([&](double a) { return family(a, lam); }, nodes);
    const long double w = (std::abs(s) == 1 ? 16.0L : -1.0L) / (12.0L * h * h);
    for (int i = 0; i < nodes; ++i)
      d2[static_cast<size_t>(i)] += w * family(th[static_cast<size_t>(i)], lam) / r0;
  }
  const long double w0 = -30.0L / (12.0L * h * h);
  for (int i = 0; i < nodes; ++i)
    d2[static_cast<size_t>(i)] =
        0.5L * (d2[static_cast<size_t>(i)] + w0 * f0[static_cast<size_t>(i)]);
  return detail::project(d2, n_max, 2);
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

/// Closed-form second-order coefficient C_4^(2) of the supercircle family.
inline double supercircle_c4_order2_closed_form() {
  return (1.0 / 32.0) * (3.0 * M_PI * M_PI / 8.0 - 23.0 / 9.0);
}

/// Supercircle family about t = 2: lambda = t - 2, C_{4n}^(1) = -1/(4n(4n^2-1))
/// in closed form, second order filled in by the numeric projection.
inline FourierBoundary supercircle_boundary(const SupercircleSpec& spec, int n_max = 64) {
  if (std::fabs(spec.t - 2.0) > 1.5 || spec.t < 1.0)
    throw std::domain_error("supercircle_boundary: t must lie in [1, 3.5]");
  if (!(spec.a > 0.0)) throw std::domain_error("supercircle_boundary: a must be positive");
  if (n_max % 4 != 0 || n_max < 8 || n_max > 64)
    throw std::invalid_argument("supercircle_boundary: n_max must be a multiple of 4 in [8, 64]");

  FourierOrder o1;
  o1.sigma = 1;
  o1.cos_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  o1.sin_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  for (int n = 1; 4 * n <= n_max; ++n)
    o1.cos_coeffs[static_cast<size_t>(4 * n)] = -1.0 / (4.0 * n * (4.0 * n * n - 1.0));

  // 8192 nodes: the integrand is only C^1 at the axis points for non-even t,
  // so the quadrature converges algebraically; this grid keeps the numeric
  // C_4^(2) within ~1e-10 of the closed form.
  FourierOrder o2 = fourier_order2_numeric(
      [&spec](double theta, double lam) { return supercircle_radius(2.0 + lam, spec.a, theta); },
      n_max, 1e-3, 8192);
  // The family is 4-fold symmetric; scrub the quadrature noise off the
  // harmonics that vanish identically.
  for (int n = 0; n <= n_max; ++n) {
    if (n % 4 != 0) o2.cos_coeffs[static_cast<size_t>(n)] = 0.0;
    o2.sin_coeffs[static_cast<size_t>(n)] = 0.0;
  }

  return FourierBoundary(supercircle_equal_area_radius(spec.t, spec.a), spec.t - 2.0,
                         std::move(o1), std::move(o2), Provenance::Supercircle);
}

/// Ellipse family: lambda = (a-b)/(a+b), R0 = sqrt(ab); exact through second
/// order: C_2^(1) = 1, C_0^(2) = -1/4, C_4^(2) = 3/4.
inline FourierBoundary ellipse_boundary(const EllipseSpec& spec) {
  if (!(spec.b > 0.0) || spec.b > spec.a)
    throw std::domain_error("ellipse_boundary: require a >= b > 0");
  const double lambda = (spec.a - spec.b) / (spec.a + spec.b);
  if (lambda > 0.3 + 1e-12)
    throw std::domain_error("ellipse_boundary: lambda = (a-b)/(a+b) must be <= 0.3");

  FourierOrder o1;
  o1.sigma = 1;
  o1.cos_coeffs.assign(5, 0.0);
  o1.sin_coeffs.assign(5, 0.0);
  o1.cos_coeffs[2] = 1.0;
  FourierOrder o2;
  o2.sigma = 2;
  o2.cos_coeffs.assign(5, 0.0);
  o2.sin_coeffs.assign(5, 0.0);
  o2.cos_coeffs[0] = -0.25;
  o2.cos_coeffs[4] = 0.75;

  return FourierBoundary(std::sqrt(spec.a * spec.b), lambda, std::move(o1), std::move(o2),
                         Provenance::Ellipse);
}

/// Boundary from (theta, r) samples of one shape at a known deformation:
/// f1 = (r/R0 - 1)/lambda on the sample grid, C_0^(2) from the equal-area
/// constraint, remaining second-order coefficients unknown and left at zero.
/// Samples must be strictly increasing in theta and cover [0, 2pi).
inline FourierBoundary numeric_boundary(const std::vector<std::pair<double, double>>& samples,
                                        double lambda, int n_max = 32) {
  const int n = static_cast<int>(samples.size());
  if (n < 16) throw std::invalid_argument("numeric_boundary: need at least 16 samples");
  if (lambda == 0.0) throw std::invalid_argument("numeric_boundary: lambda must be nonzero");
  for (int i = 0; i < n; ++i) {
    const auto& [th, r] = samples[static_cast<size_t>(i)];
    if (!(r > 0.0)) throw std::domain_error("numeric_boundary: non-positive radius sample");
    if (th < 0.0 || th >= 2.0 * M_PI || (i > 0 && th <= samples[static_cast<size_t>(i) - 1].first))
      throw std::invalid_argument(
          "numeric_boundary: angles must be strictly increasing within [0, 2pi)");
  }

  // Periodic trapezoid on the (possibly nonuniform) sample grid.
  auto wrap_dtheta = [&](int i) {
    const double next =
        i + 1 < n ? samples[static_cast<size_t>(i) + 1].first : samples[0].first + 2.0 * M_PI;
    return next - samples[static_cast<size_t>(i)].first;
  };
  double area2 = 0.0;  // \int r^2 dtheta
  for (int i = 0; i < n; ++i) {
    const double r0 = samples[static_cast<size_t>(i)].second;
    const double r1 = samples[static_cast<size_t>((i + 1) % n)].second;
    area2 += 0.5 * (r0 * r0 + r1 * r1) * wrap_dtheta(i);
  }
  const double r0 = std::sqrt(area2 / (2.0 * M_PI));

  FourierOrder o1;
  o1.sigma = 1;
  o1.cos_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  o1.sin_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  for (int h = 0; h <= n_max; ++h) {
    double sc = 0.0, ss = 0.0;
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n;
      const double f0 = (samples[static_cast<size_t>(i)].second / r0 - 1.0) / lambda;
      const double f1 = (samples[static_cast<size_t>(ip)].second / r0 - 1.0) / lambda;
      const double t0 = samples[static_cast<size_t>(i)].first;
      const double t1 = t0 + wrap_dtheta(i);
      sc += 0.5 * (f0 * std::cos(h * t0) + f1 * std::cos(h * t1)) * (t1 - t0);
      ss += 0.5 * (f0 * std::sin(h * t0) + f1 * std::sin(h * t1)) * (t1 - t0);
    }
    o1.cos_coeffs[static_cast<size_t>(h)] = (h == 0 ? 1.0 : 2.0) * sc / (2.0 * M_PI);
    if (h >= 1) o1.sin_coeffs[static_cast<size_t>(h)] = ss / M_PI;
  }
  // The constant first-order term is a reparameterization of R0, not shape.
  o1.cos_coeffs[0] = 0.0;

  FourierOrder o2;
  o2.sigma = 2;
  o2.cos_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  o2.sin_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  double power = 0.0;
  for (int h = 1; h <= n_max; ++h) power += o1.c(h) * o1.c(h) + o1.s(h) * o1.s(h);
  o2.cos_coeffs[0] = -0.25 * power;

  return FourierBoundary(r0, lambda, std::move(o1), std::move(o2), Provenance::Numeric);
}

// ---------------------------------------------------------------------------
// diagnostics
// ---------------------------------------------------------------------------

struct EqualAreaReport {
  double constraint_residual = 0.0;  // |4 C0^(2) + sum_n (C_n^(1)2 + S_n^(1)2)|
  double area_residual = 0.0;        // |area(reconstruction) - pi R0^2| / (pi R0^2)
  bool ok = false;
};

/// Checks the sigma = 2 equal-area constraint and the reconstructed area
/// identity; flags failure when the constraint residual exceeds 1e-6.
inline EqualAreaReport validate_equal_area(const FourierBoundary& b, int nodes = 2048) {
  const auto& o1 = b.order(1);
  double power = 0.0;
  for (int n = 1; n <= o1.n_max(); ++n) power += o1.c(n) * o1.c(n) + o1.s(n) * o1.s(n);
  EqualAreaReport rep;
  rep.constraint_residual = std::fabs(4.0 * b.order(2).c(0) + power);

  double acc = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double r = b.radius(2.0 * M_PI * i / nodes);
    acc += r * r;
  }
  const double area = M_PI * acc / nodes;
  rep.area_residual = std::fabs(area - M_PI * b.r0() * b.r0()) / (M_PI * b.r0() * b.r0());
  rep.ok = rep.constraint_residual < 1e-6;
  return rep;
}

}  // namespace helmholtz::boundary
