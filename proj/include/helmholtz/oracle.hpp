#pragma once

// Independent Helmholtz eigensolver on smooth star-shaped domains: method of
// particular solutions in a Fourier-Bessel trial space with Betcke-Trefethen
// interior regularization. sigma(k) is the smallest singular value of the
// boundary block of the orthonormalized [boundary; interior] collocation
// matrix; eigenvalues are the k where sigma(k) dips toward zero.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "helmholtz/parallel.hpp"
#include "helmholtz/specfun.hpp"
#include "helmholtz/types.hpp"

namespace helmholtz::oracle {

/// Star-shaped boundary r(theta) with its analytic angular derivative.
struct BoundaryCurve {
  std::function<double(double)> r;
  std::function<double(double)> dr;
};

struct OracleConfig {
  int basis_size = 40;        // largest angular order p in the trial space
  int boundary_points = 160;
  int interior_points = 60;
  double k_min = 0.5;
  double k_max = 6.0;
  double sweep_step = 0.01;
  double refine_tol = 1e-7;
  double detect_threshold = 0.5;  // grid local minima below this get refined
  double converged_tol = 1e-4;    // residual certificate for `converged`
  int symmetry_fold = 1;          // 1 generic, 2 C2v, 4 C4v boundaries
  int threads = 0;                // 0: HELMHOLTZ_THREADS or hardware default

  void check() const {
    if (boundary_points < 2 * basis_size)
      throw std::invalid_argument("OracleConfig: boundary_points must be >= 2 * basis_size");
    if (!(k_min > 0.0) || !(k_max > k_min))
      throw std::invalid_argument("OracleConfig: need 0 < k_min < k_max");
    if (!(refine_tol > 0.0) || refine_tol > 1e-6)
      throw std::invalid_argument("OracleConfig: refine_tol must be <= 1e-6");
    if (symmetry_fold != 1 && symmetry_fold != 2 && symmetry_fold != 4)
      throw std::invalid_argument("OracleConfig: symmetry_fold must be 1, 2 or 4");
  }
};

struct OracleResult {
  double k = 0.0;
  double omega = 0.0;  // k^2
  double sigma_min = 1.0;
  double condition_estimate = 1.0;
  std::string symmetry_class;
  bool converged = false;
};

/// Angular subspace closed under the boundary's point group: basis orders
/// p with p = +-residue (mod fold) in one parity. fold = 0 marks the full
/// (unsymmetrized) basis.
struct SymmetryClass {
  int fold = 0;
  int residue = 0;
  Parity parity = Parity::Cos;

  std::string label() const {
    if (fold == 0) return "full";
    return to_string(parity) + ":" + std::to_string(residue) + "mod" + std::to_string(fold);
  }

  std::vector<std::pair<int, Parity>> basis(int p_max) const {
    std::vector<std::pair<int, Parity>> out;
    if (fold == 0) {
      for (int p = 0; p <= p_max; ++p) out.emplace_back(p, Parity::Cos);
      for (int p = 1; p <= p_max; ++p) out.emplace_back(p, Parity::Sin);
      return out;
    }
    for (int p = (parity == Parity::Sin ? 1 : 0); p <= p_max; ++p)
      if ((p - residue) % fold == 0 || (p + residue) % fold == 0) out.emplace_back(p, parity);
    return out;
  }
};

/// The symmetry classes swept by find_eigenvalues for a given fold.
inline std::vector<SymmetryClass> symmetry_classes(int fold) {
  if (fold == 1) return {SymmetryClass{0, 0, Parity::Cos}};
  if (fold == 2)
    return {{2, 0, Parity::Cos}, {2, 1, Parity::Cos}, {2, 0, Parity::Sin}, {2, 1, Parity::Sin}};
  if (fold == 4)
    return {{4, 0, Parity::Cos}, {4, 2, Parity::Cos}, {4, 0, Parity::Sin},
            {4, 2, Parity::Sin}, {4, 1, Parity::Cos}, {4, 1, Parity::Sin}};
  throw std::invalid_argument("symmetry_classes: fold must be 1, 2 or 4");
}

/// Class containing the perturbed continuation of circle mode (l, parity).
inline SymmetryClass mode_class(int l, Parity parity, int fold) {
  if (fold == 1) return SymmetryClass{0, 0, Parity::Cos};
  const int m = l % fold;
  return SymmetryClass{fold, std::min(m, fold - m), parity};
}

namespace detail {

inline double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int k = index + 1; k > 0; k /= base) {
    f /= base;
    r += f * (k % base);
  }
  return r;
}

// Collocation geometry, fixed per (curve, config): boundary nodes with unit
// normals and fixed-seed low-discrepancy interior points.
struct Collocation {
  std::vector<double> theta_b, r_b, nr, nt;  // boundary nodes, normal (e_r, e_theta)
  std::vector<double> theta_i, r_i;          // interior points

  Collocation(const BoundaryCurve& curve, const OracleConfig& cfg) {
    const int nb = cfg.boundary_points, ni = cfg.interior_points;
    theta_b.resize(static_cast<size_t>(nb));
    r_b.resize(static_cast<size_t>(nb));
    nr.resize(static_cast<size_t>(nb));
    nt.resize(static_cast<size_t>(nb));
    for (int i = 0; i < nb; ++i) {
      const double th = (i + 0.5) * 2.0 * M_PI / nb;
      const double r = curve.r(th), dr = curve.dr(th);
      if (!(r > 0.0)) throw std::domain_error("oracle: boundary radius must stay positive");
      const double norm = std::sqrt(r * r + dr * dr);
      theta_b[static_cast<size_t>(i)] = th;
      r_b[static_cast<size_t>(i)] = r;
      nr[static_cast<size_t>(i)] = r / norm;
      nt[static_cast<size_t>(i)] = -dr / norm;
    }
    theta_i.resize(static_cast<size_t>(ni));
    r_i.resize(static_cast<size_t>(ni));
    for (int i = 0; i < ni; ++i) {
      const double th = 2.0 * M_PI * halton(i, 2);
      theta_i[static_cast<size_t>(i)] = th;
      r_i[static_cast<size_t>(i)] = 0.9 * std::sqrt(halton(i, 3)) * curve.r(th);
    }
  }
};

// sigma(k): build [boundary-residual; interior-value] columns for the class
// basis, orthonormalize the stack, and take the smallest singular value of
// the boundary block.
inline double sigma_at(double k, const Collocation& geo, BoundaryCondition bc,
                       const std::vector<std::pair<int, Parity>>& basis,
                       double* condition = nullptr) {
  const int nb = static_cast<int>(geo.theta_b.size());
  const int ni = static_cast<int>(geo.theta_i.size());
  const int nc = static_cast<int>(basis.size());
  int p_max = 0;
  for (const auto& [p, par] : basis) p_max = std::max(p_max, p);

  Eigen::MatrixXd m(nb + ni, nc);
  std::vector<double> jall;
  for (int i = 0; i < nb; ++i) {
    jall = specfun::bessel_j_all(p_max + 1, k * geo.r_b[static_cast<size_t>(i)]);
    const double th = geo.theta_b[static_cast<size_t>(i)];
    for (int c = 0; c < nc; ++c) {
      const auto [p, par] = basis[static_cast<size_t>(c)];
      const double jp = jall[static_cast<size_t>(p)];
      const double jd = p == 0 ? -jall[1] : 0.5 * (jall[static_cast<size_t>(p) - 1] - jall[static_cast<size_t>(p) + 1]);
      const double trig = par == Parity::Cos ? std::cos(p * th) : std::sin(p * th);
      if (bc == BoundaryCondition::Dirichlet) {
        m(i, c) = jp * trig;
      } else {
        const double dtrig = par == Parity::Cos ? -p * std::sin(p * th) : p * std::cos(p * th);
        m(i, c) = geo.nr[static_cast<size_t>(i)] * k * jd * trig +
                  geo.nt[static_cast<size_t>(i)] * jp * dtrig / geo.r_b[static_cast<size_t>(i)];
      }
    }
  }
  for (int i = 0; i < ni; ++i) {
    jall = specfun::bessel_j_all(p_max + 1, k * geo.r_i[static_cast<size_t>(i)]);
    const double th = geo.theta_i[static_cast<size_t>(i)];
    for (int c = 0; c < nc; ++c) {
      const auto [p, par] = basis[static_cast<size_t>(c)];
      const double trig = par == Parity::Cos ? std::cos(p * th) : std::sin(p * th);
      m(nb + i, c) = jall[static_cast<size_t>(p)] * trig;
    }
  }

  for (int c = 0; c < nc; ++c) {
    const double s = m.col(c).cwiseAbs().maxCoeff();
    if (s > 0.0) m.col(c) /= s;
  }

  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd thin_q = qr.householderQ() * Eigen::MatrixXd::Identity(nb + ni, nc);
  if (condition) {
    const auto diag = qr.matrixQR().diagonal().cwiseAbs();
    const double dmax = diag.maxCoeff();
    const double dmin = diag.minCoeff();
    *condition = dmin > 0.0 ? dmax / dmin : std::numeric_limits<double>::infinity();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(thin_q.topRows(nb));
  return svd.singularValues().tail(1)(0);
}

struct Refined {
  double k, sigma, condition;
};

// Golden-section descent of sigma(k) on a bracketing interval.
inline Refined golden_refine(double a, double b, const Collocation& geo, BoundaryCondition bc,
                             const std::vector<std::pair<int, Parity>>& basis, double tol) {
  constexpr double kGolden = 0.6180339887498949;
  double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
  double fc = sigma_at(c, geo, bc, basis), fd = sigma_at(d, geo, bc, basis);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kGolden * (b - a);
      fc = sigma_at(c, geo, bc, basis);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kGolden * (b - a);
      fd = sigma_at(d, geo, bc, basis);
    }
  }
  Refined out{0.5 * (a + b), 0.0, 1.0};
  out.sigma = sigma_at(out.k, geo, bc, basis, &out.condition);
  return out;
}

}  // namespace detail

/// sigma(k) for one symmetry class; exposed for diagnostics and tests.
inline double boundary_sigma(const BoundaryCurve& curve, BoundaryCondition bc, double k,
                             const SymmetryClass& cls, const OracleConfig& config) {
  config.check();
  detail::Collocation geo(curve, config);
  return detail::sigma_at(k, geo, bc, cls.basis(config.basis_size));
}

/// Sweeps [k_min, k_max] in every symmetry class of config.symmetry_fold,
/// refines each detected sigma dip by golden section to refine_tol, and
/// returns the located eigenvalues sorted by k. Degenerate partners appear
/// once per class; duplicates within a class are merged.
inline std::vector<OracleResult> find_eigenvalues(const BoundaryCurve& curve, BoundaryCondition bc,
                                                  const OracleConfig& config) {
  config.check();
  detail::Collocation geo(curve, config);
  const int n_grid = static_cast<int>(std::floor((config.k_max - config.k_min) / config.sweep_step)) + 1;

  std::vector<OracleResult> all;
  for (const auto& cls : symmetry_classes(config.symmetry_fold)) {
    const auto basis = cls.basis(config.basis_size);
    if (basis.empty()) continue;
    std::vector<double> sig(static_cast<size_t>(n_grid));
    helmholtz::detail::parallel_for(n_grid, config.threads, [&](int i) {
      sig[static_cast<size_t>(i)] =
          detail::sigma_at(config.k_min + i * config.sweep_step, geo, bc, basis);
    });

    std::vector<OracleResult> found;
    for (int i = 1; i + 1 < n_grid; ++i) {
      if (sig[static_cast<size_t>(i)] >= config.detect_threshold) continue;
      if (sig[static_cast<size_t>(i)] > sig[static_cast<size_t>(i) - 1] ||
          sig[static_cast<size_t>(i)] > sig[static_cast<size_t>(i) + 1])
        continue;
      const double a = config.k_min + (i - 1) * config.sweep_step;
      const double b = config.k_min + (i + 1) * config.sweep_step;
      const auto ref = detail::golden_refine(a, b, geo, bc, basis, config.refine_tol);
      OracleResult res;
      res.k = ref.k;
      res.omega = ref.k * ref.k;
      res.sigma_min = ref.sigma;
      res.condition_estimate = ref.condition;
      res.symmetry_class = cls.label();
      res.converged = ref.sigma < config.converged_tol;
      if (!found.empty() && std::fabs(found.back().k - res.k) <
                                std::max(8.0 * config.refine_tol, 1e-9 * res.k)) {
        if (res.sigma_min < found.back().sigma_min) found.back() = res;
      } else {
        found.push_back(res);
      }
    }
    all.insert(all.end(), found.begin(), found.end());
  }
  std::sort(all.begin(), all.end(),
            [](const OracleResult& a, const OracleResult& b) { return a.k < b.k; });
  return all;
}

/// Locates the sigma minimum nearest k_guess within [0.95, 1.05] k_guess
/// (widened once to [0.9, 1.1] if the minimum sits on the window edge),
/// searching the given symmetry class.
inline OracleResult eigenvalue_near(const BoundaryCurve& curve, BoundaryCondition bc,
                                    double k_guess, const OracleConfig& config,
                                    const SymmetryClass& cls) {
  config.check();
  if (!(k_guess > 0.0)) throw std::domain_error("eigenvalue_near: k_guess must be positive");
  detail::Collocation geo(curve, config);
  const auto basis = cls.basis(config.basis_size);

  for (double half_width : {0.05, 0.10}) {
    const double lo = (1.0 - half_width) * k_guess, hi = (1.0 + half_width) * k_guess;
    const int n = std::max(41, static_cast<int>((hi - lo) / config.sweep_step) * 2 + 1);
    std::vector<double> sig(static_cast<size_t>(n));
    helmholtz::detail::parallel_for(n, config.threads, [&](int i) {
      sig[static_cast<size_t>(i)] = detail::sigma_at(lo + i * (hi - lo) / (n - 1), geo, bc, basis);
    });
    int best = 0;
    for (int i = 1; i < n; ++i)
      if (sig[static_cast<size_t>(i)] < sig[static_cast<size_t>(best)]) best = i;
    if (best == 0 || best == n - 1) continue;  // edge minimum: widen once
    const double h = (hi - lo) / (n - 1);
    const auto ref = detail::golden_refine(lo + (best - 1) * h, lo + (best + 1) * h, geo, bc,
                                           basis, config.refine_tol);
    OracleResult res;
    res.k = ref.k;
    res.omega = ref.k * ref.k;
    res.sigma_min = ref.sigma;
    res.condition_estimate = ref.condition;
    res.symmetry_class = cls.label();
    res.converged = ref.sigma < config.converged_tol;
    return res;
  }
  throw std::runtime_error("eigenvalue_near: no interior sigma minimum near k_guess");
}

inline OracleResult eigenvalue_near(const BoundaryCurve& curve, BoundaryCondition bc,
                                    double k_guess, const OracleConfig& config) {
  return eigenvalue_near(curve, bc, k_guess, config,
                         SymmetryClass{0, 0, Parity::Cos});
}

}  // namespace helmholtz::oracle
