#pragma once

// Self-contained special-function kernel: Bessel J_l, its first and second
// derivatives, the strictly positive roots of J_l and J_l', and the Gamma
// function. Everything here is pure and thread-safe; the lazily grown root
// tables are guarded by a mutex.

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace helmholtz::specfun {

inline constexpr int kMaxOrder = 64;        // bessel_j / bessel_j_deriv
inline constexpr double kMaxArgument = 200.0;
inline constexpr int kMaxRootOrder = 32;    // bessel_root
inline constexpr int kMaxRootIndex = 40;

enum class RootKind { FunctionZero, DerivativeZero };

/// A located positive root of J_l (FunctionZero) or J_l' (DerivativeZero).
/// The index j counts strictly positive roots only, starting at 1.
struct BesselRoot {
  int l = 0;
  int j = 1;
  RootKind kind = RootKind::FunctionZero;
  double value = 0.0;
};

namespace detail {

// Ascending power series about the origin, summed in extended precision.
// Terms alternate; for x below the order the growth before decay is mild
// enough that the 64-bit long double mantissa absorbs the cancellation.
inline double bessel_series(int l, double x) {
  const long double half = 0.5L * static_cast<long double>(x);
  long double term = 1.0L;
  for (int m = 1; m <= l; ++m) term *= half / m;  // (x/2)^l / l!
  long double sum = term;
  const long double q = half * half;
  long double peak = std::fabs(static_cast<double>(term));
  for (int m = 1; m < 600; ++m) {
    term *= -q / (static_cast<long double>(m) * (m + l));
    sum += term;
    const long double at = term < 0 ? -term : term;
    if (at > peak) peak = at;
    if (at < 1e-25L * peak && m > 3) break;
  }
  return static_cast<double>(sum);
}

// Downward (Miller) recurrence for J_0..J_{l_max}, normalized with
// J_0 + 2*sum_k J_{2k} = 1. Stable for any order/argument mix; mid-stream
// rescaling keeps the unnormalized iterates in range for small x.
inline std::vector<double> bessel_miller(int l_max, double x) {
  const int base = std::max(l_max, static_cast<int>(std::ceil(x)));
  int m = base + 18 + static_cast<int>(std::ceil(2.2 * std::sqrt(static_cast<double>(base) + 1.0)));
  if (m % 2) ++m;

  std::vector<double> out(static_cast<size_t>(l_max) + 1, 0.0);
  double fp = 0.0;     // J_{k+1} iterate
  double f = 1e-280;   // J_k iterate
  double norm = 0.0;
  for (int k = m; k >= 1; --k) {
    const double fm = (2.0 * k / x) * f - fp;
    fp = f;
    f = fm;  // J_{k-1}
    const int ord = k - 1;
    if (ord <= l_max) out[static_cast<size_t>(ord)] = f;
    if (ord > 0 && ord % 2 == 0) norm += 2.0 * f;
    if (std::fabs(f) > 1e270) {
      const double s = 1e-270;
      fp *= s;
      f *= s;
      norm *= s;
      for (auto& v : out) v *= s;
    }
  }
  norm += f;  // + J_0
  for (auto& v : out) v /= norm;
  return out;
}

inline void check_domain(int l, double x) {
  if (l < 0 || l > kMaxOrder)
    throw std::domain_error("bessel_j: order out of range [0, " + std::to_string(kMaxOrder) + "]");
  if (!(x >= 0.0) || x > kMaxArgument)
    throw std::domain_error("bessel_j: argument out of range [0, 200]");
}

inline double bessel_j_unchecked(int l, double x) {
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  // Series below the order, recurrence above, except near the turning point
  // x ~ l for high orders where the alternating series cancels past what the
  // extended-precision accumulation absorbs; Miller stays uniformly accurate
  // there.
  if (x < std::max(12.0, std::min(static_cast<double>(l), 30.0))) return bessel_series(l, x);
  return bessel_miller(l, x)[static_cast<size_t>(l)];
}

inline double bessel_j_deriv1_unchecked(int l, double x) {
  if (l == 0) return -bessel_j_unchecked(1, x);
  return 0.5 * (bessel_j_unchecked(l - 1, x) - bessel_j_unchecked(l + 1, x));
}

}  // namespace detail

/// J_l(x) for 0 <= l <= 64, 0 <= x <= 200.
inline double bessel_j(int l, double x) {
  detail::check_domain(l, x);
  return detail::bessel_j_unchecked(l, x);
}

/// J_0(x)..J_{l_max}(x) in one pass (used heavily by the oracle's basis rows).
inline std::vector<double> bessel_j_all(int l_max, double x) {
  detail::check_domain(l_max, x);
  if (x == 0.0) {
    std::vector<double> out(static_cast<size_t>(l_max) + 1, 0.0);
    out[0] = 1.0;
    return out;
  }
  if (x >= 12.0) return detail::bessel_miller(l_max, x);
  // Small arguments: the series is cheap and exact for every order at once.
  std::vector<double> out(static_cast<size_t>(l_max) + 1);
  for (int l = 0; l <= l_max; ++l) out[static_cast<size_t>(l)] = detail::bessel_series(l, x);
  return out;
}

/// d/dx J_l (order 1) or d^2/dx^2 J_l (order 2).
/// Order 1 uses J_l' = (J_{l-1} - J_{l+1})/2 (J_0' = -J_1); order 2 uses the
/// Bessel ODE J'' = -J'/x - (1 - l^2/x^2) J for x > 0, with the series limit
/// at x = 0 for l = 0 and l >= 2.
inline double bessel_j_deriv(int l, double x, int order = 1) {
  detail::check_domain(l, x);
  if (order != 1 && order != 2)
    throw std::domain_error("bessel_j_deriv: order must be 1 or 2");
  if (order == 1) {
    if (l == 0) return -detail::bessel_j_unchecked(1, x);
    return 0.5 * (detail::bessel_j_unchecked(l - 1, x) - detail::bessel_j_unchecked(l + 1, x));
  }
  if (x == 0.0) {
    if (l == 0) return -0.5;
    if (l == 2) return 0.25;
    if (l >= 3) return 0.0;
    throw std::domain_error("bessel_j_deriv: ODE form undefined at x = 0 for l = 1");
  }
  const double j = bessel_j(l, x);
  const double jp = bessel_j_deriv(l, x, 1);
  return -jp / x - (1.0 - static_cast<double>(l) * l / (x * x)) * j;
}

namespace detail {

// McMahon expansions; used as spacing estimates for the bracketing scan.
inline double mcmahon_function_zero(int l, int j) {
  const double mu = 4.0 * l * l;
  const double b = (j + 0.5 * l - 0.25) * M_PI;
  const double e = 8.0 * b;
  return b - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e);
}

inline double root_objective(int l, RootKind kind, double x) {
  return kind == RootKind::FunctionZero ? bessel_j(l, x) : bessel_j_deriv(l, x, 1);
}

inline double root_objective_deriv(int l, RootKind kind, double x) {
  return kind == RootKind::FunctionZero ? bessel_j_deriv(l, x, 1) : bessel_j_deriv(l, x, 2);
}

// Newton iteration confined to a sign-change bracket; any step that leaves
// the bracket is replaced by its midpoint (bisection fallback).
inline double newton_bracketed(int l, RootKind kind, double a, double b) {
  double fa = root_objective(l, kind, a);
  double x = 0.5 * (a + b);
  for (int it = 0; it < 80; ++it) {
    const double fx = root_objective(l, kind, x);
    if ((fx < 0) == (fa < 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
    }
    const double dfx = root_objective_deriv(l, kind, x);
    double xn = x - fx / dfx;
    if (!std::isfinite(xn) || xn <= a || xn >= b) xn = 0.5 * (a + b);
    if (std::fabs(xn - x) < 5e-15 * std::max(1.0, std::fabs(x))) return xn;
    x = xn;
  }
  return x;
}

// Positive roots of J_l or J_l' for a fixed l, grown on demand and memoized.
inline double positive_root(int l, RootKind kind, int j) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<double>> tables;
  std::scoped_lock lock(mu);
  auto& roots = tables[{l, static_cast<int>(kind)}];
  while (static_cast<int>(roots.size()) < j) {
    // All positive roots of J_l and J_l' exceed l, and consecutive roots of
    // either function are separated by more than 2.8, so a 0.1-step scan
    // cannot skip one.
    double x = roots.empty() ? (l == 0 ? 0.05 : static_cast<double>(l)) : roots.back() + 0.05;
    const double step = 0.1;
    double fx = root_objective(l, kind, x);
    while (fx == 0.0) {  // scan start landed on a root boundary
      x += 1e-9;
      fx = root_objective(l, kind, x);
    }
    double limit = mcmahon_function_zero(std::max(l, 1), static_cast<int>(roots.size()) + 2) +
                   static_cast<double>(l) + 20.0;
    bool found = false;
    while (x < limit) {
      const double xn = x + step;
      const double fn = root_objective(l, kind, xn);
      if ((fn < 0) != (fx < 0)) {
        roots.push_back(newton_bracketed(l, kind, x, xn));
        found = true;
        break;
      }
      x = xn;
      fx = fn;
    }
    if (!found) throw std::runtime_error("bessel_root: bracketing scan failed (kernel bug)");
  }
  return roots[static_cast<size_t>(j) - 1];
}

}  // namespace detail

/// j-th strictly positive root of J_l (FunctionZero) or J_l' (DerivativeZero),
/// located to ~1e-13 absolute. 0 <= l <= 32, 1 <= j <= 40.
inline BesselRoot bessel_root(int l, int j, RootKind kind) {
  if (l < 0 || l > kMaxRootOrder)
    throw std::domain_error("bessel_root: order out of range [0, 32]");
  if (j < 1 || j > kMaxRootIndex)
    throw std::domain_error("bessel_root: index out of range [1, 40]");
  return BesselRoot{l, j, kind, detail::positive_root(l, kind, j)};
}

/// True when the reference tabulation counts x = 0 as the first root of the
/// given function: J_1 under the Dirichlet table, J_0' under the Neumann one.
/// (The tables label first positive roots of J_l, l >= 2, as j = 1 even
/// though those functions also vanish at the origin.)
inline bool table_counts_origin(int l, RootKind kind) {
  return (kind == RootKind::FunctionZero && l == 1) ||
         (kind == RootKind::DerivativeZero && l == 0);
}

/// Reference-table index -> internal positive-root index.
inline int table_index(int l, RootKind kind, int j_table) {
  const int j = j_table - (table_counts_origin(l, kind) ? 1 : 0);
  if (j < 1) throw std::domain_error("table_index: refers to the trivial x = 0 root");
  return j;
}

/// Internal positive-root index -> reference-table index.
inline int table_label(int l, RootKind kind, int j_internal) {
  return j_internal + (table_counts_origin(l, kind) ? 1 : 0);
}

/// Gamma function on [0.1, 50] via the g = 7 Lanczos approximation, with the
/// reflection formula below 1/2.
inline double gamma_fn(double x) {
  if (!(x >= 0.1) || x > 50.0)
    throw std::domain_error("gamma_fn: argument out of range [0.1, 50]");
  static constexpr double c[9] = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,    12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
  if (x < 0.5) return M_PI / (std::sin(M_PI * x) * gamma_fn(1.0 - x));
  const double z = x - 1.0;
  double a = c[0];
  for (int i = 1; i < 9; ++i) a += c[i] / (z + i);
  const double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace helmholtz::specfun
