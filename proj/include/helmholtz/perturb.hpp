#pragma once

// Boundary perturbation theory for the Neumann Helmholtz problem about the
// equal-area circle: zeroth-order eigenvalues from roots of J_l', first- and
// second-order corrections for l = 0 and for both degenerate varieties at
// l != 0, first-order eigenfunction coefficients, and spectrum assembly.
//
// All eigenvalue coefficients are returned in units of 1/R0^2; multiply by
// 1/R0^2 for an absolute scale.

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "helmholtz/boundary.hpp"
#include "helmholtz/specfun.hpp"
#include "helmholtz/types.hpp"

namespace helmholtz::perturb {

using boundary::FourierBoundary;

/// One unperturbed circle mode: rho is the j-th positive root of J_l'.
/// Parity distinguishes the cos/sin varieties and is ignored for l = 0.
struct Mode {
  int l = 0;
  int j = 1;
  Parity parity = Parity::Cos;
  double rho = 0.0;
};

inline Mode make_mode(int l, int j, Parity parity = Parity::Cos) {
  const auto root = specfun::bessel_root(l, j, specfun::RootKind::DerivativeZero);
  return Mode{l, j, parity, root.value};
}

/// omega_0 = rho'^2_{l,j} / R0^2.
inline double omega0(const Mode& m, double r0) {
  if (!(r0 > 0.0)) throw std::domain_error("omega0: R0 must be positive");
  return m.rho * m.rho / (r0 * r0);
}

namespace detail {

inline void require_cosine_only(const FourierBoundary& b) {
  if (b.has_sine_terms())
    throw std::invalid_argument(
        "perturb: boundary carries sine harmonics; the l != 0 formulas assume S_n = 0");
}

// Lattice sums reach orders up to N_max + l, past the public bessel_j range;
// the unchecked evaluators cover them.
inline double j_over_jprime(int n, double rho) {
  return specfun::detail::bessel_j_unchecked(n, rho) /
         specfun::detail::bessel_j_deriv1_unchecked(n, rho);
}

// Shared structure of the cos/sin second-order corrections. `sin_variety`
// flips the C_{2l}^(2) sign, drops the J0''/J0' self term, and switches the
// +/- pattern inside the three n != l sums.
inline double omega2_l_nonzero(const FourierBoundary& b, int l, int j, bool sin_variety,
                               double* tail_estimate) {
  require_cosine_only(b);
  if (l < 1) throw std::invalid_argument("omega2: l must be >= 1 here");
  const double rho = make_mode(l, j).rho;
  const double r2 = rho * rho;
  const double l2 = static_cast<double>(l) * l;
  const double denom = r2 - l2;  // positive for every positive root of J_l'
  const auto& c1 = b.order(1);
  const auto& c2 = b.order(2);
  const int nmax = c1.n_max();

  const double w1_ratio = (sin_variety ? 1.0 : -1.0) * c1.c(2 * l) * (r2 + l2) / denom;

  double total = 0.5 * w1_ratio * w1_ratio * (r2 - 2.0 * l2) / denom;
  total += (sin_variety ? 1.0 : -1.0) * c2.c(2 * l) * (r2 + l2) / denom;
  total += -2.0 * c2.c(0);
  if (!sin_variety) {
    const double j0pp = specfun::bessel_j_deriv(0, rho, 2);
    const double j0p = specfun::bessel_j_deriv(0, rho, 1);
    total += (r2 * rho / denom) * (j0pp / j0p) * c1.c(l) * c1.c(l);
  }

  double quad = 0.0, cross = 0.0;
  for (int n = 1; n <= nmax; ++n) {
    const double cn = c1.c(n);
    if (cn == 0.0) continue;
    const double sum2l = c1.c(n + 2 * l) + c1.c(std::abs(2 * l - n));
    quad += cn * (sin_variety ? 2.0 * cn - sum2l : sum2l + 2.0 * cn);
    cross += cn * ((n * l + 2.0 * l2) * c1.c(n + 2 * l) -
                   (n * l - 2.0 * l2) * c1.c(std::abs(n - 2 * l)));
  }
  total += 0.25 * (r2 - 3.0 * l2) / denom * quad;
  total += (sin_variety ? -1.0 : 1.0) * cross / denom;

  double sq = 0.0, asym = 0.0, bessel_sum = 0.0, last_term = 0.0;
  for (int n = 1; n <= 2 * nmax + std::abs(l); ++n) {
    if (n == l) continue;
    const double cp = c1.c(n + l);
    const double cm = c1.c(std::abs(n - l));
    if (cp == 0.0 && cm == 0.0) continue;
    const double combo = sin_variety ? cp - cm : cp + cm;
    sq += combo * combo;
    asym += n * l * (cp * cp - cm * cm);
    const double bracket = sin_variety ? (r2 + n * l) * cp - (r2 - n * l) * cm
                                       : (r2 + n * l) * cp + (r2 - n * l) * cm;
    last_term = bracket * bracket * j_over_jprime(n, rho);
    bessel_sum += last_term;
  }
  total -= (0.5 * r2 * sq + 0.5 * asym + bessel_sum / (2.0 * rho)) / denom;

  if (tail_estimate) *tail_estimate = r2 * std::fabs(last_term) / (2.0 * rho * denom);
  return r2 * total;  // omega_2 = omega_0 * (ratio), omega_0 in 1/R0^2 units
}

}  // namespace detail

/// First-order correction, cos variety: omega_1 = -C_{2l}^(1) omega_0
/// (rho'^2 + l^2)/(rho'^2 - l^2).
inline double omega1_cos(const FourierBoundary& b, int l, int j) {
  detail::require_cosine_only(b);
  if (l < 1) throw std::invalid_argument("omega1_cos: l must be >= 1 (l = 0 has omega_1 = 0)");
  const double rho = make_mode(l, j).rho;
  const double r2 = rho * rho, l2 = static_cast<double>(l) * l;
  return -b.order(1).c(2 * l) * r2 * (r2 + l2) / (r2 - l2);
}

/// Sin variety: the same magnitude with the opposite sign.
inline double omega1_sin(const FourierBoundary& b, int l, int j) {
  return -omega1_cos(b, l, j);
}

/// Second-order correction for l = 0:
/// omega_2 = -omega_0 sum_{n>=2} [C_n^(1)2 + S_n^(1)2] rho' J_n(rho')/J_n'(rho').
/// Sine harmonics are admitted here (the l = 0 result keeps them).
inline double omega2_l0(const FourierBoundary& b, int j, double* tail_estimate = nullptr) {
  const double rho = make_mode(0, j).rho;
  const auto& c1 = b.order(1);
  double sum = 0.0, last = 0.0;
  for (int n = 2; n <= c1.n_max(); ++n) {
    const double w = c1.c(n) * c1.c(n) + c1.s(n) * c1.s(n);
    if (w == 0.0) continue;
    last = w * rho * detail::j_over_jprime(n, rho);
    sum += last;
  }
  if (tail_estimate) *tail_estimate = rho * rho * std::fabs(last);
  return -rho * rho * sum;
}

/// Second-order correction, cos variety (full Eq. structure: omega_1^2 term,
/// C_{2l}^(2), C_0^(2), the J_0''/J_0' self term, and the three lattice sums).
inline double omega2_cos(const FourierBoundary& b, int l, int j, double* tail_estimate = nullptr) {
  return detail::omega2_l_nonzero(b, l, j, /*sin_variety=*/false, tail_estimate);
}

/// Second-order correction, sin variety.
inline double omega2_sin(const FourierBoundary& b, int l, int j, double* tail_estimate = nullptr) {
  return detail::omega2_l_nonzero(b, l, j, /*sin_variety=*/true, tail_estimate);
}

/// First-order eigenfunction coefficients a_p (cos variety) or a-bar_p (sin
/// variety), normalization N carried as 1. The p = l entry is fixed by
/// normalization, not by the boundary condition, and is omitted. Only
/// harmonics the boundary actually carries appear in the map.
struct FirstOrderWavefunction {
  Mode mode;
  std::map<int, double> coeffs;
};

inline FirstOrderWavefunction first_order_coeffs(const FourierBoundary& b, const Mode& m) {
  const auto& c1 = b.order(1);
  FirstOrderWavefunction out{m, {}};
  const double rho = m.rho;
  if (m.l == 0) {
    // a_p = rho' C_p^(1) J_0(rho') / J_p'(rho'); sin variety uses S_p^(1).
    const double j0 = specfun::bessel_j(0, rho);
    for (int p = 1; p <= c1.n_max(); ++p) {
      const double coeff = m.parity == Parity::Cos ? c1.c(p) : c1.s(p);
      if (coeff == 0.0) continue;
      out.coeffs[p] = rho * coeff * j0 / specfun::detail::bessel_j_deriv1_unchecked(p, rho);
    }
    return out;
  }
  detail::require_cosine_only(b);
  const double r2 = rho * rho;
  const double jl = specfun::bessel_j(m.l, rho);
  if (m.parity == Parity::Cos && c1.c(m.l) != 0.0) {
    // a_0 = N rho' C_l^(1) J_l(rho') / (2 J_0'(rho'))
    out.coeffs[0] = rho * c1.c(m.l) * jl / (2.0 * specfun::bessel_j_deriv(0, rho, 1));
  }
  for (int p = 1; p <= c1.n_max() + m.l; ++p) {
    if (p == m.l) continue;
    const double cp = c1.c(p + m.l);
    const double cm = c1.c(std::abs(p - m.l));
    if (cp == 0.0 && cm == 0.0) continue;
    const double bracket = m.parity == Parity::Cos
                               ? (r2 + p * m.l) * cp + (r2 - p * m.l) * cm
                               : (r2 - p * m.l) * cm - (r2 + p * m.l) * cp;
    out.coeffs[p] =
        jl * bracket / (2.0 * rho * specfun::detail::bessel_j_deriv1_unchecked(p, rho));
  }
  return out;
}

/// One assembled eigenvalue omega(lambda) = omega_0 + lambda omega_1 +
/// lambda^2 omega_2 for a mode, in units of 1/R0^2.
struct PerturbedEigenvalue {
  Mode mode;
  double omega0 = 0.0;
  double omega1 = 0.0;
  double omega2 = 0.0;
  double lambda = 0.0;
  double omega_total = 0.0;
};

/// Lowest num_states perturbed Neumann levels, sorted by omega_total with the
/// deterministic tie-break (l, j, Cos before Sin). Degenerate l >= 1 pairs
/// contribute both varieties. r0_scale rescales to absolute units.
inline std::vector<PerturbedEigenvalue> spectrum(const FourierBoundary& b, BoundaryCondition bc,
                                                 int num_states, double lambda,
                                                 double r0_scale = 1.0) {
  if (bc != BoundaryCondition::Neumann)
    throw std::invalid_argument("spectrum: only the Neumann condition is implemented here");
  if (num_states < 1 || num_states > 40)
    throw std::invalid_argument("spectrum: num_states must be in [1, 40]");

  // Enough (l, j) candidates that 40 slots are always covered.
  struct Slot {
    double rho;
    int l, j;
    Parity parity;
  };
  std::vector<Slot> slots;
  for (int l = 0; l <= 24; ++l) {
    for (int j = 1; j <= 10; ++j) {
      const Mode m = make_mode(l, j);
      slots.push_back({m.rho, l, j, Parity::Cos});
      if (l >= 1) slots.push_back({m.rho, l, j, Parity::Sin});
    }
  }
  std::sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& z) {
    return std::tie(a.rho, a.l, a.j, a.parity) < std::tie(z.rho, z.l, z.j, z.parity);
  });
  slots.resize(static_cast<size_t>(num_states));

  const double scale = 1.0 / (r0_scale * r0_scale);
  std::vector<PerturbedEigenvalue> out;
  out.reserve(slots.size());
  for (const auto& s : slots) {
    const Mode m = make_mode(s.l, s.j, s.parity);
    PerturbedEigenvalue pe;
    pe.mode = m;
    pe.lambda = lambda;
    pe.omega0 = m.rho * m.rho * scale;
    if (s.l == 0) {
      pe.omega1 = 0.0;
      pe.omega2 = omega2_l0(b, s.j) * scale;
    } else if (s.parity == Parity::Cos) {
      pe.omega1 = omega1_cos(b, s.l, s.j) * scale;
      pe.omega2 = omega2_cos(b, s.l, s.j) * scale;
    } else {
      pe.omega1 = omega1_sin(b, s.l, s.j) * scale;
      pe.omega2 = omega2_sin(b, s.l, s.j) * scale;
    }
    pe.omega_total = pe.omega0 + lambda * pe.omega1 + lambda * lambda * pe.omega2;
    out.push_back(pe);
  }
  std::sort(out.begin(), out.end(), [](const PerturbedEigenvalue& a, const PerturbedEigenvalue& z) {
    return std::tie(a.omega_total, a.mode.l, a.mode.j, a.mode.parity) <
           std::tie(z.omega_total, z.mode.l, z.mode.j, z.mode.parity);
  });
  return out;
}

}  // namespace helmholtz::perturb
