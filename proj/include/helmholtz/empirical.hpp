#pragma once

// Supercircle area and duality, the equal-area square/circle reference
// spectra, the one-to-one state matching, and the semi-empirical blended
// eigenvalue formula for 1 <= t < infinity under both boundary conditions.

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "helmholtz/specfun.hpp"
#include "helmholtz/types.hpp"

namespace helmholtz::empirical {

/// Unit-area-square mode: E_s = (n_x^2 + n_y^2) pi^2. Dirichlet needs
/// n_x, n_y >= 1; Neumann admits zeros except the constant (0, 0) mode.
struct SquareMode {
  int nx = 0;
  int ny = 0;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  double e_s = 0.0;
};

/// Unit-area-circle slot: E_c = pi rho^2 with rho a positive root of J_l
/// (Dirichlet) or J_l' (Neumann). j carries the reference-table label.
struct CircleMode {
  int l = 0;
  int j = 1;  // reference-table index
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  specfun::BesselRoot root;
  double e_c = 0.0;
  int degeneracy = 1;
};

struct StatePairing {
  int state_index = 0;
  SquareMode square;
  CircleMode circle;
};

/// Supercircle area for a = 1, in the Gamma-duplication form
/// A(t) = 4 sqrt(pi) Gamma(1 + 1/t) / (2^(2/t) Gamma(1/2 + 1/t)),
/// equal to (2/t) Gamma(1/t)^2 / Gamma(2/t) and stable for arbitrarily
/// large t (A -> 4).
inline double supercircle_area(double t) {
  if (!(t >= 1.0)) throw std::domain_error("supercircle_area: t must be >= 1");
  return 4.0 * std::sqrt(M_PI) * specfun::gamma_fn(1.0 + 1.0 / t) /
         (std::pow(2.0, 2.0 / t) * specfun::gamma_fn(0.5 + 1.0 / t));
}

/// Dual exponent t' = t/(t-1) (1/t + 1/t' = 1); t = 1 maps to +infinity.
inline double dual_exponent(double t) {
  if (!(t >= 1.0)) throw std::domain_error("dual_exponent: t must be >= 1");
  if (t == 1.0) return std::numeric_limits<double>::infinity();
  return t / (t - 1.0);
}

/// Aspect ratio alpha = 2^(1/t - 1/2) of the supercircle's diagonal to axis
/// extent; the scale factor of the duality map.
inline double duality_alpha(double t) { return std::pow(2.0, 1.0 / t - 0.5); }

/// Scaling-law deviation Delta = (alpha^2 A(t) - A(t')) / A(t') on 1 <= t <= 2.
/// Exactly zero at t = 1 and t = 2.
inline double duality_deviation(double t) {
  if (!(t >= 1.0) || t > 2.0)
    throw std::domain_error("duality_deviation: t must lie in [1, 2]");
  const double tp = dual_exponent(t);
  const double area_dual = std::isinf(tp) ? 4.0 : supercircle_area(tp);
  const double a = duality_alpha(t);
  return (a * a * supercircle_area(t) - area_dual) / area_dual;
}

/// Admissible square modes sorted by E_s ascending, ties by n_x ascending
/// (the order used in standard tabulations).
inline std::vector<SquareMode> square_levels(BoundaryCondition bc, int count) {
  if (count < 1 || count > 200) throw std::invalid_argument("square_levels: count in [1, 200]");
  std::vector<SquareMode> out;
  const int lo = bc == BoundaryCondition::Dirichlet ? 1 : 0;
  for (int nx = lo; nx <= 40; ++nx) {
    for (int ny = lo; ny <= 40; ++ny) {
      if (bc == BoundaryCondition::Neumann && nx == 0 && ny == 0) continue;
      out.push_back({nx, ny, bc, (static_cast<double>(nx) * nx + static_cast<double>(ny) * ny) * M_PI * M_PI});
    }
  }
  std::sort(out.begin(), out.end(), [](const SquareMode& a, const SquareMode& b) {
    return std::tie(a.e_s, a.nx) < std::tie(b.e_s, b.nx);
  });
  out.resize(static_cast<size_t>(count));
  return out;
}

/// Circle slots (degeneracy-expanded: l >= 1 roots appear twice, adjacently)
/// sorted by root value ascending, reference-table labels attached.
inline std::vector<CircleMode> circle_levels(BoundaryCondition bc, int count) {
  if (count < 1 || count > 200) throw std::invalid_argument("circle_levels: count in [1, 200]");
  const auto kind = bc == BoundaryCondition::Dirichlet ? specfun::RootKind::FunctionZero
                                                       : specfun::RootKind::DerivativeZero;
  std::vector<CircleMode> slots;
  // rho <= 32.5 yields ~240 Dirichlet / ~270 Neumann degeneracy slots,
  // comfortably past the 200-state ceiling.
  for (int l = 0; l <= 31; ++l) {
    for (int j = 1; j <= 12; ++j) {
      const auto root = specfun::bessel_root(l, j, kind);
      if (root.value > 32.5) break;
      CircleMode m;
      m.l = l;
      m.j = specfun::table_label(l, kind, j);
      m.bc = bc;
      m.root = root;
      m.e_c = M_PI * root.value * root.value;
      m.degeneracy = l == 0 ? 1 : 2;
      slots.push_back(m);
    }
  }
  std::sort(slots.begin(), slots.end(),
            [](const CircleMode& a, const CircleMode& b) { return a.root.value < b.root.value; });
  std::vector<CircleMode> out;
  out.reserve(static_cast<size_t>(count));
  for (const auto& m : slots) {
    for (int d = 0; d < m.degeneracy && static_cast<int>(out.size()) < count; ++d) out.push_back(m);
    if (static_cast<int>(out.size()) == count) break;
  }
  if (static_cast<int>(out.size()) < count)
    throw std::runtime_error("circle_levels: root coverage exhausted (internal bound too small)");
  return out;
}

/// Index-by-index pairing of the sorted square and circle ladders.
inline std::vector<StatePairing> match_states(BoundaryCondition bc, int count) {
  const auto sq = square_levels(bc, count);
  const auto ci = circle_levels(bc, count);
  std::vector<StatePairing> out;
  out.reserve(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back({i, sq[static_cast<size_t>(i)], ci[static_cast<size_t>(i)]});
  return out;
}

namespace detail {

inline const std::vector<StatePairing>& pairing_table(BoundaryCondition bc) {
  static std::mutex mu;
  static std::vector<StatePairing> dirichlet, neumann;
  std::scoped_lock lock(mu);
  auto& table = bc == BoundaryCondition::Dirichlet ? dirichlet : neumann;
  if (table.empty()) table = match_states(bc, 200);
  return table;
}

inline double blend_weight(double t, double exponent) {
  if (t <= 2.0) return std::pow(2.0 - t, exponent);
  return std::pow((1.0 - 2.0 / t) / (1.0 - 1.0 / t), exponent);
}

}  // namespace detail

/// Semi-empirical eigenvalue of the a = 1 supercircle:
/// omega(t) = [f E_s + (1 - f) E_c] / A(t), f = (2-t)^3 for t <= 2 and its
/// dual image ((1 - 2/t)/(1 - 1/t))^3 beyond. Continuous at t = 2; equals
/// E_s/2 at t = 1 and tends to E_s/4 as t -> infinity.
inline double empirical_omega(double t, int state_index, BoundaryCondition bc,
                              double f_exponent = 3.0) {
  if (!(t >= 1.0)) throw std::domain_error("empirical_omega: t must be >= 1");
  if (state_index < 0 || state_index >= 200)
    throw std::invalid_argument("empirical_omega: state_index must be in [0, 200)");
  const auto& pair = detail::pairing_table(bc)[static_cast<size_t>(state_index)];
  const double f = detail::blend_weight(t, f_exponent);
  return (f * pair.square.e_s + (1.0 - f) * pair.circle.e_c) / supercircle_area(t);
}

/// A run of consecutive slots sharing one blended eigenvalue (same square
/// energy and same circle root), as grouped in reference tabulations.
struct EmpiricalGroup {
  int group_index = 0;
  int degeneracy = 1;
  double omega = 0.0;
  std::vector<StatePairing> members;
};

inline std::vector<EmpiricalGroup> empirical_table(double t, BoundaryCondition bc,
                                                   int num_groups, double f_exponent = 3.0) {
  if (num_groups < 1 || num_groups > 60)
    throw std::invalid_argument("empirical_table: num_groups in [1, 60]");
  const auto& table = detail::pairing_table(bc);
  std::vector<EmpiricalGroup> out;
  size_t i = 0;
  while (static_cast<int>(out.size()) < num_groups && i < table.size()) {
    EmpiricalGroup g;
    g.group_index = static_cast<int>(out.size());
    g.omega = empirical_omega(t, static_cast<int>(i), bc, f_exponent);
    g.members.push_back(table[i]);
    const auto same = [&](const StatePairing& a, const StatePairing& b) {
      return a.square.nx * a.square.nx + a.square.ny * a.square.ny ==
                 b.square.nx * b.square.nx + b.square.ny * b.square.ny &&
             a.circle.l == b.circle.l && a.circle.j == b.circle.j;
    };
    while (i + 1 < table.size() && same(table[i], table[i + 1])) {
      ++i;
      g.members.push_back(table[i]);
    }
    g.degeneracy = static_cast<int>(g.members.size());
    out.push_back(std::move(g));
    ++i;
  }
  return out;
}

}  // namespace helmholtz::empirical
