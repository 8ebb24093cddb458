#pragma once

// `helmholtz validate --suite ...`: machine-checkable invariant suites per
// module, reported as JSON. These overlap the unit tests on purpose; they are
// the field diagnostic for an installed binary.

#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <string>
#include <vector>

#include "helmholtz/boundary.hpp"
#include "helmholtz/empirical.hpp"
#include "helmholtz/oracle.hpp"
#include "helmholtz/perturb.hpp"
#include "helmholtz/specfun.hpp"

namespace helmholtz::cli {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

using Suite = std::vector<Check>;

inline Check check(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

inline std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

inline Suite validate_specfun() {
  using namespace specfun;
  Suite out;
  {
    const double table1[] = {2.40483, 3.83171, 5.13562, 5.52008, 6.38016, 7.01559};
    const int l1[] = {0, 1, 2, 0, 3, 1}, j1[] = {1, 1, 1, 2, 1, 2};
    double worst = 0.0;
    for (int i = 0; i < 6; ++i)
      worst = std::max(worst,
                       std::fabs(bessel_root(l1[i], j1[i], RootKind::FunctionZero).value - table1[i]));
    out.push_back(check("specfun.dirichlet_roots", worst < 1e-5,
                        "max deviation from tabulated values " + sci(worst)));
  }
  {
    const double table2[] = {1.8412, 3.0542, 3.8317, 4.2012, 5.3175};
    const int l2[] = {1, 2, 0, 3, 4};
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
      worst = std::max(worst,
                       std::fabs(bessel_root(l2[i], 1, RootKind::DerivativeZero).value - table2[i]));
    out.push_back(check("specfun.neumann_roots", worst < 1e-4,
                        "max deviation from tabulated values " + sci(worst)));
  }
  {
    // zeros of J_l' and J_l strictly alternate; the extremum comes first for
    // l >= 1 and the function zero first for l = 0
    bool ok = true;
    for (int l = 0; l <= 8 && ok; ++l) {
      for (int j = 1; j <= 6 && ok; ++j) {
        const double z = bessel_root(l, j, RootKind::FunctionZero).value;
        const double d = bessel_root(l, j, RootKind::DerivativeZero).value;
        if (l == 0)
          ok = z < d && d < bessel_root(0, j + 1, RootKind::FunctionZero).value;
        else
          ok = d < z && z < bessel_root(l, j + 1, RootKind::DerivativeZero).value;
      }
    }
    out.push_back(check("specfun.root_interlacing", ok, "l <= 8, j <= 6"));
  }
  {
    double worst = 0.0;
    for (int l = 1; l <= 20; l += 3)
      for (double x = 0.5; x < 60.0; x *= 1.7)
        worst = std::max(worst, std::fabs(bessel_j(l - 1, x) + bessel_j(l + 1, x) -
                                          (2.0 * l / x) * bessel_j(l, x)));
    out.push_back(check("specfun.recurrence_residual", worst < 1e-10,
                        "max residual " + sci(worst)));
  }
  {
    double worst = 0.0;
    for (double x = 1.0; x <= 50.0; x += 7.7) {
      double s = bessel_j(0, x);
      // orders up to ~110 before the tail clears 1e-10 at x = 50
      for (int k = 1; k <= 60; ++k) s += 2.0 * specfun::detail::bessel_j_unchecked(2 * k, x);
      worst = std::max(worst, std::fabs(s - 1.0));
    }
    out.push_back(check("specfun.normalization_identity", worst < 1e-10,
                        "max |J0 + 2 sum J_2k - 1| = " + sci(worst)));
  }
  {
    double worst = 0.0;
    for (double z = 0.3; z <= 5.0; z += 0.0997) {
      const double lhs = gamma_fn(2.0 * z);
      const double rhs =
          std::pow(2.0, 2.0 * z - 1.0) / std::sqrt(M_PI) * gamma_fn(z) * gamma_fn(z + 0.5);
      worst = std::max(worst, std::fabs(lhs - rhs) / lhs);
    }
    out.push_back(check("specfun.gamma_duplication", worst < 1e-11,
                        "max relative residual " + sci(worst)));
  }
  return out;
}

inline Suite validate_boundary() {
  using namespace boundary;
  Suite out;
  {
    bool ok = true;
    double worst = 0.0;
    for (double t : {1.2, 1.5, 2.0, 2.4, 2.8}) {
      const auto rep = validate_equal_area(supercircle_boundary({t, 1.0}));
      worst = std::max(worst, rep.constraint_residual);
      ok = ok && rep.constraint_residual < 1e-8;
    }
    out.push_back(check("boundary.supercircle_equal_area", ok,
                        "max constraint residual " + sci(worst)));
  }
  {
    const auto rep = validate_equal_area(ellipse_boundary({1.25, 0.8}));
    out.push_back(check("boundary.ellipse_equal_area", rep.constraint_residual == 0.0,
                        "residual " + sci(rep.constraint_residual)));
  }
  {
    const auto sc = supercircle_boundary({1.7, 1.0});
    const double gap = std::fabs(sc.order(2).c(4) - supercircle_c4_order2_closed_form());
    out.push_back(check("boundary.c4_closed_form_cross_check", gap < 1e-8,
                        "|numeric - closed form| = " + sci(gap)));
  }
  {
    // corrupted fixture must be flagged
    auto el = ellipse_boundary({1.25, 0.8});
    FourierOrder o2 = el.order(2);
    o2.cos_coeffs[0] = 0.0;
    const FourierBoundary bad(el.r0(), el.lambda(), el.order(1), o2, Provenance::Ellipse);
    out.push_back(check("boundary.corrupted_fixture_flagged", !validate_equal_area(bad).ok,
                        "C0^(2) zeroed out"));
  }
  return out;
}

inline Suite validate_perturb() {
  using namespace perturb;
  Suite out;
  const auto sc = boundary::supercircle_boundary({2.3, 1.0});
  const auto el = boundary::ellipse_boundary({1.1, 1.0 / 1.1});
  {
    bool ok = true;
    for (const auto* b : {&sc, &el})
      for (const auto& pe : spectrum(*b, BoundaryCondition::Neumann, 12, 0.1))
        if (pe.mode.l == 0) ok = ok && pe.omega1 == 0.0;
    out.push_back(check("perturb.l0_first_order_zero", ok, "all l = 0 states carry omega_1 = 0"));
  }
  {
    double worst = 0.0;
    for (int l = 1; l <= 6; ++l)
      for (const auto* b : {&sc, &el})
        worst = std::max(worst, std::fabs(omega1_cos(*b, l, 1) + omega1_sin(*b, l, 1)));
    out.push_back(
        check("perturb.pair_trace", worst == 0.0, "max |omega1_cos + omega1_sin| = " + sci(worst)));
  }
  {
    bool ok = true;
    for (int l : {1, 3, 5})  // 2l not a multiple of 4 on the 4-fold boundary
      ok = ok && omega1_cos(sc, l, 1) == 0.0 && omega1_sin(sc, l, 1) == 0.0;
    out.push_back(check("perturb.symmetry_selection", ok, "supercircle, odd l"));
  }
  {
    bool ok = true;
    for (int l = 1; l <= 10; ++l)
      for (int j = 1; j <= 6; ++j) {
        const auto m = make_mode(l, j);
        ok = ok && m.rho * m.rho - l * l > 0.0;
      }
    out.push_back(check("perturb.denominator_safety", ok, "rho'^2 > l^2 over enumerated modes"));
  }
  {
    const auto s0 = spectrum(el, BoundaryCondition::Neumann, 8, 0.0);
    bool ok = true;
    for (const auto& pe : s0) ok = ok && pe.omega_total == pe.omega0;
    out.push_back(check("perturb.lambda_zero_continuity", ok, "spectrum(0) is the circle spectrum"));
  }
  return out;
}

inline Suite validate_empirical() {
  using namespace empirical;
  Suite out;
  {
    const double d_vals[] = {6.7077, 16.9942, 30.0858, 30.9870, 35.1002, 46.7285, 57.0773};
    const double n_vals[] = {3.8542, 10.2669, 11.1682, 16.5436, 19.9743, 31.9947, 32.4453};
    double worst = 0.0;
    const auto gd = empirical_table(1.5, BoundaryCondition::Dirichlet, 7);
    const auto gn = empirical_table(1.5, BoundaryCondition::Neumann, 7);
    for (int i = 0; i < 7; ++i) {
      worst = std::max(worst, std::fabs(gd[static_cast<size_t>(i)].omega - d_vals[i]));
      worst = std::max(worst, std::fabs(gn[static_cast<size_t>(i)].omega - n_vals[i]));
    }
    out.push_back(check("empirical.reference_values", worst < 1e-3,
                        "max deviation from tabulated values " + sci(worst)));
  }
  {
    double worst = 0.0;
    for (double t = 1.05; t <= 2.0; t += 0.05)
      worst = std::max(worst, std::fabs(dual_exponent(dual_exponent(t)) - t));
    out.push_back(check("empirical.duality_involution", worst < 1e-12,
                        "max |dual(dual(t)) - t| = " + sci(worst)));
  }
  {
    const double d1 = std::fabs(duality_deviation(1.0)), d2 = std::fabs(duality_deviation(2.0));
    out.push_back(check("empirical.deviation_endpoints", d1 < 1e-12 && d2 < 1e-12,
                        "Delta(1), Delta(2) vanish"));
  }
  {
    bool ok = true;
    for (double t = 1.0; t <= 2.0; t += 0.01) {
      const double f = std::pow(2.0 - t, 3.0);
      ok = ok && f >= 0.0 && f <= 1.0;
    }
    for (double tp = 2.0; tp <= 500.0; tp *= 1.3) {
      const double f = std::pow((1.0 - 2.0 / tp) / (1.0 - 1.0 / tp), 3.0);
      ok = ok && f >= 0.0 && f < 1.0;
    }
    out.push_back(check("empirical.weight_bounds", ok, "f in [0,1] on both branches"));
  }
  {
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
      const auto& p =
          empirical::detail::pairing_table(BoundaryCondition::Neumann)[static_cast<size_t>(i)];
      const double w2 = empirical_omega(2.0, i, BoundaryCondition::Neumann);
      const double w1 = empirical_omega(1.0, i, BoundaryCondition::Neumann);
      worst = std::max({worst, std::fabs(w2 - p.circle.e_c / M_PI) / (p.circle.e_c / M_PI),
                        std::fabs(w1 - p.square.e_s / 2.0) / (p.square.e_s / 2.0)});
      ok = ok && worst < 1e-12;
    }
    out.push_back(check("empirical.limit_exactness", ok,
                        "max relative limit error " + sci(worst)));
  }
  return out;
}

inline Suite validate_oracle() {
  using namespace oracle;
  Suite out;
  const BoundaryCurve circle{[](double) { return 1.0; }, [](double) { return 0.0; }};
  OracleConfig cfg;
  cfg.k_min = 1.2;
  cfg.k_max = 5.0;
  cfg.basis_size = 24;
  cfg.boundary_points = 96;
  cfg.symmetry_fold = 4;
  {
    const auto found = find_eigenvalues(circle, BoundaryCondition::Neumann, cfg);
    const double expect[] = {1.841184, 3.054237, 3.831706, 4.201189};
    bool ok = found.size() >= 6;
    double worst = 0.0;
    for (double e : expect) {
      double best = 1e9;
      for (const auto& r : found) best = std::min(best, std::fabs(r.k - e));
      worst = std::max(worst, best);
      ok = ok && best < 1e-3;
    }
    for (const auto& r : found) ok = ok && r.converged && r.sigma_min < 1e-4;
    out.push_back(check("oracle.circle_neumann", ok,
                        "max |k - root| = " + sci(worst) + ", all certificates < 1e-4"));
  }
  {
    cfg.k_min = 2.0;
    cfg.k_max = 5.6;
    const auto found = find_eigenvalues(circle, BoundaryCondition::Dirichlet, cfg);
    const double expect[] = {2.404826, 3.831706, 5.135622, 5.520078};
    bool ok = true;
    double worst = 0.0;
    for (double e : expect) {
      double best = 1e9;
      for (const auto& r : found) best = std::min(best, std::fabs(r.k - e));
      worst = std::max(worst, best);
      ok = ok && best < 1e-3;
    }
    out.push_back(check("oracle.circle_dirichlet", ok, "max |k - root| = " + sci(worst)));
  }
  {
    // Dirichlet scaling law: shrink the domain by 0.9, eigenvalue scales by 1/0.81
    const BoundaryCurve small{[](double) { return 0.9; }, [](double) { return 0.0; }};
    OracleConfig c2 = cfg;
    c2.symmetry_fold = 4;
    const auto r1 = eigenvalue_near(circle, BoundaryCondition::Dirichlet, 2.40, c2,
                                    mode_class(0, Parity::Cos, 4));
    const auto r2 = eigenvalue_near(small, BoundaryCondition::Dirichlet, 2.40 / 0.9, c2,
                                    mode_class(0, Parity::Cos, 4));
    const double ratio = r2.omega / r1.omega;
    out.push_back(check("oracle.dirichlet_scaling", std::fabs(ratio - 1.0 / 0.81) < 1e-3 / 0.81,
                        "omega ratio " + sci(ratio) + " vs 1/0.81"));
  }
  {
    // perturbation cross-check on the ellipse ground pair at lambda = 0.05
    const double lam = 0.05;
    const double a = std::sqrt((1.0 + lam) / (1.0 - lam)), b = 1.0 / a;
    const BoundaryCurve ell{[a, b](double th) { return boundary::ellipse_radius(a, b, th); },
                            [a, b](double th) { return boundary::ellipse_dradius(a, b, th); }};
    const auto eb = boundary::ellipse_boundary({a, b});
    OracleConfig c3;
    c3.basis_size = 24;
    c3.boundary_points = 96;
    c3.symmetry_fold = 2;
    bool ok = true;
    double worst = 0.0;
    const auto spec = perturb::spectrum(eb, BoundaryCondition::Neumann, 2, lam);
    for (const auto& pe : spec) {
      const auto res = eigenvalue_near(ell, BoundaryCondition::Neumann, std::sqrt(pe.omega_total),
                                       c3, mode_class(pe.mode.l, pe.mode.parity, 2));
      worst = std::max(worst, std::fabs(pe.omega_total - res.omega) / res.omega);
      ok = ok && worst < 0.005;
    }
    out.push_back(check("oracle.vs_perturbation_ellipse", ok,
                        "ground pair relative gap " + sci(worst)));
  }
  return out;
}

inline nlohmann::json run_suites(const std::string& which) {
  std::vector<std::pair<std::string, std::function<Suite()>>> all = {
      {"specfun", validate_specfun},   {"boundary", validate_boundary},
      {"perturb", validate_perturb},   {"empirical", validate_empirical},
      {"oracle", validate_oracle},
  };
  nlohmann::json report;
  report["suite"] = which;
  report["checks"] = nlohmann::json::array();
  bool pass = true;
  bool matched = false;
  for (const auto& [name, fn] : all) {
    if (which != "all" && which != name) continue;
    matched = true;
    for (const auto& c : fn()) {
      report["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
      pass = pass && c.pass;
    }
  }
  if (!matched) throw std::invalid_argument("validate: unknown suite \"" + which + "\"");
  report["pass"] = pass;
  return report;
}

}  // namespace helmholtz::cli
