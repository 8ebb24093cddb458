// Property tests over randomly generated admissible boundaries: a hand-rolled
// generator drives the invariants that must hold for *every* boundary,
// not just the reference families.

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "helmholtz/boundary.hpp"
#include "helmholtz/perturb.hpp"

using namespace helmholtz;
using Catch::Approx;

namespace {

// Random cosine-only boundary family with cubically decaying harmonics and
// C_0^(2) fixed by the equal-area constraint. Small enough amplitudes that
// r stays positive for |lambda| <= 0.3.
boundary::FourierBoundary random_boundary(std::mt19937& rng, int n_max = 12) {
  std::uniform_real_distribution<double> amp(-0.6, 0.6);
  boundary::FourierOrder o1, o2;
  o1.sigma = 1;
  o2.sigma = 2;
  o1.cos_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  o1.sin_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  o2.cos_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  o2.sin_coeffs.assign(static_cast<size_t>(n_max) + 1, 0.0);
  double power = 0.0;
  for (int n = 2; n <= n_max; ++n) {
    const double c = amp(rng) / (n * n * n);
    o1.cos_coeffs[static_cast<size_t>(n)] = c;
    power += c * c;
  }
  o2.cos_coeffs[0] = -0.25 * power;
  std::uniform_real_distribution<double> lam(0.02, 0.25);
  return {1.0, lam(rng), std::move(o1), std::move(o2), boundary::Provenance::Numeric};
}

}  // namespace

TEST_CASE("generated boundaries satisfy the equal-area constraint", "[property]") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    const auto b = random_boundary(rng);
    const auto rep = boundary::validate_equal_area(b);
    INFO("trial " << trial << " lambda " << b.lambda());
    CHECK(rep.constraint_residual < 1e-15);
    const double l3 = std::pow(std::fabs(b.lambda()), 3.0);
    CHECK(rep.area_residual < 10.0 * l3 + 1e-10);
  }
}

TEST_CASE("first-order identities hold on generated boundaries", "[property]") {
  std::mt19937 rng(987431);
  for (int trial = 0; trial < 30; ++trial) {
    const auto b = random_boundary(rng);
    for (int l = 1; l <= 5; ++l) {
      INFO("trial " << trial << " l " << l);
      // pair trace: the cos and sin first-order shifts cancel exactly
      CHECK(perturb::omega1_cos(b, l, 1) + perturb::omega1_sin(b, l, 1) == 0.0);
    }
    // l = 0 never shifts at first order (structural: spectrum carries 0)
    for (const auto& pe : perturb::spectrum(b, BoundaryCondition::Neumann, 10, b.lambda()))
      if (pe.mode.l == 0) CHECK(pe.omega1 == 0.0);
  }
}

TEST_CASE("spectrum ordering and continuity on generated boundaries", "[property]") {
  std::mt19937 rng(55100123);
  for (int trial = 0; trial < 20; ++trial) {
    const auto b = random_boundary(rng);
    const auto s = perturb::spectrum(b, BoundaryCondition::Neumann, 12, b.lambda());
    for (size_t i = 1; i < s.size(); ++i) CHECK(s[i - 1].omega_total <= s[i].omega_total);

    // lambda -> 0 continuity: omega_total approaches omega_0 linearly
    const auto tiny = perturb::spectrum(b, BoundaryCondition::Neumann, 12, 1e-9);
    for (const auto& pe : tiny) CHECK(pe.omega_total == Approx(pe.omega0).margin(1e-6));
  }
}

TEST_CASE("q-fold symmetry selection on generated boundaries", "[property]") {
  // supported on multiples of q -> omega_1 = 0 whenever 2l is not a multiple
  std::mt19937 rng(777001);
  std::uniform_real_distribution<double> amp(-0.5, 0.5);
  for (int q : {3, 4, 5}) {
    boundary::FourierOrder o1, o2;
    o1.sigma = 1;
    o2.sigma = 2;
    o1.cos_coeffs.assign(13, 0.0);
    o1.sin_coeffs.assign(13, 0.0);
    o2.cos_coeffs.assign(13, 0.0);
    o2.sin_coeffs.assign(13, 0.0);
    double power = 0.0;
    for (int n = q; n <= 12; n += q) {
      const double c = amp(rng) / (n * n);
      o1.cos_coeffs[static_cast<size_t>(n)] = c;
      power += c * c;
    }
    o2.cos_coeffs[0] = -0.25 * power;
    const boundary::FourierBoundary b(1.0, 0.1, o1, o2, boundary::Provenance::Numeric);
    for (int l = 1; l <= 6; ++l) {
      INFO("q " << q << " l " << l);
      if ((2 * l) % q != 0) {
        CHECK(perturb::omega1_cos(b, l, 1) == 0.0);
        CHECK(perturb::omega1_sin(b, l, 1) == 0.0);
      }
    }
  }
}

TEST_CASE("numeric round trip: sampled family member recovers its profile", "[property]") {
  std::mt19937 rng(31415);
  for (int trial = 0; trial < 10; ++trial) {
    const auto b = random_boundary(rng, 6);
    std::vector<std::pair<double, double>> samples;
    for (int i = 0; i < 1024; ++i) {
      const double th = 2.0 * M_PI * i / 1024;
      samples.emplace_back(th, b.radius(th));
    }
    const auto nb = boundary::numeric_boundary(samples, b.lambda(), 8);
    // the sampled shape's first-order profile is f1 + lambda f2 + O(lambda^2)
    // around the *sample* R0; compare against the generating f1 at O(lambda)
    for (int n = 2; n <= 6; ++n) {
      INFO("trial " << trial << " n " << n);
      CHECK(nb.order(1).c(n) ==
            Approx(b.order(1).c(n)).margin(2.0 * std::fabs(b.lambda()) * 0.1 + 1e-9));
    }
  }
}
