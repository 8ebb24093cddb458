// Command-line front end: perturbative spectra, semi-empirical supercircle
// eigenvalues, the numerical oracle, the duality scan, and the validation
// suites, emitted as plot-ready CSV (JSON for validation reports).
//
// Exit codes: 0 success, 2 invalid specification/arguments, 3 numerical
// failure. HELMHOLTZ_THREADS caps grid parallelism.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "helmholtz/boundary.hpp"
#include "helmholtz/boundary_json.hpp"
#include "helmholtz/empirical.hpp"
#include "helmholtz/oracle.hpp"
#include "helmholtz/parallel.hpp"
#include "helmholtz/perturb.hpp"
#include "helmholtz/version.hpp"
#include "manifest.hpp"
#include "validate_suites.hpp"

namespace {

using namespace helmholtz;
using cli::fmt;
using cli::RunManifest;

std::vector<double> parse_grid(const std::string& text) {
  // "a:b:step" inclusive of both ends, or a single value "x"
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) return {std::stod(text)};
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("grid must be \"a:b:step\" or a single value");
  const double a = std::stod(text.substr(0, c1));
  const double b = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(text.substr(c2 + 1));
  if (!(step > 0.0) || b < a) throw std::invalid_argument("grid needs a <= b and step > 0");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = a + i * step;
    if (v > b + 1e-12 * std::max(1.0, std::fabs(b))) break;
    out.push_back(v);
  }
  return out;
}

boundary::ParsedBoundary load_boundary(const std::string& arg) {
  // a path to a JSON file, or inline JSON starting with '{'
  if (!arg.empty() && arg.front() == '{') return boundary::parse_boundary_string(arg);
  std::ifstream in(arg);
  if (!in) throw std::invalid_argument("cannot open boundary spec file: " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return boundary::parse_boundary_string(ss.str());
}

void write_output(const std::string& path, RunManifest& manifest, const std::string& body) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty() && path != "-") {
    manifest.outputs.push_back(path);
    file.open(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    out = &file;
  }
  *out << manifest.header_comment() << body;
  out->flush();
}

void check_lambda_range(const boundary::ParsedBoundary& pb, double lam) {
  switch (pb.provenance) {
    case boundary::Provenance::Supercircle:
      if (lam < -1.0 || lam > 1.5)
        throw std::invalid_argument(
            "supercircle family: lambda must lie in [-1, 1.5] (t in [1, 3.5])");
      break;
    case boundary::Provenance::Ellipse:
      if (std::fabs(lam) > 0.3 + 1e-12)
        throw std::invalid_argument("ellipse family: |lambda| must be <= 0.3");
      break;
    case boundary::Provenance::Numeric:
      if (std::fabs(lam) > 1.0)
        throw std::invalid_argument("numeric boundary: |lambda| must be <= 1");
      break;
  }
}

int cmd_perturb(const std::string& boundary_arg, const std::string& bc_name, int states,
                const std::string& grid_text, const std::string& out_path) {
  const auto pb = load_boundary(boundary_arg);
  const auto bc = parse_boundary_condition(bc_name);
  const auto grid = parse_grid(grid_text);
  for (double lam : grid) check_lambda_range(pb, lam);

  RunManifest manifest{.command = "perturb",
                       .parameters = {{"boundary", pb.description},
                                      {"bc", to_string(bc)},
                                      {"states", fmt(states)},
                                      {"lambda-grid", grid_text}}};

  std::vector<std::string> blocks(grid.size());
  detail::parallel_for(static_cast<int>(grid.size()), 0, [&](int gi) {
    const double lam = grid[static_cast<size_t>(gi)];
    const auto spec = perturb::spectrum(pb.fourier, bc, states, lam);
    std::string rows;
    for (size_t s = 0; s < spec.size(); ++s) {
      const auto& pe = spec[s];
      rows += fmt(lam) + "," + fmt(static_cast<int>(s)) + "," + fmt(pe.mode.l) + "," +
              fmt(pe.mode.j) + "," + to_string(pe.mode.parity) + "," + fmt(pe.omega0) + "," +
              fmt(pe.omega1) + "," + fmt(pe.omega2) + "," + fmt(pe.omega_total) + "\n";
    }
    blocks[static_cast<size_t>(gi)] = std::move(rows);
  });

  std::string body = "lambda,state_index,l,j,parity,omega0,omega1,omega2,omega_total\n";
  for (const auto& b : blocks) body += b;
  write_output(out_path, manifest, body);
  return 0;
}

int cmd_empirical(std::optional<double> t_single, const std::string& t_grid_text,
                  const std::string& bc_name, int states, const std::string& out_path) {
  const auto bc = parse_boundary_condition(bc_name);
  std::vector<double> grid;
  std::string grid_desc;
  if (t_single) {
    grid = {*t_single};
    grid_desc = fmt(*t_single);
  } else if (!t_grid_text.empty()) {
    grid = parse_grid(t_grid_text);
    grid_desc = t_grid_text;
  } else {
    throw std::invalid_argument("empirical: provide --t or --t-grid");
  }
  for (double t : grid)
    if (!(t >= 1.0)) throw std::invalid_argument("empirical: every t must be >= 1");

  RunManifest manifest{
      .command = "empirical",
      .parameters = {{"bc", to_string(bc)}, {"states", fmt(states)}, {"t-grid", grid_desc}}};

  // group ids over the first `states` slots are t-independent
  const auto pairs = empirical::match_states(bc, states);
  std::vector<int> group_of(static_cast<size_t>(states));
  {
    int g = 0;
    for (int i = 0; i < states; ++i) {
      if (i > 0) {
        const auto &a = pairs[static_cast<size_t>(i) - 1], &b = pairs[static_cast<size_t>(i)];
        const bool same = a.square.nx * a.square.nx + a.square.ny * a.square.ny ==
                              b.square.nx * b.square.nx + b.square.ny * b.square.ny &&
                          a.circle.l == b.circle.l && a.circle.j == b.circle.j;
        if (!same) ++g;
      }
      group_of[static_cast<size_t>(i)] = g;
    }
  }

  std::vector<std::string> blocks(grid.size());
  detail::parallel_for(static_cast<int>(grid.size()), 0, [&](int gi) {
    const double t = grid[static_cast<size_t>(gi)];
    std::string rows;
    for (int s = 0; s < states; ++s) {
      const auto& p = pairs[static_cast<size_t>(s)];
      rows += fmt(t) + "," + fmt(s) + "," + fmt(p.square.nx) + "," + fmt(p.square.ny) + "," +
              fmt(p.circle.l) + "," + fmt(p.circle.j) + "," + fmt(group_of[static_cast<size_t>(s)]) +
              "," + fmt(empirical::empirical_omega(t, s, bc)) + "\n";
    }
    blocks[static_cast<size_t>(gi)] = std::move(rows);
  });

  std::string body = "t,state_index,n_x,n_y,l,j,degeneracy_group,omega_empirical\n";
  for (const auto& b : blocks) body += b;
  write_output(out_path, manifest, body);
  return 0;
}

int cmd_oracle(const std::string& boundary_arg, const std::string& bc_name,
               const std::string& window_text, std::optional<double> lambda_opt, double step,
               int basis, const std::string& symmetry, bool normalize,
               const std::string& out_path) {
  const auto pb = load_boundary(boundary_arg);
  const auto bc = parse_boundary_condition(bc_name);
  const auto colon = window_text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("oracle: --window must be kmin:kmax");
  const double k_min = std::stod(window_text.substr(0, colon));
  const double k_max = std::stod(window_text.substr(colon + 1));

  const double lam = lambda_opt.value_or(pb.fourier.lambda());
  check_lambda_range(pb, lam);
  auto curve = pb.shape_at(lam);
  double r0 = 1.0;
  if (normalize) {
    r0 = boundary::equal_area_radius(curve.r);
    const auto base = curve;
    curve.r = [base, r0](double th) { return base.r(th) / r0; };
    curve.dr = [base, r0](double th) { return base.dr(th) / r0; };
  }

  oracle::OracleConfig cfg;
  cfg.k_min = k_min;
  cfg.k_max = k_max;
  cfg.sweep_step = step;
  cfg.basis_size = basis;
  cfg.boundary_points = std::max(160, 4 * basis);
  if (symmetry == "auto")
    cfg.symmetry_fold = pb.symmetry_fold();
  else
    cfg.symmetry_fold = std::stoi(symmetry);
  if (pb.provenance == boundary::Provenance::Supercircle)
    cfg.converged_tol = 5e-2;  // C1-only boundary: algebraic sigma floor

  RunManifest manifest{.command = "oracle",
                       .parameters = {{"boundary", pb.description},
                                      {"bc", to_string(bc)},
                                      {"window", window_text},
                                      {"lambda", fmt(lam)},
                                      {"step", fmt(step)},
                                      {"basis", fmt(basis)},
                                      {"normalize", normalize ? "1" : "0"},
                                      {"symmetry", symmetry}}};

  const auto found = oracle::find_eigenvalues(curve, bc, cfg);
  std::string body = "k,omega,sigma_min,symmetry_class,converged\n";
  int converged_count = 0;
  for (const auto& r : found) {
    body += fmt(r.k) + "," + fmt(r.omega) + "," + fmt(r.sigma_min) + "," + r.symmetry_class + "," +
            (r.converged ? "1" : "0") + "\n";
    converged_count += r.converged ? 1 : 0;
  }
  write_output(out_path, manifest, body);
  if (converged_count == 0) {
    std::cerr << "oracle: no converged eigenvalues in the window\n";
    return 3;
  }
  return 0;
}

int cmd_duality(const std::string& grid_text, const std::string& out_path) {
  const auto grid = parse_grid(grid_text);
  for (double t : grid)
    if (!(t >= 1.0) || t > 2.0)
      throw std::invalid_argument("duality: t-grid must lie within [1, 2]");
  RunManifest manifest{.command = "duality", .parameters = {{"t-grid", grid_text}}};
  std::string body = "t,t_dual,alpha,area_t,area_tdual,delta\n";
  for (double t : grid) {
    const double td = empirical::dual_exponent(t);
    const double area_dual = std::isinf(td) ? 4.0 : empirical::supercircle_area(td);
    body += fmt(t) + "," + (std::isinf(td) ? std::string("inf") : fmt(td)) + "," +
            fmt(empirical::duality_alpha(t)) + "," + fmt(empirical::supercircle_area(t)) + "," +
            fmt(area_dual) + "," + fmt(empirical::duality_deviation(t)) + "\n";
  }
  write_output(out_path, manifest, body);
  return 0;
}

int cmd_validate(const std::string& suite, const std::string& out_path) {
  const auto report = cli::run_suites(suite);
  RunManifest manifest{.command = "validate", .parameters = {{"suite", suite}}};
  if (!out_path.empty() && out_path != "-") {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << report.dump(2) << "\n";
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return report["pass"].get<bool>() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helmholtz eigenvalues on near-circular domains: boundary perturbation theory, "
               "a semi-empirical supercircle formula, and a method-of-particular-solutions "
               "numerical oracle"};
  app.set_version_flag("--version", std::string("helmholtz ") + helmholtz::kVersion);
  app.require_subcommand(1);

  std::string boundary_arg, bc_name = "neumann", grid_text, out_path, window_text;
  std::string t_grid_text, suite = "all", symmetry = "auto";
  int states = 10, basis = 40;
  double step = 0.01;
  std::optional<double> t_single, lambda_opt;

  auto* perturb = app.add_subcommand("perturb", "perturbative spectrum over a lambda grid");
  perturb->add_option("--boundary", boundary_arg, "boundary spec: JSON file or inline JSON")
      ->required();
  perturb->add_option("--bc", bc_name, "boundary condition (neumann)");
  perturb->add_option("--states", states, "number of states (degeneracy slots)");
  perturb->add_option("--lambda-grid", grid_text, "a:b:step or single value")->required();
  perturb->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* empirical = app.add_subcommand("empirical", "semi-empirical supercircle eigenvalues");
  empirical->add_option("--t", t_single, "single supercircle exponent");
  empirical->add_option("--t-grid", t_grid_text, "a:b:step");
  empirical->add_option("--bc", bc_name, "dirichlet or neumann")->required();
  empirical->add_option("--states", states, "number of states (degeneracy slots)");
  empirical->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "numerical eigenvalues (MPS sweep)");
  oracle->add_option("--boundary", boundary_arg, "boundary spec: JSON file or inline JSON")
      ->required();
  oracle->add_option("--bc", bc_name, "dirichlet or neumann")->required();
  oracle->add_option("--window", window_text, "k sweep window kmin:kmax")->required();
  oracle->add_option("--lambda", lambda_opt, "family deformation (default: spec's value)");
  oracle->add_option("--step", step, "sweep step in k");
  oracle->add_option("--basis", basis, "Fourier-Bessel basis order cap");
  oracle->add_option("--symmetry", symmetry, "auto, 1, 2 or 4 (symmetry classes)");
  bool normalize = false;
  oracle->add_flag("--normalize", normalize, "rescale the shape to R0 = 1 (omega in 1/R0^2)");
  oracle->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* duality = app.add_subcommand("duality", "supercircular duality deviation scan");
  duality->add_option("--t-grid", t_grid_text, "a:b:step within [1, 2]")->required();
  duality->add_option("--out", out_path, "output CSV path (default stdout)");

  auto* validate = app.add_subcommand("validate", "run invariant suites, JSON report");
  validate->add_option("--suite", suite, "specfun|boundary|perturb|empirical|oracle|all");
  validate->add_option("--out", out_path, "report path (default stdout)");

  try {
    app.parse(argc, argv);
    if (perturb->parsed())
      return cmd_perturb(boundary_arg, bc_name, states, grid_text, out_path);
    if (empirical->parsed())
      return cmd_empirical(t_single, t_grid_text, bc_name, states, out_path);
    if (oracle->parsed())
      return cmd_oracle(boundary_arg, bc_name, window_text, lambda_opt, step, basis, symmetry,
                        normalize, out_path);
    if (duality->parsed()) return cmd_duality(t_grid_text, out_path);
    if (validate->parsed()) return cmd_validate(suite, out_path);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
