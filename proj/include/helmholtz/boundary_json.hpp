#pragma once

// JSON boundary-spec ingestion:
//   {"type": "supercircle", "t": 1.5}                        (optional "a")
//   {"type": "ellipse", "a": 1.25, "b": 0.8}
//   {"type": "numeric", "samples": [[theta, r], ...], "lambda": 0.1}
// Numeric samples must be strictly increasing in theta and cover [0, 2pi).

#include <json.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "helmholtz/boundary.hpp"
#include "helmholtz/oracle.hpp"

namespace helmholtz::boundary {

struct ParsedBoundary {
  FourierBoundary fourier;
  Provenance provenance;
  SupercircleSpec supercircle{};  // valid when provenance == Supercircle
  EllipseSpec ellipse{};          // valid when provenance == Ellipse
  std::vector<std::pair<double, double>> samples;  // valid for Numeric
  std::string description;

  /// Exact shape of the family member at deformation lam. Supercircle and
  /// ellipse families regenerate the closed-form curve; a numeric boundary is
  /// only known at its own lambda and reproduces the sampled shape by
  /// truncated-series reconstruction.
  oracle::BoundaryCurve shape_at(double lam) const {
    if (provenance == Provenance::Supercircle) {
      const double t = 2.0 + lam, a = supercircle.a;
      if (lam < -1.0 || lam > 1.5)
        throw std::domain_error("shape_at: supercircle family needs lambda in [-1, 1.5]");
      return {[t, a](double th) { return supercircle_radius(t, a, th); },
              [t, a](double th) { return supercircle_dradius(t, a, th); }};
    }
    if (provenance == Provenance::Ellipse) {
      // negative lambda is the 90-degree-rotated ellipse (a < b)
      if (std::fabs(lam) > 0.3 + 1e-12)
        throw std::domain_error("shape_at: ellipse family needs |lambda| <= 0.3");
      // R0 of the generated shape is kept at the family's sqrt(ab).
      const double r0 = fourier.r0();
      const double a = r0 * std::sqrt((1.0 + lam) / (1.0 - lam));
      const double b = r0 * r0 / a;
      return {[a, b](double th) { return ellipse_radius(a, b, th); },
              [a, b](double th) { return ellipse_dradius(a, b, th); }};
    }
    if (std::fabs(lam - fourier.lambda()) > 1e-12)
      throw std::domain_error("shape_at: numeric boundary is defined only at its own lambda");
    const FourierBoundary fb = fourier;
    return {[fb](double th) { return fb.radius(th); },
            [fb](double th) {
              // derivative of the truncated reconstruction
              const auto& o1 = fb.order(1);
              double d = 0.0;
              for (int n = 1; n <= o1.n_max(); ++n)
                d += n * (-o1.c(n) * std::sin(n * th) + o1.s(n) * std::cos(n * th));
              return fb.r0() * fb.lambda() * d;
            }};
  }

  /// Symmetry fold of the family's point group, for the oracle's class sweep.
  int symmetry_fold() const {
    if (provenance == Provenance::Supercircle) return 4;
    if (provenance == Provenance::Ellipse) return 2;
    return 1;
  }
};

inline ParsedBoundary parse_boundary_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::invalid_argument("boundary spec: expected an object with a \"type\" string");
  const std::string type = j["type"].get<std::string>();

  if (type == "supercircle") {
    SupercircleSpec spec;
    if (!j.contains("t")) throw std::invalid_argument("supercircle spec: missing \"t\"");
    spec.t = j["t"].get<double>();
    spec.a = j.value("a", 1.0);
    return ParsedBoundary{supercircle_boundary(spec), Provenance::Supercircle, spec, {}, {},
                          "supercircle t=" + std::to_string(spec.t)};
  }
  if (type == "ellipse") {
    EllipseSpec spec;
    if (!j.contains("a") || !j.contains("b"))
      throw std::invalid_argument("ellipse spec: missing \"a\" or \"b\"");
    spec.a = j["a"].get<double>();
    spec.b = j["b"].get<double>();
    return ParsedBoundary{ellipse_boundary(spec), Provenance::Ellipse, {}, spec, {},
                          "ellipse a=" + std::to_string(spec.a) + " b=" + std::to_string(spec.b)};
  }
  if (type == "numeric") {
    if (!j.contains("samples") || !j["samples"].is_array())
      throw std::invalid_argument("numeric spec: missing \"samples\" array");
    if (!j.contains("lambda")) throw std::invalid_argument("numeric spec: missing \"lambda\"");
    std::vector<std::pair<double, double>> samples;
    for (const auto& row : j["samples"]) {
      if (!row.is_array() || row.size() != 2)
        throw std::invalid_argument("numeric spec: samples must be [theta, r] pairs");
      samples.emplace_back(row[0].get<double>(), row[1].get<double>());
    }
    const double lambda = j["lambda"].get<double>();
    return ParsedBoundary{numeric_boundary(samples, lambda), Provenance::Numeric, {}, {},
                          std::move(samples), "numeric boundary"};
  }
  throw std::invalid_argument("boundary spec: unknown type \"" + type + "\"");
}

inline ParsedBoundary parse_boundary_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("boundary spec: invalid JSON: ") + e.what());
  }
  return parse_boundary_json(j);
}

}  // namespace helmholtz::boundary
