#pragma once

#include <stdexcept>
#include <string>

namespace helmholtz {

enum class BoundaryCondition { Dirichlet, Neumann };

/// Angular variety of a degenerate circle mode: cos(l theta) or sin(l theta).
enum class Parity { Cos, Sin };

inline std::string to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::Dirichlet ? "dirichlet" : "neumann";
}

inline std::string to_string(Parity p) { return p == Parity::Cos ? "cos" : "sin"; }

inline BoundaryCondition parse_boundary_condition(const std::string& s) {
  if (s == "dirichlet" || s == "d") return BoundaryCondition::Dirichlet;
  if (s == "neumann" || s == "n") return BoundaryCondition::Neumann;
  throw std::invalid_argument("unknown boundary condition: " + s);
}

}  // namespace helmholtz
