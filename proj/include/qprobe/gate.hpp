#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qprobe/linalg.hpp"

namespace qprobe {

// A named unitary. The matrix is indexed like the global basis: the first
// target qubit owns the most significant bit of the local index.
struct Gate {
  std::string name;
  int arity = 1;
  CMatrix matrix;
  std::optional<double> angle;  // radians, set for R1

  static bool is_builtin(const std::string& name);
  // Built-ins: I, X, Z, H, S, Sdg, T, Tdg, CNOT, SWAP. R1 needs an angle;
  // use r1().
  static const Gate& builtin(const std::string& name);
  static Gate r1(double theta);  // diag(1, e^{i theta})
  // Validates unitarity at construction.
  static Gate from_matrix(std::string name, int arity, CMatrix m);

  static const std::vector<std::string>& builtin_names();
  // Name of the adjoint built-in (S <-> Sdg, T <-> Tdg, rest self-adjoint).
  static std::string adjoint_name(const std::string& name);
};

}  // namespace qprobe
