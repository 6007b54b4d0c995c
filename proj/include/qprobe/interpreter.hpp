#pragma once

#include <map>
#include <string>
#include <vector>

#include "qprobe/program.hpp"
#include "qprobe/random.hpp"
#include "qprobe/sim.hpp"

namespace qprobe {

// Definitions bound to oracle declarations (by declaration name) for a run.
using OracleBindings = std::map<std::string, SubroutineDef>;

struct RunResult {
  StateVector state;
  // Scalars of the entry activation: parameters, assigned locals and
  // measurement results.
  std::map<std::string, long long> classical;
};

// Executes `sub` with its qubit-array parameters bound to the given absolute
// qubit indices of `state`. Returns the entry frame's scalars.
std::map<std::string, long long> run_in_place(
    StateVector& state, const Program& program, const std::string& sub,
    const Bindings& classical_args,
    const std::vector<std::vector<int>>& qubit_args,
    const OracleBindings& oracles, RandomStream& rng);

// Lays the subroutine's qubit arrays out consecutively from qubit 0 (sizes
// per array parameter, in declaration order) over `initial` and executes.
// The layout may leave trailing qubits untouched.
RunResult run(const Program& program, const std::string& sub,
              const Bindings& classical_args,
              const std::vector<int>& qubit_layout, StateVector initial,
              const OracleBindings& oracles, RandomStream& rng);

}  // namespace qprobe
