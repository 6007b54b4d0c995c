#pragma once

#include <span>
#include <utility>
#include <vector>

#include "qprobe/gate.hpp"
#include "qprobe/random.hpp"
#include "qprobe/state.hpp"

namespace qprobe {

// Applies `gate` to `targets`, restricted to the subspace where every
// control qubit is |1>. Empty controls means plain application. Mutates the
// state in place.
void apply_unitary(StateVector& state, const Gate& gate,
                   std::span<const int> controls, std::span<const int> targets);

// Measures the listed qubits with Born probabilities, collapses the state and
// renormalizes. One RNG draw per call. Measuring the same qubits again
// immediately returns the same outcome.
MeasurementOutcome measure(StateVector& state, std::span<const int> qubits,
                           RandomStream& rng);

// Exact Born probability of `outcome` on the listed qubits. No collapse,
// no randomness.
double probability_of(const StateVector& state, std::span<const int> qubits,
                      std::uint64_t outcome);

// Measures the listed qubits, then flips every qubit that read 1 back to |0>.
void reset(StateVector& state, std::span<const int> qubits, RandomStream& rng);

using Ensemble = std::vector<std::pair<double, StateVector>>;

// rho = sum_i w_i |psi_i><psi_i|. Weights must be nonnegative and sum to 1.
DensityMatrix dm_from_ensemble(const Ensemble& parts);

// Spectral decomposition via the Jacobi eigensolver; returns eigenpairs with
// eigenvalue > 1e-12, largest weight first.
Ensemble ensemble_from_dm(const DensityMatrix& rho);

}  // namespace qprobe
