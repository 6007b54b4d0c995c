#include "qprobe/sim.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace qprobe {

namespace {

void check_indices(const StateVector& state, std::span<const int> qubits) {
  for (int q : qubits)
    if (q < 0 || q >= state.num_qubits())
      throw SimError("qubit index out of range: " + std::to_string(q));
}

std::uint64_t bits_of(const StateVector& state, std::span<const int> qubits,
                      std::uint64_t index) {
  std::uint64_t v = 0;
  for (int q : qubits) {
    v <<= 1;
    if (index & qubit_bit(state.num_qubits(), q)) v |= 1;
  }
  return v;
}

// Samples a basis index from |amps|^2 with a single uniform draw.
std::uint64_t sample_basis_index(const StateVector& state, RandomStream& rng) {
  const double total = state.norm_squared();
  if (total <= 1e-12) throw SimError("internal: measuring a zero-norm state");
  const double r = rng.next_double() * total;
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t k = 0; k < state.dim(); ++k) {
    const double p = std::norm(state.amp(k));
    if (p > 0.0) last_nonzero = k;
    acc += p;
    if (r < acc) return k;
  }
  return last_nonzero;  // guards against accumulated rounding
}

}  // namespace

void apply_unitary(StateVector& state, const Gate& gate,
                   std::span<const int> controls,
                   std::span<const int> targets) {
  check_indices(state, controls);
  check_indices(state, targets);
  if (static_cast<int>(targets.size()) != gate.arity)
    throw SimError("gate " + gate.name + " expects " +
                   std::to_string(gate.arity) + " target(s), got " +
                   std::to_string(targets.size()));
  std::set<int> seen;
  for (int q : targets)
    if (!seen.insert(q).second)
      throw SimError("duplicate target qubit " + std::to_string(q));
  for (int q : controls)
    if (!seen.insert(q).second)
      throw SimError("control qubit " + std::to_string(q) +
                     " overlaps another operand");

  const int n = state.num_qubits();
  std::uint64_t cmask = 0;
  for (int q : controls) cmask |= qubit_bit(n, q);
  std::uint64_t tmask = 0;
  for (int q : targets) tmask |= qubit_bit(n, q);

  const std::size_t d = std::size_t(1) << gate.arity;
  // Local index j maps to global bits: bit (arity-1-i) of j goes to
  // targets[i], matching the global most-significant-first convention.
  std::vector<std::uint64_t> offset(d, 0);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (j & (std::uint64_t(1) << (gate.arity - 1 - i)))
        offset[j] |= qubit_bit(n, targets[i]);

  std::vector<cx> in(d), out(d);
  for (std::uint64_t base = 0; base < state.dim(); ++base) {
    if (base & tmask) continue;
    if ((base & cmask) != cmask) continue;
    for (std::size_t j = 0; j < d; ++j) in[j] = state.amp(base | offset[j]);
    for (std::size_t r = 0; r < d; ++r) {
      cx acc(0.0, 0.0);
      for (std::size_t c = 0; c < d; ++c) acc += gate.matrix.at(r, c) * in[c];
      out[r] = acc;
    }
    for (std::size_t j = 0; j < d; ++j) state.amp(base | offset[j]) = out[j];
  }
}

MeasurementOutcome measure(StateVector& state, std::span<const int> qubits,
                           RandomStream& rng) {
  check_indices(state, qubits);
  std::set<int> seen(qubits.begin(), qubits.end());
  if (seen.size() != qubits.size())
    throw SimError("duplicate qubit in measurement");

  const std::uint64_t sampled = sample_basis_index(state, rng);

  MeasurementOutcome out;
  out.as_integer = bits_of(state, qubits, sampled);
  for (int q : qubits)
    out.bits.push_back((sampled & qubit_bit(state.num_qubits(), q)) ? 1 : 0);

  for (std::uint64_t k = 0; k < state.dim(); ++k)
    if (bits_of(state, qubits, k) != out.as_integer) state.amp(k) = cx(0.0, 0.0);
  state.renormalize();
  return out;
}

double probability_of(const StateVector& state, std::span<const int> qubits,
                      std::uint64_t outcome) {
  check_indices(state, qubits);
  if (outcome >> qubits.size())
    throw SimError("outcome out of range for " +
                   std::to_string(qubits.size()) + " qubit(s)");
  double p = 0.0;
  for (std::uint64_t k = 0; k < state.dim(); ++k)
    if (bits_of(state, qubits, k) == outcome) p += std::norm(state.amp(k));
  return p;
}

void reset(StateVector& state, std::span<const int> qubits, RandomStream& rng) {
  const MeasurementOutcome m = measure(state, qubits, rng);
  std::uint64_t flip = 0;
  for (std::size_t i = 0; i < qubits.size(); ++i)
    if (m.bits[i]) flip |= qubit_bit(state.num_qubits(), qubits[i]);
  if (flip == 0) return;
  StateVector flipped(state.num_qubits());
  for (std::uint64_t k = 0; k < state.dim(); ++k)
    flipped.amp(k ^ flip) = state.amp(k);
  state = std::move(flipped);
}

DensityMatrix dm_from_ensemble(const Ensemble& parts) {
  if (parts.empty()) throw SimError("ensemble must be nonempty");
  const int n = parts.front().second.num_qubits();
  double wsum = 0.0;
  for (const auto& [w, psi] : parts) {
    if (w < 0.0) throw SimError("ensemble weight is negative");
    if (psi.num_qubits() != n)
      throw SimError("ensemble states have mismatched qubit counts");
    wsum += w;
  }
  if (std::abs(wsum - 1.0) > tol::kNorm)
    throw SimError("ensemble weights sum to " + std::to_string(wsum) +
                   ", expected 1");

  DensityMatrix rho(n);
  for (const auto& [w, psi] : parts) {
    if (w == 0.0) continue;
    for (std::uint64_t r = 0; r < rho.dim(); ++r) {
      const cx ar = psi.amp(r);
      if (ar == cx(0.0, 0.0)) continue;
      for (std::uint64_t c = 0; c < rho.dim(); ++c)
        rho.entries().at(r, c) += w * ar * std::conj(psi.amp(c));
    }
  }
  return rho;
}

Ensemble ensemble_from_dm(const DensityMatrix& rho) {
  if (rho.hermiticity_error() > tol::kNorm)
    throw SimError("density matrix is not Hermitian");
  EigenSystem es = jacobi_hermitian(rho.entries());

  Ensemble parts;
  for (std::size_t k = es.values.size(); k-- > 0;) {
    const double w = es.values[k];
    if (w < tol::kEigenvalueFloor)
      throw SimError("density matrix has negative eigenvalue " +
                     std::to_string(w));
    if (w <= 1e-12) continue;
    StateVector psi(rho.num_qubits());
    for (std::uint64_t i = 0; i < rho.dim(); ++i)
      psi.amp(i) = es.vectors.at(i, k);
    psi.renormalize();
    parts.emplace_back(w, std::move(psi));
  }
  return parts;
}

}  // namespace qprobe
