#pragma once

#include <cstdint>
#include <vector>

#include "qprobe/common.hpp"
#include "qprobe/linalg.hpp"

namespace qprobe {

// Bit convention, fixed globally: basis index k spells the register left to
// right, qubit 0 owning the most significant bit. |j1 j2 ... jn> has index
// j1*2^(n-1) + ... + jn.
inline std::uint64_t qubit_bit(int num_qubits, int qubit) {
  return std::uint64_t(1) << (num_qubits - 1 - qubit);
}

class StateVector {
 public:
  StateVector() : num_qubits_(0) {}
  explicit StateVector(int num_qubits);

  static StateVector zero_state(int num_qubits);
  static StateVector basis_state(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return std::uint64_t(1) << num_qubits_; }

  cx& amp(std::uint64_t k) { return amps_[k]; }
  const cx& amp(std::uint64_t k) const { return amps_[k]; }
  std::vector<cx>& amplitudes() { return amps_; }
  const std::vector<cx>& amplitudes() const { return amps_; }

  double norm_squared() const;
  // |sum |a_k|^2 - 1|
  double norm_error() const;
  void renormalize();

  // <this|other>
  cx inner(const StateVector& other) const;

  // Equality up to a global phase: |<a|b>| >= 1 - tol on normalized states.
  bool equal_up_to_phase(const StateVector& other,
                         double tolerance = tol::kPhaseEqual) const;
  bool equal_exact(const StateVector& other, double tolerance) const;

  // this (x) other, this owning the high bits.
  StateVector tensor(const StateVector& other) const;

 private:
  int num_qubits_;
  std::vector<cx> amps_;
};

struct MeasurementOutcome {
  std::vector<int> bits;     // in the order the qubits were listed
  std::uint64_t as_integer;  // first listed qubit is the most significant bit
};

class DensityMatrix {
 public:
  DensityMatrix() : num_qubits_(0) {}
  explicit DensityMatrix(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return std::uint64_t(1) << num_qubits_; }

  CMatrix& entries() { return entries_; }
  const CMatrix& entries() const { return entries_; }

  double trace_error() const;        // |Tr - 1|
  double hermiticity_error() const;  // max |rho - rho^dag|
  double purity() const;             // Tr rho^2, real part

  void check_valid() const;  // throws SimError on invariant violation

 private:
  int num_qubits_;
  CMatrix entries_;
};

}  // namespace qprobe
