#include "qprobe/state.hpp"

#include <cmath>

namespace qprobe {

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits)
    throw SimError("state size out of range: " + std::to_string(num_qubits) +
                   " qubits (supported: 1.." + std::to_string(kMaxQubits) + ")");
  amps_.assign(std::uint64_t(1) << num_qubits, cx(0.0, 0.0));
}

StateVector StateVector::zero_state(int num_qubits) {
  StateVector st(num_qubits);
  st.amps_[0] = cx(1.0, 0.0);
  return st;
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  StateVector st(num_qubits);
  if (index >= st.dim()) throw SimError("basis index out of range");
  st.amps_[index] = cx(1.0, 0.0);
  return st;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const cx& a : amps_) s += std::norm(a);
  return s;
}

double StateVector::norm_error() const { return std::abs(norm_squared() - 1.0); }

void StateVector::renormalize() {
  const double n = std::sqrt(norm_squared());
  if (n <= 0.0) throw SimError("cannot renormalize a zero state");
  for (cx& a : amps_) a /= n;
}

cx StateVector::inner(const StateVector& other) const {
  if (num_qubits_ != other.num_qubits_)
    throw SimError("inner product: qubit count mismatch");
  cx s(0.0, 0.0);
  for (std::uint64_t k = 0; k < amps_.size(); ++k)
    s += std::conj(amps_[k]) * other.amps_[k];
  return s;
}

bool StateVector::equal_up_to_phase(const StateVector& other,
                                    double tolerance) const {
  return std::abs(inner(other)) >= 1.0 - tolerance;
}

bool StateVector::equal_exact(const StateVector& other, double tolerance) const {
  if (num_qubits_ != other.num_qubits_) return false;
  for (std::uint64_t k = 0; k < amps_.size(); ++k)
    if (std::abs(amps_[k] - other.amps_[k]) > tolerance) return false;
  return true;
}

StateVector StateVector::tensor(const StateVector& other) const {
  StateVector out(num_qubits_ + other.num_qubits_);
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (amps_[i] == cx(0.0, 0.0)) continue;
    for (std::uint64_t j = 0; j < other.dim(); ++j)
      out.amps_[(i << other.num_qubits_) | j] = amps_[i] * other.amps_[j];
  }
  return out;
}

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxDensityQubits)
    throw SimError("density matrix size out of range: " +
                   std::to_string(num_qubits) + " qubits (supported: 1.." +
                   std::to_string(kMaxDensityQubits) + ")");
  entries_ = CMatrix(dim(), dim());
}

double DensityMatrix::trace_error() const {
  cx tr(0.0, 0.0);
  for (std::uint64_t i = 0; i < dim(); ++i) tr += entries_.at(i, i);
  return std::abs(tr - cx(1.0, 0.0));
}

double DensityMatrix::hermiticity_error() const {
  return qprobe::hermiticity_error(entries_);
}

double DensityMatrix::purity() const {
  // Tr rho^2 = sum_ij rho_ij * rho_ji = sum_ij |rho_ij|^2 for Hermitian rho.
  double s = 0.0;
  for (const cx& e : entries_.data()) s += std::norm(e);
  return s;
}

void DensityMatrix::check_valid() const {
  if (hermiticity_error() > tol::kNorm)
    throw SimError("density matrix is not Hermitian");
  if (trace_error() > tol::kNorm)
    throw SimError("density matrix trace differs from 1");
}

}  // namespace qprobe
