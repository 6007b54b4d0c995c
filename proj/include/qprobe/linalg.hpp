#pragma once

#include <cstddef>
#include <vector>

#include "qprobe/common.hpp"

namespace qprobe {

// Dense row-major complex matrix. Small by design: the largest instance is a
// 2^kMaxDensityQubits square density matrix.
class CMatrix {
 public:
  CMatrix() : rows_(0), cols_(0) {}
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cx(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cx& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const cx& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<cx>& data() { return a_; }
  const std::vector<cx>& data() const { return a_; }

  CMatrix adjoint() const;
  CMatrix multiply(const CMatrix& rhs) const;

  bool operator==(const CMatrix& rhs) const = default;

 private:
  std::size_t rows_, cols_;
  std::vector<cx> a_;
};

// max_ij |(A - B)_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

// ||U^dag U - I||_max
double unitarity_error(const CMatrix& u);

// max_ij |(A - A^dag)_ij|
double hermiticity_error(const CMatrix& a);

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k is the eigenvector of values[k]
};

// Cyclic Jacobi diagonalization for Hermitian matrices. Sweeps until the
// largest off-diagonal magnitude drops below `off_threshold`.
EigenSystem jacobi_hermitian(CMatrix a,
                             double off_threshold = tol::kJacobiOffDiag,
                             int max_sweeps = 100);

}  // namespace qprobe
