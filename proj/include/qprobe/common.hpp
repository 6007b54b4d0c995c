#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace qprobe {

using cx = std::complex<double>;

// Hard cap on register width: 2^14 amplitudes keeps every run desk-scale.
inline constexpr int kMaxQubits = 14;

// Density matrices are dense 2^n x 2^n; the eigensolver is cubic, so the
// practical cap is lower than the statevector cap.
inline constexpr int kMaxDensityQubits = 8;

namespace tol {
inline constexpr double kUnitarity = 1e-12;
inline constexpr double kNorm = 1e-9;
inline constexpr double kDmReconstruction = 1e-8;
inline constexpr double kJacobiOffDiag = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-10;
inline constexpr double kPhaseEqual = 1e-9;
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SimError : public Error {
 public:
  using Error::Error;
};

// Parse failures carry the source position that triggered them.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(msg + " (line " + std::to_string(line) + ", col " +
              std::to_string(col) + ")"),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

class RunError : public Error {
 public:
  using Error::Error;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

}  // namespace qprobe
