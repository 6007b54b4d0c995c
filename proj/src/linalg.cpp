#include "qprobe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qprobe {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = cx(1.0, 0.0);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      m.at(c, r) = std::conj(at(r, c));
  return m;
}

CMatrix CMatrix::multiply(const CMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw SimError("matrix dimension mismatch");
  CMatrix m(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cx v = at(r, k);
      if (v == cx(0.0, 0.0)) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c) m.at(r, c) += v * rhs.at(k, c);
    }
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw SimError("matrix dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

double unitarity_error(const CMatrix& u) {
  return max_abs_diff(u.adjoint().multiply(u), CMatrix::identity(u.rows()));
}

double hermiticity_error(const CMatrix& a) {
  return max_abs_diff(a, a.adjoint());
}

namespace {

double max_offdiag(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = r + 1; c < a.cols(); ++c)
      m = std::max(m, std::abs(a.at(r, c)));
  return m;
}

}  // namespace

EigenSystem jacobi_hermitian(CMatrix a, double off_threshold, int max_sweeps) {
  if (a.rows() != a.cols()) throw SimError("jacobi: matrix not square");
  const std::size_t n = a.rows();
  CMatrix v = CMatrix::identity(n);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (max_offdiag(a) <= off_threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cx apq = a.at(p, q);
        const double r = std::abs(apq);
        if (r < 1e-300) continue;
        // Factor out the phase of a_pq, then a real 2x2 rotation zeroes it.
        // G = diag(1, e^{-i phi}) * [[c, -s], [s, c]]
        const cx phase = apq / r;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cx gpp(c, 0.0), gpq(-s, 0.0);
        const cx gqp = std::conj(phase) * s;
        const cx gqq = std::conj(phase) * c;

        // A <- A G (columns p, q)
        for (std::size_t i = 0; i < n; ++i) {
          const cx aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = aip * gpp + aiq * gqp;
          a.at(i, q) = aip * gpq + aiq * gqq;
        }
        // A <- G^dag A (rows p, q)
        for (std::size_t i = 0; i < n; ++i) {
          const cx api = a.at(p, i), aqi = a.at(q, i);
          a.at(p, i) = std::conj(gpp) * api + std::conj(gqp) * aqi;
          a.at(q, i) = std::conj(gpq) * api + std::conj(gqq) * aqi;
        }
        a.at(p, q) = cx(0.0, 0.0);
        a.at(q, p) = cx(0.0, 0.0);
        a.at(p, p) = cx(a.at(p, p).real(), 0.0);
        a.at(q, q) = cx(a.at(q, q).real(), 0.0);

        // V <- V G
        for (std::size_t i = 0; i < n; ++i) {
          const cx vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = vip * gpp + viq * gqp;
          v.at(i, q) = vip * gpq + viq * gqq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a.at(x, x).real() < a.at(y, y).real();
  });

  EigenSystem es;
  es.values.resize(n);
  es.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a.at(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors.at(i, k) = v.at(i, order[k]);
  }
  return es;
}

}  // namespace qprobe
