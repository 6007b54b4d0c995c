#pragma once

#include <cmath>
#include <numbers>

#include "qprobe/random.hpp"
#include "qprobe/state.hpp"

namespace qprobe::testutil {

// Haar-ish random pure state: i.i.d. complex normal amplitudes, normalized.
inline StateVector random_state(int num_qubits, RandomStream& rng) {
  StateVector st(num_qubits);
  for (std::uint64_t k = 0; k < st.dim(); ++k) {
    // Box-Muller
    const double u1 = std::max(rng.next_double(), 1e-300);
    const double u2 = rng.next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    st.amp(k) = cx(r * std::cos(2.0 * std::numbers::pi * u2),
                   r * std::sin(2.0 * std::numbers::pi * u2));
  }
  st.renormalize();
  return st;
}

}  // namespace qprobe::testutil
