#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qprobe/sim.hpp"
#include "test_util.hpp"

using namespace qprobe;
using std::numbers::pi;

namespace {

std::vector<int> all_qubits(const StateVector& st) {
  std::vector<int> qs(st.num_qubits());
  for (int i = 0; i < st.num_qubits(); ++i) qs[i] = i;
  return qs;
}

// Independent oracle for measurement: Born probabilities and post-states by
// direct enumeration over amplitudes.
double born_probability(const StateVector& st, const std::vector<int>& qubits,
                        std::uint64_t outcome) {
  double p = 0.0;
  for (std::uint64_t k = 0; k < st.dim(); ++k) {
    std::uint64_t v = 0;
    for (int q : qubits) {
      v <<= 1;
      if (k & qubit_bit(st.num_qubits(), q)) v |= 1;
    }
    if (v == outcome) p += std::norm(st.amp(k));
  }
  return p;
}

}  // namespace

TEST_CASE("built-in gates are unitary within 1e-12") {
  for (const auto& name : Gate::builtin_names()) {
    if (name == "R1") continue;
    CHECK(unitarity_error(Gate::builtin(name).matrix) <= tol::kUnitarity);
  }
  for (double theta : {0.0, 0.3, pi / 4, -pi / 2, 2.0 * pi, 13.7})
    CHECK(unitarity_error(Gate::r1(theta).matrix) <= tol::kUnitarity);
}

TEST_CASE("H on |0> gives the uniform single-qubit superposition") {
  StateVector st = StateVector::zero_state(1);
  apply_unitary(st, Gate::builtin("H"), {}, std::vector<int>{0});
  CHECK(std::abs(st.amp(0) - cx(1 / std::sqrt(2.0), 0)) < 1e-12);
  CHECK(std::abs(st.amp(1) - cx(1 / std::sqrt(2.0), 0)) < 1e-12);
}

TEST_CASE("H then CNOT prepares the Bell state") {
  StateVector st = StateVector::zero_state(2);
  apply_unitary(st, Gate::builtin("H"), {}, std::vector<int>{0});
  apply_unitary(st, Gate::builtin("CNOT"), {}, std::vector<int>{0, 1});
  const double s = 1 / std::sqrt(2.0);
  CHECK(std::abs(st.amp(0b00) - cx(s, 0)) < 1e-12);
  CHECK(std::abs(st.amp(0b01)) < 1e-12);
  CHECK(std::abs(st.amp(0b10)) < 1e-12);
  CHECK(std::abs(st.amp(0b11) - cx(s, 0)) < 1e-12);
}

TEST_CASE("CNOT as controlled X matches the built-in two-qubit gate") {
  RandomStream rng(11);
  StateVector a = testutil::random_state(3, rng);
  StateVector b = a;
  apply_unitary(a, Gate::builtin("CNOT"), {}, std::vector<int>{2, 0});
  apply_unitary(b, Gate::builtin("X"), std::vector<int>{2}, std::vector<int>{0});
  CHECK(a.equal_exact(b, 1e-12));
}

TEST_CASE("identity gate leaves any state bit-exact") {
  RandomStream rng(7);
  StateVector st = testutil::random_state(3, rng);
  StateVector before = st;
  apply_unitary(st, Gate::builtin("I"), {}, std::vector<int>{1});
  for (std::uint64_t k = 0; k < st.dim(); ++k)
    CHECK(st.amp(k) == before.amp(k));
}

TEST_CASE("qubit 0 is the most significant bit") {
  // X on qubit 0 of a 2-qubit register must set index 2, not index 1.
  StateVector st = StateVector::zero_state(2);
  apply_unitary(st, Gate::builtin("X"), {}, std::vector<int>{0});
  CHECK(std::abs(st.amp(0b10) - cx(1, 0)) < 1e-15);
}

TEST_CASE("apply_unitary rejects bad operands") {
  StateVector st = StateVector::zero_state(2);
  CHECK_THROWS_AS(
      apply_unitary(st, Gate::builtin("X"), {}, std::vector<int>{2}),
      SimError);
  CHECK_THROWS_AS(apply_unitary(st, Gate::builtin("X"), std::vector<int>{0},
                                std::vector<int>{0}),
                  SimError);
  CHECK_THROWS_AS(
      apply_unitary(st, Gate::builtin("CNOT"), {}, std::vector<int>{0}),
      SimError);
  CHECK_THROWS_AS(
      apply_unitary(st, Gate::builtin("SWAP"), {}, std::vector<int>{1, 1}),
      SimError);
}

TEST_CASE("measuring the all-zero state returns 0 and leaves it unchanged") {
  RandomStream rng(1);
  StateVector st = StateVector::zero_state(3);
  auto m = measure(st, all_qubits(st), rng);
  CHECK(m.as_integer == 0);
  CHECK(m.bits == std::vector<int>{0, 0, 0});
  CHECK(std::abs(st.amp(0) - cx(1, 0)) < 1e-15);
}

TEST_CASE("measurement frequencies follow Born probabilities") {
  RandomStream rng(42);
  int zeros = 0;
  const int shots = 10000;
  for (int i = 0; i < shots; ++i) {
    StateVector st = StateVector::zero_state(1);
    apply_unitary(st, Gate::builtin("H"), {}, std::vector<int>{0});
    auto m = measure(st, std::vector<int>{0}, rng);
    if (m.as_integer == 0) ++zeros;
  }
  CHECK(std::abs(zeros / double(shots) - 0.5) <= 0.02);
}

TEST_CASE("post-measurement state of the Bell pair matches Born enumeration") {
  // Expected post-states computed by zeroing mismatched amplitudes and
  // renormalizing: outcome 0 -> |00>, outcome 1 -> |11>.
  bool saw0 = false, saw1 = false;
  for (std::uint64_t seed = 0; seed < 64 && !(saw0 && saw1); ++seed) {
    RandomStream rng(seed);
    StateVector st = StateVector::zero_state(2);
    apply_unitary(st, Gate::builtin("H"), {}, std::vector<int>{0});
    apply_unitary(st, Gate::builtin("CNOT"), {}, std::vector<int>{0, 1});
    auto m = measure(st, std::vector<int>{0}, rng);
    if (m.as_integer == 0) {
      saw0 = true;
      CHECK(st.equal_exact(StateVector::basis_state(2, 0b00), 1e-12));
    } else {
      saw1 = true;
      CHECK(st.equal_exact(StateVector::basis_state(2, 0b11), 1e-12));
    }
    // Repeated measurement of the same qubit reproduces the outcome.
    auto again = measure(st, std::vector<int>{0}, rng);
    CHECK(again.as_integer == m.as_integer);
  }
  CHECK(saw0);
  CHECK(saw1);
}

TEST_CASE("probability_of agrees with enumeration and known values") {
  StateVector zero = StateVector::zero_state(1);
  CHECK(probability_of(zero, std::vector<int>{0}, 0) == doctest::Approx(1.0));

  // P(0) on H|1>: second column of H is (1, -1)/sqrt(2).
  StateVector st = StateVector::basis_state(1, 1);
  apply_unitary(st, Gate::builtin("H"), {}, std::vector<int>{0});
  CHECK(probability_of(st, std::vector<int>{0}, 0) == doctest::Approx(0.5));

  // Uniform superposition: every outcome has probability 2^-n.
  const int n = 4;
  StateVector u = StateVector::zero_state(n);
  for (int q = 0; q < n; ++q)
    apply_unitary(u, Gate::builtin("H"), {}, std::vector<int>{q});
  for (std::uint64_t k = 0; k < u.dim(); ++k)
    CHECK(probability_of(u, all_qubits(u), k) == doctest::Approx(1.0 / 16));

  CHECK_THROWS_AS(probability_of(zero, std::vector<int>{0}, 2), SimError);

  RandomStream rng(5);
  StateVector r = testutil::random_state(3, rng);
  for (std::uint64_t k = 0; k < 8; ++k)
    CHECK(probability_of(r, all_qubits(r), k) ==
          doctest::Approx(born_probability(r, all_qubits(r), k)));
}

TEST_CASE("reset sends |1> to |0> and leaves |0...0> alone") {
  RandomStream rng(3);
  StateVector one = StateVector::basis_state(1, 1);
  reset(one, std::vector<int>{0}, rng);
  CHECK(one.equal_exact(StateVector::basis_state(1, 0), 1e-12));

  StateVector zeros = StateVector::zero_state(3);
  reset(zeros, all_qubits(zeros), rng);
  CHECK(zeros.equal_exact(StateVector::zero_state(3), 1e-12));
}

TEST_CASE("resetting one side of the Bell pair collapses the other") {
  // Born enumeration: qubit 0 ends in |0> or |1> with probability 1/2 each,
  // qubit 1 always ends in |0>.
  RandomStream rng(9);
  int q0_one = 0;
  const int shots = 4000;
  for (int i = 0; i < shots; ++i) {
    StateVector st = StateVector::zero_state(2);
    apply_unitary(st, Gate::builtin("H"), {}, std::vector<int>{0});
    apply_unitary(st, Gate::builtin("CNOT"), {}, std::vector<int>{0, 1});
    reset(st, std::vector<int>{1}, rng);
    CHECK(probability_of(st, std::vector<int>{1}, 0) == doctest::Approx(1.0));
    if (probability_of(st, std::vector<int>{0}, 1) > 0.5) ++q0_one;
  }
  CHECK(std::abs(q0_one / double(shots) - 0.5) <= 4.0 * 0.5 / std::sqrt(shots));
}

TEST_CASE("norm is preserved across long random circuits") {
  RandomStream rng(17);
  StateVector st = StateVector::zero_state(5);
  const std::vector<std::string> pool = {"X", "Z", "H", "S", "T"};
  for (int step = 0; step < 500; ++step) {
    const auto& name = pool[rng.below(pool.size())];
    const int q = int(rng.below(5));
    apply_unitary(st, Gate::builtin(name), {}, std::vector<int>{q});
    if (step % 3 == 0) {
      int a = int(rng.below(5)), b = int(rng.below(5));
      if (a != b)
        apply_unitary(st, Gate::builtin("CNOT"), {}, std::vector<int>{a, b});
    }
    CHECK(st.norm_error() <= tol::kNorm);
  }
}

TEST_CASE("gate application is linear") {
  RandomStream rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    StateVector psi1 = testutil::random_state(3, rng);
    StateVector psi2 = testutil::random_state(3, rng);
    const cx a(rng.next_double(), rng.next_double());
    const cx b(rng.next_double(), -rng.next_double());
    StateVector combo(3);
    for (std::uint64_t k = 0; k < 8; ++k)
      combo.amp(k) = a * psi1.amp(k) + b * psi2.amp(k);
    const double norm = std::sqrt(combo.norm_squared());
    for (std::uint64_t k = 0; k < 8; ++k) combo.amp(k) /= norm;

    const int q = int(rng.below(3));
    apply_unitary(combo, Gate::builtin("H"), {}, std::vector<int>{q});
    apply_unitary(psi1, Gate::builtin("H"), {}, std::vector<int>{q});
    apply_unitary(psi2, Gate::builtin("H"), {}, std::vector<int>{q});
    for (std::uint64_t k = 0; k < 8; ++k) {
      const cx expect = (a * psi1.amp(k) + b * psi2.amp(k)) / norm;
      CHECK(std::abs(combo.amp(k) - expect) <= tol::kNorm);
    }
  }
}

TEST_CASE("dm_from_ensemble reproduces hand-computed matrices") {
  // Single pure component: Tr rho^2 = 1.
  Ensemble pure = {{1.0, StateVector::basis_state(1, 0)}};
  DensityMatrix rho = dm_from_ensemble(pure);
  CHECK(rho.purity() == doctest::Approx(1.0));
  rho.check_valid();

  // (0.5)|0><0| + (0.5)|1><1| = I/2, purity 0.5.
  Ensemble mix = {{0.5, StateVector::basis_state(1, 0)},
                  {0.5, StateVector::basis_state(1, 1)}};
  DensityMatrix half = dm_from_ensemble(mix);
  CHECK(std::abs(half.entries().at(0, 0) - cx(0.5, 0)) < 1e-12);
  CHECK(std::abs(half.entries().at(1, 1) - cx(0.5, 0)) < 1e-12);
  CHECK(std::abs(half.entries().at(0, 1)) < 1e-12);
  CHECK(half.purity() == doctest::Approx(0.5));

  // Same matrix from the |+>/|-> ensemble: the off-diagonals cancel.
  StateVector plus = StateVector::zero_state(1);
  apply_unitary(plus, Gate::builtin("H"), {}, std::vector<int>{0});
  StateVector minus = StateVector::basis_state(1, 1);
  apply_unitary(minus, Gate::builtin("H"), {}, std::vector<int>{0});
  DensityMatrix half2 = dm_from_ensemble({{0.5, plus}, {0.5, minus}});
  CHECK(max_abs_diff(half.entries(), half2.entries()) < 1e-12);

  CHECK_THROWS_AS(dm_from_ensemble({{0.7, plus}}), SimError);
  CHECK_THROWS_AS(
      dm_from_ensemble({{0.5, plus}, {0.5, StateVector::zero_state(2)}}),
      SimError);
}

TEST_CASE("ensemble_from_dm recovers spectra") {
  // I/2: two orthonormal states with weight 0.5 each.
  DensityMatrix half(1);
  half.entries().at(0, 0) = cx(0.5, 0);
  half.entries().at(1, 1) = cx(0.5, 0);
  Ensemble parts = ensemble_from_dm(half);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == doctest::Approx(0.5));
  CHECK(parts[1].first == doctest::Approx(0.5));
  CHECK(std::abs(parts[0].second.inner(parts[1].second)) < 1e-9);

  // Pure |+><+|: a single unit-weight eigenvector equal to |+> up to phase.
  StateVector plus = StateVector::zero_state(1);
  apply_unitary(plus, Gate::builtin("H"), {}, std::vector<int>{0});
  Ensemble pp = ensemble_from_dm(dm_from_ensemble({{1.0, plus}}));
  REQUIRE(pp.size() == 1);
  CHECK(pp[0].first == doctest::Approx(1.0));
  CHECK(pp[0].second.equal_up_to_phase(plus));

  // Diagonal 0.75/0.25 read-off.
  DensityMatrix diag(1);
  diag.entries().at(0, 0) = cx(0.75, 0);
  diag.entries().at(1, 1) = cx(0.25, 0);
  Ensemble dp = ensemble_from_dm(diag);
  REQUIRE(dp.size() == 2);
  CHECK(dp[0].first == doctest::Approx(0.75));
  CHECK(dp[1].first == doctest::Approx(0.25));

  DensityMatrix bad(1);
  bad.entries().at(0, 1) = cx(1.0, 0);
  CHECK_THROWS_AS(ensemble_from_dm(bad), SimError);
}

TEST_CASE("density matrix round trip reconstructs within 1e-8") {
  RandomStream rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + int(rng.below(3));
    Ensemble parts;
    const int m = 1 + int(rng.below(3));
    double left = 1.0;
    for (int i = 0; i < m; ++i) {
      double w = (i == m - 1) ? left : left * rng.next_double();
      left -= (i == m - 1) ? 0.0 : w;
      parts.emplace_back(w, testutil::random_state(n, rng));
    }
    DensityMatrix rho = dm_from_ensemble(parts);
    DensityMatrix back = dm_from_ensemble(ensemble_from_dm(rho));
    CHECK(max_abs_diff(rho.entries(), back.entries()) <= tol::kDmReconstruction);
  }
}

TEST_CASE("jacobi handles complex Hermitian matrices") {
  // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
  CMatrix a(2, 2);
  a.at(0, 0) = cx(1, 0);
  a.at(0, 1) = cx(0, 1);
  a.at(1, 0) = cx(0, -1);
  a.at(1, 1) = cx(1, 0);
  EigenSystem es = jacobi_hermitian(a);
  CHECK(es.values[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(es.values[1] == doctest::Approx(2.0));
  CHECK(unitarity_error(es.vectors) < 1e-9);
}

TEST_CASE("state size limits are enforced") {
  CHECK_THROWS_AS(StateVector(0), SimError);
  CHECK_THROWS_AS(StateVector(kMaxQubits + 1), SimError);
  CHECK_NOTHROW(StateVector(kMaxQubits));
}
