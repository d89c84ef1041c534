#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_helpers.hpp"
#include "vqelab/errors.hpp"
#include "vqelab/state.hpp"

using namespace vqe;
using oracle::Matrix;

TEST_CASE("zero_state pins all amplitude on the all-zeros string") {
  const Statevector one = zero_state(1);
  CHECK(one.amplitude(0) == std::complex<double>(1, 0));
  CHECK(one.amplitude(1) == std::complex<double>(0, 0));

  const Statevector two = zero_state(2);
  CHECK(two.amplitude(0) == std::complex<double>(1, 0));
  for (std::uint64_t k = 1; k < 4; ++k) CHECK(two.amplitude(k) == std::complex<double>(0, 0));

  CHECK_THROWS_AS(zero_state(13), CapacityError);
  CHECK_THROWS_AS(zero_state(0), CapacityError);
}

TEST_CASE("statevector constructor enforces shape and normalization") {
  CHECK_THROWS_AS(Statevector(1, {1.0, 0.0, 0.0}), DimensionError);
  CHECK_THROWS_AS(Statevector(1, {0.9, 0.0}), ValidationError);
}

TEST_CASE("hadamard on |0> gives the equal superposition") {
  const Statevector s = apply_single_qubit(zero_state(1), 0, hadamard());
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  CHECK(std::abs(s.amplitude(0) - inv_sqrt2) < 1e-15);
  CHECK(std::abs(s.amplitude(1) - inv_sqrt2) < 1e-15);
}

TEST_CASE("identity leaves any state untouched") {
  Rng rng(11);
  const Statevector s = oracle::random_state(rng, 3);
  const Statevector t = apply_single_qubit(s, 1, Unitary1Q::identity());
  for (std::uint64_t k = 0; k < s.dim(); ++k) CHECK(t.amplitude(k) == s.amplitude(k));
}

TEST_CASE("X on qubit 1 of |00> flips the second bit of the index") {
  Unitary1Q x{0, 1, 1, 0};
  const Statevector s = apply_single_qubit(zero_state(2), 1, x);
  CHECK(std::abs(s.amplitude(2) - 1.0) < 1e-15);  // index 2 = bit 1 set
  CHECK(std::abs(s.amplitude(0)) < 1e-15);
  // Kronecker oracle for the same operation
  const Eigen::VectorXcd expect =
      oracle::embed_1q(oracle::pauli_matrix_1q(Pauli::X), 1, 2) * zero_state(2).as_eigen();
  CHECK((s.as_eigen() - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("apply_single_qubit equals the embedded matrix on random inputs") {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const std::size_t q = rng.next_u64() % n;
    const Statevector s = oracle::random_state(rng, n);
    const Unitary1Q u = oracle::random_unitary(rng);
    REQUIRE(u.is_unitary(1e-12));
    Matrix u2(2, 2);
    u2 << u.u00, u.u01, u.u10, u.u11;
    const Eigen::VectorXcd expect = oracle::embed_1q(u2, q, n) * s.as_eigen();
    const Statevector got = apply_single_qubit(s, q, u);
    CHECK((got.as_eigen() - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(apply_single_qubit(zero_state(2), 2, Unitary1Q::identity()), DimensionError);
}

TEST_CASE("norm is preserved through long gate sequences") {
  Rng rng(31337);
  Statevector s = zero_state(3);
  for (int k = 0; k < 50; ++k) s = apply_single_qubit(s, rng.next_u64() % 3, oracle::random_unitary(rng));
  CHECK(std::abs(s.norm_squared() - 1.0) < 1e-9);
}

TEST_CASE("u2(0, pi) is the Hadamard gate entry-wise") {
  const Unitary1Q u = u2_gate(0.0, std::numbers::pi);
  const Unitary1Q h = hadamard();
  CHECK(std::abs(u.u00 - h.u00) < 1e-15);
  CHECK(std::abs(u.u01 - h.u01) < 1e-15);
  CHECK(std::abs(u.u10 - h.u10) < 1e-15);
  CHECK(std::abs(u.u11 - h.u11) < 1e-15);
}

TEST_CASE("u2(0, pi/2) maps Y readout onto the Z axis") {
  const Unitary1Q u = u2_gate(0.0, std::numbers::pi / 2.0);
  Matrix um(2, 2);
  um << u.u00, u.u01, u.u10, u.u11;
  const Matrix conj = um.adjoint() * oracle::pauli_matrix_1q(Pauli::Z) * um;
  CHECK((conj - oracle::pauli_matrix_1q(Pauli::Y)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("perturbed u2 on |+> reads <Z> = cos(epsilon)") {
  const Statevector plus = apply_single_qubit(zero_state(1), 0, hadamard());
  for (double eps : {-0.3, -0.1, 0.0, 0.05, 0.2, 0.4}) {
    const Statevector r = apply_u2(plus, 0, 0.0, std::numbers::pi + eps);
    CHECK(expectation(r, PauliString::parse("Z")) ==
          doctest::Approx(std::cos(eps)).epsilon(1e-12));
  }
}

TEST_CASE("expectation basics") {
  CHECK(expectation(zero_state(1), PauliString::parse("Z")) == doctest::Approx(1.0));
  const Statevector plus = apply_single_qubit(zero_state(1), 0, hadamard());
  CHECK(expectation(plus, PauliString::parse("X")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(expectation(zero_state(2), PauliString::parse("Z")), DimensionError);
}

TEST_CASE("expectation of the identity string is 1 for any state") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    CHECK(expectation(oracle::random_state(rng, n), PauliString::identity(n)) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expectation equals the dense quadratic form on random inputs") {
  Rng rng(123456);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Statevector s = oracle::random_state(rng, n);
    const PauliString p = oracle::random_string(rng, n);
    const Eigen::VectorXcd v = s.as_eigen();
    const double expect = (v.adjoint() * oracle::pauli_string_matrix(p) * v)(0, 0).real();
    CHECK(expectation(s, p) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("sampling |0> always lands on bitstring 0") {
  Rng rng(5);
  const auto counts = sample_z_basis(zero_state(2), 1024, rng);
  CHECK(counts[0] == 1024);
  CHECK(counts[1] + counts[2] + counts[3] == 0);
}

TEST_CASE("sampling |+> splits within 5 sigma at a million shots") {
  const Statevector plus = apply_single_qubit(zero_state(1), 0, hadamard());
  Rng rng(271);
  const auto counts = sample_z_basis(plus, 1000000, rng);
  CHECK(counts[0] + counts[1] == 1000000);
  CHECK(std::abs(static_cast<double>(counts[0]) - 500000.0) < 5.0 * 500.0);
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  Rng a(99), b(99);
  const Statevector plus = apply_single_qubit(zero_state(2), 0, hadamard());
  CHECK(sample_z_basis(plus, 4096, a) == sample_z_basis(plus, 4096, b));
  Rng c(0);
  CHECK_THROWS_AS(sample_z_basis(plus, 0, c), ValidationError);
}

TEST_CASE("sampled Z mean converges at the 5/sqrt(shots) scale") {
  Rng state_rng(424242);
  const Statevector s = oracle::random_state(state_rng, 1);
  const double exact = expectation(s, PauliString::parse("Z"));
  const std::uint64_t shots = 10000;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    const auto counts = sample_z_basis(s, shots, rng);
    const double mean =
        (static_cast<double>(counts[0]) - static_cast<double>(counts[1])) / shots;
    CHECK(std::abs(mean - exact) <= 5.0 / std::sqrt(static_cast<double>(shots)));
  }
}
