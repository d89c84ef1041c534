#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "vqelab/pauli.hpp"
#include "vqelab/rng.hpp"

namespace vqe {

inline constexpr std::size_t kMaxStateQubits = 12;

/// 2x2 unitary, row-major entries.
struct Unitary1Q {
  std::complex<double> u00, u01, u10, u11;

  static Unitary1Q identity() { return {1.0, 0.0, 0.0, 1.0}; }
  bool is_unitary(double tol = 1e-12) const;
};

/// U2(phi, lambda) = 1/sqrt(2) [[1, -e^{i lambda}], [e^{i phi}, e^{i(phi+lambda)}]];
/// U2(0, pi) is the Hadamard gate.
Unitary1Q u2_gate(double phi, double lambda);
Unitary1Q hadamard();
Unitary1Q rx_gate(double theta);

/// Dense n-qubit pure state. Qubit 0 is the least significant bit of the
/// amplitude index. Normalization is a construction invariant (1e-10).
class Statevector {
 public:
  Statevector(std::size_t n_qubits, std::vector<std::complex<double>> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
  std::complex<double> amplitude(std::uint64_t basis_index) const {
    return amplitudes_[basis_index];
  }
  double norm_squared() const;
  Eigen::VectorXcd as_eigen() const;
  static Statevector from_eigen(std::size_t n_qubits, const Eigen::VectorXcd& v);

 private:
  std::size_t n_qubits_;
  std::vector<std::complex<double>> amplitudes_;
};

/// |0...0>
Statevector zero_state(std::size_t n_qubits);

Statevector apply_single_qubit(const Statevector& s, std::size_t qubit, const Unitary1Q& u);
Statevector apply_u2(const Statevector& s, std::size_t qubit, double phi, double lambda);

/// <s| matrix(p) |s>, guaranteed real for a Pauli observable.
double expectation(const Statevector& s, const PauliString& p);

/// Multinomial draw over |amplitude|^2; counts indexed by basis state,
/// deterministic for a fixed generator state.
std::vector<std::uint64_t> sample_z_basis(const Statevector& s, std::uint64_t shots, Rng& rng);

}  // namespace vqe
