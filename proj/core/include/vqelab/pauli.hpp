#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace vqe {

// Largest system the dense reference machinery accepts.
inline constexpr std::size_t kMaxDenseQubits = 12;
// Jordan-Wigner input cap (keeps the dense-oracle cross checks tractable).
inline constexpr std::size_t kMaxOrbitals = 16;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// Tensor product of single-qubit Pauli operators, one axis per qubit.
/// Qubit 0 is the leftmost character of the text form and the least
/// significant bit of a basis-state index.
class PauliString {
 public:
  explicit PauliString(std::vector<Pauli> axes);
  static PauliString parse(std::string_view text);
  static PauliString identity(std::size_t n_qubits);

  std::size_t size() const { return axes_.size(); }
  Pauli axis(std::size_t qubit) const { return axes_[qubit]; }
  const std::vector<Pauli>& axes() const { return axes_; }
  bool is_identity() const;
  /// Bit q set where the axis on qubit q is not I.
  std::uint64_t support_mask() const;
  /// Bit q set where the axis flips the computational basis (X or Y).
  std::uint64_t flip_mask() const;
  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
    return a.axes_ <=> b.axes_;
  }

 private:
  std::vector<Pauli> axes_;
};

struct PauliTerm {
  std::complex<double> coefficient;
  PauliString string;
};

struct PauliProduct {
  std::complex<double> phase;  // one of {1, -1, i, -i}
  PauliString string;
};

/// matrix(a) * matrix(b) == phase * matrix(product)
PauliProduct pauli_multiply(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings. Hermiticity (real coefficients after
/// simplification) is validated where it matters, not at construction,
/// so intermediate complex sums can be represented.
class QubitHamiltonian {
 public:
  QubitHamiltonian(std::size_t n_qubits, std::vector<PauliTerm> terms);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<PauliTerm>& terms() const { return terms_; }

 private:
  std::size_t n_qubits_;
  std::vector<PauliTerm> terms_;
};

inline constexpr double kDefaultSimplifyTol = 1e-12;

/// Combine like terms, drop |coefficient| <= tol, order lexicographically.
QubitHamiltonian simplify(const QubitHamiltonian& h, double tol = kDefaultSimplifyTol);

/// Sum of coefficient magnitudes over non-identity strings (shot-noise scale).
double coefficient_l1_norm(const QubitHamiltonian& h);

Eigen::MatrixXcd dense_matrix(const QubitHamiltonian& h);

/// Minimum eigenvalue of the dense realization; the exact (FCI-reference)
/// ground energy used by the experiment metrics.
double exact_ground_energy(const QubitHamiltonian& h);

/// value * a_p^dag a_q (one-body) or value * a_p^dag a_q^dag a_r a_s (two-body)
struct FermionTerm {
  enum class Kind { OneBody, TwoBody };
  Kind kind;
  std::array<std::uint32_t, 4> indices;  // (p,q,0,0) for one-body
  double value;
};

class FermionHamiltonian {
 public:
  FermionHamiltonian(std::size_t n_orbitals, std::vector<FermionTerm> terms);

  std::size_t n_orbitals() const { return n_orbitals_; }
  const std::vector<FermionTerm>& terms() const { return terms_; }

 private:
  std::size_t n_orbitals_;
  std::vector<FermionTerm> terms_;
};

/// Pauli-term expansion of a_p (dagger=false) or a_p^dag (dagger=true) under
/// the Jordan-Wigner convention: a_p^dag = 1/2 (X_p - iY_p) prod_{j<p} Z_j.
std::vector<PauliTerm> jw_ladder(std::size_t p, std::size_t n_qubits, bool dagger);

/// Map a fermionic Hamiltonian to qubits via Jordan-Wigner. The result is
/// simplified; non-Hermitian integral data is rejected.
QubitHamiltonian jordan_wigner(const FermionHamiltonian& h);

using LoadedHamiltonian = std::variant<FermionHamiltonian, QubitHamiltonian>;

/// Parse the molecule file format (header `format: fermion|pauli`, `n: <int>`,
/// then `onebody p q v` / `twobody p q r s v` or `<axes> <coefficient>` lines).
LoadedHamiltonian load_hamiltonian(std::string_view text);
LoadedHamiltonian load_hamiltonian_file(const std::string& path);

/// Jordan-Wigner if fermionic, pass-through (simplified) otherwise.
QubitHamiltonian to_qubit_hamiltonian(const LoadedHamiltonian& h);

/// Inverse of load_hamiltonian; numeric fields round-trip bit-exactly.
std::string serialize(const QubitHamiltonian& h);
std::string serialize(const FermionHamiltonian& h);

}  // namespace vqe
