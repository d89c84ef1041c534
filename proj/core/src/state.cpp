#include "vqelab/state.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "vqelab/errors.hpp"

namespace vqe {

namespace {

constexpr double kNormTol = 1e-10;

void check_qubit_count(std::size_t n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxStateQubits)
    throw CapacityError("statevector supports 1.." + std::to_string(kMaxStateQubits) +
                        " qubits, got " + std::to_string(n_qubits));
}

}  // namespace

bool Unitary1Q::is_unitary(double tol) const {
  // rows of U^dag U
  const std::complex<double> a = std::conj(u00) * u00 + std::conj(u10) * u10;
  const std::complex<double> b = std::conj(u00) * u01 + std::conj(u10) * u11;
  const std::complex<double> c = std::conj(u01) * u00 + std::conj(u11) * u10;
  const std::complex<double> d = std::conj(u01) * u01 + std::conj(u11) * u11;
  return std::abs(a - 1.0) <= tol && std::abs(b) <= tol && std::abs(c) <= tol &&
         std::abs(d - 1.0) <= tol;
}

Unitary1Q u2_gate(double phi, double lambda) {
  const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  const std::complex<double> el = std::polar(1.0, lambda);
  const std::complex<double> ep = std::polar(1.0, phi);
  const std::complex<double> epl = std::polar(1.0, phi + lambda);
  return {inv_sqrt2, -el * inv_sqrt2, ep * inv_sqrt2, epl * inv_sqrt2};
}

Unitary1Q hadamard() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {h, h, h, -h};
}

Unitary1Q rx_gate(double theta) {
  const double c = std::cos(theta / 2.0);
  const std::complex<double> ms = {0.0, -std::sin(theta / 2.0)};
  return {c, ms, ms, c};
}

Statevector::Statevector(std::size_t n_qubits, std::vector<std::complex<double>> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(n_qubits_);
  if (amplitudes_.size() != (std::size_t{1} << n_qubits_))
    throw DimensionError("statevector needs 2^n amplitudes, got " +
                         std::to_string(amplitudes_.size()));
  const double norm2 = norm_squared();
  if (std::abs(norm2 - 1.0) > kNormTol)
    throw ValidationError("statevector is not normalized (|psi|^2 = " + std::to_string(norm2) +
                          ")");
}

double Statevector::norm_squared() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

Eigen::VectorXcd Statevector::as_eigen() const {
  return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(), amplitudes_.size());
}

Statevector Statevector::from_eigen(std::size_t n_qubits, const Eigen::VectorXcd& v) {
  return Statevector(n_qubits, std::vector<std::complex<double>>(v.data(), v.data() + v.size()));
}

Statevector zero_state(std::size_t n_qubits) {
  check_qubit_count(n_qubits);
  std::vector<std::complex<double>> amps(std::size_t{1} << n_qubits, 0.0);
  amps[0] = 1.0;
  return Statevector(n_qubits, std::move(amps));
}

Statevector apply_single_qubit(const Statevector& s, std::size_t qubit, const Unitary1Q& u) {
  if (qubit >= s.n_qubits())
    throw DimensionError("qubit index " + std::to_string(qubit) + " out of range (n = " +
                         std::to_string(s.n_qubits()) + ")");
  std::vector<std::complex<double>> amps = s.amplitudes();
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  for (std::uint64_t base = 0; base < amps.size(); ++base) {
    if (base & bit) continue;
    const std::complex<double> a0 = amps[base];
    const std::complex<double> a1 = amps[base | bit];
    amps[base] = u.u00 * a0 + u.u01 * a1;
    amps[base | bit] = u.u10 * a0 + u.u11 * a1;
  }
  return Statevector(s.n_qubits(), std::move(amps));
}

Statevector apply_u2(const Statevector& s, std::size_t qubit, double phi, double lambda) {
  return apply_single_qubit(s, qubit, u2_gate(phi, lambda));
}

double expectation(const Statevector& s, const PauliString& p) {
  if (p.size() != s.n_qubits())
    throw DimensionError("expectation: Pauli string length " + std::to_string(p.size()) +
                         " does not match " + std::to_string(s.n_qubits()) + " qubits");
  std::uint64_t y_mask = 0, z_mask = 0;
  for (std::size_t q = 0; q < p.size(); ++q) {
    if (p.axis(q) == Pauli::Y) y_mask |= std::uint64_t{1} << q;
    if (p.axis(q) == Pauli::Z) z_mask |= std::uint64_t{1} << q;
  }
  const std::uint64_t flip = p.flip_mask();
  constexpr std::complex<double> i_power[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::complex<double> y_phase = i_power[std::popcount(y_mask) & 3];
  const auto& amps = s.amplitudes();
  std::complex<double> acc = 0.0;
  for (std::uint64_t c = 0; c < amps.size(); ++c) {
    const int sign = std::popcount(c & (y_mask | z_mask)) & 1 ? -1 : 1;
    acc += std::conj(amps[c ^ flip]) * y_phase * static_cast<double>(sign) * amps[c];
  }
  return std::clamp(acc.real(), -1.0, 1.0);
}

std::vector<std::uint64_t> sample_z_basis(const Statevector& s, std::uint64_t shots, Rng& rng) {
  if (shots < 1) throw ValidationError("sample_z_basis: shots must be >= 1");
  const auto& amps = s.amplitudes();
  std::vector<double> cdf(amps.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < amps.size(); ++k) {
    acc += std::norm(amps[k]);
    cdf[k] = acc;
  }
  std::vector<std::uint64_t> counts(amps.size(), 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const double u = rng.next_double() * acc;
    const std::size_t idx =
        std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    counts[std::min(idx, counts.size() - 1)] += 1;
  }
  return counts;
}

}  // namespace vqe
