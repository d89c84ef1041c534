#include "vqelab/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "vqelab/errors.hpp"

namespace vqe {

double RotationError::radians() const {
  return epsilon_degrees * std::numbers::pi / 180.0;
}

EstimatorMode EstimatorMode::sampled(std::uint64_t shots) {
  if (shots < 1) throw ValidationError("sampled estimator needs shots >= 1");
  return {true, shots};
}

Unitary1Q prerotation_for(Pauli axis, const RotationError& err, bool inject_y) {
  switch (axis) {
    case Pauli::X:
      return u2_gate(0.0, std::numbers::pi + err.radians());
    case Pauli::Y:
      // the reference experiment perturbs only the X rotation
      return u2_gate(0.0, std::numbers::pi / 2.0 + (inject_y ? err.radians() : 0.0));
    case Pauli::Z:
    case Pauli::I:
      return Unitary1Q::identity();
  }
  throw ValidationError("invalid Pauli axis");
}

MeasurementPlan plan_measurement(const PauliString& p, const RotationError& err, bool inject_y) {
  std::vector<Unitary1Q> rotations;
  rotations.reserve(p.size());
  for (std::size_t q = 0; q < p.size(); ++q)
    rotations.push_back(prerotation_for(p.axis(q), err, inject_y));
  return {p, std::move(rotations), p.support_mask()};
}

namespace {

Statevector rotated_state(const Statevector& s, const MeasurementPlan& plan) {
  Statevector out = s;
  for (std::size_t q = 0; q < plan.pauli.size(); ++q) {
    const Pauli axis = plan.pauli.axis(q);
    if (axis == Pauli::X || axis == Pauli::Y) out = apply_single_qubit(out, q, plan.prerotations[q]);
  }
  return out;
}

double parity_expectation_analytic(const Statevector& s, std::uint64_t mask) {
  const auto& amps = s.amplitudes();
  double acc = 0.0;
  for (std::uint64_t b = 0; b < amps.size(); ++b) {
    const double p = std::norm(amps[b]);
    acc += (std::popcount(b & mask) & 1) ? -p : p;
  }
  return acc;
}

double parity_expectation_sampled(const Statevector& s, std::uint64_t mask, std::uint64_t shots,
                                  Rng& rng) {
  const std::vector<std::uint64_t> counts = sample_z_basis(s, shots, rng);
  std::int64_t signed_sum = 0;
  for (std::uint64_t b = 0; b < counts.size(); ++b) {
    const auto c = static_cast<std::int64_t>(counts[b]);
    signed_sum += (std::popcount(b & mask) & 1) ? -c : c;
  }
  return static_cast<double>(signed_sum) / static_cast<double>(shots);
}

}  // namespace

double estimate_pauli(const Statevector& s, const PauliString& p, const RotationError& err,
                      const EstimatorMode& mode, Rng& rng, bool inject_y) {
  if (p.size() != s.n_qubits())
    throw DimensionError("estimate_pauli: Pauli string length " + std::to_string(p.size()) +
                         " does not match " + std::to_string(s.n_qubits()) + " qubits");
  if (p.is_identity()) return 1.0;
  const MeasurementPlan plan = plan_measurement(p, err, inject_y);
  const Statevector rotated = rotated_state(s, plan);
  const double value = mode.is_sampled
                           ? parity_expectation_sampled(rotated, plan.measured_mask, mode.shots, rng)
                           : parity_expectation_analytic(rotated, plan.measured_mask);
  return std::clamp(value, -1.0, 1.0);
}

double estimate_energy(const Statevector& s, const QubitHamiltonian& h, const RotationError& err,
                       const EstimatorMode& mode, std::uint64_t base_seed, bool inject_y) {
  if (h.n_qubits() != s.n_qubits())
    throw DimensionError("estimate_energy: Hamiltonian acts on " +
                         std::to_string(h.n_qubits()) + " qubits, state has " +
                         std::to_string(s.n_qubits()));
  double energy = 0.0;
  for (std::size_t a = 0; a < h.terms().size(); ++a) {
    const PauliTerm& term = h.terms()[a];
    if (std::abs(term.coefficient.imag()) > 1e-12)
      throw ValidationError("estimate_energy: coefficient of '" + term.string.str() +
                            "' is not real; simplify to a Hermitian form first");
    if (term.string.is_identity()) {
      energy += term.coefficient.real();
      continue;
    }
    Rng rng(mix_seed(base_seed, a));
    energy += term.coefficient.real() * estimate_pauli(s, term.string, err, mode, rng, inject_y);
  }
  return energy;
}

}  // namespace vqe
