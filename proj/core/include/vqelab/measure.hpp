#pragma once

#include <cstdint>
#include <vector>

#include "vqelab/pauli.hpp"
#include "vqelab/rng.hpp"
#include "vqelab/state.hpp"

namespace vqe {

/// Coherent basis-rotation miscalibration in degrees (the sweep variable N).
/// Positive values over-rotate the X prerotation, negative under-rotate.
struct RotationError {
  double epsilon_degrees = 0.0;

  double radians() const;
};

struct EstimatorMode {
  bool is_sampled = false;
  std::uint64_t shots = 0;

  static EstimatorMode analytic() { return {false, 0}; }
  static EstimatorMode sampled(std::uint64_t shots);
};

/// Per-qubit prerotation mapping a Pauli readout to the Z basis:
///   X -> U2(0, pi + eps)   (the injected miscalibration)
///   Y -> U2(0, pi/2)       (fixed, unless inject_y extends the error to it)
///   Z, I -> identity
Unitary1Q prerotation_for(Pauli axis, const RotationError& err, bool inject_y = false);

struct MeasurementPlan {
  PauliString pauli;
  std::vector<Unitary1Q> prerotations;  // one per qubit
  std::uint64_t measured_mask;          // qubits with a non-identity axis
};

MeasurementPlan plan_measurement(const PauliString& p, const RotationError& err,
                                 bool inject_y = false);

/// Estimate <P> by rotating into the Z basis and reading the parity over the
/// measured mask, either exactly (analytic) or from a shot histogram.
double estimate_pauli(const Statevector& s, const PauliString& p, const RotationError& err,
                      const EstimatorMode& mode, Rng& rng, bool inject_y = false);

/// sum_a w_a <P_a> with one fresh shot batch per term; identity terms
/// contribute their coefficient exactly. Term a uses the generator stream
/// mix_seed(base_seed, a), so per-term estimation order cannot change results.
double estimate_energy(const Statevector& s, const QubitHamiltonian& h, const RotationError& err,
                       const EstimatorMode& mode, std::uint64_t base_seed, bool inject_y = false);

}  // namespace vqe
