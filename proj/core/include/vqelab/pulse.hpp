#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqelab/state.hpp"

namespace vqe {

/// Piecewise-constant complex drive samples; |sample| <= 1, scaled by the
/// channel's rabi_rate.
struct Envelope {
  std::vector<std::complex<double>> samples;
  double dt;  // ns per sample
};

/// One drive line. A plain channel drives `target` with
///   H(t) = rabi * |W(t)| * (cos(arg W + phase) X + sin(arg W + phase) Y) / 2;
/// a coupling channel (control set) drives the cross-resonance-style pair
///   H(t) = rabi * |W(t)| * (cos(.) Z_c X_t + sin(.) Z_c Y_t) / 2.
struct DriveChannel {
  int target;
  std::optional<int> control;
  Envelope envelope;
  double phase = 0.0;      // radians
  double rabi_rate = 0.2;  // rad/ns at |sample| = 1
  double start_ns = 0.0;
};

class PulseSchedule {
 public:
  PulseSchedule(std::size_t n_qubits, std::vector<DriveChannel> channels);

  std::size_t n_qubits() const { return n_qubits_; }
  const std::vector<DriveChannel>& channels() const { return channels_; }

 private:
  std::size_t n_qubits_;
  std::vector<DriveChannel> channels_;
};

/// max over channels of (start + samples * dt)
double schedule_duration(const PulseSchedule& sched);

/// Per-channel text listing (target, offset, dt, samples) for golden-file tests.
std::string dump_schedule(const PulseSchedule& sched);

/// Trainable pulse ansatz layout: `blocks` sequential segments; within each
/// block every qubit gets one square drive pulse and every coupling pair one
/// square cross-resonance pulse, each parameterized by (magnitude, phase).
/// The defaults keep the parameter dimension small enough that a
/// 100-evaluation optimizer budget converges, and make a full pi rotation
/// reachable within one block (rabi_rate * samples_per_block * dt > pi).
struct AnsatzSpec {
  int n_qubits = 1;
  int blocks = 1;
  std::vector<std::pair<int, int>> couplings;  // (control, target)
  int samples_per_block = 16;
  double dt = 0.5;         // ns
  double rabi_rate = 0.8;  // rad/ns

  std::size_t parameter_count() const {
    return static_cast<std::size_t>(blocks) * (n_qubits + couplings.size()) * 2;
  }

  /// one block of 16 samples at 0.5 ns, rabi 0.8 rad/ns, linear-chain couplings
  static AnsatzSpec defaults_for(int n_qubits);
};

using ParamVector = std::vector<double>;

/// Parameter layout: per block, per channel (qubits first, then coupling
/// pairs): [magnitude, phase]. Magnitudes are clamped to [0, 1].
PulseSchedule build_ansatz(const AnsatzSpec& spec, const ParamVector& theta);

/// Seeded random start: magnitudes uniform in [0, 0.2], phases in [-pi, pi).
ParamVector initial_parameters_uniform(const AnsatzSpec& spec, std::uint64_t seed);

/// Time-ordered evolution of the schedule's drive Hamiltonian; each
/// constant-envelope segment is applied through its exact matrix exponential.
Statevector propagate(const Statevector& s, const PulseSchedule& sched);

/// Full unitary of the schedule (product of segment exponentials).
Eigen::MatrixXcd propagator(const PulseSchedule& sched);

/// Truncated Dyson series of the time-ordered exponential, integrated
/// exactly over the piecewise-constant grid. Not unitary in general.
Eigen::MatrixXcd dyson_propagator(const PulseSchedule& sched, int order);

}  // namespace vqe
