#include "vqelab/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "vqelab/errors.hpp"

namespace vqe {

namespace {

constexpr double kTimeEps = 1e-9;  // ns; breakpoint coincidence tolerance

double channel_end(const DriveChannel& ch) {
  return ch.start_ns + static_cast<double>(ch.envelope.samples.size()) * ch.envelope.dt;
}

// One maximal interval over which every channel value is constant.
struct Segment {
  Eigen::MatrixXcd hamiltonian;  // dense, possibly zero
  double duration;               // ns
  bool zero;
};

// Effective complex drive of a channel at time t (rabi and carrier phase
// folded in); zero outside the channel's span.
std::complex<double> drive_at(const DriveChannel& ch, double t) {
  if (t < ch.start_ns - kTimeEps || t >= channel_end(ch) - kTimeEps) return 0.0;
  auto idx = static_cast<std::size_t>(std::max(0.0, (t - ch.start_ns) / ch.envelope.dt));
  idx = std::min(idx, ch.envelope.samples.size() - 1);
  return ch.envelope.samples[idx] * std::polar(ch.rabi_rate, ch.phase);
}

std::vector<Segment> build_segments(const PulseSchedule& sched) {
  std::vector<double> cuts{0.0, schedule_duration(sched)};
  for (const DriveChannel& ch : sched.channels()) {
    for (std::size_t k = 0; k <= ch.envelope.samples.size(); ++k)
      cuts.push_back(ch.start_ns + static_cast<double>(k) * ch.envelope.dt);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double a, double b) { return std::abs(a - b) < kTimeEps; }),
             cuts.end());

  const std::size_t n = sched.n_qubits();
  std::vector<Segment> segments;
  std::vector<std::complex<double>> prev_values;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const double t0 = cuts[k], t1 = cuts[k + 1];
    if (t1 <= 0.0 || t1 - t0 < kTimeEps) continue;
    const double mid = 0.5 * (t0 + t1);
    std::vector<std::complex<double>> values(sched.channels().size());
    for (std::size_t c = 0; c < sched.channels().size(); ++c)
      values[c] = drive_at(sched.channels()[c], mid);
    if (!segments.empty() && values == prev_values) {
      segments.back().duration += t1 - t0;
      continue;
    }
    prev_values = values;

    std::vector<PauliTerm> terms;
    for (std::size_t c = 0; c < sched.channels().size(); ++c) {
      const std::complex<double> a = values[c];
      if (a == 0.0) continue;
      const DriveChannel& ch = sched.channels()[c];
      std::vector<Pauli> x_axes(n, Pauli::I), y_axes(n, Pauli::I);
      x_axes[ch.target] = Pauli::X;
      y_axes[ch.target] = Pauli::Y;
      if (ch.control) {
        x_axes[*ch.control] = Pauli::Z;
        y_axes[*ch.control] = Pauli::Z;
      }
      if (a.real() != 0.0) terms.push_back({a.real() / 2.0, PauliString(std::move(x_axes))});
      if (a.imag() != 0.0) terms.push_back({a.imag() / 2.0, PauliString(std::move(y_axes))});
    }
    Segment seg;
    seg.duration = t1 - t0;
    seg.zero = terms.empty();
    if (!seg.zero) seg.hamiltonian = dense_matrix(QubitHamiltonian(n, std::move(terms)));
    segments.push_back(std::move(seg));
  }
  return segments;
}

Eigen::MatrixXcd segment_exponential(const Segment& seg) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(seg.hamiltonian);
  if (solver.info() != Eigen::Success)
    throw NumericError("propagate: eigensolver failed on a segment Hamiltonian");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k)
    phases(k) = std::polar(1.0, -evals(k) * seg.duration);
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

PulseSchedule::PulseSchedule(std::size_t n_qubits, std::vector<DriveChannel> channels)
    : n_qubits_(n_qubits), channels_(std::move(channels)) {
  if (n_qubits_ < 1 || n_qubits_ > kMaxStateQubits)
    throw CapacityError("schedule supports 1.." + std::to_string(kMaxStateQubits) + " qubits");
  if (channels_.empty())
    throw ValidationError("schedule needs at least one channel (duration must be positive)");
  for (const DriveChannel& ch : channels_) {
    if (ch.target < 0 || static_cast<std::size_t>(ch.target) >= n_qubits_)
      throw ValidationError("channel target " + std::to_string(ch.target) + " out of range");
    if (ch.control) {
      if (*ch.control < 0 || static_cast<std::size_t>(*ch.control) >= n_qubits_)
        throw ValidationError("channel control " + std::to_string(*ch.control) +
                              " out of range");
      if (*ch.control == ch.target)
        throw ValidationError("coupling channel control and target must differ");
    }
    if (ch.envelope.dt <= 0.0) throw ValidationError("envelope dt must be positive");
    if (ch.envelope.samples.empty()) throw ValidationError("envelope must have samples");
    for (const auto& sample : ch.envelope.samples)
      if (std::abs(sample) > 1.0 + 1e-12)
        throw ValidationError("envelope samples must satisfy |sample| <= 1");
    if (ch.rabi_rate <= 0.0) throw ValidationError("rabi_rate must be positive");
    if (ch.start_ns < 0.0) throw ValidationError("channel offset must be non-negative");
  }
}

double schedule_duration(const PulseSchedule& sched) {
  double duration = 0.0;
  for (const DriveChannel& ch : sched.channels()) duration = std::max(duration, channel_end(ch));
  return duration;
}

std::string dump_schedule(const PulseSchedule& sched) {
  std::ostringstream out;
  out << "schedule n_qubits=" << sched.n_qubits() << " duration_ns=" << schedule_duration(sched)
      << "\n";
  for (std::size_t c = 0; c < sched.channels().size(); ++c) {
    const DriveChannel& ch = sched.channels()[c];
    out << "channel " << c << ": target=" << ch.target << " control=";
    if (ch.control)
      out << *ch.control;
    else
      out << "-";
    out << " offset_ns=" << ch.start_ns << " dt_ns=" << ch.envelope.dt
        << " samples=" << ch.envelope.samples.size() << " phase_rad=" << ch.phase
        << " rabi_rad_per_ns=" << ch.rabi_rate << "\n";
  }
  return out.str();
}

AnsatzSpec AnsatzSpec::defaults_for(int n_qubits) {
  AnsatzSpec spec;
  spec.n_qubits = n_qubits;
  for (int q = 0; q + 1 < n_qubits; ++q) spec.couplings.emplace_back(q, q + 1);
  return spec;
}

PulseSchedule build_ansatz(const AnsatzSpec& spec, const ParamVector& theta) {
  if (theta.size() != spec.parameter_count())
    throw DimensionError("ansatz takes " + std::to_string(spec.parameter_count()) +
                         " parameters, got " + std::to_string(theta.size()));
  if (spec.blocks < 1) throw ValidationError("ansatz needs at least one block");
  std::vector<DriveChannel> channels;
  channels.reserve(static_cast<std::size_t>(spec.blocks) *
                   (spec.n_qubits + spec.couplings.size()));
  std::size_t k = 0;
  const double block_ns = spec.samples_per_block * spec.dt;
  for (int b = 0; b < spec.blocks; ++b) {
    const double offset = b * block_ns;
    auto make_channel = [&](int target, std::optional<int> control) {
      const double magnitude = std::clamp(theta[k], 0.0, 1.0);
      const double phase = theta[k + 1];
      k += 2;
      DriveChannel ch;
      ch.target = target;
      ch.control = control;
      ch.envelope.samples.assign(spec.samples_per_block, magnitude);
      ch.envelope.dt = spec.dt;
      ch.phase = phase;
      ch.rabi_rate = spec.rabi_rate;
      ch.start_ns = offset;
      channels.push_back(std::move(ch));
    };
    for (int q = 0; q < spec.n_qubits; ++q) make_channel(q, std::nullopt);
    for (const auto& [control, target] : spec.couplings) make_channel(target, control);
  }
  return PulseSchedule(spec.n_qubits, std::move(channels));
}

ParamVector initial_parameters_uniform(const AnsatzSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  ParamVector theta(spec.parameter_count(), 0.0);
  for (std::size_t k = 0; k < theta.size(); k += 2) {
    theta[k] = 0.2 * rng.next_double();
    theta[k + 1] = -std::numbers::pi + 2.0 * std::numbers::pi * rng.next_double();
  }
  return theta;
}

Statevector propagate(const Statevector& s, const PulseSchedule& sched) {
  if (s.n_qubits() != sched.n_qubits())
    throw DimensionError("propagate: state has " + std::to_string(s.n_qubits()) +
                         " qubits, schedule has " + std::to_string(sched.n_qubits()));
  Eigen::VectorXcd v = s.as_eigen();
  for (const Segment& seg : build_segments(sched)) {
    if (seg.zero) continue;
    v = segment_exponential(seg) * v;
  }
  return Statevector::from_eigen(s.n_qubits(), v);
}

Eigen::MatrixXcd propagator(const PulseSchedule& sched) {
  const Eigen::Index dim = Eigen::Index{1} << sched.n_qubits();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Segment& seg : build_segments(sched)) {
    if (seg.zero) continue;
    u = segment_exponential(seg) * u;  // later segments act on the left
  }
  return u;
}

Eigen::MatrixXcd dyson_propagator(const PulseSchedule& sched, int order) {
  if (order != 1 && order != 2)
    throw ValidationError("dyson_propagator supports orders 1 and 2");
  const Eigen::Index dim = Eigen::Index{1} << sched.n_qubits();
  const Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd first = Eigen::MatrixXcd::Zero(dim, dim);   // integral of H
  Eigen::MatrixXcd second = Eigen::MatrixXcd::Zero(dim, dim);  // time-ordered double integral
  Eigen::MatrixXcd prefix = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Segment& seg : build_segments(sched)) {
    if (seg.zero) continue;
    const Eigen::MatrixXcd weighted = seg.hamiltonian * seg.duration;
    if (order >= 2) second += weighted * (0.5 * weighted + prefix);
    prefix += weighted;
    first += weighted;
  }
  const std::complex<double> minus_i{0.0, -1.0};
  Eigen::MatrixXcd result = identity + minus_i * first;
  if (order >= 2) result -= second;
  return result;
}

}  // namespace vqe
