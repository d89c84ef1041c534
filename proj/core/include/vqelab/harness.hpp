#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vqelab/measure.hpp"
#include "vqelab/optimize.hpp"
#include "vqelab/pauli.hpp"
#include "vqelab/pulse.hpp"

namespace vqe {

// ---------------------------------------------------------------- metrics

/// 100 * (1 - |(e_vqe - e_fci) / e_fci|), in percent.
double accuracy(double e_vqe, double e_fci);

/// One sweep point: VQE outcome plus its deviations from the N=0 baseline.
struct RunRecord {
  double epsilon_degrees = 0.0;
  double energy = 0.0;      // Hartree
  double iterations = 0.0;  // objective evaluations (fractional when averaged)
  double iteration_deviation = 0.0;  // (iter(N) - iter(0)) / iter(0)
  double accuracy_pct = 0.0;
  double accuracy_deviation_pct = 0.0;  // accuracy(N) - accuracy(0), points
  std::uint64_t seed = 0;
};

/// accuracy(N) - accuracy(0), percentage points.
double accuracy_deviation(const RunRecord& record, const RunRecord& baseline);

/// (iterations(N) - iterations(0)) / iterations(0).
double iteration_deviation(const RunRecord& record, const RunRecord& baseline);

struct SweepSummary {
  double e_fci = 0.0;
  double accuracy_at_zero_pct = 0.0;
  double average_accuracy_pct = 0.0;
  double max_accuracy_deviation_pct = 0.0;  // largest magnitude, sign kept
  double iteration_dev_mean = 0.0;
  double iteration_dev_std = 0.0;  // sample standard deviation
  double iteration_dev_max = 0.0;  // largest magnitude, sign kept
  // Pearson correlation of iteration deviation vs |N|, per sign branch
  double correlation_positive_n = 0.0;
  double correlation_negative_n = 0.0;
  std::uint64_t master_seed = 0;
  int repeats = 1;
  std::string mode = "sampled";
  std::uint64_t shots = 0;
};

/// Aggregate statistics from a record list (baseline = the N=0 record).
SweepSummary summarize(const std::vector<RunRecord>& records, double e_fci);

// ------------------------------------------------------------------- runs

enum class InitPolicy { FixedReference, SeededUniform };

/// Deterministic per-molecule start for the optimizer: pi-pulses on the
/// qubits occupied in the diagonal-greedy reference determinant of h
/// (the Hartree-Fock state for the bundled molecules), 0.05 magnitudes on
/// every other channel, phases 0. Fixed across the error sweep so the N
/// dependence is isolated from initialization effects.
ParamVector reference_start(const QubitHamiltonian& h, const AnsatzSpec& spec);

struct VqeRunConfig {
  EstimatorMode mode = EstimatorMode::sampled(1024);
  OptimizerConfig optimizer;  // 100 evaluations, rhobeg 0.1, rhoend 1e-4
  InitPolicy init = InitPolicy::FixedReference;
  bool inject_y = false;
};

struct VqeOutcome {
  double energy = 0.0;  // best objective value seen by the optimizer
  int iterations = 0;
  ParamVector best_params;
  double analytic_energy = 0.0;  // exact re-evaluation at best_params
};

/// One VQE run: minimize the estimated energy of the propagated ansatz state.
/// Objective evaluation k draws its shots from mix_seed(seed, k).
VqeOutcome run_vqe(const QubitHamiltonian& h, const AnsatzSpec& spec, const RotationError& err,
                   const VqeRunConfig& cfg, std::uint64_t seed);

// ------------------------------------------------------------------ sweep

struct ExperimentConfig {
  std::string molecule_path;
  std::optional<AnsatzSpec> ansatz;  // defaults_for(n_qubits) when unset
  double n_start = -15.0;            // degrees
  double n_end = 15.0;
  double n_step = 0.5;
  VqeRunConfig run;
  std::uint64_t master_seed = 1;
  int repeats = 1;  // runs averaged per grid point
  int workers = 0;  // 0 = hardware concurrency
  std::string out_dir;
};

struct SweepResult {
  std::vector<RunRecord> records;  // ordered by N
  SweepSummary summary;
};

/// Error-angle grid (must contain N=0, the baseline). Grid point i runs with
/// seed mix_seed(master_seed, i) (repeat r > 0: mix_seed of that with r);
/// points execute concurrently and are merged by index, so output is
/// deterministic for a fixed config regardless of worker count.
SweepResult sweep(const QubitHamiltonian& h, const ExperimentConfig& cfg);

/// Convenience: load cfg.molecule_path (Jordan-Wigner if fermionic) and sweep.
SweepResult sweep(const ExperimentConfig& cfg);

// --------------------------------------------------------------- artifacts

/// records.csv with header
///   epsilon_deg,energy_hartree,iterations,iteration_deviation,accuracy_pct,accuracy_deviation_pct,seed
/// (accuracy_pct printed with 5 decimals, everything else shortest
/// round-trip) and summary.txt as `key value` lines.
void write_records(const std::vector<RunRecord>& records, const SweepSummary& summary,
                   const std::string& dir);

std::vector<RunRecord> load_records(const std::string& csv_path);
SweepSummary load_summary(const std::string& path);

/// accuracy_deviation.svg and iteration_deviation.svg: one marker per sweep
/// point against N in degrees, values in percent / percentage points.
void emit_plots(const std::vector<RunRecord>& records, const std::string& dir);

}  // namespace vqe
