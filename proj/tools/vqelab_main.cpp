// vqelab: pulse-level VQE experiments with coherent measurement-rotation
// errors. Subcommands: run (error-angle sweep), fci (exact ground energy),
// stats (recompute sweep statistics from a records CSV).

#include <cstdio>
#include <exception>
#include <iostream>
#include <limits>
#include <string>

#include <CLI11.hpp>

#include "vqelab/errors.hpp"
#include "vqelab/harness.hpp"

namespace {

void print_summary(const vqe::SweepSummary& s, std::ostream& out) {
  out << "e_fci " << s.e_fci << "\n"
      << "accuracy_at_n0_pct " << s.accuracy_at_zero_pct << "\n"
      << "average_accuracy_pct " << s.average_accuracy_pct << "\n"
      << "max_accuracy_deviation_pct " << s.max_accuracy_deviation_pct << "\n"
      << "iteration_deviation_mean " << s.iteration_dev_mean << "\n"
      << "iteration_deviation_std " << s.iteration_dev_std << "\n"
      << "iteration_deviation_max " << s.iteration_dev_max << "\n"
      << "correlation_positive_n " << s.correlation_positive_n << "\n"
      << "correlation_negative_n " << s.correlation_negative_n << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level VQE laboratory: rotation-error sweeps on molecule Hamiltonians"};
  app.require_subcommand(1);

  // --- run
  auto* run = app.add_subcommand("run", "Sweep the rotation-error angle N and run one VQE per point");
  std::string molecule, out_dir = "out", mode = "sampled", init = "fixed";
  double n_start = -15.0, n_end = 15.0, n_step = 0.5, rhobeg = 0.1, rhoend = 1e-4;
  std::uint64_t shots = 1024, seed = 1;
  int maxiter = 100, workers = 0, repeats = 1;
  bool inject_y = false;
  int blocks = 1, samples_per_block = 16;
  double dt = 0.5, rabi = 0.8;
  run->add_option("--molecule", molecule, "Molecule file (fermion or pauli format)")->required();
  run->add_option("--n-start", n_start, "Sweep start angle, degrees");
  run->add_option("--n-end", n_end, "Sweep end angle, degrees");
  run->add_option("--n-step", n_step, "Sweep step, degrees");
  run->add_option("--shots", shots, "Shots per Pauli term in sampled mode");
  run->add_option("--maxiter", maxiter, "Optimizer evaluation budget");
  run->add_option("--rhobeg", rhobeg, "Initial trust-region radius");
  run->add_option("--rhoend", rhoend, "Final trust-region radius");
  run->add_option("--seed", seed, "Master seed");
  run->add_option("--mode", mode, "Estimator: sampled or analytic")
      ->check(CLI::IsMember({"sampled", "analytic"}));
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--workers", workers, "Parallel sweep workers (0 = hardware)");
  run->add_option("--repeats", repeats, "Runs averaged per grid point");
  run->add_flag("--inject-y", inject_y, "Extend the rotation error to Y prerotations");
  run->add_option("--init", init, "Initial parameters: fixed or uniform")
      ->check(CLI::IsMember({"fixed", "uniform"}));
  run->add_option("--blocks", blocks, "Ansatz drive blocks");
  run->add_option("--samples-per-block", samples_per_block, "Envelope samples per block");
  run->add_option("--dt", dt, "Envelope sample length, ns");
  run->add_option("--rabi", rabi, "Rabi rate at unit amplitude, rad/ns");

  // --- fci
  auto* fci = app.add_subcommand("fci", "Print the exact ground-state energy of a molecule file");
  std::string fci_molecule;
  fci->add_option("--molecule", fci_molecule, "Molecule file")->required();

  // --- stats
  auto* stats = app.add_subcommand("stats", "Recompute sweep statistics from a records CSV");
  std::string csv_path, stats_molecule;
  stats->add_option("csv", csv_path, "records.csv from a previous run")->required();
  stats->add_option("--molecule", stats_molecule,
                    "Optional molecule file, used to report e_fci alongside the statistics");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      vqe::ExperimentConfig cfg;
      cfg.molecule_path = molecule;
      cfg.n_start = n_start;
      cfg.n_end = n_end;
      cfg.n_step = n_step;
      cfg.master_seed = seed;
      cfg.repeats = repeats;
      cfg.workers = workers;
      cfg.out_dir = out_dir;
      cfg.run.mode = mode == "sampled" ? vqe::EstimatorMode::sampled(shots)
                                       : vqe::EstimatorMode::analytic();
      cfg.run.optimizer = {maxiter, rhobeg, rhoend};
      cfg.run.inject_y = inject_y;
      cfg.run.init = init == "fixed" ? vqe::InitPolicy::FixedReference
                                       : vqe::InitPolicy::SeededUniform;

      const auto h = vqe::to_qubit_hamiltonian(vqe::load_hamiltonian_file(molecule));
      vqe::AnsatzSpec spec = vqe::AnsatzSpec::defaults_for(static_cast<int>(h.n_qubits()));
      spec.blocks = blocks;
      spec.samples_per_block = samples_per_block;
      spec.dt = dt;
      spec.rabi_rate = rabi;
      cfg.ansatz = spec;

      const vqe::SweepResult result = vqe::sweep(h, cfg);
      vqe::write_records(result.records, result.summary, out_dir);
      vqe::emit_plots(result.records, out_dir);
      std::cout << "sweep: " << result.records.size() << " grid points x " << repeats
                << " repeat(s), mode " << result.summary.mode << "\n";
      print_summary(result.summary, std::cout);
      std::cout << "wrote " << out_dir << "/records.csv, summary.txt, "
                << "accuracy_deviation.svg, iteration_deviation.svg\n";
    } else if (*fci) {
      const auto h = vqe::to_qubit_hamiltonian(vqe::load_hamiltonian_file(fci_molecule));
      std::printf("%.12g\n", vqe::exact_ground_energy(h));
    } else if (*stats) {
      const auto records = vqe::load_records(csv_path);
      double e_fci = std::numeric_limits<double>::quiet_NaN();
      if (!stats_molecule.empty())
        e_fci = vqe::exact_ground_energy(
            vqe::to_qubit_hamiltonian(vqe::load_hamiltonian_file(stats_molecule)));
      print_summary(vqe::summarize(records, e_fci), std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
