#include <doctest.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracle_helpers.hpp"
#include "vqelab/errors.hpp"
#include "vqelab/harness.hpp"

using namespace vqe;
namespace fs = std::filesystem;

namespace {

// Published per-angle results, N = -10..10 degrees in integer steps:
// energy (Ha), iterations, iteration deviation (%), accuracy (%),
// accuracy deviation (%). Baseline row is N = 0 (index 10).
struct PublishedRow {
  double energy;
  double iterations;
  double iter_dev_pct;
  double accuracy_pct;
  double acc_dev_pct;
};

constexpr std::array<PublishedRow, 21> kH2Rows{{
    {-1.848982954, 74, 25.42, 99.55354, -0.152215},
    {-1.852163385, 72, 22.03, 99.72478, 0.019027},
    {-1.846509285, 62, 5.08, 99.42035, -0.285403},
    {-1.851810004, 66, 11.86, 99.70575, 0.000000},
    {-1.851810004, 73, 23.73, 99.70575, 0.000000},
    {-1.852163385, 66, 11.86, 99.72478, 0.019027},
    {-1.851810004, 58, -1.69, 99.70575, 0.000000},
    {-1.851810004, 74, 25.42, 99.70575, 0.000000},
    {-1.851810004, 68, 15.25, 99.70575, 0.000000},
    {-1.851810004, 66, 11.86, 99.68672, -0.019027},
    {-1.851810004, 59, 0.00, 99.70575, 0.000000},
    {-1.851810004, 63, 6.78, 99.70575, 0.000000},
    {-1.851810004, 66, 11.86, 99.70575, 0.000000},
    {-1.851810004, 86, 45.76, 99.70575, 0.000000},
    {-1.851810004, 72, 22.03, 99.70575, 0.000000},
    {-1.851810004, 68, 15.25, 99.70575, 0.000000},
    {-1.851810004, 69, 16.95, 99.70575, 0.000000},
    {-1.851810004, 69, 16.95, 99.70575, 0.000000},
    {-1.851810004, 67, 13.56, 99.70575, 0.000000},
    {-1.851810004, 64, 8.47, 99.70575, 0.000000},
    {-1.851810004, 66, 11.86, 99.70575, 0.000000},
}};

constexpr std::array<PublishedRow, 21> kHeHRows{{
    {-3.92111381, 66, -7.04, 99.96987, 0.005833},
    {-3.918139537, 71, 0.00, 99.89404, -0.069996},
    {-3.920885005, 74, 4.23, 99.96403, 0.000000},
    {-3.92188008, 79, 11.27, 99.96403, 0.000000},
    {-3.921113813, 69, -2.82, 99.96987, 0.005834},
    {-3.920885005, 76, 7.04, 99.96403, 0.000000},
    {-3.92111381, 63, -11.27, 99.96987, 0.005833},
    {-3.920885005, 68, -4.23, 99.96403, 0.000000},
    {-3.920885005, 75, 5.63, 99.96403, 0.000000},
    {-3.920885005, 77, 8.45, 99.96403, 0.000000},
    {-3.920885005, 71, 0.00, 99.96403, 0.000000},
    {-3.920885005, 63, -11.27, 99.96403, 0.000000},
    {-3.920885005, 65, -8.45, 99.96403, 0.000000},
    {-3.918368231, 77, 8.45, 99.89987, -0.064166},
    {-3.920885005, 71, 0.00, 99.96403, 0.000000},
    {-3.920885005, 80, 12.68, 99.96403, 0.000000},
    {-3.920885005, 72, 1.41, 99.96403, 0.000000},
    {-3.920885005, 72, 1.41, 99.96403, 0.000000},
    {-3.920885005, 82, 15.49, 99.96403, 0.000000},
    {-3.920885005, 85, 19.72, 99.96403, 0.000000},
    {-3.920885005, 74, 4.23, 99.96403, 0.000000},
}};

template <std::size_t N>
std::vector<RunRecord> to_records(const std::array<PublishedRow, N>& rows) {
  std::vector<RunRecord> records;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    RunRecord r;
    r.epsilon_degrees = static_cast<double>(k) - 10.0;
    r.energy = rows[k].energy;
    r.iterations = rows[k].iterations;
    r.accuracy_pct = rows[k].accuracy_pct;
    records.push_back(r);
  }
  const RunRecord baseline = records[10];
  for (RunRecord& r : records) {
    r.accuracy_deviation_pct = accuracy_deviation(r, baseline);
    r.iteration_deviation = iteration_deviation(r, baseline);
  }
  return records;
}

QubitHamiltonian single_z() { return QubitHamiltonian(1, {{1.0, PauliString::parse("Z")}}); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("vqelab_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("accuracy formula") {
  CHECK(accuracy(-1.0, -1.0) == doctest::Approx(100.0));
  CHECK(accuracy(-1.851810004, -1.857276) == doctest::Approx(99.7057).epsilon(5e-6));
  CHECK_THROWS_AS(accuracy(-1.0, 0.0), MetricError);
}

TEST_CASE("accuracy deviation on published rows") {
  RunRecord baseline;
  baseline.accuracy_pct = 99.70575;
  RunRecord r1;
  r1.accuracy_pct = 99.55354;
  CHECK(std::abs(accuracy_deviation(r1, baseline) - (-0.152215)) <= 1.1e-5);
  CHECK(accuracy_deviation(baseline, baseline) == 0.0);
  RunRecord r2;
  r2.accuracy_pct = 99.42035;
  CHECK(std::abs(accuracy_deviation(r2, baseline) - (-0.285403)) <= 1.1e-5);
}

TEST_CASE("iteration deviation on published rows") {
  RunRecord baseline;
  baseline.iterations = 59;
  RunRecord r;
  r.iterations = 74;
  CHECK(iteration_deviation(r, baseline) == doctest::Approx(0.2542).epsilon(2e-4));
  CHECK(iteration_deviation(baseline, baseline) == 0.0);
  RunRecord heh_base, heh;
  heh_base.iterations = 71;
  heh.iterations = 63;
  CHECK(iteration_deviation(heh, heh_base) == doctest::Approx(-0.1127).epsilon(2e-4));
  RunRecord zero;
  zero.iterations = 0;
  CHECK_THROWS_AS(iteration_deviation(r, zero), ValidationError);
}

TEST_CASE("published tables reproduce their deviation columns at printed precision") {
  auto check_table = [](const auto& rows) {
    const auto records = to_records(rows);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      CHECK(std::abs(100.0 * records[k].iteration_deviation - rows[k].iter_dev_pct) <= 0.005);
      CHECK(std::abs(records[k].accuracy_deviation_pct - rows[k].acc_dev_pct) <= 1.1e-5);
    }
  };
  check_table(kH2Rows);
  check_table(kHeHRows);
}

TEST_CASE("summary statistics match the published maxima") {
  const auto h2 = summarize(to_records(kH2Rows), -1.857276);
  CHECK(h2.accuracy_at_zero_pct == doctest::Approx(99.70575));
  CHECK(std::abs(h2.max_accuracy_deviation_pct - (-0.285403)) <= 1.1e-5);
  // self-consistency of the aggregate fields
  double acc_sum = 0.0;
  for (const auto& row : kH2Rows) acc_sum += row.accuracy_pct;
  CHECK(h2.average_accuracy_pct == doctest::Approx(acc_sum / 21.0).epsilon(1e-12));
  CHECK(std::isfinite(h2.iteration_dev_mean));
  CHECK(std::isfinite(h2.iteration_dev_std));
  CHECK(h2.iteration_dev_max == doctest::Approx(0.4576).epsilon(1e-3));

  const auto heh = summarize(to_records(kHeHRows), -3.9223);
  CHECK(heh.accuracy_at_zero_pct == doctest::Approx(99.96403));
  // the largest magnitude inside the published -10..10 subset
  CHECK(std::abs(heh.max_accuracy_deviation_pct - (-0.069996)) <= 1.1e-5);
}

TEST_CASE("correlation sign convention uses |N| per branch") {
  std::vector<RunRecord> records;
  for (int n = -5; n <= 5; ++n) {
    RunRecord r;
    r.epsilon_degrees = n;
    r.iterations = 50;
    r.accuracy_pct = 99.0;
    r.iteration_deviation = std::abs(n) / 10.0;  // grows with |N| on both branches
    records.push_back(r);
  }
  const auto s = summarize(records, -1.0);
  CHECK(s.correlation_positive_n == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.correlation_negative_n == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run_vqe reaches the ground state of a single-qubit Z") {
  VqeRunConfig cfg;
  cfg.mode = EstimatorMode::analytic();
  cfg.optimizer = {60, 0.1, 1e-5};
  const AnsatzSpec spec = AnsatzSpec::defaults_for(1);
  const auto out = run_vqe(single_z(), spec, RotationError{0.0}, cfg, 7);
  CHECK(out.energy == doctest::Approx(-1.0).epsilon(1e-3));
  CHECK(out.analytic_energy >= -1.0 - 1e-9);
  CHECK(out.iterations <= 60);
}

TEST_CASE("reference_start flips the occupied qubits of the bundled molecules") {
  const auto h2 = to_qubit_hamiltonian(
      load_hamiltonian_file(std::string(VQELAB_DATA_DIR) + "/molecules/h2.txt"));
  const AnsatzSpec spec = AnsatzSpec::defaults_for(4);
  const ParamVector theta = reference_start(h2, spec);
  REQUIRE(theta.size() == spec.parameter_count());
  // interleaved convention: the two lowest spin orbitals (qubits 0 and 1)
  CHECK(theta[0] > 0.0);
  CHECK(theta[2] > 0.0);
  CHECK(theta[4] == 0.0);
  CHECK(theta[6] == 0.0);
  // the prepared state is the reference determinant |1100>
  const Statevector prepared = propagate(zero_state(4), build_ansatz(spec, theta));
  CHECK(std::abs(std::abs(prepared.amplitude(0b0011)) - 1.0) < 1e-9);
}

TEST_CASE("sweep produces a baseline with zero deviations") {
  ExperimentConfig cfg;
  cfg.n_start = -1.0;
  cfg.n_end = 1.0;
  cfg.n_step = 1.0;
  cfg.run.mode = EstimatorMode::analytic();
  cfg.run.optimizer = {40, 0.1, 1e-4};
  cfg.ansatz = AnsatzSpec::defaults_for(1);
  cfg.workers = 1;
  const SweepResult result = sweep(single_z(), cfg);
  REQUIRE(result.records.size() == 3);
  CHECK(result.records[1].epsilon_degrees == 0.0);
  CHECK(result.records[1].accuracy_deviation_pct == 0.0);
  CHECK(result.records[1].iteration_deviation == 0.0);
  CHECK(result.summary.e_fci == doctest::Approx(-1.0));
}

TEST_CASE("a grid without N=0 is rejected") {
  ExperimentConfig cfg;
  cfg.n_start = 1.0;
  cfg.n_end = 3.0;
  cfg.n_step = 1.0;
  cfg.ansatz = AnsatzSpec::defaults_for(1);
  CHECK_THROWS_AS(sweep(single_z(), cfg), ValidationError);
}

TEST_CASE("Z-only observables give flat accuracy deviation across the sweep") {
  const QubitHamiltonian h(2, {{0.6, PauliString::parse("ZI")},
                               {-0.4, PauliString::parse("ZZ")},
                               {0.2, PauliString::parse("II")}});
  ExperimentConfig cfg;
  cfg.n_start = -10.0;
  cfg.n_end = 10.0;
  cfg.n_step = 10.0;
  cfg.run.mode = EstimatorMode::analytic();
  cfg.run.optimizer = {50, 0.1, 1e-4};
  cfg.ansatz = AnsatzSpec::defaults_for(2);
  cfg.workers = 1;
  const SweepResult result = sweep(h, cfg);
  for (const RunRecord& r : result.records) CHECK(r.accuracy_deviation_pct == 0.0);
}

TEST_CASE("sweeps are reproducible and worker-count independent") {
  ExperimentConfig cfg;
  cfg.n_start = -2.0;
  cfg.n_end = 2.0;
  cfg.n_step = 2.0;
  cfg.run.mode = EstimatorMode::sampled(128);
  cfg.run.optimizer = {30, 0.1, 1e-4};
  cfg.ansatz = AnsatzSpec::defaults_for(1);
  cfg.master_seed = 11;

  cfg.workers = 1;
  const SweepResult serial = sweep(single_z(), cfg);
  cfg.workers = 4;
  const SweepResult parallel = sweep(single_z(), cfg);

  const fs::path dir_a = fresh_dir("repro_a"), dir_b = fresh_dir("repro_b");
  write_records(serial.records, serial.summary, dir_a.string());
  write_records(parallel.records, parallel.summary, dir_b.string());
  CHECK(slurp(dir_a / "records.csv") == slurp(dir_b / "records.csv"));
  CHECK(slurp(dir_a / "summary.txt") == slurp(dir_b / "summary.txt"));

  // both deviation columns recompute from the energy/iteration columns
  const auto reloaded = load_records((dir_a / "records.csv").string());
  const double e_fci = serial.summary.e_fci;
  const RunRecord* base = nullptr;
  for (const RunRecord& r : reloaded)
    if (r.epsilon_degrees == 0.0) base = &r;
  REQUIRE(base != nullptr);
  for (const RunRecord& r : reloaded) {
    CHECK(std::abs(iteration_deviation(r, *base) - r.iteration_deviation) <= 1e-9);
    const double acc_dev = accuracy(r.energy, e_fci) - accuracy(base->energy, e_fci);
    CHECK(std::abs(acc_dev - r.accuracy_deviation_pct) <= 1e-9);
  }
  fs::remove_all(dir_a);
  fs::remove_all(dir_b);
}

TEST_CASE("records round-trip bit-exactly through CSV") {
  const auto records = to_records(kH2Rows);
  SweepSummary summary = summarize(records, -1.857276);
  const fs::path dir = fresh_dir("csv");
  write_records(records, summary, dir.string());
  const auto reloaded = load_records((dir / "records.csv").string());
  REQUIRE(reloaded.size() == records.size());
  for (std::size_t k = 0; k < records.size(); ++k) {
    CHECK(reloaded[k].epsilon_degrees == records[k].epsilon_degrees);
    CHECK(reloaded[k].energy == records[k].energy);
    CHECK(reloaded[k].iterations == records[k].iterations);
    CHECK(reloaded[k].iteration_deviation == records[k].iteration_deviation);
    CHECK(reloaded[k].accuracy_deviation_pct == records[k].accuracy_deviation_pct);
    CHECK(reloaded[k].seed == records[k].seed);
    // accuracy is rounded to 5 decimals by design
    CHECK(reloaded[k].accuracy_pct == doctest::Approx(records[k].accuracy_pct).epsilon(1e-7));
  }
  const RunRecord baseline = reloaded[10];
  for (const RunRecord& r : reloaded)
    CHECK(std::abs(iteration_deviation(r, baseline) - r.iteration_deviation) <= 1e-9);
  const SweepSummary reloaded_summary = load_summary((dir / "summary.txt").string());
  CHECK(reloaded_summary.max_accuracy_deviation_pct == summary.max_accuracy_deviation_pct);
  CHECK(reloaded_summary.iteration_dev_mean == summary.iteration_dev_mean);
  fs::remove_all(dir);
}

TEST_CASE("an empty record list writes a header-only CSV") {
  const fs::path dir = fresh_dir("empty");
  write_records({}, SweepSummary{}, dir.string());
  const std::string csv = slurp(dir / "records.csv");
  CHECK(csv ==
        "epsilon_deg,energy_hartree,iterations,iteration_deviation,accuracy_pct,"
        "accuracy_deviation_pct,seed\n");
  CHECK(load_records((dir / "records.csv").string()).empty());
  fs::remove_all(dir);
}

TEST_CASE("plots contain one marker per sweep point in N order") {
  std::vector<RunRecord> records;
  for (int k = 0; k < 61; ++k) {
    RunRecord r;
    r.epsilon_degrees = -15.0 + 0.5 * k;
    r.iterations = 60 + (k % 7);
    r.accuracy_pct = 99.7 - 0.001 * (k % 5);
    r.accuracy_deviation_pct = -0.001 * (k % 5);
    r.iteration_deviation = 0.01 * (k % 7);
    records.push_back(r);
  }
  const fs::path dir = fresh_dir("plots");
  emit_plots(records, dir.string());
  for (const char* name : {"accuracy_deviation.svg", "iteration_deviation.svg"}) {
    const std::string svg = slurp(dir / name);
    std::size_t markers = 0, pos = 0;
    while ((pos = svg.find("<circle", pos)) != std::string::npos) {
      ++markers;
      pos += 7;
    }
    CHECK(markers == 61);
    CHECK(svg.find("N (degrees)") != std::string::npos);
    // x coordinates are emitted in non-decreasing N order
    std::vector<double> xs;
    pos = 0;
    while ((pos = svg.find("<circle cx=\"", pos)) != std::string::npos) {
      pos += 12;
      xs.push_back(std::stod(svg.substr(pos)));
    }
    for (std::size_t k = 1; k < xs.size(); ++k) CHECK(xs[k] >= xs[k - 1]);
  }
  // a single point is degenerate but valid
  emit_plots({records[0]}, (dir / "single").string());
  CHECK(fs::exists(dir / "single" / "accuracy_deviation.svg"));
  CHECK_THROWS_AS(emit_plots({}, dir.string()), ValidationError);
  fs::remove_all(dir);
}
