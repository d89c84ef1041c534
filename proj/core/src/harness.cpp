#include "vqelab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "vqelab/errors.hpp"
#include "vqelab/rng.hpp"

namespace vqe {

namespace {

constexpr char kCsvHeader[] =
    "epsilon_deg,energy_hartree,iterations,iteration_deviation,accuracy_pct,"
    "accuracy_deviation_pct,seed";

std::string fmt_shortest(double v) {
  char buf[40];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

std::string fmt_fixed(double v, int precision) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, precision);
  return std::string(buf, end);
}

double parse_double(std::string_view token, const std::string& context) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || p != token.data() + token.size())
    throw ParseError("expected a number in " + context + ", got '" + std::string(token) + "'", 0);
  return v;
}

double mean_of(const std::vector<double>& xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum / static_cast<double>(xs.size());
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double acc = 0.0;
  for (double x : xs) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(xs.size() - 1));
}

// element with the largest magnitude, sign preserved
double max_abs_signed(const std::vector<double>& xs) {
  double best = 0.0;
  for (double x : xs)
    if (std::abs(x) > std::abs(best)) best = x;
  return best;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = xs.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double mx = mean_of(xs), my = mean_of(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
    syy += (ys[k] - my) * (ys[k] - my);
  }
  if (sxx <= 0.0 || syy <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

const RunRecord& baseline_of(const std::vector<RunRecord>& records) {
  if (records.empty()) throw ValidationError("no records");
  const RunRecord* zero = &records[0];
  for (const RunRecord& r : records)
    if (std::abs(r.epsilon_degrees) < std::abs(zero->epsilon_degrees)) zero = &r;
  if (std::abs(zero->epsilon_degrees) > 1e-9)
    throw ValidationError("records lack an N = 0 baseline");
  return *zero;
}

}  // namespace

double accuracy(double e_vqe, double e_fci) {
  if (e_fci == 0.0) throw MetricError("accuracy is undefined when the reference energy is zero");
  return 100.0 * (1.0 - std::abs((e_vqe - e_fci) / e_fci));
}

double accuracy_deviation(const RunRecord& record, const RunRecord& baseline) {
  return record.accuracy_pct - baseline.accuracy_pct;
}

double iteration_deviation(const RunRecord& record, const RunRecord& baseline) {
  if (!(baseline.iterations > 0.0))
    throw ValidationError("iteration_deviation: baseline iteration count must be positive");
  return (record.iterations - baseline.iterations) / baseline.iterations;
}

SweepSummary summarize(const std::vector<RunRecord>& records, double e_fci) {
  const RunRecord& zero = baseline_of(records);
  SweepSummary s;
  s.e_fci = e_fci;
  s.accuracy_at_zero_pct = zero.accuracy_pct;

  std::vector<double> accuracies, acc_devs, iter_devs;
  std::vector<double> pos_x, pos_y, neg_x, neg_y;
  for (const RunRecord& r : records) {
    accuracies.push_back(r.accuracy_pct);
    acc_devs.push_back(r.accuracy_deviation_pct);
    iter_devs.push_back(r.iteration_deviation);
    if (r.epsilon_degrees > 1e-12) {
      pos_x.push_back(r.epsilon_degrees);
      pos_y.push_back(r.iteration_deviation);
    } else if (r.epsilon_degrees < -1e-12) {
      neg_x.push_back(-r.epsilon_degrees);
      neg_y.push_back(r.iteration_deviation);
    }
  }
  s.average_accuracy_pct = mean_of(accuracies);
  s.max_accuracy_deviation_pct = max_abs_signed(acc_devs);
  s.iteration_dev_mean = mean_of(iter_devs);
  s.iteration_dev_std = sample_std(iter_devs);
  s.iteration_dev_max = max_abs_signed(iter_devs);
  s.correlation_positive_n = pearson(pos_x, pos_y);
  s.correlation_negative_n = pearson(neg_x, neg_y);
  return s;
}

namespace {

// <m|H|m> restricted to the diagonal (I/Z) terms, for occupation mask m
double diagonal_energy(const QubitHamiltonian& h, std::uint64_t mask) {
  double e = 0.0;
  for (const PauliTerm& t : h.terms()) {
    if (t.string.flip_mask() != 0) continue;
    std::uint64_t z_bits = 0;
    for (std::size_t q = 0; q < t.string.size(); ++q)
      if (t.string.axis(q) == Pauli::Z) z_bits |= std::uint64_t{1} << q;
    const int sign = std::popcount(mask & z_bits) & 1 ? -1 : 1;
    e += t.coefficient.real() * sign;
  }
  return e;
}

std::uint64_t greedy_reference_determinant(const QubitHamiltonian& h) {
  std::uint64_t occ = 0;
  double energy = diagonal_energy(h, occ);
  while (true) {
    std::uint64_t best_flip = 0;
    double best_energy = energy;
    for (std::size_t q = 0; q < h.n_qubits(); ++q) {
      const std::uint64_t flipped = occ ^ (std::uint64_t{1} << q);
      const double e = diagonal_energy(h, flipped);
      if (e < best_energy - 1e-15) {
        best_energy = e;
        best_flip = flipped;
      }
    }
    if (best_flip == 0 && best_energy >= energy) break;
    occ = best_flip;
    energy = best_energy;
  }
  return occ;
}

}  // namespace

ParamVector reference_start(const QubitHamiltonian& h, const AnsatzSpec& spec) {
  if (h.n_qubits() != static_cast<std::size_t>(spec.n_qubits))
    throw DimensionError("reference_start: qubit counts differ");
  const std::uint64_t occ = greedy_reference_determinant(simplify(h));
  // every non-flip channel starts silent, so the first objective evaluation
  // is exactly the reference-determinant energy
  ParamVector theta(spec.parameter_count(), 0.0);
  const double block_angle_per_unit = spec.rabi_rate * spec.samples_per_block * spec.dt;
  const double pi_magnitude =
      std::min(1.0, std::numbers::pi / (spec.blocks * block_angle_per_unit));
  const std::size_t per_block = (spec.n_qubits + spec.couplings.size()) * 2;
  for (int b = 0; b < spec.blocks; ++b)
    for (int q = 0; q < spec.n_qubits; ++q)
      if (occ >> q & 1) theta[b * per_block + 2 * q] = pi_magnitude;
  return theta;
}

VqeOutcome run_vqe(const QubitHamiltonian& h, const AnsatzSpec& spec, const RotationError& err,
                   const VqeRunConfig& cfg, std::uint64_t seed) {
  if (h.n_qubits() != static_cast<std::size_t>(spec.n_qubits))
    throw DimensionError("run_vqe: ansatz has " + std::to_string(spec.n_qubits) +
                         " qubits, Hamiltonian needs " + std::to_string(h.n_qubits()));
  const QubitHamiltonian hs = simplify(h);
  const Statevector initial = zero_state(h.n_qubits());

  std::uint64_t eval_index = 0;
  Objective objective = [&](const std::vector<double>& theta) {
    const Statevector psi = propagate(initial, build_ansatz(spec, theta));
    return estimate_energy(psi, hs, err, cfg.mode, mix_seed(seed, eval_index++), cfg.inject_y);
  };

  const ParamVector theta0 = cfg.init == InitPolicy::FixedReference
                                 ? reference_start(hs, spec)
                                 : initial_parameters_uniform(spec, mix_seed(seed, 0x7e7a));
  const OptimizerResult res = minimize(objective, theta0, cfg.optimizer);

  // exact (error-free) expectation at the solution; the variational bound
  // E >= E_FCI holds for it unconditionally, so a violation means a bug
  const Statevector best_state = propagate(initial, build_ansatz(spec, res.best_params));
  const double analytic = estimate_energy(best_state, hs, RotationError{0.0},
                                          EstimatorMode::analytic(), 0, false);
  const double e_fci = exact_ground_energy(hs);
  if (analytic < e_fci - 1e-9)
    throw NumericError("run_vqe: analytic energy " + std::to_string(analytic) +
                       " violates the variational bound (E_FCI = " + std::to_string(e_fci) + ")");

  return {res.best_value, res.iterations, res.best_params, analytic};
}

namespace {

std::vector<double> build_grid(const ExperimentConfig& cfg) {
  if (!(cfg.n_step > 0.0)) throw ValidationError("sweep: n_step must be positive");
  if (cfg.n_start > cfg.n_end) throw ValidationError("sweep: n_start must be <= n_end");
  std::vector<double> grid;
  const auto count =
      static_cast<std::size_t>(std::floor((cfg.n_end - cfg.n_start) / cfg.n_step + 1e-9)) + 1;
  grid.reserve(count);
  for (std::size_t k = 0; k < count; ++k) grid.push_back(cfg.n_start + cfg.n_step * k);
  const bool has_zero =
      std::any_of(grid.begin(), grid.end(), [](double v) { return std::abs(v) <= 1e-9; });
  if (!has_zero) throw ValidationError("sweep: the N grid must include 0 (the baseline)");
  return grid;
}

}  // namespace

SweepResult sweep(const QubitHamiltonian& h, const ExperimentConfig& cfg) {
  if (cfg.repeats < 1) throw ValidationError("sweep: repeats must be >= 1");
  const AnsatzSpec spec =
      cfg.ansatz ? *cfg.ansatz : AnsatzSpec::defaults_for(static_cast<int>(h.n_qubits()));
  const std::vector<double> grid = build_grid(cfg);
  const QubitHamiltonian hs = simplify(h);
  const double e_fci = exact_ground_energy(hs);

  struct RawRun {
    double energy = 0.0;
    double iterations = 0.0;
  };
  const std::size_t n_tasks = grid.size() * static_cast<std::size_t>(cfg.repeats);
  std::vector<RawRun> raw(n_tasks);

  std::atomic<std::size_t> next_task{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t task = next_task.fetch_add(1);
      if (task >= n_tasks) return;
      const std::size_t i = task / cfg.repeats;
      const std::size_t r = task % cfg.repeats;
      const std::uint64_t base = mix_seed(cfg.master_seed, i);
      const std::uint64_t seed = cfg.repeats == 1 ? base : mix_seed(base, r);
      try {
        const VqeOutcome out = run_vqe(hs, spec, RotationError{grid[i]}, cfg.run, seed);
        raw[task] = {out.energy, static_cast<double>(out.iterations)};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  unsigned n_workers = cfg.workers > 0 ? static_cast<unsigned>(cfg.workers)
                                       : std::max(1u, std::thread::hardware_concurrency());
  n_workers = std::min<unsigned>(n_workers, n_tasks);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<RunRecord> records(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double energy = 0.0, iterations = 0.0;
    for (int r = 0; r < cfg.repeats; ++r) {
      const RawRun& run = raw[i * cfg.repeats + r];
      energy += run.energy;
      iterations += run.iterations;
    }
    RunRecord& rec = records[i];
    rec.epsilon_degrees = grid[i];
    rec.energy = energy / cfg.repeats;
    rec.iterations = iterations / cfg.repeats;
    rec.seed = mix_seed(cfg.master_seed, i);
    rec.accuracy_pct = accuracy(rec.energy, e_fci);
  }
  const RunRecord baseline = baseline_of(records);
  for (RunRecord& rec : records) {
    rec.accuracy_deviation_pct = accuracy_deviation(rec, baseline);
    rec.iteration_deviation = iteration_deviation(rec, baseline);
  }

  SweepSummary summary = summarize(records, e_fci);
  summary.master_seed = cfg.master_seed;
  summary.repeats = cfg.repeats;
  summary.mode = cfg.run.mode.is_sampled ? "sampled" : "analytic";
  summary.shots = cfg.run.mode.is_sampled ? cfg.run.mode.shots : 0;
  return {std::move(records), std::move(summary)};
}

SweepResult sweep(const ExperimentConfig& cfg) {
  if (cfg.molecule_path.empty()) throw ValidationError("sweep: molecule path is required");
  return sweep(to_qubit_hamiltonian(load_hamiltonian_file(cfg.molecule_path)), cfg);
}

// --------------------------------------------------------------- artifacts

void write_records(const std::vector<RunRecord>& records, const SweepSummary& summary,
                   const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  const fs::path csv_path = fs::path(dir) / "records.csv";
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + csv_path.string() + "'");
    out << kCsvHeader << "\n";
    for (const RunRecord& r : records) {
      out << fmt_shortest(r.epsilon_degrees) << ',' << fmt_shortest(r.energy) << ','
          << fmt_shortest(r.iterations) << ',' << fmt_shortest(r.iteration_deviation) << ','
          << fmt_fixed(r.accuracy_pct, 5) << ',' << fmt_shortest(r.accuracy_deviation_pct) << ','
          << r.seed << "\n";
    }
    if (!out) throw IoError("failed writing '" + csv_path.string() + "'");
  }

  const fs::path summary_path = fs::path(dir) / "summary.txt";
  std::ofstream out(summary_path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + summary_path.string() + "'");
  out << "e_fci " << fmt_shortest(summary.e_fci) << "\n"
      << "accuracy_at_n0_pct " << fmt_shortest(summary.accuracy_at_zero_pct) << "\n"
      << "average_accuracy_pct " << fmt_shortest(summary.average_accuracy_pct) << "\n"
      << "max_accuracy_deviation_pct " << fmt_shortest(summary.max_accuracy_deviation_pct) << "\n"
      << "iteration_deviation_mean " << fmt_shortest(summary.iteration_dev_mean) << "\n"
      << "iteration_deviation_std " << fmt_shortest(summary.iteration_dev_std) << "\n"
      << "iteration_deviation_max " << fmt_shortest(summary.iteration_dev_max) << "\n"
      << "correlation_positive_n " << fmt_shortest(summary.correlation_positive_n) << "\n"
      << "correlation_negative_n " << fmt_shortest(summary.correlation_negative_n) << "\n"
      << "master_seed " << summary.master_seed << "\n"
      << "repeats " << summary.repeats << "\n"
      << "mode " << summary.mode << "\n"
      << "shots " << summary.shots << "\n";
  if (!out) throw IoError("failed writing '" + summary_path.string() + "'");
}

std::vector<RunRecord> load_records(const std::string& csv_path) {
  std::ifstream in(csv_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + csv_path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty records file", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError("unexpected CSV header '" + line + "'", 1);

  std::vector<RunRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 7)
      throw ParseError("expected 7 CSV fields, got " + std::to_string(fields.size()), line_no);
    RunRecord r;
    r.epsilon_degrees = parse_double(fields[0], "epsilon_deg");
    r.energy = parse_double(fields[1], "energy_hartree");
    r.iterations = parse_double(fields[2], "iterations");
    r.iteration_deviation = parse_double(fields[3], "iteration_deviation");
    r.accuracy_pct = parse_double(fields[4], "accuracy_pct");
    r.accuracy_deviation_pct = parse_double(fields[5], "accuracy_deviation_pct");
    std::uint64_t seed = 0;
    auto [p, ec] = std::from_chars(fields[6].data(), fields[6].data() + fields[6].size(), seed);
    if (ec != std::errc{} || p != fields[6].data() + fields[6].size())
      throw ParseError("expected a seed, got '" + fields[6] + "'", line_no);
    r.seed = seed;
    records.push_back(r);
  }
  return records;
}

SweepSummary load_summary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  SweepSummary s;
  std::string key;
  while (in >> key) {
    std::string value;
    in >> value;
    auto as_double = [&] { return parse_double(value, key); };
    if (key == "e_fci") s.e_fci = as_double();
    else if (key == "accuracy_at_n0_pct") s.accuracy_at_zero_pct = as_double();
    else if (key == "average_accuracy_pct") s.average_accuracy_pct = as_double();
    else if (key == "max_accuracy_deviation_pct") s.max_accuracy_deviation_pct = as_double();
    else if (key == "iteration_deviation_mean") s.iteration_dev_mean = as_double();
    else if (key == "iteration_deviation_std") s.iteration_dev_std = as_double();
    else if (key == "iteration_deviation_max") s.iteration_dev_max = as_double();
    else if (key == "correlation_positive_n") s.correlation_positive_n = as_double();
    else if (key == "correlation_negative_n") s.correlation_negative_n = as_double();
    else if (key == "master_seed") s.master_seed = std::stoull(value);
    else if (key == "repeats") s.repeats = std::stoi(value);
    else if (key == "mode") s.mode = value;
    else if (key == "shots") s.shots = std::stoull(value);
    else throw ParseError("unknown summary key '" + key + "'", 0);
  }
  return s;
}

namespace {

struct PlotSeries {
  std::string file_name;
  std::string y_label;
  std::vector<double> xs, ys;
};

std::string render_svg(const PlotSeries& series) {
  const double width = 640, height = 420;
  const double ml = 74, mr = 20, mt = 30, mb = 52;
  double xmin = series.xs.front(), xmax = series.xs.front();
  double ymin = series.ys.front(), ymax = series.ys.front();
  for (double x : series.xs) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
  }
  for (double y : series.ys) {
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  auto pad = [](double& lo, double& hi) {
    const double span = hi - lo;
    if (span <= 0.0) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      lo -= 0.06 * span;
      hi += 0.06 * span;
    }
  };
  pad(xmin, xmax);
  pad(ymin, ymax);
  auto sx = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto sy = [&](double y) { return height - mb - (y - ymin) / (ymax - ymin) * (height - mt - mb); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  svg << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = xmin + (xmax - xmin) * t / 4.0;
    const double yv = ymin + (ymax - ymin) * t / 4.0;
    svg << "<line x1=\"" << sx(xv) << "\" y1=\"" << height - mb << "\" x2=\"" << sx(xv)
        << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << sx(xv) << "\" y=\"" << height - mb + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << num(xv) << "</text>\n"
        << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ml << "\" y2=\""
        << sy(yv) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << sy(yv) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  svg << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">N (degrees)</text>\n"
      << "<text x=\"16\" y=\"" << (mt + height - mb) / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << (mt + height - mb) / 2 << ")\">" << series.y_label << "</text>\n";
  // data
  svg << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < series.xs.size(); ++k)
    svg << sx(series.xs[k]) << ',' << sy(series.ys[k]) << (k + 1 < series.xs.size() ? " " : "");
  svg << "\"/>\n";
  for (std::size_t k = 0; k < series.xs.size(); ++k)
    svg << "<circle cx=\"" << sx(series.xs[k]) << "\" cy=\"" << sy(series.ys[k])
        << "\" r=\"3\" fill=\"#1f6fb2\"/>\n";
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace

void emit_plots(const std::vector<RunRecord>& records, const std::string& dir) {
  if (records.empty()) throw ValidationError("emit_plots: no records to plot");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());

  std::vector<RunRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.epsilon_degrees < b.epsilon_degrees;
  });

  PlotSeries acc{"accuracy_deviation.svg", "accuracy deviation (percentage points)", {}, {}};
  PlotSeries iter{"iteration_deviation.svg", "iteration deviation (%)", {}, {}};
  for (const RunRecord& r : sorted) {
    acc.xs.push_back(r.epsilon_degrees);
    acc.ys.push_back(r.accuracy_deviation_pct);
    iter.xs.push_back(r.epsilon_degrees);
    iter.ys.push_back(100.0 * r.iteration_deviation);
  }
  for (const PlotSeries& series : {acc, iter}) {
    const fs::path path = fs::path(dir) / series.file_name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << render_svg(series);
    if (!out) throw IoError("failed writing '" + path.string() + "'");
  }
}

}  // namespace vqe
