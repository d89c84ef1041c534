#include "vqelab/optimize.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "vqelab/errors.hpp"

namespace vqe {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Simplex acceptability window, after Powell: vertices no farther than
// kEdgeCap * radius from the best vertex, and the simplex no thinner than
// kThicknessFloor * radius in any direction.
constexpr double kEdgeCap = 2.1;
constexpr double kThicknessFloor = 0.25;

}  // namespace

OptimizerResult minimize(const Objective& objective, const std::vector<double>& x0,
                         const OptimizerConfig& cfg, std::ostream* trace) {
  const Eigen::Index n = static_cast<Eigen::Index>(x0.size());
  if (n < 1) throw ValidationError("minimize: need at least one parameter");
  if (cfg.max_iterations < 1) throw ValidationError("minimize: max_iterations must be >= 1");
  if (!(cfg.rhoend > 0.0) || !(cfg.rhobeg > cfg.rhoend))
    throw ValidationError("minimize: require 0 < rhoend < rhobeg");

  int evals = 0;
  Eigen::VectorXd best_x = Eigen::Map<const Eigen::VectorXd>(x0.data(), n);
  double best_f = std::numeric_limits<double>::infinity();

  auto evaluate = [&](const Eigen::VectorXd& x) -> double {
    const double f = objective(to_std(x));
    if (!std::isfinite(f))
      throw NumericError("minimize: objective returned a non-finite value at evaluation " +
                         std::to_string(evals));
    if (trace) {
      (*trace) << evals;
      for (Eigen::Index i = 0; i < n; ++i) (*trace) << ' ' << x(i);
      (*trace) << ' ' << f << '\n';
    }
    ++evals;
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
    return f;
  };
  auto budget_left = [&] { return evals < cfg.max_iterations; };

  // initial simplex: x0 plus rhobeg-scaled unit steps per coordinate
  Eigen::MatrixXd points(n, n + 1);
  Eigen::VectorXd values(n + 1);
  points.col(0) = best_x;
  values(0) = evaluate(points.col(0));
  for (Eigen::Index i = 1; i <= n && budget_left(); ++i) {
    points.col(i) = points.col(0);
    points.col(i)(i - 1) += cfg.rhobeg;
    values(i) = evaluate(points.col(i));
  }
  if (evals < n + 1)  // budget exhausted before the simplex was complete
    return {to_std(best_x), best_f, evals, false};

  double rho = cfg.rhobeg;    // resolution; shrink-only, drives termination
  double delta = cfg.rhobeg;  // step radius; adapts within [rho, inf)
  int fail_streak = 0;
  int repair_streak = 0;
  bool converged = false;
  auto at_final_resolution = [&] { return rho <= cfg.rhoend * (1.0 + 1e-9); };

  while (budget_left()) {
    Eigen::Index ib = 0;
    values.minCoeff(&ib);

    // edge matrix around the incumbent vertex and its inverse; the inverse
    // rows are (scaled) normals of the opposite simplex faces
    Eigen::MatrixXd edges(n, n);
    Eigen::VectorXd deltas(n);
    std::vector<Eigen::Index> vertex_of_col(n);
    Eigen::Index col = 0;
    for (Eigen::Index j = 0; j <= n; ++j) {
      if (j == ib) continue;
      edges.col(col) = points.col(j) - points.col(ib);
      deltas(col) = values(j) - values(ib);
      vertex_of_col[col] = j;
      ++col;
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
    Eigen::MatrixXd inv;
    if (lu.isInvertible()) {
      inv = lu.inverse();
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(edges, Eigen::ComputeFullU | Eigen::ComputeFullV);
      Eigen::VectorXd sv = svd.singularValues();
      for (Eigen::Index k = 0; k < n; ++k) sv(k) = sv(k) > 1e-300 ? 1.0 / sv(k) : 0.0;
      inv = svd.matrixV() * sv.asDiagonal() * svd.matrixU().transpose();
    }
    const Eigen::VectorXd gradient = inv.transpose() * deltas;
    const double gnorm = gradient.norm();

    Eigen::VectorXd distances(n), thickness(n);
    for (Eigen::Index c = 0; c < n; ++c) {
      distances(c) = edges.col(c).norm();
      const double row_norm = inv.row(c).norm();
      thickness(c) = row_norm > 1e-300 ? 1.0 / row_norm : 0.0;
    }

    Eigen::Index far_col = 0, thin_col = 0;
    const double dmax = distances.maxCoeff(&far_col);
    const double tmin = thickness.minCoeff(&thin_col);

    if ((dmax > kEdgeCap * delta || tmin < kThicknessFloor * delta) && repair_streak < 3) {
      // geometry repair: move the offending vertex to the best vertex plus
      // a delta-length step along its face normal, downhill per the model.
      // The streak cap forces a model step once in a while even when the
      // simplex spans stale scales; otherwise a radius reduction could spend
      // the whole budget rebuilding vertices one by one.
      ++repair_streak;
      const Eigen::Index jd = dmax > kEdgeCap * delta ? far_col : thin_col;
      Eigen::VectorXd normal = inv.row(jd).transpose();
      const double nn = normal.norm();
      if (nn <= 1e-300) {
        // fully degenerate direction: re-span along a unit axis instead
        normal = Eigen::VectorXd::Unit(n, static_cast<Eigen::Index>(evals) % n);
      } else {
        normal /= nn;
      }
      if (normal.dot(gradient) > 0.0) normal = -normal;
      const Eigen::VectorXd candidate = points.col(ib) + delta * normal;
      const double f = evaluate(candidate);
      points.col(vertex_of_col[jd]) = candidate;
      values(vertex_of_col[jd]) = f;
      continue;
    }

    repair_streak = 0;

    if (gnorm <= 1e-14 * std::max(1.0, std::abs(values(ib)))) {
      // flat model at this resolution
      if (at_final_resolution()) {
        converged = true;
        break;
      }
      rho = std::max(0.5 * rho, cfg.rhoend);
      delta = std::max(0.5 * delta, rho);
      continue;
    }

    const Eigen::VectorXd origin = points.col(ib);
    const double f_origin = values(ib);
    const Eigen::VectorXd step = -(delta / gnorm) * gradient;
    Eigen::VectorXd candidate = origin + step;
    const double f_candidate = evaluate(candidate);

    // replace the vertex with the largest simplex coordinate of the step;
    // this keeps the simplex volume maximal among the n choices
    const Eigen::VectorXd t = inv * step;
    Eigen::Index drop_col = 0;
    t.cwiseAbs().maxCoeff(&drop_col);
    points.col(vertex_of_col[drop_col]) = candidate;
    values(vertex_of_col[drop_col]) = f_candidate;

    const double actual = f_origin - f_candidate;
    const double predicted = delta * gnorm;

    if (actual > 0.0) {
      fail_streak = 0;
      // extend along the successful ray while it keeps paying off
      double f_prev = f_candidate;
      double reach = 2.0;
      while (budget_left()) {
        const Eigen::VectorXd extended = origin + reach * step;
        const double f_ext = evaluate(extended);
        if (f_ext >= f_prev) break;
        Eigen::Index jworst = 0;
        values.maxCoeff(&jworst);
        points.col(jworst) = extended;
        values(jworst) = f_ext;
        f_prev = f_ext;
        reach *= 2.0;
      }
      if (actual >= 0.5 * predicted) delta *= 2.0;
      continue;
    }

    if (delta > rho * (1.0 + 1e-9)) {
      // the failed point was absorbed above, so the model has fresh
      // information; give the radius a second chance before shrinking
      if (++fail_streak >= 2) {
        delta = std::max(0.5 * delta, rho);
        fail_streak = 0;
      }
      continue;
    }
    if (at_final_resolution()) {
      converged = true;
      break;
    }
    rho = std::max(0.5 * rho, cfg.rhoend);
    delta = rho;
    fail_streak = 0;
  }

  if (!converged && rho <= cfg.rhoend * (1.0 + 1e-9)) converged = true;
  return {to_std(best_x), best_f, evals, converged};
}

}  // namespace vqe
