#include "lpa/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace lpa {

ErrorTrajectory error_trajectory(const ResidualNetwork& net,
                                 std::span<const Sample> samples,
                                 std::string dataset_id,
                                 std::string model_id) {
  if (samples.empty()) {
    throw std::invalid_argument("error_trajectory: empty dataset");
  }
  const std::size_t depths = net.dims.n_blocks + 1;
  const double inv_dy = 1.0 / static_cast<double>(net.dims.d_y);

  ErrorTrajectory traj;
  traj.dataset_id = std::move(dataset_id);
  traj.model_id = std::move(model_id);
  traj.per_depth.resize(depths);
  for (std::size_t i = 0; i < depths; ++i) traj.per_depth[i].depth = i;

  for (const Sample& sample : samples) {
    const ForwardStates fs = forward_collect(net, sample.input);
    for (std::size_t i = 0; i < depths; ++i) {
      const DenseVector pred = readout_at_depth(net, fs, i);
      double se = 0.0, ae = 0.0;
      for (std::size_t k = 0; k < net.dims.d_y; ++k) {
        const double e = pred[k] - sample.target[k];
        se += e * e;
        ae += std::fabs(e);
      }
      auto& rec = traj.per_depth[i];
      rec.mse += se * inv_dy;
      rec.mae += ae * inv_dy;
      const double l2 = std::sqrt(se);
      rec.mean_l2 += l2;
      rec.max_l2 = std::max(rec.max_l2, l2);
    }
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (auto& rec : traj.per_depth) {
    rec.mse *= inv_n;
    rec.mae *= inv_n;
    rec.mean_l2 *= inv_n;
  }
  return traj;
}

MonotonicityReport monotonicity(const ErrorTrajectory& traj, double delta,
                                std::size_t start_depth) {
  if (delta < 0.0) {
    throw std::invalid_argument("monotonicity: delta must be >= 0");
  }
  const std::size_t n_depths = traj.per_depth.size();
  if (n_depths < 2 || start_depth > n_depths - 2) {
    throw std::invalid_argument("monotonicity: start_depth " +
                                std::to_string(start_depth) +
                                " leaves no depth pairs to compare");
  }
  MonotonicityReport report;
  report.delta = delta;
  const std::size_t comparisons = (n_depths - 1) - start_depth;
  for (std::size_t i = start_depth; i + 1 < n_depths; ++i) {
    const double cur = traj.per_depth[i].mse;
    const double next = traj.per_depth[i + 1].mse;
    if (next > (1.0 + delta) * cur) {
      const double ratio =
          cur > 0.0 ? next / cur : std::numeric_limits<double>::infinity();
      report.violations.emplace_back(i + 1, ratio);
    }
  }
  report.fraction_nonincreasing =
      1.0 - static_cast<double>(report.violations.size()) /
                static_cast<double>(comparisons);
  return report;
}

EvalMetrics evaluate(const ResidualNetwork& net, std::span<const Sample> samples,
                     std::size_t depth) {
  if (samples.empty()) {
    throw std::invalid_argument("evaluate: empty dataset");
  }
  if (depth > net.dims.n_blocks) {
    throw std::out_of_range("evaluate: depth " + std::to_string(depth) +
                            " out of range 0.." +
                            std::to_string(net.dims.n_blocks));
  }
  const double inv_dy = 1.0 / static_cast<double>(net.dims.d_y);
  double mse_acc = 0.0, mae_acc = 0.0;
  for (const Sample& sample : samples) {
    const DenseVector pred = truncated_predict(net, sample.input, depth);
    double se = 0.0, ae = 0.0;
    for (std::size_t k = 0; k < net.dims.d_y; ++k) {
      const double e = pred[k] - sample.target[k];
      se += e * e;
      ae += std::fabs(e);
    }
    mse_acc += se * inv_dy;
    mae_acc += ae * inv_dy;
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  return EvalMetrics{mse_acc * inv_n, mae_acc * inv_n};
}

void write_trajectory_csv(const ErrorTrajectory& traj,
                          const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_trajectory_csv: cannot open '" + path +
                             "'");
  }
  out << "depth,mse,mae,mean_l2,max_l2\n";
  char buf[160];
  for (const auto& rec : traj.per_depth) {
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g,%.17g\n", rec.depth,
                  rec.mse, rec.mae, rec.mean_l2, rec.max_l2);
    out << buf;
  }
  if (!out) {
    throw std::runtime_error("write_trajectory_csv: write failed for '" +
                             path + "'");
  }
}

}  // namespace lpa
