#ifndef LPA_METRICS_HPP
#define LPA_METRICS_HPP

#include <span>
#include <string>
#include <vector>

#include "lpa/network.hpp"

namespace lpa {

/// Per-depth errors of one model on one dataset, all computed through the
/// shared readout. mean_l2 / max_l2 are the dataset-mean and sup of the
/// per-sample output-space L2 error.
struct ErrorTrajectory {
  struct DepthRecord {
    std::size_t depth = 0;
    double mse = 0.0;
    double mae = 0.0;
    double mean_l2 = 0.0;
    double max_l2 = 0.0;
  };
  std::vector<DepthRecord> per_depth;  // depths 0..N
  std::string dataset_id;
  std::string model_id;
};

struct MonotonicityReport {
  double delta = 0.0;
  /// (depth, mse ratio) for each step with mse_{i+1} > (1+delta)*mse_i.
  std::vector<std::pair<std::size_t, double>> violations;
  double fraction_nonincreasing = 1.0;
};

struct EvalMetrics {
  double mse = 0.0;
  double mae = 0.0;
};

ErrorTrajectory error_trajectory(const ResidualNetwork& net,
                                 std::span<const Sample> samples,
                                 std::string dataset_id = {},
                                 std::string model_id = {});

/// Counts steps i >= start_depth where mse_{i+1} > (1+delta)*mse_i.
MonotonicityReport monotonicity(const ErrorTrajectory& traj, double delta,
                                std::size_t start_depth);

EvalMetrics evaluate(const ResidualNetwork& net, std::span<const Sample> samples,
                     std::size_t depth);

/// CSV schema: depth,mse,mae,mean_l2,max_l2.
void write_trajectory_csv(const ErrorTrajectory& traj, const std::string& path);

}  // namespace lpa

#endif  // LPA_METRICS_HPP
