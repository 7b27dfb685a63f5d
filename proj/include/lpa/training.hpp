#ifndef LPA_TRAINING_HPP
#define LPA_TRAINING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lpa/network.hpp"

namespace lpa {

enum class Paradigm { E2E, LPA };

std::string paradigm_name(Paradigm p);
Paradigm parse_paradigm(const std::string& name);

struct TrainConfig {
  Paradigm paradigm = Paradigm::LPA;
  /// Per-layer loss weights, length n_blocks. Ignored in E2E mode. Empty in
  /// LPA mode selects the default policy (0.1 for layers below the last,
  /// 1.0 for the last).
  std::vector<double> lambda;
  double lr = 1e-3;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::size_t epochs = 300;
  std::size_t batch_size = 128;
  std::uint64_t seed = 0;
};

std::vector<double> default_lambda(std::size_t n_blocks);

/// The weights actually applied: E2E collapses to (0,...,0,1); LPA
/// validates length and non-negativity and requires one positive entry.
std::vector<double> effective_lambda(const TrainConfig& config,
                                     std::size_t n_blocks);

/// Parameter-shaped storage, mirroring ResidualNetwork exactly.
struct Gradients {
  DenseMatrix preproc_w;
  DenseVector preproc_b;
  std::vector<ResidualBlockParams> blocks;
  DenseMatrix readout;

  static Gradients zeros(const NetworkDims& dims);
};

struct OptimizerState {
  Gradients first_moment;
  Gradients second_moment;
  std::uint64_t step = 0;

  static OptimizerState zeros(const NetworkDims& dims);
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double total_loss = 0.0;
  std::vector<double> per_layer;  // unweighted per-depth losses, length N
  double test_mse = 0.0;
  double test_mae = 0.0;
  double seconds = 0.0;  // wall clock; not part of the CSV
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
};

using Batch = std::span<const Sample>;

double mse(const DenseVector& pred, const DenseVector& target);
double mae(const DenseVector& pred, const DenseVector& target);

struct BatchLoss {
  double loss = 0.0;              // lambda-weighted total
  std::vector<double> per_layer;  // unweighted, depths 1..N
};

BatchLoss lpa_batch_loss(const ResidualNetwork& net, Batch batch,
                         const std::vector<double>& lambda);
double e2e_batch_loss(const ResidualNetwork& net, Batch batch);

/// Exact reverse-mode gradients of the configured loss over the batch.
Gradients backward(const ResidualNetwork& net, Batch batch,
                   const TrainConfig& config);

/// Bias-corrected Adam update, in place; increments state.step.
void adam_step(ResidualNetwork& net, const Gradients& grads,
               OptimizerState& state, const TrainConfig& config);

/// Runs the full training loop; deterministic per (config, data).
TrainHistory train(ResidualNetwork& net, std::span<const Sample> train_set,
                   std::span<const Sample> test_set,
                   const TrainConfig& config);

/// CSV schema: epoch,total_loss,loss_1..loss_N,test_mse,test_mae.
void write_history_csv(const TrainHistory& history, const std::string& path);

struct GradCheckStats {
  std::size_t checked = 0;
  std::size_t excluded = 0;  // kink-adjacent parameters skipped
  double worst_rel_error = 0.0;
};

/// Central-difference check of backward() against the configured loss.
/// Parameters whose perturbed evaluation brings a reachable pre-activation
/// within 10*h of zero are excluded. If the network has more than
/// max_params parameters, a seeded random subset of max_params is checked.
/// analytic_override substitutes the gradients under test (for negative
/// controls). Returns the worst relative error observed.
double grad_check(ResidualNetwork& net, Batch batch, const TrainConfig& config,
                  double h, std::size_t max_params = 256,
                  GradCheckStats* stats = nullptr,
                  const Gradients* analytic_override = nullptr);

}  // namespace lpa

#endif  // LPA_TRAINING_HPP
