#ifndef LPA_NETWORK_HPP
#define LPA_NETWORK_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "lpa/matrix.hpp"
#include "lpa/surfaces.hpp"

namespace lpa {

struct NetworkDims {
  std::size_t d_in = 2;    // raw input dimension
  std::size_t d = 30;      // residual stream width
  std::size_t hidden = 30; // block hidden width
  std::size_t d_y = 1;     // output dimension
  std::size_t n_blocks = 6;
};

/// One residual block G(x) = w_out * relu(w_in * x + b_in) + b_out.
struct ResidualBlockParams {
  DenseMatrix w_in;   // hidden x d
  DenseVector b_in;   // hidden
  DenseMatrix w_out;  // d x hidden
  DenseVector b_out;  // d
};

/// Residual network: affine preprocessing into the stream, n_blocks
/// residual blocks, and a shared linear readout applied at every depth.
struct ResidualNetwork {
  NetworkDims dims;
  DenseMatrix preproc_w;  // d x d_in
  DenseVector preproc_b;  // d
  std::vector<ResidualBlockParams> blocks;
  DenseMatrix readout;  // d_y x d

  std::size_t parameter_count() const;
};

/// All intermediate stream states x_0 .. x_N for one input.
struct ForwardStates {
  DenseVector input;                // raw, before preprocessing
  std::vector<DenseVector> states;  // length n_blocks + 1
};

/// He-uniform fan-in init (bound sqrt(6/fan_in)) for all weight matrices,
/// zero biases. Deterministic per seed: preprocessing weights are drawn
/// first, then each block's w_in and w_out in order, then the readout,
/// each filled in row-major order.
ResidualNetwork init_network(const NetworkDims& dims, std::uint64_t seed);

/// G(x) without the skip connection.
DenseVector block_forward(const ResidualBlockParams& b, const DenseVector& x);

ForwardStates forward_collect(const ResidualNetwork& net,
                              const DenseVector& raw_input);

/// Shared-readout prediction from state x_i.
DenseVector readout_at_depth(const ResidualNetwork& net,
                             const ForwardStates& fs, std::size_t depth);

/// Output-space contributions [W x_0, H_1(x_0), ..., H_N(x_{N-1})] whose
/// prefix sums reproduce readout_at_depth for every depth.
std::vector<DenseVector> decompose_contributions(const ResidualNetwork& net,
                                                 const DenseVector& raw_input);

/// Early-exit prediction: evaluates blocks 1..depth only. If
/// blocks_evaluated is non-null it receives the number of residual blocks
/// actually run.
DenseVector truncated_predict(const ResidualNetwork& net,
                              const DenseVector& raw_input, std::size_t depth,
                              std::size_t* blocks_evaluated = nullptr);

/// Remaining output-space residual before layer i (1-based):
/// target - readout_at_depth(i-1).
DenseVector residual_target(const ResidualNetwork& net,
                            const DenseVector& raw_input,
                            const DenseVector& target, std::size_t i);

/// Parameter arrays in canonical order: preproc_w, preproc_b, then each
/// block's w_in, b_in, w_out, b_out, then readout. The optimizer and the
/// checkpoint format both rely on this order.
std::vector<std::vector<double>*> parameter_tensors(ResidualNetwork& net);
std::vector<const std::vector<double>*> parameter_tensors(
    const ResidualNetwork& net);

/// One training/evaluation pair in network coordinates.
struct Sample {
  DenseVector input;
  DenseVector target;
};

/// Converts a surface dataset to samples with input [x, y] and a
/// length-1 target.
std::vector<Sample> to_samples(const Dataset& d);

}  // namespace lpa

#endif  // LPA_NETWORK_HPP
