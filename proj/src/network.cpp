#include "lpa/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "lpa/rng.hpp"

namespace lpa {

namespace {

void fill_he_uniform(DenseMatrix& w, std::size_t fan_in, Xoshiro256pp& rng) {
  const double bound = std::sqrt(6.0 / static_cast<double>(fan_in));
  for (double& v : w.data()) v = rng.uniform(-bound, bound);
}

}  // namespace

std::size_t ResidualNetwork::parameter_count() const {
  std::size_t n = preproc_w.size() + preproc_b.len() + readout.size();
  for (const auto& b : blocks) {
    n += b.w_in.size() + b.b_in.len() + b.w_out.size() + b.b_out.len();
  }
  return n;
}

ResidualNetwork init_network(const NetworkDims& dims, std::uint64_t seed) {
  if (dims.d_in == 0 || dims.d == 0 || dims.hidden == 0 || dims.d_y == 0 ||
      dims.n_blocks == 0) {
    throw std::invalid_argument("init_network: all dimensions must be >= 1");
  }
  Xoshiro256pp rng(seed);
  ResidualNetwork net{dims,
                      DenseMatrix(dims.d, dims.d_in),
                      DenseVector(dims.d),
                      {},
                      DenseMatrix(dims.d_y, dims.d)};
  fill_he_uniform(net.preproc_w, dims.d_in, rng);
  net.blocks.reserve(dims.n_blocks);
  for (std::size_t i = 0; i < dims.n_blocks; ++i) {
    ResidualBlockParams b{DenseMatrix(dims.hidden, dims.d),
                          DenseVector(dims.hidden),
                          DenseMatrix(dims.d, dims.hidden),
                          DenseVector(dims.d)};
    fill_he_uniform(b.w_in, dims.d, rng);
    fill_he_uniform(b.w_out, dims.hidden, rng);
    net.blocks.push_back(std::move(b));
  }
  fill_he_uniform(net.readout, dims.d, rng);
  return net;
}

DenseVector block_forward(const ResidualBlockParams& b, const DenseVector& x) {
  if (x.len() != b.w_in.cols()) {
    throw std::invalid_argument("block_forward: input length " +
                                std::to_string(x.len()) + " != stream width " +
                                std::to_string(b.w_in.cols()));
  }
  DenseVector h(b.w_in.rows());
  matvec_into(b.w_in, x.data().data(), h.data().data());
  for (std::size_t i = 0; i < h.len(); ++i) {
    h[i] += b.b_in[i];
    if (h[i] < 0.0) h[i] = 0.0;  // relu; subgradient at 0 taken as 0
  }
  DenseVector g(b.w_out.rows());
  matvec_into(b.w_out, h.data().data(), g.data().data());
  for (std::size_t i = 0; i < g.len(); ++i) g[i] += b.b_out[i];
  return g;
}

ForwardStates forward_collect(const ResidualNetwork& net,
                              const DenseVector& raw_input) {
  if (raw_input.len() != net.dims.d_in) {
    throw std::invalid_argument("forward_collect: input length " +
                                std::to_string(raw_input.len()) +
                                " != d_in " + std::to_string(net.dims.d_in));
  }
  ForwardStates fs{raw_input, {}};
  fs.states.reserve(net.dims.n_blocks + 1);

  DenseVector x0(net.dims.d);
  matvec_into(net.preproc_w, raw_input.data().data(), x0.data().data());
  for (std::size_t i = 0; i < x0.len(); ++i) x0[i] += net.preproc_b[i];
  fs.states.push_back(std::move(x0));

  for (const auto& block : net.blocks) {
    const DenseVector& prev = fs.states.back();
    DenseVector g = block_forward(block, prev);
    for (std::size_t i = 0; i < g.len(); ++i) g[i] += prev[i];
    fs.states.push_back(std::move(g));
  }
  return fs;
}

DenseVector readout_at_depth(const ResidualNetwork& net,
                             const ForwardStates& fs, std::size_t depth) {
  if (depth >= fs.states.size()) {
    throw std::out_of_range("readout_at_depth: depth " +
                            std::to_string(depth) + " out of range 0.." +
                            std::to_string(fs.states.size() - 1));
  }
  return matvec(net.readout, fs.states[depth]);
}

std::vector<DenseVector> decompose_contributions(const ResidualNetwork& net,
                                                 const DenseVector& raw_input) {
  const ForwardStates fs = forward_collect(net, raw_input);
  std::vector<DenseVector> terms;
  terms.reserve(net.dims.n_blocks + 1);
  terms.push_back(matvec(net.readout, fs.states[0]));
  for (std::size_t j = 0; j < net.dims.n_blocks; ++j) {
    terms.push_back(
        matvec(net.readout, block_forward(net.blocks[j], fs.states[j])));
  }
  return terms;
}

DenseVector truncated_predict(const ResidualNetwork& net,
                              const DenseVector& raw_input, std::size_t depth,
                              std::size_t* blocks_evaluated) {
  if (depth > net.dims.n_blocks) {
    throw std::out_of_range("truncated_predict: depth " +
                            std::to_string(depth) + " out of range 0.." +
                            std::to_string(net.dims.n_blocks));
  }
  if (raw_input.len() != net.dims.d_in) {
    throw std::invalid_argument("truncated_predict: input length " +
                                std::to_string(raw_input.len()) +
                                " != d_in " + std::to_string(net.dims.d_in));
  }
  DenseVector x(net.dims.d);
  matvec_into(net.preproc_w, raw_input.data().data(), x.data().data());
  for (std::size_t i = 0; i < x.len(); ++i) x[i] += net.preproc_b[i];

  std::size_t evaluated = 0;
  for (std::size_t b = 0; b < depth; ++b) {
    DenseVector g = block_forward(net.blocks[b], x);
    for (std::size_t i = 0; i < g.len(); ++i) g[i] += x[i];
    x = std::move(g);
    ++evaluated;
  }
  if (blocks_evaluated) *blocks_evaluated = evaluated;
  return matvec(net.readout, x);
}

DenseVector residual_target(const ResidualNetwork& net,
                            const DenseVector& raw_input,
                            const DenseVector& target, std::size_t i) {
  if (i < 1 || i > net.dims.n_blocks) {
    throw std::out_of_range("residual_target: layer index " +
                            std::to_string(i) + " out of range 1.." +
                            std::to_string(net.dims.n_blocks));
  }
  if (target.len() != net.dims.d_y) {
    throw std::invalid_argument("residual_target: target length " +
                                std::to_string(target.len()) + " != d_y " +
                                std::to_string(net.dims.d_y));
  }
  DenseVector pred = truncated_predict(net, raw_input, i - 1);
  DenseVector out = target;
  for (std::size_t k = 0; k < out.len(); ++k) out[k] -= pred[k];
  return out;
}

std::vector<std::vector<double>*> parameter_tensors(ResidualNetwork& net) {
  std::vector<std::vector<double>*> out;
  out.reserve(3 + 4 * net.blocks.size());
  out.push_back(&net.preproc_w.data());
  out.push_back(&net.preproc_b.data());
  for (auto& b : net.blocks) {
    out.push_back(&b.w_in.data());
    out.push_back(&b.b_in.data());
    out.push_back(&b.w_out.data());
    out.push_back(&b.b_out.data());
  }
  out.push_back(&net.readout.data());
  return out;
}

std::vector<const std::vector<double>*> parameter_tensors(
    const ResidualNetwork& net) {
  auto mutable_view = parameter_tensors(const_cast<ResidualNetwork&>(net));
  return {mutable_view.begin(), mutable_view.end()};
}

std::vector<Sample> to_samples(const Dataset& d) {
  std::vector<Sample> samples;
  samples.reserve(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    samples.push_back(Sample{DenseVector{d.inputs[i][0], d.inputs[i][1]},
                             DenseVector{d.targets[i]}});
  }
  return samples;
}

}  // namespace lpa
