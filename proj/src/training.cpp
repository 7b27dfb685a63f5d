#include "lpa/training.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "lpa/rng.hpp"

namespace lpa {

std::string paradigm_name(Paradigm p) {
  return p == Paradigm::E2E ? "e2e" : "lpa";
}

Paradigm parse_paradigm(const std::string& name) {
  if (name == "e2e") return Paradigm::E2E;
  if (name == "lpa") return Paradigm::LPA;
  throw std::invalid_argument("unknown paradigm '" + name +
                              "' (expected 'e2e' or 'lpa')");
}

std::vector<double> default_lambda(std::size_t n_blocks) {
  if (n_blocks == 0) {
    throw std::invalid_argument("default_lambda: n_blocks must be >= 1");
  }
  std::vector<double> lambda(n_blocks, 0.1);
  lambda.back() = 1.0;
  return lambda;
}

std::vector<double> effective_lambda(const TrainConfig& config,
                                     std::size_t n_blocks) {
  if (n_blocks == 0) {
    throw std::invalid_argument("effective_lambda: n_blocks must be >= 1");
  }
  if (config.paradigm == Paradigm::E2E) {
    std::vector<double> lambda(n_blocks, 0.0);
    lambda.back() = 1.0;
    return lambda;
  }
  std::vector<double> lambda =
      config.lambda.empty() ? default_lambda(n_blocks) : config.lambda;
  if (lambda.size() != n_blocks) {
    throw std::invalid_argument(
        "lambda length " + std::to_string(lambda.size()) +
        " does not match layer count " + std::to_string(n_blocks));
  }
  bool any_positive = false;
  for (double l : lambda) {
    if (!(l >= 0.0) || !std::isfinite(l)) {
      throw std::invalid_argument("lambda entries must be finite and >= 0");
    }
    any_positive = any_positive || l > 0.0;
  }
  if (!any_positive) {
    throw std::invalid_argument("LPA requires at least one positive lambda");
  }
  return lambda;
}

Gradients Gradients::zeros(const NetworkDims& dims) {
  Gradients g{DenseMatrix(dims.d, dims.d_in), DenseVector(dims.d), {},
              DenseMatrix(dims.d_y, dims.d)};
  g.blocks.reserve(dims.n_blocks);
  for (std::size_t i = 0; i < dims.n_blocks; ++i) {
    g.blocks.push_back(ResidualBlockParams{
        DenseMatrix(dims.hidden, dims.d), DenseVector(dims.hidden),
        DenseMatrix(dims.d, dims.hidden), DenseVector(dims.d)});
  }
  return g;
}

OptimizerState OptimizerState::zeros(const NetworkDims& dims) {
  return OptimizerState{Gradients::zeros(dims), Gradients::zeros(dims), 0};
}

double mse(const DenseVector& pred, const DenseVector& target) {
  if (pred.len() != target.len()) {
    throw std::invalid_argument("mse: length mismatch " +
                                std::to_string(pred.len()) + " vs " +
                                std::to_string(target.len()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.len(); ++i) {
    const double e = pred[i] - target[i];
    acc += e * e;
  }
  return acc / static_cast<double>(pred.len());
}

double mae(const DenseVector& pred, const DenseVector& target) {
  if (pred.len() != target.len()) {
    throw std::invalid_argument("mae: length mismatch " +
                                std::to_string(pred.len()) + " vs " +
                                std::to_string(target.len()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.len(); ++i) {
    acc += std::fabs(pred[i] - target[i]);
  }
  return acc / static_cast<double>(pred.len());
}

namespace {

std::vector<std::vector<double>*> gradient_tensors(Gradients& g) {
  std::vector<std::vector<double>*> out;
  out.reserve(3 + 4 * g.blocks.size());
  out.push_back(&g.preproc_w.data());
  out.push_back(&g.preproc_b.data());
  for (auto& b : g.blocks) {
    out.push_back(&b.w_in.data());
    out.push_back(&b.b_in.data());
    out.push_back(&b.w_out.data());
    out.push_back(&b.b_out.data());
  }
  out.push_back(&g.readout.data());
  return out;
}

void zero_gradients(Gradients& g) {
  for (auto* t : gradient_tensors(g)) std::fill(t->begin(), t->end(), 0.0);
}

// w(r,c) += u[r] * v[c]
void add_outer(DenseMatrix& w, const double* u, const double* v) {
  double* data = w.data().data();
  for (std::size_t r = 0; r < w.rows(); ++r) {
    const double ur = u[r];
    if (ur == 0.0) continue;
    double* row = data + r * w.cols();
    for (std::size_t c = 0; c < w.cols(); ++c) row[c] += ur * v[c];
  }
}

// out[c] += sum_r a(r,c) * y[r]
void add_matvec_transpose(const DenseMatrix& a, const double* y, double* out) {
  const double* m = a.data().data();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double yr = y[r];
    if (yr == 0.0) continue;
    const double* row = m + r * a.cols();
    for (std::size_t c = 0; c < a.cols(); ++c) out[c] += row[c] * yr;
  }
}

struct Workspace {
  std::vector<std::vector<double>> x;     // states x_0..x_N, each length d
  std::vector<std::vector<double>> z;     // pre-activations per block
  std::vector<std::vector<double>> h;     // relu outputs per block
  std::vector<std::vector<double>> yhat;  // readout at depths 1..N
  std::vector<double> adjoint;            // length d
  std::vector<double> s;                  // length hidden
  std::vector<double> dy;                 // length d_y

  explicit Workspace(const NetworkDims& dims)
      : x(dims.n_blocks + 1, std::vector<double>(dims.d, 0.0)),
        z(dims.n_blocks, std::vector<double>(dims.hidden, 0.0)),
        h(dims.n_blocks, std::vector<double>(dims.hidden, 0.0)),
        yhat(dims.n_blocks + 1, std::vector<double>(dims.d_y, 0.0)),
        adjoint(dims.d, 0.0),
        s(dims.hidden, 0.0),
        dy(dims.d_y, 0.0) {}
};

struct EvalResult {
  double weighted_loss = 0.0;
  std::vector<double> per_layer;
};

// Forward (and optionally backward) over one batch. per-layer losses are
// always computed at every depth; gradients flow only through heads with
// lambda > 0, so an E2E run and an LPA run with final-only weights perform
// bit-identical arithmetic. layer_min_abs_z, when given, receives the
// smallest |pre-activation| seen per block across the batch.
EvalResult batch_eval(const ResidualNetwork& net, const Sample* const* samples,
                      std::size_t count, const std::vector<double>& lambda,
                      Gradients* grads, std::vector<double>* layer_min_abs_z) {
  if (count == 0) throw std::invalid_argument("empty batch");
  const NetworkDims& dims = net.dims;
  if (lambda.size() != dims.n_blocks) {
    throw std::invalid_argument("batch loss: lambda length mismatch");
  }
  const double inv_count = 1.0 / static_cast<double>(count);
  const double inv_dy = 1.0 / static_cast<double>(dims.d_y);

  Workspace ws(dims);
  EvalResult result;
  result.per_layer.assign(dims.n_blocks, 0.0);
  if (layer_min_abs_z) {
    layer_min_abs_z->assign(dims.n_blocks,
                            std::numeric_limits<double>::infinity());
  }

  for (std::size_t si = 0; si < count; ++si) {
    const Sample& sample = *samples[si];
    if (sample.input.len() != dims.d_in || sample.target.len() != dims.d_y) {
      throw std::invalid_argument("batch sample " + std::to_string(si) +
                                  " has wrong input/target shape");
    }
    const double* u = sample.input.data().data();
    const double* y = sample.target.data().data();

    // forward
    matvec_into(net.preproc_w, u, ws.x[0].data());
    for (std::size_t k = 0; k < dims.d; ++k) ws.x[0][k] += net.preproc_b[k];
    for (std::size_t i = 0; i < dims.n_blocks; ++i) {
      const ResidualBlockParams& b = net.blocks[i];
      matvec_into(b.w_in, ws.x[i].data(), ws.z[i].data());
      for (std::size_t k = 0; k < dims.hidden; ++k) {
        ws.z[i][k] += b.b_in[k];
        ws.h[i][k] = ws.z[i][k] > 0.0 ? ws.z[i][k] : 0.0;
        if (layer_min_abs_z) {
          (*layer_min_abs_z)[i] =
              std::min((*layer_min_abs_z)[i], std::fabs(ws.z[i][k]));
        }
      }
      matvec_into(b.w_out, ws.h[i].data(), ws.x[i + 1].data());
      // same addition order as block_forward/forward_collect so that both
      // paths stay bit-identical
      for (std::size_t k = 0; k < dims.d; ++k) ws.x[i + 1][k] += b.b_out[k];
      for (std::size_t k = 0; k < dims.d; ++k) ws.x[i + 1][k] += ws.x[i][k];
    }

    // per-depth losses through the shared readout
    double sample_loss = 0.0;
    for (std::size_t i = 1; i <= dims.n_blocks; ++i) {
      matvec_into(net.readout, ws.x[i].data(), ws.yhat[i].data());
      double acc = 0.0;
      for (std::size_t k = 0; k < dims.d_y; ++k) {
        const double e = ws.yhat[i][k] - y[k];
        acc += e * e;
      }
      const double layer_loss = acc * inv_dy;
      result.per_layer[i - 1] += layer_loss * inv_count;
      sample_loss += lambda[i - 1] * layer_loss;
    }
    if (!std::isfinite(sample_loss)) {
      throw std::runtime_error("non-finite loss at batch index " +
                               std::to_string(si));
    }

    if (!grads) continue;

    // backward
    std::fill(ws.adjoint.begin(), ws.adjoint.end(), 0.0);
    for (std::size_t i = dims.n_blocks; i >= 1; --i) {
      if (lambda[i - 1] != 0.0) {
        const double scale = lambda[i - 1] * 2.0 * inv_dy * inv_count;
        for (std::size_t k = 0; k < dims.d_y; ++k) {
          ws.dy[k] = scale * (ws.yhat[i][k] - y[k]);
        }
        add_outer(grads->readout, ws.dy.data(), ws.x[i].data());
        add_matvec_transpose(net.readout, ws.dy.data(), ws.adjoint.data());
      }
      const ResidualBlockParams& b = net.blocks[i - 1];
      ResidualBlockParams& gb = grads->blocks[i - 1];
      add_outer(gb.w_out, ws.adjoint.data(), ws.h[i - 1].data());
      for (std::size_t k = 0; k < dims.d; ++k) gb.b_out[k] += ws.adjoint[k];
      matvec_transpose_into(b.w_out, ws.adjoint.data(), ws.s.data());
      for (std::size_t k = 0; k < dims.hidden; ++k) {
        if (ws.z[i - 1][k] <= 0.0) ws.s[k] = 0.0;
      }
      add_outer(gb.w_in, ws.s.data(), ws.x[i - 1].data());
      for (std::size_t k = 0; k < dims.hidden; ++k) gb.b_in[k] += ws.s[k];
      add_matvec_transpose(b.w_in, ws.s.data(), ws.adjoint.data());
    }
    add_outer(grads->preproc_w, ws.adjoint.data(), u);
    for (std::size_t k = 0; k < dims.d; ++k) {
      grads->preproc_b[k] += ws.adjoint[k];
    }
  }

  result.weighted_loss = 0.0;
  for (std::size_t i = 0; i < dims.n_blocks; ++i) {
    result.weighted_loss += lambda[i] * result.per_layer[i];
  }
  return result;
}

std::vector<const Sample*> batch_pointers(Batch batch) {
  std::vector<const Sample*> ptrs(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) ptrs[i] = &batch[i];
  return ptrs;
}

// Final-depth test metrics; one plain forward per sample.
void evaluate_final_depth(const ResidualNetwork& net,
                          std::span<const Sample> samples, double* out_mse,
                          double* out_mae) {
  const NetworkDims& dims = net.dims;
  Workspace ws(dims);
  double mse_acc = 0.0;
  double mae_acc = 0.0;
  const double inv_dy = 1.0 / static_cast<double>(dims.d_y);
  for (const Sample& sample : samples) {
    matvec_into(net.preproc_w, sample.input.data().data(), ws.x[0].data());
    for (std::size_t k = 0; k < dims.d; ++k) ws.x[0][k] += net.preproc_b[k];
    for (std::size_t i = 0; i < dims.n_blocks; ++i) {
      const ResidualBlockParams& b = net.blocks[i];
      matvec_into(b.w_in, ws.x[i].data(), ws.z[i].data());
      for (std::size_t k = 0; k < dims.hidden; ++k) {
        ws.z[i][k] += b.b_in[k];
        ws.h[i][k] = ws.z[i][k] > 0.0 ? ws.z[i][k] : 0.0;
      }
      matvec_into(b.w_out, ws.h[i].data(), ws.x[i + 1].data());
      for (std::size_t k = 0; k < dims.d; ++k) ws.x[i + 1][k] += b.b_out[k];
      for (std::size_t k = 0; k < dims.d; ++k) ws.x[i + 1][k] += ws.x[i][k];
    }
    matvec_into(net.readout, ws.x[dims.n_blocks].data(), ws.dy.data());
    double se = 0.0, ae = 0.0;
    for (std::size_t k = 0; k < dims.d_y; ++k) {
      const double e = ws.dy[k] - sample.target[k];
      se += e * e;
      ae += std::fabs(e);
    }
    mse_acc += se * inv_dy;
    mae_acc += ae * inv_dy;
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  *out_mse = mse_acc * inv_n;
  *out_mae = mae_acc * inv_n;
}

}  // namespace

BatchLoss lpa_batch_loss(const ResidualNetwork& net, Batch batch,
                         const std::vector<double>& lambda) {
  if (batch.empty()) throw std::invalid_argument("lpa_batch_loss: empty batch");
  auto ptrs = batch_pointers(batch);
  EvalResult r =
      batch_eval(net, ptrs.data(), ptrs.size(), lambda, nullptr, nullptr);
  return BatchLoss{r.weighted_loss, std::move(r.per_layer)};
}

double e2e_batch_loss(const ResidualNetwork& net, Batch batch) {
  if (batch.empty()) throw std::invalid_argument("e2e_batch_loss: empty batch");
  std::vector<double> lambda(net.dims.n_blocks, 0.0);
  lambda.back() = 1.0;
  auto ptrs = batch_pointers(batch);
  EvalResult r =
      batch_eval(net, ptrs.data(), ptrs.size(), lambda, nullptr, nullptr);
  return r.weighted_loss;
}

Gradients backward(const ResidualNetwork& net, Batch batch,
                   const TrainConfig& config) {
  if (batch.empty()) throw std::invalid_argument("backward: empty batch");
  const std::vector<double> lambda =
      effective_lambda(config, net.dims.n_blocks);
  Gradients grads = Gradients::zeros(net.dims);
  auto ptrs = batch_pointers(batch);
  batch_eval(net, ptrs.data(), ptrs.size(), lambda, &grads, nullptr);
  return grads;
}

void adam_step(ResidualNetwork& net, const Gradients& grads,
               OptimizerState& state, const TrainConfig& config) {
  auto params = parameter_tensors(net);
  auto g = gradient_tensors(const_cast<Gradients&>(grads));
  auto m = gradient_tensors(state.first_moment);
  auto v = gradient_tensors(state.second_moment);
  if (params.size() != g.size()) {
    throw std::invalid_argument("adam_step: gradient layout mismatch");
  }
  for (std::size_t t = 0; t < params.size(); ++t) {
    if (params[t]->size() != g[t]->size() ||
        params[t]->size() != m[t]->size() ||
        params[t]->size() != v[t]->size()) {
      throw std::invalid_argument("adam_step: tensor shape mismatch");
    }
  }
  ++state.step;
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double bias1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (std::size_t t = 0; t < params.size(); ++t) {
    double* p = params[t]->data();
    const double* gt = g[t]->data();
    double* mt = m[t]->data();
    double* vt = v[t]->data();
    const std::size_t n = params[t]->size();
    for (std::size_t k = 0; k < n; ++k) {
      mt[k] = b1 * mt[k] + (1.0 - b1) * gt[k];
      vt[k] = b2 * vt[k] + (1.0 - b2) * gt[k] * gt[k];
      const double m_hat = mt[k] / bias1;
      const double v_hat = vt[k] / bias2;
      p[k] -= config.lr * m_hat / (std::sqrt(v_hat) + config.adam_eps);
    }
  }
}

TrainHistory train(ResidualNetwork& net, std::span<const Sample> train_set,
                   std::span<const Sample> test_set,
                   const TrainConfig& config) {
  if (train_set.empty() || test_set.empty()) {
    throw std::invalid_argument("train: datasets must be nonempty");
  }
  if (config.lr <= 0.0) throw std::invalid_argument("train: lr must be > 0");
  if (config.batch_size == 0) {
    throw std::invalid_argument("train: batch_size must be >= 1");
  }
  const std::vector<double> lambda =
      effective_lambda(config, net.dims.n_blocks);

  TrainHistory history;
  OptimizerState opt = OptimizerState::zeros(net.dims);
  Gradients grads = Gradients::zeros(net.dims);
  const std::size_t n = train_set.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<const Sample*> ptrs(std::min<std::size_t>(config.batch_size, n));

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const auto t0 = std::chrono::steady_clock::now();
    Xoshiro256pp rng(derive_seed(config.seed, epoch));
    for (std::size_t i = n - 1; i > 0; --i) {
      const std::size_t j = rng.next_below(i + 1);
      std::swap(order[i], order[j]);
    }

    double loss_sum = 0.0;
    std::vector<double> per_layer_sum(net.dims.n_blocks, 0.0);
    std::size_t step = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t count = std::min(config.batch_size, n - start);
      ptrs.resize(count);
      for (std::size_t k = 0; k < count; ++k) {
        ptrs[k] = &train_set[order[start + k]];
      }
      zero_gradients(grads);
      EvalResult r;
      try {
        r = batch_eval(net, ptrs.data(), count, lambda, &grads, nullptr);
      } catch (const std::runtime_error& e) {
        throw std::runtime_error("train: epoch " + std::to_string(epoch + 1) +
                                 " step " + std::to_string(step + 1) + ": " +
                                 e.what());
      }
      if (!std::isfinite(r.weighted_loss) || r.weighted_loss > 1e12) {
        throw std::runtime_error(
            "train: diverged at epoch " + std::to_string(epoch + 1) +
            " step " + std::to_string(step + 1) + " (loss=" +
            std::to_string(r.weighted_loss) + ")");
      }
      adam_step(net, grads, opt, config);
      const double w = static_cast<double>(count);
      loss_sum += r.weighted_loss * w;
      for (std::size_t i = 0; i < per_layer_sum.size(); ++i) {
        per_layer_sum[i] += r.per_layer[i] * w;
      }
      ++step;
    }

    EpochRecord record;
    record.epoch = epoch + 1;
    record.total_loss = loss_sum / static_cast<double>(n);
    record.per_layer.resize(per_layer_sum.size());
    for (std::size_t i = 0; i < per_layer_sum.size(); ++i) {
      record.per_layer[i] = per_layer_sum[i] / static_cast<double>(n);
    }
    evaluate_final_depth(net, test_set, &record.test_mse, &record.test_mae);
    record.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    history.epochs.push_back(std::move(record));
  }
  return history;
}

void write_history_csv(const TrainHistory& history, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_history_csv: cannot open '" + path + "'");
  }
  const std::size_t n_layers =
      history.epochs.empty() ? 0 : history.epochs.front().per_layer.size();
  out << "epoch,total_loss";
  for (std::size_t i = 1; i <= n_layers; ++i) out << ",loss_" << i;
  out << ",test_mse,test_mae\n";
  char buf[64];
  for (const EpochRecord& r : history.epochs) {
    out << r.epoch;
    std::snprintf(buf, sizeof(buf), ",%.17g", r.total_loss);
    out << buf;
    for (double l : r.per_layer) {
      std::snprintf(buf, sizeof(buf), ",%.17g", l);
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), ",%.17g", r.test_mse);
    out << buf;
    std::snprintf(buf, sizeof(buf), ",%.17g\n", r.test_mae);
    out << buf;
  }
  if (!out) {
    throw std::runtime_error("write_history_csv: write failed for '" + path +
                             "'");
  }
}

double grad_check(ResidualNetwork& net, Batch batch, const TrainConfig& config,
                  double h, std::size_t max_params, GradCheckStats* stats,
                  const Gradients* analytic_override) {
  if (h <= 0.0) throw std::invalid_argument("grad_check: h must be > 0");
  if (batch.empty()) throw std::invalid_argument("grad_check: empty batch");
  const std::vector<double> lambda =
      effective_lambda(config, net.dims.n_blocks);

  Gradients computed = analytic_override ? Gradients::zeros(net.dims)
                                         : backward(net, batch, config);
  const Gradients& analytic = analytic_override ? *analytic_override : computed;

  auto params = parameter_tensors(net);
  auto grads = gradient_tensors(const_cast<Gradients&>(analytic));

  // Influence map: first block whose pre-activations a tensor can move.
  // 1-based; n_blocks+1 means "none" (readout, last block's output side).
  const std::size_t n_blocks = net.dims.n_blocks;
  std::vector<std::size_t> influence_start(params.size(), 1);
  influence_start[0] = 1;  // preproc_w
  influence_start[1] = 1;  // preproc_b
  for (std::size_t j = 0; j < n_blocks; ++j) {
    influence_start[2 + 4 * j + 0] = j + 1;  // w_in
    influence_start[2 + 4 * j + 1] = j + 1;  // b_in
    influence_start[2 + 4 * j + 2] = j + 2;  // w_out
    influence_start[2 + 4 * j + 3] = j + 2;  // b_out
  }
  influence_start.back() = n_blocks + 1;  // readout

  std::size_t total = 0;
  for (const auto* t : params) total += t->size();

  std::vector<std::size_t> chosen;
  if (max_params == 0 || total <= max_params) {
    chosen.resize(total);
    std::iota(chosen.begin(), chosen.end(), std::size_t{0});
  } else {
    // Partial Fisher-Yates: first max_params entries of a seeded shuffle.
    std::vector<std::size_t> all(total);
    std::iota(all.begin(), all.end(), std::size_t{0});
    Xoshiro256pp rng(derive_seed(config.seed, 0x6772616463686bULL));
    for (std::size_t i = 0; i < max_params; ++i) {
      const std::size_t j = i + rng.next_below(total - i);
      std::swap(all[i], all[j]);
    }
    chosen.assign(all.begin(), all.begin() + max_params);
  }

  auto ptrs = batch_pointers(batch);
  std::vector<double> min_z_plus, min_z_minus;
  double worst = 0.0;
  std::size_t checked = 0, excluded = 0;

  for (std::size_t flat : chosen) {
    std::size_t t = 0, off = flat;
    while (off >= params[t]->size()) off -= params[t++]->size();

    double& p = (*params[t])[off];
    const double saved = p;
    p = saved + h;
    const double loss_plus =
        batch_eval(net, ptrs.data(), ptrs.size(), lambda, nullptr,
                   &min_z_plus)
            .weighted_loss;
    p = saved - h;
    const double loss_minus =
        batch_eval(net, ptrs.data(), ptrs.size(), lambda, nullptr,
                   &min_z_minus)
            .weighted_loss;
    p = saved;

    if (influence_start[t] <= n_blocks) {
      double nearest = std::numeric_limits<double>::infinity();
      for (std::size_t i = influence_start[t] - 1; i < n_blocks; ++i) {
        nearest = std::min({nearest, min_z_plus[i], min_z_minus[i]});
      }
      if (nearest < 10.0 * h) {
        ++excluded;
        continue;
      }
    }

    const double fd = (loss_plus - loss_minus) / (2.0 * h);
    const double an = (*grads[t])[off];
    const double denom = std::max({std::fabs(fd), std::fabs(an), 1e-3});
    worst = std::max(worst, std::fabs(fd - an) / denom);
    ++checked;
  }

  if (stats) {
    stats->checked = checked;
    stats->excluded = excluded;
    stats->worst_rel_error = worst;
  }
  return worst;
}

}  // namespace lpa
