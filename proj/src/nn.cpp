// Copyright 2026 The scsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "scsearch/nn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "scsearch/error.hpp"

namespace scsearch {
namespace {

constexpr int kTaps = kKernelSize * kKernelSize;
constexpr int kPositions = kCellsPerChannel;

using Matrix = Eigen::MatrixXd;

// neighbour[q][k]: cell feeding tap k of a 3x3 window centred at q, or -1.
const std::array<std::array<int, kTaps>, kPositions>& neighbours() {
  static const auto table = [] {
    std::array<std::array<int, kTaps>, kPositions> t{};
    for (int r = 0; r < kRows; ++r) {
      for (int c = 0; c < kCols; ++c) {
        for (int ky = 0; ky < kKernelSize; ++ky) {
          for (int kx = 0; kx < kKernelSize; ++kx) {
            const int rr = r + ky - 1;
            const int cc = c + kx - 1;
            const bool inside = rr >= 0 && rr < kRows && cc >= 0 && cc < kCols;
            t[r * kCols + c][ky * kKernelSize + kx] = inside ? rr * kCols + cc : -1;
          }
        }
      }
    }
    return t;
  }();
  return table;
}

template <typename S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using Blocks = std::vector<Mat<S>>;

// Block layout shared by ModelParams: conv (weight, bias) pairs, then the
// optional dense pair, then the output pair.
std::size_t conv_w(int l) { return 2 * static_cast<std::size_t>(l); }
std::size_t conv_b(int l) { return 2 * static_cast<std::size_t>(l) + 1; }

// Activations are (channels x batch*224); column b*224 + q is cell q of sample b.
template <typename S>
void im2col(const Mat<S>& x, Mat<S>& col) {
  const Eigen::Index cin = x.rows();
  const Eigen::Index width = cin * kTaps;
  const Eigen::Index n = x.cols();
  col.resize(width, n);
  const auto& nb = neighbours();
  const S* src = x.data();
  S* dst = col.data();
  for (Eigen::Index p = 0; p < n; ++p) {
    const Eigen::Index base = p - p % kPositions;
    const auto& taps = nb[static_cast<std::size_t>(p % kPositions)];
    S* out = dst + p * width;
    for (int k = 0; k < kTaps; ++k) {
      if (taps[k] < 0) {
        for (Eigen::Index ci = 0; ci < cin; ++ci) out[ci * kTaps + k] = S(0);
      } else {
        const S* in = src + (base + taps[k]) * cin;
        for (Eigen::Index ci = 0; ci < cin; ++ci) out[ci * kTaps + k] = in[ci];
      }
    }
  }
}

template <typename S>
void col2im(const Mat<S>& dcol, Eigen::Index cin, Mat<S>& dx) {
  const Eigen::Index width = cin * kTaps;
  const Eigen::Index n = dcol.cols();
  dx.setZero(cin, n);
  const auto& nb = neighbours();
  const S* src = dcol.data();
  S* dst = dx.data();
  for (Eigen::Index p = 0; p < n; ++p) {
    const Eigen::Index base = p - p % kPositions;
    const auto& taps = nb[static_cast<std::size_t>(p % kPositions)];
    const S* in = src + p * width;
    for (int k = 0; k < kTaps; ++k) {
      if (taps[k] < 0) continue;
      S* out = dst + (base + taps[k]) * cin;
      for (Eigen::Index ci = 0; ci < cin; ++ci) out[ci] += in[ci * kTaps + k];
    }
  }
}

template <typename S>
Mat<S> pack_inputs(std::span<const PTableTensor> batch) {
  Mat<S> x(kChannels, static_cast<Eigen::Index>(batch.size()) * kPositions);
  for (std::size_t b = 0; b < batch.size(); ++b) {
    const auto values = batch[b].values();
    for (int q = 0; q < kPositions; ++q) {
      for (int ch = 0; ch < kChannels; ++ch) {
        x(ch, static_cast<Eigen::Index>(b) * kPositions + q) =
            static_cast<S>(values[static_cast<std::size_t>(ch * kPositions + q)]);
      }
    }
  }
  return x;
}

void check_shapes(const ModelParams& params) {
  const ModelParams expected(params.config());
  if (!expected.congruent(params)) {
    throw Error(ErrorCode::kShapeMismatch, "parameter blocks do not match the model config");
  }
}

template <typename S>
struct ForwardCache {
  std::vector<Mat<S>> activations;  // [0] = input, [l + 1] = after conv l
  Mat<S> pooled;                    // channels x batch
  Mat<S> hidden;                    // dense_hidden x batch
  Eigen::Matrix<S, 1, Eigen::Dynamic> outputs;
};

template <typename S>
void run_forward(const Blocks<S>& w, const ModelConfig& cfg, std::span<const PTableTensor> batch,
                 ForwardCache<S>& cache) {
  if (batch.empty()) throw Error(ErrorCode::kEmptyDataset, "empty batch");
  const auto batch_size = static_cast<Eigen::Index>(batch.size());
  const bool dense = cfg.dense_hidden > 0;

  cache.activations.resize(static_cast<std::size_t>(cfg.conv_layers) + 1);
  cache.activations[0] = pack_inputs<S>(batch);
  Mat<S> col;
  for (int l = 0; l < cfg.conv_layers; ++l) {
    im2col(cache.activations[static_cast<std::size_t>(l)], col);
    Mat<S>& a = cache.activations[static_cast<std::size_t>(l) + 1];
    a.noalias() = w[conv_w(l)] * col;
    a.colwise() += w[conv_b(l)].col(0);
    a = a.cwiseMax(S(0));
  }

  const Mat<S>& last = cache.activations.back();
  cache.pooled.resize(cfg.channels, batch_size);
  for (Eigen::Index b = 0; b < batch_size; ++b) {
    cache.pooled.col(b) = last.middleCols(b * kPositions, kPositions).rowwise().sum() / S(kPositions);
  }

  const Mat<S>* features = &cache.pooled;
  if (dense) {
    const std::size_t d = conv_w(cfg.conv_layers);
    cache.hidden.noalias() = w[d] * cache.pooled;
    cache.hidden.colwise() += w[d + 1].col(0);
    cache.hidden = cache.hidden.cwiseMax(S(0));
    features = &cache.hidden;
  }
  cache.outputs = w[w.size() - 2] * *features;
  cache.outputs.array() += w.back()(0, 0);
}

struct LossAndOutputs {
  double loss = 0.0;
  std::vector<double> outputs;
};

LossResult compute_loss_impl(LossKind kind, std::span<const double> outputs, std::span<const double> targets);

// Gradients of the mean loss land in `grads`, shaped like `w`.
template <typename S>
LossAndOutputs run_backward(const Blocks<S>& w, const ModelConfig& cfg, std::span<const PTableTensor> batch,
                            std::span<const double> targets, LossKind loss, Blocks<S>& grads) {
  ForwardCache<S> cache;
  run_forward(w, cfg, batch, cache);
  const auto batch_size = static_cast<Eigen::Index>(batch.size());

  LossAndOutputs result;
  result.outputs.assign(cache.outputs.data(), cache.outputs.data() + cache.outputs.size());
  const LossResult lr = compute_loss_impl(loss, result.outputs, targets);
  result.loss = lr.loss;

  grads.resize(w.size());
  const std::size_t out_w = w.size() - 2;
  const Eigen::Matrix<S, 1, Eigen::Dynamic> d_out = lr.grad.transpose().template cast<S>();
  grads[out_w + 1] = Mat<S>::Constant(1, 1, d_out.sum());
  Mat<S> d_pooled;
  if (cfg.dense_hidden > 0) {
    const std::size_t d = conv_w(cfg.conv_layers);
    grads[out_w].noalias() = d_out * cache.hidden.transpose();
    Mat<S> d_hidden = w[out_w].transpose() * d_out;
    d_hidden.array() *= (cache.hidden.array() > S(0)).template cast<S>();
    grads[d].noalias() = d_hidden * cache.pooled.transpose();
    grads[d + 1] = d_hidden.rowwise().sum();
    d_pooled.noalias() = w[d].transpose() * d_hidden;
  } else {
    grads[out_w].noalias() = d_out * cache.pooled.transpose();
    d_pooled = w[out_w].transpose() * d_out;
  }

  Mat<S> d_act(cfg.channels, batch_size * kPositions);
  for (Eigen::Index b = 0; b < batch_size; ++b) {
    d_act.middleCols(b * kPositions, kPositions).colwise() = d_pooled.col(b) / S(kPositions);
  }

  Mat<S> col, d_col;
  for (int l = cfg.conv_layers - 1; l >= 0; --l) {
    const auto idx = static_cast<std::size_t>(l);
    d_act.array() *= (cache.activations[idx + 1].array() > S(0)).template cast<S>();
    im2col(cache.activations[idx], col);
    grads[conv_w(l)].noalias() = d_act * col.transpose();
    grads[conv_b(l)] = d_act.rowwise().sum();
    if (l > 0) {
      d_col.noalias() = w[conv_w(l)].transpose() * d_act;
      col2im(d_col, cache.activations[idx].rows(), d_act);
    }
  }
  return result;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::kLengthMismatch, std::to_string(a) + " predictions vs " + std::to_string(b) + " targets");
  }
  if (a == 0) throw Error(ErrorCode::kEmptyDataset, "empty input");
}

}  // namespace

std::string_view to_string(Head head) {
  return head == Head::kRegression ? "REGRESSION" : "BINARY_LOGIT";
}
std::string_view to_string(TcTransform transform) {
  return transform == TcTransform::kLinear ? "LINEAR" : "LOG_SHIFT_0P1";
}
std::string_view to_string(LossKind loss) {
  return loss == LossKind::kSmoothL1 ? "SMOOTH_L1" : "BCE_LOGIT";
}
std::optional<Head> head_from_string(std::string_view text) {
  if (text == "REGRESSION") return Head::kRegression;
  if (text == "BINARY_LOGIT") return Head::kBinaryLogit;
  return std::nullopt;
}
std::optional<TcTransform> tc_transform_from_string(std::string_view text) {
  if (text == "LINEAR") return TcTransform::kLinear;
  if (text == "LOG_SHIFT_0P1") return TcTransform::kLogShift0p1;
  return std::nullopt;
}
std::optional<LossKind> loss_from_string(std::string_view text) {
  if (text == "SMOOTH_L1") return LossKind::kSmoothL1;
  if (text == "BCE_LOGIT") return LossKind::kBceLogit;
  return std::nullopt;
}

std::string_view to_string(ComputePrecision precision) {
  return precision == ComputePrecision::kFloat32 ? "FLOAT32" : "FLOAT64";
}
std::optional<ComputePrecision> precision_from_string(std::string_view text) {
  if (text == "FLOAT32") return ComputePrecision::kFloat32;
  if (text == "FLOAT64") return ComputePrecision::kFloat64;
  return std::nullopt;
}

void ModelConfig::validate() const {
  if (conv_layers < 1) throw Error(ErrorCode::kInvalidConfig, "conv_layers must be >= 1");
  if (channels < 1) throw Error(ErrorCode::kInvalidConfig, "channels must be >= 1");
  if (dense_hidden < 0) throw Error(ErrorCode::kInvalidConfig, "dense_hidden must be >= 0");
}

void TrainConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorCode::kInvalidConfig, "learning_rate must be positive");
  }
  if (batch_size < 1) throw Error(ErrorCode::kInvalidConfig, "batch_size must be >= 1");
  if (epochs < 0) throw Error(ErrorCode::kInvalidConfig, "epochs must be >= 0");
  if (class_threshold_kelvin < 0.0) throw Error(ErrorCode::kInvalidConfig, "class threshold must be >= 0");
}

ModelParams::ModelParams(const ModelConfig& config) : config_(config) {
  config_.validate();
  int in = kChannels;
  for (int l = 0; l < config_.conv_layers; ++l) {
    blocks_.push_back(Matrix::Zero(config_.channels, in * kTaps));
    blocks_.push_back(Matrix::Zero(config_.channels, 1));
    in = config_.channels;
  }
  int width = config_.channels;
  if (config_.dense_hidden > 0) {
    blocks_.push_back(Matrix::Zero(config_.dense_hidden, width));
    blocks_.push_back(Matrix::Zero(config_.dense_hidden, 1));
    width = config_.dense_hidden;
  }
  blocks_.push_back(Matrix::Zero(1, width));
  blocks_.push_back(Matrix::Zero(1, 1));
}

std::size_t ModelParams::parameter_count() const {
  std::size_t n = 0;
  for (const Matrix& m : blocks_) n += static_cast<std::size_t>(m.size());
  return n;
}

bool ModelParams::all_finite() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Matrix& m) { return m.allFinite(); });
}

bool ModelParams::congruent(const ModelParams& other) const {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (blocks_[i].rows() != other.blocks_[i].rows() || blocks_[i].cols() != other.blocks_[i].cols()) {
      return false;
    }
  }
  return true;
}

bool operator==(const ModelParams& a, const ModelParams& b) {
  if (!(a.config_ == b.config_) || !a.congruent(b)) return false;
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) {
    if (a.blocks_[i] != b.blocks_[i]) return false;
  }
  return true;
}

ModelParams init_params(const ModelConfig& config) {
  ModelParams params(config);
  std::mt19937_64 rng(config.seed);
  auto& blocks = params.blocks();
  for (std::size_t i = 0; i < blocks.size(); i += 2) {
    Matrix& w = blocks[i];
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / static_cast<double>(w.cols())));
    for (Eigen::Index j = 0; j < w.size(); ++j) w.data()[j] = dist(rng);
  }
  return params;
}

Eigen::VectorXd forward(const ModelParams& params, std::span<const PTableTensor> batch) {
  check_shapes(params);
  ForwardCache<double> cache;
  run_forward(params.blocks(), params.config(), batch, cache);
  return cache.outputs.transpose();
}

LossResult smooth_l1_loss(std::span<const double> pred, std::span<const double> target) {
  require_same_length(pred.size(), target.size());
  const double n = static_cast<double>(pred.size());
  LossResult r;
  r.grad.resize(static_cast<Eigen::Index>(pred.size()));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    const double ad = std::abs(d);
    if (ad < 1.0) {
      r.loss += 0.5 * d * d;
      r.grad[static_cast<Eigen::Index>(i)] = d / n;
    } else {
      r.loss += ad - 0.5;
      r.grad[static_cast<Eigen::Index>(i)] = (d > 0 ? 1.0 : -1.0) / n;
    }
  }
  r.loss /= n;
  return r;
}

double sigmoid(double logit) {
  if (logit >= 0) return 1.0 / (1.0 + std::exp(-logit));
  const double e = std::exp(logit);
  return e / (1.0 + e);
}

LossResult bce_logit_loss(std::span<const double> logits, std::span<const double> labels) {
  require_same_length(logits.size(), labels.size());
  const double n = static_cast<double>(logits.size());
  LossResult r;
  r.grad.resize(static_cast<Eigen::Index>(logits.size()));
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double y = labels[i];
    if (y != 0.0 && y != 1.0) {
      throw Error(ErrorCode::kLabelOutOfRange, "label " + std::to_string(y) + " is not 0 or 1");
    }
    const double z = logits[i];
    r.loss += std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
    r.grad[static_cast<Eigen::Index>(i)] = (sigmoid(z) - y) / n;
  }
  r.loss /= n;
  return r;
}

LossResult compute_loss(LossKind kind, std::span<const double> outputs, std::span<const double> targets) {
  return kind == LossKind::kSmoothL1 ? smooth_l1_loss(outputs, targets) : bce_logit_loss(outputs, targets);
}

namespace {
LossResult compute_loss_impl(LossKind kind, std::span<const double> outputs, std::span<const double> targets) {
  return compute_loss(kind, outputs, targets);
}
}  // namespace

double tc_transform(double tc_kelvin, TcTransform mode) {
  if (tc_kelvin < 0.0) throw Error(ErrorCode::kNegativeTc, "Tc " + std::to_string(tc_kelvin) + " K");
  return mode == TcTransform::kLinear ? tc_kelvin : std::log(tc_kelvin + 0.1);
}

double inverse_tc_transform(double value, TcTransform mode) {
  const double tc = mode == TcTransform::kLinear ? value : std::exp(value) - 0.1;
  return std::max(tc, 0.0);
}

BackwardResult backward(const ModelParams& params, std::span<const PTableTensor> batch,
                        std::span<const double> targets, LossKind loss) {
  check_shapes(params);
  BackwardResult result{0.0, {}, ModelParams(params.config())};
  const LossAndOutputs lo = run_backward(params.blocks(), params.config(), batch, targets, loss,
                                         result.gradients.blocks());
  result.loss = lo.loss;
  result.outputs = Eigen::Map<const Eigen::VectorXd>(lo.outputs.data(), static_cast<Eigen::Index>(lo.outputs.size()));
  return result;
}

AdamState AdamState::for_params(const ModelParams& params) {
  AdamState s;
  for (const Matrix& m : params.blocks()) {
    s.first_moment.push_back(Matrix::Zero(m.rows(), m.cols()));
    s.second_moment.push_back(Matrix::Zero(m.rows(), m.cols()));
  }
  return s;
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state, double learning_rate) {
  auto& blocks = params.blocks();
  const auto& gblocks = grads.blocks();
  bool ok = params.congruent(grads) && state.first_moment.size() == blocks.size() &&
            state.second_moment.size() == blocks.size();
  for (std::size_t i = 0; ok && i < blocks.size(); ++i) {
    ok = state.first_moment[i].rows() == blocks[i].rows() && state.first_moment[i].cols() == blocks[i].cols() &&
         state.second_moment[i].rows() == blocks[i].rows() && state.second_moment[i].cols() == blocks[i].cols();
  }
  if (!ok) throw Error(ErrorCode::kShapeMismatch, "gradients or optimizer state do not match parameters");

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    auto m = state.first_moment[i].array();
    auto v = state.second_moment[i].array();
    const auto g = gblocks[i].array();
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v + (1.0 - state.beta2) * g.square();
    blocks[i].array() -= learning_rate * (m / c1) / ((v / c2).sqrt() + state.epsilon);
  }
}

TrainingSet make_training_set(const std::vector<Composition>& compositions,
                              const std::vector<double>& tc_kelvin) {
  require_same_length(compositions.size(), tc_kelvin.size());
  TrainingSet set;
  set.inputs.reserve(compositions.size());
  for (const Composition& c : compositions) set.inputs.push_back(encode_ptable(c));
  set.tc_kelvin = tc_kelvin;
  return set;
}

TrainResult train(const TrainingSet& data, const ModelConfig& model, const TrainConfig& config,
                  const EpochCallback& on_epoch) {
  model.validate();
  config.validate();
  if (data.inputs.empty()) throw Error(ErrorCode::kEmptyDataset, "no training samples");
  if (data.inputs.size() != data.tc_kelvin.size()) {
    throw Error(ErrorCode::kLengthMismatch, "inputs and targets differ in length");
  }
  const bool classify = model.head == Head::kBinaryLogit;
  if (classify != (config.loss == LossKind::kBceLogit)) {
    throw Error(ErrorCode::kInvalidConfig, "loss does not match the model head");
  }

  std::vector<double> targets(data.tc_kelvin.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double tc = data.tc_kelvin[i];
    if (tc < 0.0) throw Error(ErrorCode::kNegativeTc, "sample " + std::to_string(i));
    targets[i] = classify ? (tc > config.class_threshold_kelvin ? 1.0 : 0.0)
                          : tc_transform(tc, model.tc_transform);
  }

  TrainResult result{init_params(model), {}};
  AdamState adam = AdamState::for_params(result.params);
  std::mt19937_64 rng(config.shuffle_seed);
  std::vector<std::size_t> order(targets.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  std::vector<PTableTensor> batch;
  std::vector<double> batch_targets;
  ModelParams grads(model);
  Blocks<float> single(grads.blocks().size()), single_grads;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(order.size(), start + batch_size);
      batch.clear();
      batch_targets.clear();
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(data.inputs[order[i]]);
        batch_targets.push_back(targets[order[i]]);
      }
      double step_loss = 0.0;
      if (config.precision == ComputePrecision::kFloat64) {
        step_loss = run_backward(result.params.blocks(), model, batch, batch_targets, config.loss, grads.blocks()).loss;
      } else {
        for (std::size_t i = 0; i < single.size(); ++i) single[i] = result.params.blocks()[i].cast<float>();
        step_loss = run_backward(single, model, batch, batch_targets, config.loss, single_grads).loss;
        for (std::size_t i = 0; i < single.size(); ++i) grads.blocks()[i] = single_grads[i].cast<double>();
      }
      if (!std::isfinite(step_loss)) {
        throw Error(ErrorCode::kDivergenceDetected,
                    "non-finite loss at epoch " + std::to_string(epoch) + ", sample offset " + std::to_string(start));
      }
      adam_step(result.params, grads, adam, config.learning_rate);
      if (!result.params.all_finite()) {
        throw Error(ErrorCode::kDivergenceDetected, "non-finite parameters at epoch " + std::to_string(epoch));
      }
      total += step_loss * static_cast<double>(end - start);
    }
    const double mean = total / static_cast<double>(order.size());
    result.loss_trace.push_back(mean);
    if (on_epoch && !on_epoch(epoch, mean, result.params)) break;
  }
  return result;
}

std::vector<double> predict(const ModelParams& params, std::span<const PTableTensor> inputs) {
  constexpr std::size_t kChunk = 256;
  std::vector<double> out;
  out.reserve(inputs.size());
  const ModelConfig& cfg = params.config();
  for (std::size_t start = 0; start < inputs.size(); start += kChunk) {
    const auto chunk = inputs.subspan(start, std::min(kChunk, inputs.size() - start));
    const Eigen::VectorXd raw = forward(params, chunk);
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
      out.push_back(cfg.head == Head::kBinaryLogit ? sigmoid(raw[i])
                                                   : inverse_tc_transform(raw[i], cfg.tc_transform));
    }
  }
  return out;
}

std::vector<double> predict(const ModelParams& params, const std::vector<Composition>& compositions) {
  std::vector<PTableTensor> inputs;
  inputs.reserve(compositions.size());
  for (const Composition& c : compositions) inputs.push_back(encode_ptable(c));
  return predict(params, inputs);
}

}  // namespace scsearch
