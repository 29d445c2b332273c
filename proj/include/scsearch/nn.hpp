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


// A small convolutional network over PTableTensor inputs.
//
// Architecture: `conv_layers` 3x3 same-padding convolutions with ReLU, global
// average pooling over the 7x32 grid, an optional ReLU dense layer, and a
// scalar head (regressed Tc or a logit).
//
// Parameter blocks, in order:
//   conv l weight  (channels_out x channels_in*9), column = c_in*9 + ky*3 + kx
//   conv l bias    (channels_out x 1)
//   dense weight   (dense_hidden x channels), dense bias (dense_hidden x 1)
//   output weight  (1 x width), output bias (1 x 1)
// The dense pair is absent when dense_hidden == 0.

#ifndef SCSEARCH_NN_HPP_
#define SCSEARCH_NN_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "scsearch/formula.hpp"
#include "scsearch/ptable.hpp"

namespace scsearch {

enum class Head { kRegression, kBinaryLogit };
enum class TcTransform { kLinear, kLogShift0p1 };
enum class LossKind { kSmoothL1, kBceLogit };
// Arithmetic used for training passes. Parameters and the optimizer state
// stay in double either way.
enum class ComputePrecision { kFloat32, kFloat64 };

std::string_view to_string(Head head);
std::string_view to_string(TcTransform transform);
std::string_view to_string(LossKind loss);
std::optional<Head> head_from_string(std::string_view text);
std::optional<TcTransform> tc_transform_from_string(std::string_view text);
std::optional<LossKind> loss_from_string(std::string_view text);
std::string_view to_string(ComputePrecision precision);
std::optional<ComputePrecision> precision_from_string(std::string_view text);

inline constexpr int kKernelSize = 3;

struct ModelConfig {
  int conv_layers = 9;
  int channels = 32;
  int dense_hidden = 64;
  Head head = Head::kRegression;
  TcTransform tc_transform = TcTransform::kLinear;
  std::uint64_t seed = 0;

  /// Throws Error(kInvalidConfig).
  void validate() const;

  friend bool operator==(const ModelConfig&, const ModelConfig&) = default;
};

class ModelParams {
 public:
  /// Zero-filled blocks shaped for `config`.
  explicit ModelParams(const ModelConfig& config);

  const ModelConfig& config() const noexcept { return config_; }

  std::vector<Eigen::MatrixXd>& blocks() noexcept { return blocks_; }
  const std::vector<Eigen::MatrixXd>& blocks() const noexcept { return blocks_; }

  Eigen::MatrixXd& conv_weight(int layer) { return blocks_[2 * layer]; }
  Eigen::MatrixXd& conv_bias(int layer) { return blocks_[2 * layer + 1]; }
  const Eigen::MatrixXd& conv_weight(int layer) const { return blocks_[2 * layer]; }
  const Eigen::MatrixXd& conv_bias(int layer) const { return blocks_[2 * layer + 1]; }
  bool has_dense() const noexcept { return config_.dense_hidden > 0; }
  Eigen::MatrixXd& dense_weight() { return blocks_[2 * config_.conv_layers]; }
  Eigen::MatrixXd& dense_bias() { return blocks_[2 * config_.conv_layers + 1]; }
  const Eigen::MatrixXd& dense_weight() const { return blocks_[2 * config_.conv_layers]; }
  const Eigen::MatrixXd& dense_bias() const { return blocks_[2 * config_.conv_layers + 1]; }
  Eigen::MatrixXd& output_weight() { return blocks_[blocks_.size() - 2]; }
  Eigen::MatrixXd& output_bias() { return blocks_.back(); }
  const Eigen::MatrixXd& output_weight() const { return blocks_[blocks_.size() - 2]; }
  const Eigen::MatrixXd& output_bias() const { return blocks_.back(); }

  std::size_t parameter_count() const;
  bool all_finite() const;

  /// Same config and block shapes.
  bool congruent(const ModelParams& other) const;

  friend bool operator==(const ModelParams& a, const ModelParams& b);

 private:
  ModelConfig config_;
  std::vector<Eigen::MatrixXd> blocks_;
};

/// He-normal weights (variance 2 / fan-in) drawn from config.seed; zero biases.
ModelParams init_params(const ModelConfig& config);

/// Raw outputs, one per input: regression value in transformed units, or a
/// logit. Throws Error(kEmptyDataset) on an empty batch.
Eigen::VectorXd forward(const ModelParams& params, std::span<const PTableTensor> batch);

struct LossResult {
  double loss = 0.0;
  Eigen::VectorXd grad;  // d(mean loss) / d(prediction)
};

/// Mean of 0.5 d^2 (|d| < 1) or |d| - 0.5, with d = pred - target.
LossResult smooth_l1_loss(std::span<const double> pred, std::span<const double> target);

/// Mean of max(z, 0) - z y + log(1 + exp(-|z|)); labels must be 0 or 1.
LossResult bce_logit_loss(std::span<const double> logits, std::span<const double> labels);

LossResult compute_loss(LossKind kind, std::span<const double> outputs, std::span<const double> targets);

/// Throws Error(kNegativeTc) for tc_kelvin < 0.
double tc_transform(double tc_kelvin, TcTransform mode);
/// Inverse of tc_transform, clamped at 0 K.
double inverse_tc_transform(double value, TcTransform mode);

struct BackwardResult {
  double loss = 0.0;
  Eigen::VectorXd outputs;
  ModelParams gradients;
};

/// Exact gradients of the mean loss over `batch`. `targets` are in model
/// space (transformed Tc, or 0/1 labels).
BackwardResult backward(const ModelParams& params, std::span<const PTableTensor> batch,
                        std::span<const double> targets, LossKind loss);

struct AdamState {
  std::vector<Eigen::MatrixXd> first_moment;
  std::vector<Eigen::MatrixXd> second_moment;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  static AdamState for_params(const ModelParams& params);
};

/// One bias-corrected Adam update. Throws Error(kShapeMismatch).
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state,
               double learning_rate);

struct TrainConfig {
  double learning_rate = 1e-4;
  int batch_size = 32;
  int epochs = 200;
  LossKind loss = LossKind::kSmoothL1;
  std::uint64_t shuffle_seed = 0;
  // Classification labels are tc > class_threshold_kelvin.
  double class_threshold_kelvin = 0.0;
  ComputePrecision precision = ComputePrecision::kFloat32;

  void validate() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Epoch settings used in the published runs, for reference.
namespace presets {
inline constexpr int kPreliminaryEpochs = 6000;
inline constexpr int kGarbageInEpochs = 1000;
inline constexpr int kEvaluationEpochs = 200;
inline constexpr int kCandidateListEpochs = 500;
inline constexpr int kBatchSize = 32;
inline constexpr double kLearningRate = 1e-4;
inline constexpr double kPreliminaryLearningRate = 2e-6;
}  // namespace presets

struct TrainingSet {
  std::vector<PTableTensor> inputs;
  std::vector<double> tc_kelvin;
};

TrainingSet make_training_set(const std::vector<Composition>& compositions,
                              const std::vector<double>& tc_kelvin);

/// Called after every epoch with the epoch index and mean training loss;
/// returning false stops training early.
using EpochCallback = std::function<bool(int epoch, double loss, const ModelParams& params)>;

struct TrainResult {
  ModelParams params;
  std::vector<double> loss_trace;
};

/// Throws Error(kEmptyDataset), Error(kLengthMismatch), Error(kInvalidConfig)
/// or Error(kDivergenceDetected).
TrainResult train(const TrainingSet& data, const ModelConfig& model, const TrainConfig& config,
                  const EpochCallback& on_epoch = {});

/// Tc in kelvin (regression) or positive-class probability (logit head).
std::vector<double> predict(const ModelParams& params, std::span<const PTableTensor> inputs);
std::vector<double> predict(const ModelParams& params, const std::vector<Composition>& compositions);

double sigmoid(double logit);

struct Checkpoint {
  ModelParams params;
  std::optional<TrainConfig> train;
};

inline constexpr int kCheckpointVersion = 1;

/// Text layout: a version line, `key value` lines for the configs, then one
/// `block <index> <rows> <cols>` line per parameter block followed by its
/// values row-major, comma-separated, printed with 17 significant digits.
void save_checkpoint(std::ostream& out, const ModelParams& params,
                     const std::optional<TrainConfig>& train = std::nullopt);
/// Throws Error(kBadCheckpoint).
Checkpoint load_checkpoint(std::istream& in);

}  // namespace scsearch

#endif  // SCSEARCH_NN_HPP_
