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


// Aggregated element-feature descriptors and a Gini random-forest classifier,
// the comparison baseline for the convolutional model.

#ifndef SCSEARCH_BASELINE_HPP_
#define SCSEARCH_BASELINE_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scsearch/element.hpp"
#include "scsearch/formula.hpp"

namespace scsearch {

inline constexpr int kBasicFeatureCount = 32;
inline constexpr int kAggregatorCount = 8;
inline constexpr int kAggregatedFeatureCount = kBasicFeatureCount * kAggregatorCount;

/// AtomicWeight ... FirstIonizationEnergies, in the published order.
const std::array<std::string_view, kBasicFeatureCount>& basic_feature_names();

/// mean, variance, max, min, range, mode, median, mad.
const std::array<std::string_view, kAggregatorCount>& aggregator_names();

/// Aggregated index i = aggregator * 32 + basic feature.
std::string aggregated_feature_name(int index);

using ElementFeatures = std::array<double, kBasicFeatureCount>;
using AggregatedFeatures = std::array<double, kAggregatedFeatureCount>;

class ElementFeatureTable {
 public:
  void set(ElementSymbol e, const ElementFeatures& values) { rows_[e] = values; }
  const ElementFeatures* find(ElementSymbol e) const;
  std::size_t size() const { return rows_.size(); }

  /// CSV with a `symbol` column plus one column per basic feature name.
  /// Throws Error(kSchemaMismatch), Error(kUnknownElement) or Error(kIoFailure).
  static ElementFeatureTable from_csv(std::istream& in);
  static ElementFeatureTable from_csv(const std::filesystem::path& path);

 private:
  std::map<ElementSymbol, ElementFeatures> rows_;
};

/// Fraction-weighted aggregation of each basic feature. Mode is the value of
/// the element with the largest fraction (ties: lower atomic number); median
/// is the smallest value whose cumulative fraction reaches 0.5.
/// Throws Error(kMissingElementFeatures).
AggregatedFeatures aggregate_features(const Composition& c, const ElementFeatureTable& table);

struct ForestConfig {
  int n_trees = 100;
  int min_leaf = 1;
  int max_features = 0;  // 0: floor(sqrt(feature count))
  bool bootstrap = true;
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;  // go left when value <= threshold
  int left = -1;
  int right = -1;
  int label = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  int predict(std::span<const double> features) const;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
  std::size_t feature_count = 0;
  std::uint64_t seed = 0;
};

using FeatureMatrix = std::vector<std::vector<double>>;

/// Bootstrap-resampled Gini trees grown to purity. Throws
/// Error(kSingleClassInput), Error(kLabelOutOfRange) or Error(kLengthMismatch).
ForestModel train_forest(const FeatureMatrix& features, std::span<const int> labels,
                         const ForestConfig& config = {});

struct ForestPrediction {
  int label = 0;
  double positive_fraction = 0.0;
};

/// Majority vote; an even split goes to the negative class.
ForestPrediction predict_forest(const ForestModel& model, std::span<const double> features);

}  // namespace scsearch

#endif  // SCSEARCH_BASELINE_HPP_
