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


#include "scsearch/baseline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <stack>

#include "scsearch/csv.hpp"
#include "scsearch/error.hpp"
#include "scsearch/parallel.hpp"

namespace scsearch {
namespace {

constexpr std::array<std::string_view, kBasicFeatureCount> kBasicNames = {
    "AtomicWeight", "Column", "DipolePolarizability", "FirstIonizationEnergy", "GSbandgap",
    "GSenergy-pa", "GSestBCClatcnt", "GSestFCClatcnt", "GSmagmom", "GSvolume-pa",
    "ICSDVolume", "IsAlkali", "IsDBlock", "IsFBlock", "IsMetal", "IsMetalloid", "IsNonmetal",
    "MendeleevNumber", "NdUnfilled", "NdValence", "NfUnfilled", "NfValence", "NpUnfilled",
    "NpValence", "NsUnfilled", "NsValence", "Number", "NUnfilled", "NValance", "Polarizability",
    "Row", "FirstIonizationEnergies"};

constexpr std::array<std::string_view, kAggregatorCount> kAggregatorNames = {
    "mean", "variance", "max", "min", "range", "mode", "median", "mad"};

double gini(std::size_t positives, std::size_t n) {
  if (n == 0) return 0.0;
  const double p = static_cast<double>(positives) / static_cast<double>(n);
  return 2.0 * p * (1.0 - p);
}

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

// Best threshold on one feature over `ids`, or nullopt if no split leaves
// min_leaf samples on both sides.
std::optional<Split> best_split_on(const FeatureMatrix& x, std::span<const int> y,
                                   std::vector<std::size_t>& ids, int feature, int min_leaf) {
  const auto f = static_cast<std::size_t>(feature);
  std::sort(ids.begin(), ids.end(), [&](std::size_t a, std::size_t b) {
    return x[a][f] < x[b][f] || (x[a][f] == x[b][f] && a < b);
  });
  const std::size_t n = ids.size();
  std::size_t total_pos = 0;
  for (std::size_t id : ids) total_pos += static_cast<std::size_t>(y[id]);

  std::optional<Split> best;
  std::size_t left_pos = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    left_pos += static_cast<std::size_t>(y[ids[i]]);
    const double lo = x[ids[i]][f];
    const double hi = x[ids[i + 1]][f];
    if (lo == hi) continue;
    const std::size_t nl = i + 1;
    const std::size_t nr = n - nl;
    if (nl < static_cast<std::size_t>(min_leaf) || nr < static_cast<std::size_t>(min_leaf)) continue;
    const double impurity = (static_cast<double>(nl) * gini(left_pos, nl) +
                             static_cast<double>(nr) * gini(total_pos - left_pos, nr)) /
                            static_cast<double>(n);
    if (!best || impurity < best->impurity) {
      double mid = lo + (hi - lo) / 2.0;
      if (!(mid < hi)) mid = lo;
      best = Split{feature, mid, impurity};
    }
  }
  return best;
}

DecisionTree grow_tree(const FeatureMatrix& x, std::span<const int> y, std::vector<std::size_t> sample,
                       const ForestConfig& cfg, std::size_t max_features, std::mt19937_64& rng) {
  const std::size_t d = x.front().size();
  DecisionTree tree;
  tree.nodes.emplace_back();

  struct Pending {
    int node;
    std::vector<std::size_t> ids;
  };
  std::stack<Pending> work;
  work.push({0, std::move(sample)});

  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  while (!work.empty()) {
    Pending item = std::move(work.top());
    work.pop();
    std::size_t pos = 0;
    for (std::size_t id : item.ids) pos += static_cast<std::size_t>(y[id]);
    const std::size_t n = item.ids.size();
    tree.nodes[static_cast<std::size_t>(item.node)].label = 2 * pos > n ? 1 : 0;
    if (pos == 0 || pos == n || n < 2 * static_cast<std::size_t>(cfg.min_leaf)) continue;

    std::shuffle(order.begin(), order.end(), rng);
    std::optional<Split> best;
    for (std::size_t k = 0; k < d; ++k) {
      // Keep looking past max_features only while nothing splits.
      if (k >= max_features && best) break;
      auto s = best_split_on(x, y, item.ids, order[k], cfg.min_leaf);
      if (s && (!best || s->impurity < best->impurity)) best = s;
    }
    if (!best) continue;

    Pending left{static_cast<int>(tree.nodes.size()), {}};
    Pending right{static_cast<int>(tree.nodes.size()) + 1, {}};
    const auto f = static_cast<std::size_t>(best->feature);
    for (std::size_t id : item.ids) (x[id][f] <= best->threshold ? left.ids : right.ids).push_back(id);
    TreeNode& node = tree.nodes[static_cast<std::size_t>(item.node)];
    node.feature = best->feature;
    node.threshold = best->threshold;
    node.left = left.node;
    node.right = right.node;
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    work.push(std::move(right));
    work.push(std::move(left));
  }
  return tree;
}

}  // namespace

const std::array<std::string_view, kBasicFeatureCount>& basic_feature_names() { return kBasicNames; }

const std::array<std::string_view, kAggregatorCount>& aggregator_names() { return kAggregatorNames; }

std::string aggregated_feature_name(int index) {
  return std::string(kAggregatorNames.at(static_cast<std::size_t>(index / kBasicFeatureCount))) + "_" +
         std::string(kBasicNames.at(static_cast<std::size_t>(index % kBasicFeatureCount)));
}

const ElementFeatures* ElementFeatureTable::find(ElementSymbol e) const {
  auto it = rows_.find(e);
  return it == rows_.end() ? nullptr : &it->second;
}

ElementFeatureTable ElementFeatureTable::from_csv(std::istream& in) {
  const CsvTable csv = read_csv(in);
  const auto symbol_col = csv.column("symbol");
  if (!symbol_col) throw Error(ErrorCode::kSchemaMismatch, "missing column 'symbol'");
  std::array<std::size_t, kBasicFeatureCount> cols{};
  for (int i = 0; i < kBasicFeatureCount; ++i) {
    auto c = csv.column(kBasicNames[static_cast<std::size_t>(i)]);
    if (!c) throw Error(ErrorCode::kSchemaMismatch, "missing feature column '" + std::string(kBasicNames[static_cast<std::size_t>(i)]) + "'");
    cols[static_cast<std::size_t>(i)] = *c;
  }
  ElementFeatureTable table;
  for (const auto& row : csv.rows) {
    const ElementSymbol e = ElementSymbol::of(row[*symbol_col]);
    ElementFeatures values{};
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::string& cell = row[cols[i]];
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), values[i]);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(values[i])) {
        throw Error(ErrorCode::kSchemaMismatch, std::string(e.symbol()) + ": bad value '" + cell + "' for " +
                                                    std::string(kBasicNames[i]));
      }
    }
    table.set(e, values);
  }
  return table;
}

ElementFeatureTable ElementFeatureTable::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return from_csv(in);
}

AggregatedFeatures aggregate_features(const Composition& c, const ElementFeatureTable& table) {
  struct Entry {
    double weight;
    const ElementFeatures* values;
  };
  std::vector<Entry> entries;
  entries.reserve(c.size());
  for (const auto& [e, w] : c) {
    const ElementFeatures* values = table.find(e);
    if (!values) {
      throw Error(ErrorCode::kMissingElementFeatures, "no features for " + std::string(e.symbol()));
    }
    entries.push_back({w, values});
  }

  // Entries are in atomic-number order, so the first strict maximum wins ties.
  std::size_t dominant = 0;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i].weight > entries[dominant].weight) dominant = i;
  }

  AggregatedFeatures out{};
  std::vector<std::size_t> by_value(entries.size());
  for (int f = 0; f < kBasicFeatureCount; ++f) {
    const auto fi = static_cast<std::size_t>(f);
    auto value = [&](std::size_t i) { return (*entries[i].values)[fi]; };
    double mean = 0.0, lo = value(0), hi = value(0);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      mean += entries[i].weight * value(i);
      lo = std::min(lo, value(i));
      hi = std::max(hi, value(i));
    }
    double variance = 0.0, mad = 0.0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const double dev = value(i) - mean;
      variance += entries[i].weight * dev * dev;
      mad += entries[i].weight * std::abs(dev);
    }
    std::iota(by_value.begin(), by_value.end(), std::size_t{0});
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    double median = value(by_value.back());
    double cumulative = 0.0;
    for (std::size_t i : by_value) {
      cumulative += entries[i].weight;
      if (cumulative >= 0.5 - 1e-12) {
        median = value(i);
        break;
      }
    }
    const std::array<double, kAggregatorCount> aggregated = {
        mean, variance, hi, lo, hi - lo, value(dominant), median, mad};
    for (int a = 0; a < kAggregatorCount; ++a) {
      out[static_cast<std::size_t>(a * kBasicFeatureCount + f)] = aggregated[static_cast<std::size_t>(a)];
    }
  }
  return out;
}

int DecisionTree::predict(std::span<const double> features) const {
  std::size_t i = 0;
  while (nodes[i].feature >= 0) {
    const TreeNode& n = nodes[i];
    i = static_cast<std::size_t>(features[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return nodes[i].label;
}

ForestModel train_forest(const FeatureMatrix& features, std::span<const int> labels, const ForestConfig& config) {
  if (features.size() != labels.size()) {
    throw Error(ErrorCode::kLengthMismatch, "features and labels differ in length");
  }
  if (config.n_trees < 1 || config.min_leaf < 1 || config.max_features < 0) {
    throw Error(ErrorCode::kInvalidConfig, "n_trees and min_leaf must be >= 1");
  }
  std::size_t positives = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw Error(ErrorCode::kLabelOutOfRange, "labels must be 0 or 1");
    positives += static_cast<std::size_t>(y);
  }
  if (features.size() < 2 || positives == 0 || positives == labels.size()) {
    throw Error(ErrorCode::kSingleClassInput, "need at least two samples covering both classes");
  }
  const std::size_t d = features.front().size();
  if (d == 0) throw Error(ErrorCode::kShapeMismatch, "no features");
  for (const auto& row : features) {
    if (row.size() != d) throw Error(ErrorCode::kShapeMismatch, "ragged feature matrix");
  }
  const std::size_t max_features =
      config.max_features > 0 ? std::min<std::size_t>(d, static_cast<std::size_t>(config.max_features))
                              : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(d))));

  ForestModel model;
  model.feature_count = d;
  model.seed = config.seed;
  model.trees.resize(static_cast<std::size_t>(config.n_trees));
  const std::size_t n = features.size();
  parallel_for(model.trees.size(), config.jobs, [&](std::size_t t) {
    std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> sample(n);
    if (config.bootstrap) {
      std::uniform_int_distribution<std::size_t> pick(0, n - 1);
      for (auto& s : sample) s = pick(rng);
    } else {
      std::iota(sample.begin(), sample.end(), std::size_t{0});
    }
    model.trees[t] = grow_tree(features, labels, std::move(sample), config, max_features, rng);
  });
  return model;
}

ForestPrediction predict_forest(const ForestModel& model, std::span<const double> features) {
  if (features.size() != model.feature_count) {
    throw Error(ErrorCode::kShapeMismatch, "expected " + std::to_string(model.feature_count) + " features, got " +
                                               std::to_string(features.size()));
  }
  if (model.trees.empty()) throw Error(ErrorCode::kInvalidConfig, "forest has no trees");
  std::size_t votes = 0;
  for (const DecisionTree& tree : model.trees) votes += static_cast<std::size_t>(tree.predict(features));
  ForestPrediction p;
  p.positive_fraction = static_cast<double>(votes) / static_cast<double>(model.trees.size());
  p.label = 2 * votes > model.trees.size() ? 1 : 0;
  return p;
}

}  // namespace scsearch
