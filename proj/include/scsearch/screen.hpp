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


// Experiment orchestration: rotating-fold candidate screening, temporally
// separated evaluation and family-discovery runs.
//
// Experiment specs are JSON objects:
//
//   {
//     "name": "fesc-2008",
//     "kind": "family_discovery",         // candidate_screen | temporal_eval
//     "training_filter": {
//       "year_before": 2008,              // keep year < 2008
//       "year_min": 1980,                 // keep year >= 1980
//       "families": ["CONVENTIONAL"],     // inclusion list
//       "exclude_families": ["FESC"],
//       "remove": ["LaFePO", "LaFePFO"],
//       "family_scope": "superconductors" // or "all"
//     },
//     "test_set": "family:FESC",          // cod | eval_list | family:<NAME>
//     "model": {"conv_layers": 9, "channels": 32, "dense_hidden": 64,
//               "head": "REGRESSION", "tc_transform": "LINEAR", "seed": 0},
//     "train": {"learning_rate": 1e-4, "batch_size": 32, "epochs": 200,
//               "shuffle_seed": 0},
//     "repeats": 10,
//     "thresholds": [0, 4, 10],
//     "year_cutoff": 2010,                // temporal_eval only
//     "fold_size": 1000,                  // candidate_screen only
//     "split_seed": 0,
//     "histogram_bin_width": 1,
//     "validity_exclude_elements": ["Fe"],
//     "jobs": 1
//   }
//
// Every key except "kind" is optional. Year bounds reject records without a
// year. Family rules apply only to superconductor records (SUPERCON and
// EVAL_LIST) unless family_scope is "all".

#ifndef SCSEARCH_SCREEN_HPP_
#define SCSEARCH_SCREEN_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "scsearch/dataset.hpp"
#include "scsearch/metrics.hpp"
#include "scsearch/nn.hpp"

namespace scsearch {

class TrainingFilter {
 public:
  std::optional<int> year_min;
  std::optional<int> year_before;
  std::optional<std::set<Family>> include_families;
  std::set<Family> exclude_families;
  std::vector<std::string> removed_formulas;
  bool family_scope_all = false;

  /// Named removals are resolved here. Throws Error(kUnknownFormula).
  void set_removed(std::vector<std::string> formulas);

  /// False for unparsed records.
  bool operator()(const MaterialRecord& record) const;

  std::vector<MaterialRecord> apply(const std::vector<MaterialRecord>& records) const;

  nlohmann::json to_json() const;

 private:
  CompositionIndex removed_;
};

/// Throws Error(kUnknownField), Error(kUnknownFamily) or Error(kUnknownFormula).
TrainingFilter build_training_filter(const nlohmann::json& fragment);

enum class ExperimentKind { kCandidateScreen, kTemporalEval, kFamilyDiscovery };

std::string_view to_string(ExperimentKind kind);

struct ExperimentSpec {
  std::string name = "experiment";
  ExperimentKind kind = ExperimentKind::kCandidateScreen;
  TrainingFilter training_filter;
  std::string test_set = "cod";
  ModelConfig model;
  TrainConfig train;
  int repeats = 1;
  std::vector<double> thresholds{0.0, 4.0, 10.0};
  std::optional<int> year_cutoff;
  std::size_t fold_size = 1000;
  std::uint64_t split_seed = 0;
  double histogram_bin_width = 1.0;
  std::vector<std::string> validity_exclude_elements;
  int jobs = 1;

  /// Target family named by a "family:<NAME>" test set.
  std::optional<Family> target_family() const;

  /// Throws Error(kInvalidConfig).
  void validate() const;

  nlohmann::json to_json() const;
};

/// The "model" and "train" objects of an experiment spec. The loss defaults
/// to the one matching `head`. Throw Error(kUnknownField) or
/// Error(kInvalidConfig).
ModelConfig parse_model_config(const nlohmann::json& fragment);
TrainConfig parse_train_config(const nlohmann::json& fragment, Head head);

/// Throws Error(kUnknownField), Error(kUnknownFamily), Error(kInvalidConfig).
ExperimentSpec parse_experiment_spec(const nlohmann::json& doc);
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

/// Repeat k trains with seeds base + k.
ModelConfig model_for_repeat(const ExperimentSpec& spec, int k);
TrainConfig train_for_repeat(const ExperimentSpec& spec, int k);

/// Superconductor records (source other than COD or SYNTHETIC_NEGATIVE).
bool is_superconductor_record(const MaterialRecord& record);

struct CandidateRow {
  std::string formula;
  std::string canonical;
  double predicted_tc_kelvin = 0.0;
  std::size_t fold_id = 0;
  Family family = Family::kConventional;
};

struct CandidateScreenResult {
  std::vector<CandidateRow> rows;  // predicted Tc descending, then canonical
  std::vector<std::pair<double, std::size_t>> threshold_counts;
  std::size_t excluded_family_rows = 0;
  std::size_t folds = 0;
};

/// Trains one model per fold of `cod_data` on the filtered superconductor
/// data plus the garbage-in negatives outside the fold. Throws
/// Error(kLeakageDetected) if a training composition equals a fold member.
CandidateScreenResult run_candidate_screen(const std::vector<MaterialRecord>& sc_data,
                                           const std::vector<MaterialRecord>& cod_data,
                                           const ExperimentSpec& spec);

struct TemporalRun {
  std::uint64_t seed = 0;
  std::vector<EvalReport> reports;  // one per threshold
  std::vector<double> predictions;  // aligned with TemporalEvalResult::eval
};

struct TemporalEvalResult {
  std::vector<MaterialRecord> eval;  // evaluated records
  std::size_t eval_removed_overlap = 0;
  std::size_t training_size = 0;
  std::vector<TemporalRun> runs;
};

/// Trains on records dated before spec.year_cutoff plus garbage-in negatives
/// and scores `eval_list`. Eval entries already present in the training data
/// are dropped and counted. Throws Error(kEmptyDataset) when nothing is left
/// to evaluate, Error(kInvalidConfig) without a cutoff.
TemporalEvalResult run_temporal_eval(const std::vector<MaterialRecord>& sc_data,
                                     const std::vector<MaterialRecord>& cod_data,
                                     const std::vector<MaterialRecord>& eval_list,
                                     const ExperimentSpec& spec);

struct DiscoveryRun {
  std::uint64_t seed = 0;
  std::size_t predicted_positive = 0;
  std::optional<EvalReport> validity;  // against the evaluation list at 0 K
  bool flagged = false;                // precision at or below baseline
};

struct FamilyDiscoveryResult {
  std::vector<MaterialRecord> test;
  std::size_t test_removed_overlap = 0;
  std::size_t training_size = 0;
  std::vector<DiscoveryRun> runs;
  Histogram histogram;
};

/// Trains spec.repeats models on the filtered data and counts target-family
/// records predicted above 0 K (probability above 0.5 for a classifier head).
/// Throws Error(kEmptyDataset) when the corpus holds no target-family record.
FamilyDiscoveryResult run_family_discovery(const std::vector<MaterialRecord>& sc_data,
                                           const std::vector<MaterialRecord>& cod_data,
                                           const ExperimentSpec& spec,
                                           const std::vector<MaterialRecord>& eval_list = {});

/// formula,canonical,predicted_tc_K,fold,family
void write_candidate_csv(std::ostream& out, const std::vector<CandidateRow>& rows);
/// threshold_K,count
void write_threshold_counts_csv(std::ostream& out,
                                const std::vector<std::pair<double, std::size_t>>& counts);
/// run,seed,predicted_positive,precision,baseline_precision,flagged
void write_discovery_runs_csv(std::ostream& out, const std::vector<DiscoveryRun>& runs);
/// formula,tc_K,predicted_tc_K
void write_predictions_csv(std::ostream& out, const std::vector<MaterialRecord>& records,
                           const std::vector<double>& predictions);

}  // namespace scsearch

#endif  // SCSEARCH_SCREEN_HPP_
