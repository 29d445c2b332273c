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


#include "scsearch/screen.hpp"

#include <algorithm>
#include <memory>
#include <ostream>

#include "scsearch/csv.hpp"
#include "scsearch/error.hpp"
#include "scsearch/parallel.hpp"

namespace scsearch {
namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  if (!obj.is_object()) throw Error(ErrorCode::kInvalidConfig, std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw Error(ErrorCode::kUnknownField, std::string(where) + ": " + key);
    }
  }
}

Family family_or_throw(const std::string& name) {
  auto f = family_from_string(name);
  if (!f) throw Error(ErrorCode::kUnknownFamily, name);
  return *f;
}

json families_json(const std::set<Family>& families) {
  json out = json::array();
  for (Family f : families) out.push_back(std::string(to_string(f)));
  return out;
}

TrainingSet to_training_set(const std::vector<MaterialRecord>& records) {
  std::vector<Composition> comps;
  std::vector<double> tc;
  comps.reserve(records.size());
  tc.reserve(records.size());
  for (const auto& r : records) {
    comps.push_back(*r.composition);
    tc.push_back(*r.tc_kelvin);
  }
  return make_training_set(comps, tc);
}

std::vector<Composition> compositions_of(const std::vector<MaterialRecord>& records) {
  std::vector<Composition> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(*r.composition);
  return out;
}

std::vector<double> tc_of(const std::vector<MaterialRecord>& records) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(*r.tc_kelvin);
  return out;
}

// Records usable for training or scoring: parsed and with a Tc.
std::vector<MaterialRecord> usable(const std::vector<MaterialRecord>& records) {
  std::vector<MaterialRecord> out;
  for (const auto& r : records) {
    if (r.composition && r.tc_kelvin) out.push_back(r);
  }
  return out;
}

void assert_disjoint(const std::vector<MaterialRecord>& training, const std::vector<MaterialRecord>& test,
                     std::string_view context) {
  const CompositionIndex index(test);
  for (const auto& r : training) {
    if (r.composition && index.contains(*r.composition)) {
      throw Error(ErrorCode::kLeakageDetected,
                  std::string(context) + ": training record " + r.raw.text() + " is in the test set");
    }
  }
}

std::vector<MaterialRecord> concat(std::vector<MaterialRecord> a, const std::vector<MaterialRecord>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<double> run_model(const std::vector<MaterialRecord>& training, const std::vector<MaterialRecord>& test,
                              const ModelConfig& model, const TrainConfig& train_config) {
  const TrainResult trained = train(to_training_set(training), model, train_config);
  return predict(trained.params, compositions_of(test));
}

// Regression outputs are kelvin, classifier outputs probabilities.
bool called_positive(Head head, double prediction) {
  return head == Head::kRegression ? prediction > 0.0 : prediction > 0.5;
}

}  // namespace

void TrainingFilter::set_removed(std::vector<std::string> formulas) {
  CompositionIndex index;
  for (const auto& f : formulas) {
    const ParseResult parsed = parse_formula(RawFormula(f));
    if (const auto* err = std::get_if<ParseError>(&parsed)) {
      throw Error(ErrorCode::kUnknownFormula, f + ": " + err->message);
    }
    index.insert(normalize(std::get<Counts>(parsed)));
  }
  removed_formulas = std::move(formulas);
  removed_ = std::move(index);
}

bool TrainingFilter::operator()(const MaterialRecord& record) const {
  if (!record.composition) return false;
  if (year_min && (!record.year || *record.year < *year_min)) return false;
  if (year_before && (!record.year || *record.year >= *year_before)) return false;
  if (family_scope_all || is_superconductor_record(record)) {
    const Family f = classify_family(*record.composition);
    if (include_families && include_families->count(f) == 0) return false;
    if (exclude_families.count(f) != 0) return false;
  }
  return !removed_.contains(*record.composition);
}

std::vector<MaterialRecord> TrainingFilter::apply(const std::vector<MaterialRecord>& records) const {
  std::vector<MaterialRecord> out;
  for (const auto& r : records) {
    if ((*this)(r)) out.push_back(r);
  }
  return out;
}

json TrainingFilter::to_json() const {
  json out = json::object();
  if (year_min) out["year_min"] = *year_min;
  if (year_before) out["year_before"] = *year_before;
  if (include_families) out["families"] = families_json(*include_families);
  if (!exclude_families.empty()) out["exclude_families"] = families_json(exclude_families);
  if (!removed_formulas.empty()) out["remove"] = removed_formulas;
  out["family_scope"] = family_scope_all ? "all" : "superconductors";
  return out;
}

TrainingFilter build_training_filter(const json& fragment) {
  TrainingFilter filter;
  if (fragment.is_null()) return filter;
  check_keys(fragment, {"year_min", "year_before", "families", "exclude_families", "remove", "family_scope"},
             "training_filter");
  try {
    if (fragment.contains("year_min")) filter.year_min = fragment.at("year_min").get<int>();
    if (fragment.contains("year_before")) filter.year_before = fragment.at("year_before").get<int>();
    if (fragment.contains("families")) {
      std::set<Family> families;
      for (const auto& name : fragment.at("families")) families.insert(family_or_throw(name.get<std::string>()));
      filter.include_families = std::move(families);
    }
    if (fragment.contains("exclude_families")) {
      for (const auto& name : fragment.at("exclude_families")) {
        filter.exclude_families.insert(family_or_throw(name.get<std::string>()));
      }
    }
    if (fragment.contains("remove")) filter.set_removed(fragment.at("remove").get<std::vector<std::string>>());
    if (fragment.contains("family_scope")) {
      const auto scope = fragment.at("family_scope").get<std::string>();
      if (scope == "all") {
        filter.family_scope_all = true;
      } else if (scope != "superconductors") {
        throw Error(ErrorCode::kInvalidConfig, "family_scope must be \"superconductors\" or \"all\"");
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("training_filter: ") + e.what());
  }
  return filter;
}

ModelConfig parse_model_config(const json& m) {
  check_keys(m, {"conv_layers", "channels", "dense_hidden", "head", "tc_transform", "seed"}, "model");
  ModelConfig model;
  try {
    if (m.contains("conv_layers")) model.conv_layers = m.at("conv_layers").get<int>();
    if (m.contains("channels")) model.channels = m.at("channels").get<int>();
    if (m.contains("dense_hidden")) model.dense_hidden = m.at("dense_hidden").get<int>();
    if (m.contains("head")) {
      auto head = head_from_string(m.at("head").get<std::string>());
      if (!head) throw Error(ErrorCode::kInvalidConfig, "unknown head");
      model.head = *head;
    }
    if (m.contains("tc_transform")) {
      auto t = tc_transform_from_string(m.at("tc_transform").get<std::string>());
      if (!t) throw Error(ErrorCode::kInvalidConfig, "unknown tc_transform");
      model.tc_transform = *t;
    }
    if (m.contains("seed")) model.seed = m.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("model: ") + e.what());
  }
  model.validate();
  return model;
}

TrainConfig parse_train_config(const json& t, Head head) {
  check_keys(t, {"learning_rate", "batch_size", "epochs", "loss", "shuffle_seed", "class_threshold_kelvin",
                 "precision"},
             "train");
  TrainConfig train;
  train.loss = head == Head::kRegression ? LossKind::kSmoothL1 : LossKind::kBceLogit;
  try {
    if (t.contains("learning_rate")) train.learning_rate = t.at("learning_rate").get<double>();
    if (t.contains("batch_size")) train.batch_size = t.at("batch_size").get<int>();
    if (t.contains("epochs")) train.epochs = t.at("epochs").get<int>();
    if (t.contains("loss")) {
      auto loss = loss_from_string(t.at("loss").get<std::string>());
      if (!loss) throw Error(ErrorCode::kInvalidConfig, "unknown loss");
      train.loss = *loss;
    }
    if (t.contains("shuffle_seed")) train.shuffle_seed = t.at("shuffle_seed").get<std::uint64_t>();
    if (t.contains("class_threshold_kelvin")) {
      train.class_threshold_kelvin = t.at("class_threshold_kelvin").get<double>();
    }
    if (t.contains("precision")) {
      auto precision = precision_from_string(t.at("precision").get<std::string>());
      if (!precision) throw Error(ErrorCode::kInvalidConfig, "unknown precision");
      train.precision = *precision;
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("train: ") + e.what());
  }
  train.validate();
  return train;
}

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::kCandidateScreen: return "candidate_screen";
    case ExperimentKind::kTemporalEval: return "temporal_eval";
    case ExperimentKind::kFamilyDiscovery: return "family_discovery";
  }
  return "?";
}

std::optional<Family> ExperimentSpec::target_family() const {
  constexpr std::string_view prefix = "family:";
  if (test_set.rfind(prefix, 0) != 0) return std::nullopt;
  return family_from_string(std::string_view(test_set).substr(prefix.size()));
}

void ExperimentSpec::validate() const {
  model.validate();
  train.validate();
  if (repeats < 1) throw Error(ErrorCode::kInvalidConfig, "repeats must be >= 1");
  if (jobs < 1) throw Error(ErrorCode::kInvalidConfig, "jobs must be >= 1");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!(thresholds[i] >= 0.0)) throw Error(ErrorCode::kInvalidConfig, "thresholds must be non-negative");
    if (i > 0 && thresholds[i] < thresholds[i - 1]) {
      throw Error(ErrorCode::kInvalidConfig, "thresholds must be sorted");
    }
  }
  if (!(histogram_bin_width > 0.0)) throw Error(ErrorCode::kInvalidConfig, "histogram_bin_width must be > 0");
  switch (kind) {
    case ExperimentKind::kCandidateScreen:
      if (test_set != "cod") throw Error(ErrorCode::kInvalidConfig, "candidate_screen needs test_set \"cod\"");
      if (fold_size == 0) throw Error(ErrorCode::kInvalidConfig, "fold_size must be > 0");
      if (model.head != Head::kRegression) {
        throw Error(ErrorCode::kInvalidConfig, "candidate_screen needs a regression head");
      }
      break;
    case ExperimentKind::kTemporalEval:
      if (test_set != "eval_list") throw Error(ErrorCode::kInvalidConfig, "temporal_eval needs test_set \"eval_list\"");
      if (!year_cutoff) throw Error(ErrorCode::kInvalidConfig, "temporal_eval needs year_cutoff");
      break;
    case ExperimentKind::kFamilyDiscovery:
      if (!target_family()) {
        throw Error(ErrorCode::kInvalidConfig, "family_discovery needs test_set \"family:<NAME>\"");
      }
      if (model.head == Head::kBinaryLogit && train.class_threshold_kelvin != 0.0) {
        throw Error(ErrorCode::kInvalidConfig, "family_discovery counts Tc above 0 K; class threshold must be 0");
      }
      break;
  }
}

json ExperimentSpec::to_json() const {
  json out;
  out["name"] = name;
  out["kind"] = std::string(to_string(kind));
  out["training_filter"] = training_filter.to_json();
  out["test_set"] = test_set;
  out["model"] = {{"conv_layers", model.conv_layers},
                  {"channels", model.channels},
                  {"dense_hidden", model.dense_hidden},
                  {"head", std::string(to_string(model.head))},
                  {"tc_transform", std::string(to_string(model.tc_transform))},
                  {"seed", model.seed}};
  out["train"] = {{"learning_rate", train.learning_rate},
                  {"batch_size", train.batch_size},
                  {"epochs", train.epochs},
                  {"loss", std::string(to_string(train.loss))},
                  {"shuffle_seed", train.shuffle_seed},
                  {"class_threshold_kelvin", train.class_threshold_kelvin},
                  {"precision", std::string(to_string(train.precision))}};
  out["repeats"] = repeats;
  out["thresholds"] = thresholds;
  if (year_cutoff) out["year_cutoff"] = *year_cutoff;
  out["fold_size"] = fold_size;
  out["split_seed"] = split_seed;
  out["histogram_bin_width"] = histogram_bin_width;
  out["validity_exclude_elements"] = validity_exclude_elements;
  out["jobs"] = jobs;
  return out;
}

ExperimentSpec parse_experiment_spec(const json& doc) {
  check_keys(doc,
             {"name", "kind", "training_filter", "test_set", "model", "train", "repeats", "thresholds",
              "year_cutoff", "fold_size", "split_seed", "histogram_bin_width", "validity_exclude_elements", "jobs"},
             "experiment");
  ExperimentSpec spec;
  try {
    if (!doc.contains("kind")) throw Error(ErrorCode::kInvalidConfig, "experiment needs \"kind\"");
    const auto kind = doc.at("kind").get<std::string>();
    if (kind == "candidate_screen") {
      spec.kind = ExperimentKind::kCandidateScreen;
      spec.test_set = "cod";
    } else if (kind == "temporal_eval") {
      spec.kind = ExperimentKind::kTemporalEval;
      spec.test_set = "eval_list";
    } else if (kind == "family_discovery") {
      spec.kind = ExperimentKind::kFamilyDiscovery;
      spec.test_set = "";
    } else {
      throw Error(ErrorCode::kInvalidConfig, "unknown experiment kind " + kind);
    }
    if (doc.contains("name")) spec.name = doc.at("name").get<std::string>();
    if (doc.contains("training_filter")) spec.training_filter = build_training_filter(doc.at("training_filter"));
    if (doc.contains("test_set")) spec.test_set = doc.at("test_set").get<std::string>();
    if (spec.test_set.rfind("family:", 0) == 0 && !spec.target_family()) {
      throw Error(ErrorCode::kUnknownFamily, spec.test_set.substr(7));
    }
    if (doc.contains("model")) spec.model = parse_model_config(doc.at("model"));
    spec.train = parse_train_config(doc.contains("train") ? doc.at("train") : json::object(), spec.model.head);
    if (doc.contains("repeats")) spec.repeats = doc.at("repeats").get<int>();
    if (doc.contains("thresholds")) spec.thresholds = doc.at("thresholds").get<std::vector<double>>();
    if (doc.contains("year_cutoff")) spec.year_cutoff = doc.at("year_cutoff").get<int>();
    if (doc.contains("fold_size")) spec.fold_size = doc.at("fold_size").get<std::size_t>();
    if (doc.contains("split_seed")) spec.split_seed = doc.at("split_seed").get<std::uint64_t>();
    if (doc.contains("histogram_bin_width")) spec.histogram_bin_width = doc.at("histogram_bin_width").get<double>();
    if (doc.contains("validity_exclude_elements")) {
      spec.validity_exclude_elements = doc.at("validity_exclude_elements").get<std::vector<std::string>>();
      for (const auto& s : spec.validity_exclude_elements) ElementSymbol::of(s);
    }
    if (doc.contains("jobs")) spec.jobs = doc.at("jobs").get<int>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidConfig, std::string("experiment: ") + e.what());
  }
  spec.validate();
  return spec;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, path.string() + ": " + e.what());
  }
  return parse_experiment_spec(doc);
}

ModelConfig model_for_repeat(const ExperimentSpec& spec, int k) {
  ModelConfig m = spec.model;
  m.seed += static_cast<std::uint64_t>(k);
  return m;
}

TrainConfig train_for_repeat(const ExperimentSpec& spec, int k) {
  TrainConfig t = spec.train;
  t.shuffle_seed += static_cast<std::uint64_t>(k);
  return t;
}

bool is_superconductor_record(const MaterialRecord& record) {
  return record.source == Source::kSupercon || record.source == Source::kEvalList;
}

CandidateScreenResult run_candidate_screen(const std::vector<MaterialRecord>& sc_data,
                                           const std::vector<MaterialRecord>& cod_data,
                                           const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<MaterialRecord> sc = usable(sc_data);

  // Duplicate compositions would sit on both sides of a fold boundary.
  std::vector<MaterialRecord> candidates;
  {
    CompositionIndex seen;
    for (auto& r : usable(garbage_in(cod_data, sc_data, {}))) {
      if (seen.contains(*r.composition)) continue;
      seen.insert(*r.composition);
      candidates.push_back(std::move(r));
    }
  }
  const std::vector<Fold> folds = rotating_folds(candidates.size(), spec.fold_size, spec.split_seed);
  const std::vector<MaterialRecord> sc_train = spec.training_filter.apply(sc);

  std::vector<std::vector<double>> fold_predictions(folds.size());
  parallel_for(folds.size(), spec.jobs, [&](std::size_t k) {
    std::vector<MaterialRecord> negatives;
    for (std::size_t id : folds[k].train_ids) negatives.push_back(candidates[id]);
    std::vector<MaterialRecord> test;
    for (std::size_t id : folds[k].test_ids) test.push_back(candidates[id]);
    const auto training = concat(sc_train, spec.training_filter.apply(negatives));
    assert_disjoint(training, test, "fold " + std::to_string(k));
    fold_predictions[k] = run_model(training, test, model_for_repeat(spec, static_cast<int>(k)),
                                    train_for_repeat(spec, static_cast<int>(k)));
  });

  CandidateScreenResult result;
  result.folds = folds.size();
  for (std::size_t k = 0; k < folds.size(); ++k) {
    for (std::size_t i = 0; i < folds[k].test_ids.size(); ++i) {
      const MaterialRecord& r = candidates[folds[k].test_ids[i]];
      const Family family = classify_family(*r.composition);
      if (family != Family::kConventional) {
        ++result.excluded_family_rows;
        continue;
      }
      result.rows.push_back({r.raw.text(), canonical_formula(*r.composition), fold_predictions[k][i], k, family});
    }
  }
  std::sort(result.rows.begin(), result.rows.end(), [](const CandidateRow& a, const CandidateRow& b) {
    if (a.predicted_tc_kelvin != b.predicted_tc_kelvin) return a.predicted_tc_kelvin > b.predicted_tc_kelvin;
    return a.canonical < b.canonical;
  });
  for (double threshold : spec.thresholds) {
    const auto count = std::count_if(result.rows.begin(), result.rows.end(),
                                     [&](const CandidateRow& row) { return row.predicted_tc_kelvin > threshold; });
    result.threshold_counts.emplace_back(threshold, static_cast<std::size_t>(count));
  }
  return result;
}

TemporalEvalResult run_temporal_eval(const std::vector<MaterialRecord>& sc_data,
                                     const std::vector<MaterialRecord>& cod_data,
                                     const std::vector<MaterialRecord>& eval_list,
                                     const ExperimentSpec& spec) {
  spec.validate();
  const std::vector<MaterialRecord> eval_usable = usable(eval_list);
  if (eval_usable.empty()) throw Error(ErrorCode::kEmptyDataset, "evaluation list has no scorable record");

  const auto pool = concat(usable(sc_data), usable(garbage_in(cod_data, sc_data, eval_list)));
  const std::vector<MaterialRecord> training =
      spec.training_filter.apply(temporal_split(pool, *spec.year_cutoff).train);
  if (training.empty()) throw Error(ErrorCode::kEmptyDataset, "no training record before the cutoff");

  TemporalEvalResult result;
  result.eval = remove_overlap(eval_usable, training);
  result.eval_removed_overlap = eval_usable.size() - result.eval.size();
  result.training_size = training.size();
  if (result.eval.empty()) throw Error(ErrorCode::kEmptyDataset, "every evaluation record is in the training data");
  assert_disjoint(training, result.eval, "temporal evaluation");

  const std::vector<double> truth = tc_of(result.eval);
  const TrainingSet data = to_training_set(training);
  const std::vector<Composition> eval_comps = compositions_of(result.eval);

  result.runs.resize(static_cast<std::size_t>(spec.repeats));
  parallel_for(result.runs.size(), spec.jobs, [&](std::size_t k) {
    TemporalRun& run = result.runs[k];
    const ModelConfig model = model_for_repeat(spec, static_cast<int>(k));
    run.seed = model.seed;
    if (spec.model.head == Head::kRegression) {
      const TrainResult trained = train(data, model, train_for_repeat(spec, static_cast<int>(k)));
      run.predictions = predict(trained.params, eval_comps);
      for (double threshold : spec.thresholds) {
        EvalReport report = confusion_at_threshold(run.predictions, truth, threshold);
        report.baseline_precision = baseline_precision(truth, threshold);
        run.reports.push_back(report);
      }
      return;
    }
    // A classifier answers one threshold, so each threshold gets its own model.
    for (std::size_t t = 0; t < spec.thresholds.size(); ++t) {
      TrainConfig tc = train_for_repeat(spec, static_cast<int>(k));
      tc.class_threshold_kelvin = spec.thresholds[t];
      const TrainResult trained = train(data, model, tc);
      const std::vector<double> probability = predict(trained.params, eval_comps);
      if (t == 0) run.predictions = probability;
      std::unique_ptr<bool[]> predicted(new bool[probability.size()]);
      std::unique_ptr<bool[]> actual(new bool[truth.size()]);
      for (std::size_t i = 0; i < truth.size(); ++i) {
        predicted[i] = probability[i] > 0.5;
        actual[i] = truth[i] > spec.thresholds[t];
      }
      EvalReport report = confusion_from_labels(std::span<const bool>(predicted.get(), probability.size()),
                                                std::span<const bool>(actual.get(), truth.size()),
                                                spec.thresholds[t]);
      report.baseline_precision = baseline_precision(truth, spec.thresholds[t]);
      run.reports.push_back(report);
    }
  });
  return result;
}

FamilyDiscoveryResult run_family_discovery(const std::vector<MaterialRecord>& sc_data,
                                           const std::vector<MaterialRecord>& cod_data,
                                           const ExperimentSpec& spec,
                                           const std::vector<MaterialRecord>& eval_list) {
  spec.validate();
  const Family target = *spec.target_family();
  std::vector<MaterialRecord> test_all;
  for (const auto& r : usable(sc_data)) {
    if (classify_family(*r.composition) == target) test_all.push_back(r);
  }
  if (test_all.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no " + std::string(to_string(target)) + " record in the corpus");
  }

  const auto pool = concat(usable(sc_data), usable(garbage_in(cod_data, sc_data, eval_list)));
  const std::vector<MaterialRecord> training = spec.training_filter.apply(pool);
  if (training.empty()) throw Error(ErrorCode::kEmptyDataset, "training filter removed every record");

  FamilyDiscoveryResult result;
  result.test = remove_overlap(test_all, training);
  result.test_removed_overlap = test_all.size() - result.test.size();
  result.training_size = training.size();
  if (result.test.empty()) throw Error(ErrorCode::kEmptyDataset, "every target-family record is in the training data");
  assert_disjoint(training, result.test, "family discovery");

  std::vector<MaterialRecord> validity_set;
  for (const auto& r : usable(eval_list)) {
    const bool excluded = std::any_of(spec.validity_exclude_elements.begin(), spec.validity_exclude_elements.end(),
                                      [&](const std::string& s) { return r.composition->contains(ElementSymbol::of(s)); });
    if (!excluded) validity_set.push_back(r);
  }
  const std::vector<double> validity_truth = tc_of(validity_set);
  const std::vector<Composition> validity_comps = compositions_of(validity_set);

  const TrainingSet data = to_training_set(training);
  const std::vector<Composition> test_comps = compositions_of(result.test);
  result.runs.resize(static_cast<std::size_t>(spec.repeats));
  parallel_for(result.runs.size(), spec.jobs, [&](std::size_t k) {
    DiscoveryRun& run = result.runs[k];
    const ModelConfig model = model_for_repeat(spec, static_cast<int>(k));
    run.seed = model.seed;
    const TrainResult trained = train(data, model, train_for_repeat(spec, static_cast<int>(k)));
    const std::vector<double> predicted = predict(trained.params, test_comps);
    run.predicted_positive = static_cast<std::size_t>(std::count_if(
        predicted.begin(), predicted.end(), [&](double v) { return called_positive(model.head, v); }));
    if (!validity_set.empty()) {
      const std::vector<double> p = predict(trained.params, validity_comps);
      std::unique_ptr<bool[]> called(new bool[p.size()]);
      std::unique_ptr<bool[]> actual(new bool[p.size()]);
      for (std::size_t i = 0; i < p.size(); ++i) {
        called[i] = called_positive(model.head, p[i]);
        actual[i] = validity_truth[i] > 0.0;
      }
      EvalReport report = confusion_from_labels(std::span<const bool>(called.get(), p.size()),
                                                std::span<const bool>(actual.get(), p.size()), 0.0);
      report.baseline_precision = baseline_precision(validity_truth, 0.0);
      run.flagged = !report.precision || *report.precision <= *report.baseline_precision;
      run.validity = report;
    }
  });

  std::vector<std::size_t> counts;
  for (const auto& run : result.runs) counts.push_back(run.predicted_positive);
  result.histogram = positive_count_histogram(counts, spec.histogram_bin_width);
  return result;
}

void write_candidate_csv(std::ostream& out, const std::vector<CandidateRow>& rows) {
  write_csv_row(out, {"formula", "canonical", "predicted_tc_K", "fold", "family"});
  for (const auto& row : rows) {
    write_csv_row(out, {row.formula, row.canonical, format_real(row.predicted_tc_kelvin), std::to_string(row.fold_id),
                        std::string(to_string(row.family))});
  }
}

void write_threshold_counts_csv(std::ostream& out, const std::vector<std::pair<double, std::size_t>>& counts) {
  write_csv_row(out, {"threshold_K", "count"});
  for (const auto& [threshold, count] : counts) write_csv_row(out, {format_real(threshold), std::to_string(count)});
}

void write_discovery_runs_csv(std::ostream& out, const std::vector<DiscoveryRun>& runs) {
  write_csv_row(out, {"run", "seed", "predicted_positive", "precision", "baseline_precision", "flagged"});
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const auto& run = runs[k];
    const std::optional<double> precision = run.validity ? run.validity->precision : std::nullopt;
    const std::optional<double> baseline = run.validity ? run.validity->baseline_precision : std::nullopt;
    write_csv_row(out, {std::to_string(k), std::to_string(run.seed), std::to_string(run.predicted_positive),
                        format_optional(precision), format_optional(baseline), run.flagged ? "1" : "0"});
  }
}

void write_predictions_csv(std::ostream& out, const std::vector<MaterialRecord>& records,
                           const std::vector<double>& predictions) {
  if (records.size() != predictions.size()) {
    throw Error(ErrorCode::kLengthMismatch, "records and predictions differ in length");
  }
  write_csv_row(out, {"formula", "tc_K", "predicted_tc_K"});
  for (std::size_t i = 0; i < records.size(); ++i) {
    write_csv_row(out, {records[i].raw.text(), records[i].tc_kelvin ? format_real(*records[i].tc_kelvin) : "",
                        format_real(predictions[i])});
  }
}

}  // namespace scsearch
