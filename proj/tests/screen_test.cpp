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


#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scsearch/error.hpp"
#include "scsearch/screen.hpp"

namespace scsearch {
namespace {

using nlohmann::json;

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::kIoFailure;
}

MaterialRecord sc(const std::string& formula, double tc, std::optional<int> year = 2000) {
  return make_record(formula, tc, year, Source::kSupercon);
}

MaterialRecord cod(const std::string& formula, std::optional<int> year = 2000) {
  return make_record(formula, std::nullopt, year, Source::kCod);
}

bool keeps(const TrainingFilter& f, const MaterialRecord& r) { return f(r); }

TEST(Filter, RemovesNamedAndUndatedRecords) {
  const TrainingFilter f = build_training_filter(json::parse(R"({"year_before": 2008,
                                                                 "remove": ["LaFePO", "LaFePFO"]})"));
  EXPECT_FALSE(keeps(f, sc("LaFePO", 4.0, 2006)));
  EXPECT_FALSE(keeps(f, sc("LaFePFO", 7.0, 2007)));
  EXPECT_FALSE(keeps(f, sc("LaFeAsO0.9F0.1", 26.0, 2008)));
  EXPECT_TRUE(keeps(f, sc("Nb3Sn", 18.0, 1954)));
  EXPECT_FALSE(keeps(f, sc("NbN", 16.0, std::nullopt)));
  EXPECT_EQ(f.to_json()["remove"], json::parse(R"(["LaFePO", "LaFePFO"])"));
}

TEST(Filter, OnlyConventional) {
  const TrainingFilter f = build_training_filter(json::parse(R"({"families": ["CONVENTIONAL"]})"));
  EXPECT_TRUE(keeps(f, sc("MgB2", 39.0)));
  EXPECT_FALSE(keeps(f, sc("YBa2Cu3O7", 92.0)));
  EXPECT_FALSE(keeps(f, sc("LaFeAsO", 26.0)));
  // Garbage-in negatives are outside the family rules by default.
  EXPECT_TRUE(keeps(f, cod("BaCuO2")));
  TrainingFilter all = build_training_filter(json::parse(R"({"families": ["CONVENTIONAL"], "family_scope": "all"})"));
  EXPECT_FALSE(keeps(all, cod("BaCuO2")));
}

TEST(Filter, EmptyFragmentPassesEverythingParsed) {
  for (const json& fragment : {json::object(), json()}) {
    const TrainingFilter f = build_training_filter(fragment);
    EXPECT_TRUE(keeps(f, sc("YBa2Cu3O7", 92.0, std::nullopt)));
    EXPECT_TRUE(keeps(f, cod("SiO2", std::nullopt)));
    EXPECT_FALSE(keeps(f, sc("Xx2", 1.0)));
  }
}

TEST(Filter, Errors) {
  EXPECT_EQ(code_of([] { build_training_filter(json::parse(R"({"families": ["HEAVY_FERMION"]})")); }),
            ErrorCode::kUnknownFamily);
  EXPECT_EQ(code_of([] { build_training_filter(json::parse(R"({"year_after": 2000})")); }), ErrorCode::kUnknownField);
  EXPECT_EQ(code_of([] { build_training_filter(json::parse(R"({"remove": ["Qq3"]})")); }), ErrorCode::kUnknownFormula);
}

TEST(Spec, ParsesDocumentedKeys) {
  const ExperimentSpec s = parse_experiment_spec(json::parse(R"({
    "name": "fesc", "kind": "family_discovery", "test_set": "family:FESC",
    "training_filter": {"exclude_families": ["FESC"]},
    "model": {"conv_layers": 2, "channels": 4, "seed": 3},
    "train": {"epochs": 5, "shuffle_seed": 9, "precision": "FLOAT64"},
    "repeats": 3, "thresholds": [0, 10], "histogram_bin_width": 2,
    "validity_exclude_elements": ["Fe"], "jobs": 2})"));
  EXPECT_EQ(s.kind, ExperimentKind::kFamilyDiscovery);
  EXPECT_EQ(*s.target_family(), Family::kFesc);
  EXPECT_EQ(s.model.conv_layers, 2);
  EXPECT_EQ(s.train.precision, ComputePrecision::kFloat64);
  EXPECT_EQ(model_for_repeat(s, 2).seed, 5u);
  EXPECT_EQ(train_for_repeat(s, 2).shuffle_seed, 11u);
  EXPECT_EQ(parse_experiment_spec(s.to_json()).to_json(), s.to_json());
}

TEST(Spec, Errors) {
  EXPECT_EQ(code_of([] { parse_experiment_spec(json::parse(R"({"kind": "candidate_screen", "color": 1})")); }),
            ErrorCode::kUnknownField);
  EXPECT_EQ(code_of([] { parse_experiment_spec(json::parse(R"({"kind": "candidate_screen", "repeats": 0})")); }),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { parse_experiment_spec(json::parse(R"({"kind": "candidate_screen", "thresholds": [10, 0]})")); }),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { parse_experiment_spec(json::parse(R"({"kind": "temporal_eval", "test_set": "eval_list"})")); }),
            ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { parse_experiment_spec(json::parse(R"({"kind": "family_discovery", "test_set": "family:XYZ"})")); }),
            ErrorCode::kUnknownFamily);
  EXPECT_EQ(code_of([] {
              parse_experiment_spec(json::parse(R"({"kind": "family_discovery", "test_set": "family:FESC",
                  "model": {"head": "BINARY_LOGIT"}, "train": {"class_threshold_kelvin": 10}})"));
            }),
            ErrorCode::kInvalidConfig);
  EXPECT_NO_THROW(parse_experiment_spec(json::parse(
      R"({"kind": "family_discovery", "test_set": "family:FESC", "model": {"head": "BINARY_LOGIT"}})")));
  EXPECT_EQ(code_of([] { parse_experiment_spec(json::parse(R"({"kind": "nope"})")); }), ErrorCode::kInvalidConfig);
  EXPECT_EQ(code_of([] { load_experiment_spec("/nonexistent/spec.json"); }), ErrorCode::kIoFailure);
}

// Toy world: superconductors all contain an f-block element, COD entries are
// s/p-block only, apart from the planted candidates.
const std::vector<std::string> kPool{"Na", "Mg", "Al", "Si", "P",  "S",  "Cl", "K",  "Ca", "Ga", "Ge",
                                     "Se", "Br", "Rb", "Sr", "In", "Sn", "Sb", "Te", "I",  "Cs", "Ba"};

struct ToyWorld {
  std::vector<MaterialRecord> sc;
  std::vector<MaterialRecord> cod;
};

ToyWorld toy_world(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, kPool.size() - 1);
  std::uniform_int_distribution<int> amount(1, 4);
  ToyWorld w;
  for (const char* f : {"Ce", "Pr", "Nd", "Sm"}) {
    for (int i = 0; i < 10; ++i) w.sc.push_back(sc(f + std::to_string(amount(rng)) + kPool[pick(rng)], 20.0));
  }
  for (int i = 0; i < 70; ++i) {
    std::string a = kPool[pick(rng)], b = kPool[pick(rng)];
    if (a == b) continue;
    w.cod.push_back(cod(a + std::to_string(amount(rng)) + b + std::to_string(amount(rng))));
  }
  w.cod.push_back(cod("GdSb3"));
  w.cod.push_back(cod("EuSn2"));
  w.cod.push_back(cod("Ba2YCu3O7"));
  w.cod.push_back(cod("KFe2Se2"));
  return w;
}

ExperimentSpec toy_spec(ExperimentKind kind) {
  ExperimentSpec s;
  s.kind = kind;
  s.model.conv_layers = 2;
  s.model.channels = 6;
  s.model.dense_hidden = 8;
  s.model.seed = 1;
  s.train.epochs = 60;
  s.train.batch_size = 8;
  s.train.learning_rate = 1e-2;
  s.thresholds = {0.0, 4.0, 10.0};
  return s;
}

TEST(CandidateScreen, PlantedCandidatesRankFirstAndFamiliesDropped) {
  const ToyWorld w = toy_world(1);
  ExperimentSpec spec = toy_spec(ExperimentKind::kCandidateScreen);
  spec.fold_size = 25;
  const CandidateScreenResult r = run_candidate_screen(w.sc, w.cod, spec);
  EXPECT_EQ(r.excluded_family_rows, 2u);
  ASSERT_GE(r.rows.size(), 2u);
  std::vector<std::string> top{r.rows[0].formula, r.rows[1].formula};
  std::sort(top.begin(), top.end());
  EXPECT_EQ(top, (std::vector<std::string>{"EuSn2", "GdSb3"}));
  EXPECT_GT(r.rows[1].predicted_tc_kelvin, 0.0);
  for (const CandidateRow& row : r.rows) {
    EXPECT_EQ(row.family, Family::kConventional);
    EXPECT_LT(row.fold_id, r.folds);
  }
  EXPECT_TRUE(std::is_sorted(r.rows.begin(), r.rows.end(), [](const CandidateRow& a, const CandidateRow& b) {
    return a.predicted_tc_kelvin > b.predicted_tc_kelvin ||
           (a.predicted_tc_kelvin == b.predicted_tc_kelvin && a.canonical < b.canonical);
  }));
  ASSERT_EQ(r.threshold_counts.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) EXPECT_LE(r.threshold_counts[i].second, r.threshold_counts[i - 1].second);
  for (const auto& [t, n] : r.threshold_counts) {
    EXPECT_EQ(n, static_cast<std::size_t>(std::count_if(r.rows.begin(), r.rows.end(), [t = t](const CandidateRow& row) {
                return row.predicted_tc_kelvin > t;
              })));
  }

  std::ostringstream a, b;
  write_candidate_csv(a, r.rows);
  spec.jobs = 2;
  write_candidate_csv(b, run_candidate_screen(w.sc, w.cod, spec).rows);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "formula,canonical,predicted_tc_K,fold,family");
}

TEST(CandidateScreen, KnownSuperconductorsAreNotCandidates) {
  ToyWorld w = toy_world(2);
  w.cod.push_back(cod(w.sc.front().raw.text()));
  ExperimentSpec spec = toy_spec(ExperimentKind::kCandidateScreen);
  spec.train.epochs = 1;
  spec.fold_size = 40;
  const CandidateScreenResult r = run_candidate_screen(w.sc, w.cod, spec);
  for (const CandidateRow& row : r.rows) EXPECT_NE(row.formula, w.sc.front().raw.text());
}

TEST(TemporalEval, BaselineAndDegenerateModel) {
  const ToyWorld w = toy_world(3);
  std::vector<MaterialRecord> eval;
  for (int i = 0; i < 32; ++i) eval.push_back(make_record("Yb" + std::to_string(i + 1) + "Te", 5.0, 2012, Source::kEvalList));
  for (int i = 0; i < 68; ++i) eval.push_back(make_record("Ba" + std::to_string(i + 1) + "I", 0.0, 2012, Source::kEvalList));
  ExperimentSpec spec = toy_spec(ExperimentKind::kTemporalEval);
  spec.test_set = "eval_list";
  spec.year_cutoff = 2010;
  spec.thresholds = {0.0};
  spec.train.epochs = 0;
  const TemporalEvalResult r = run_temporal_eval(w.sc, w.cod, eval, spec);
  ASSERT_EQ(r.runs.size(), 1u);
  const EvalReport& rep = r.runs[0].reports[0];
  EXPECT_NEAR(*rep.baseline_precision, 0.32, 1e-15);
  EXPECT_EQ(rep.total(), 100u);

  // A model that calls everything a superconductor scores the baseline.
  std::vector<double> all_positive(100, 50.0), truth;
  for (const auto& rec : r.eval) truth.push_back(*rec.tc_kelvin);
  EXPECT_NEAR(*confusion_at_threshold(all_positive, truth, 0.0).precision, baseline_precision(truth, 0.0), 1e-15);

  EXPECT_EQ(code_of([&] { run_temporal_eval(w.sc, w.cod, {}, spec); }), ErrorCode::kEmptyDataset);
}

TEST(TemporalEval, DropsOverlapAndLaterRecords) {
  ToyWorld w = toy_world(4);
  w.sc.push_back(sc("YbTe2", 9.0, 2015));
  std::vector<MaterialRecord> eval{make_record(w.sc.front().raw.text(), 20.0, 2012, Source::kEvalList),
                                   make_record("YbTe2", 9.0, 2012, Source::kEvalList),
                                   make_record("BaI2", 0.0, 2012, Source::kEvalList)};
  ExperimentSpec spec = toy_spec(ExperimentKind::kTemporalEval);
  spec.test_set = "eval_list";
  spec.year_cutoff = 2010;
  spec.train.epochs = 2;
  const TemporalEvalResult r = run_temporal_eval(w.sc, w.cod, eval, spec);
  EXPECT_EQ(r.eval_removed_overlap, 1u);
  EXPECT_EQ(r.eval.size(), 2u);
  // The 2015 record stays out of training, the undated-free toy COD stays in.
  EXPECT_EQ(r.training_size, w.sc.size() - 1 + w.cod.size());
}

TEST(FamilyDiscovery, HistogramAndValidity) {
  ToyWorld w = toy_world(5);
  for (const char* f : {"LaFeAsO", "SmFeAsO", "BaFe2As2", "FeSe"}) w.sc.push_back(sc(f, 30.0));
  ExperimentSpec spec = toy_spec(ExperimentKind::kFamilyDiscovery);
  spec.test_set = "family:FESC";
  spec.training_filter = build_training_filter(json::parse(R"({"exclude_families": ["FESC"]})"));
  spec.repeats = 3;
  spec.train.epochs = 5;
  std::vector<MaterialRecord> eval{make_record("CeSb", 3.0, 2012, Source::kEvalList),
                                   make_record("NaCl", 0.0, 2012, Source::kEvalList),
                                   make_record("FeTe", 0.0, 2012, Source::kEvalList)};
  spec.validity_exclude_elements = {"Fe"};
  const FamilyDiscoveryResult r = run_family_discovery(w.sc, w.cod, spec, eval);
  EXPECT_EQ(r.test.size(), 4u);
  EXPECT_EQ(r.histogram.total(), 3u);
  ASSERT_EQ(r.runs.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(r.runs[k].seed, spec.model.seed + k);
    EXPECT_LE(r.runs[k].predicted_positive, 4u);
    ASSERT_TRUE(r.runs[k].validity.has_value());
    EXPECT_EQ(r.runs[k].validity->total(), 2u);
    EXPECT_NEAR(*r.runs[k].validity->baseline_precision, 0.5, 1e-15);
  }
  std::ostringstream a, b;
  write_discovery_runs_csv(a, r.runs);
  write_discovery_runs_csv(b, run_family_discovery(w.sc, w.cod, spec, eval).runs);
  EXPECT_EQ(a.str(), b.str());

  ExperimentSpec cuprate = spec;
  cuprate.test_set = "family:CUPRATE";
  ToyWorld no_cuprate = toy_world(6);
  EXPECT_EQ(code_of([&] { run_family_discovery(no_cuprate.sc, no_cuprate.cod, cuprate); }),
            ErrorCode::kEmptyDataset);
}

TEST(Writers, PredictionsCsv) {
  const std::vector<MaterialRecord> recs{sc("Nb", 9.2), sc("MgB2", 39.0)};
  std::ostringstream out;
  write_predictions_csv(out, recs, {8.5, 0.0});
  EXPECT_EQ(out.str(), "formula,tc_K,predicted_tc_K\nNb,9.2,8.5\nMgB2,39,0\n");
  std::ostringstream counts;
  write_threshold_counts_csv(counts, {{0.0, 5}, {10.0, 2}});
  EXPECT_EQ(counts.str(), "threshold_K,count\n0,5\n10,2\n");
  EXPECT_EQ(code_of([&] { write_predictions_csv(out, recs, {1.0}); }), ErrorCode::kLengthMismatch);
}

}  // namespace
}  // namespace scsearch
