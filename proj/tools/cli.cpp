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


#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "scsearch/baseline.hpp"
#include "scsearch/csv.hpp"
#include "scsearch/dataset.hpp"
#include "scsearch/error.hpp"
#include "scsearch/formula.hpp"
#include "scsearch/manifest.hpp"
#include "scsearch/metrics.hpp"
#include "scsearch/nn.hpp"
#include "scsearch/ptable.hpp"
#include "scsearch/screen.hpp"

namespace scsearch::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Globals {
  std::string config;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  int jobs = 1;
};

// Written files are registered with the manifest as they land.
class Outputs {
 public:
  Outputs(RunManifest* manifest, fs::path dir) : manifest_(manifest), dir_(std::move(dir)) {}

  void write(const std::string& name, const std::string& contents) {
    const fs::path path = dir_ / name;
    write_file(path, contents);
    if (manifest_ != nullptr) manifest_->add_output(name, path);
  }

 private:
  RunManifest* manifest_;
  fs::path dir_;
};

template <typename Fn>
std::string render(Fn&& fn) {
  std::ostringstream s;
  fn(s);
  return s.str();
}

json read_config(const Globals& g) {
  if (g.config.empty()) return json::object();
  try {
    return json::parse(read_file(g.config));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidConfig, g.config + ": " + e.what());
  }
}

std::vector<MaterialRecord> load_records(const std::string& path, Source source) {
  return drop_flagged(ingest_csv(path, source).records);
}

void apply_seed(const Globals& g, ModelConfig& model, TrainConfig& train) {
  if (!g.seed_set) return;
  model.seed = g.seed;
  train.shuffle_seed = g.seed;
}

void apply_seed(const Globals& g, ExperimentSpec& spec) {
  apply_seed(g, spec.model, spec.train);
  if (g.seed_set) spec.split_seed = g.seed;
  spec.jobs = g.jobs;
}

std::string composition_line(const Composition& c, std::optional<int> digits) {
  std::string line;
  for (const auto& [e, f] : c) {
    if (!line.empty()) line += ' ';
    line += std::string(e.symbol()) + ":" + format_decimal(f, digits);
  }
  return line;
}

std::vector<double> parse_thresholds(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ',');) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidConfig, "bad threshold " + item);
    }
  }
  return out;
}

// Runs `body` with a manifest written first into --out. Commands without
// --out skip the manifest.
int with_manifest(const Globals& g, std::string_view command, const json& config,
                  const std::function<void(RunManifest*, Outputs&)>& body) {
  std::unique_ptr<RunManifest> manifest;
  if (!g.out.empty()) {
    manifest = std::make_unique<RunManifest>(g.out, command, config, g.seed);
  }
  Outputs outputs(manifest.get(), g.out);
  try {
    body(manifest.get(), outputs);
  } catch (const std::exception& e) {
    if (manifest) manifest->fail(e.what());
    throw;
  }
  if (manifest) manifest->complete();
  return kExitOk;
}

void require_out(const Globals& g, std::string_view command) {
  if (g.out.empty()) throw CLI::RequiredError(std::string(command) + " needs --out");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Superconductor candidate search from composition data", "scsearch"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--config", g.config, "JSON config or experiment spec")->envname("SCSEARCH_CONFIG");
  auto* seed_opt = app.add_option("--seed", g.seed, "Seed override for models, shuffles and splits")
                       ->envname("SCSEARCH_SEED");
  app.add_option("--out", g.out, "Output directory")->envname("SCSEARCH_OUT");
  app.add_option("--jobs", g.jobs, "Worker cap")->envname("SCSEARCH_JOBS")->check(CLI::PositiveNumber);

  // parse
  auto* parse_cmd = app.add_subcommand("parse", "Normalize a chemical formula");
  std::string formula;
  std::optional<int> digits;
  bool interpunct = false;
  parse_cmd->add_option("--formula", formula)->required();
  parse_cmd->add_option("--digits", digits, "Significant digits for fractions");
  parse_cmd->add_flag("--interpunct", interpunct, "Treat '.' '*' separators as adduct joins");

  // encode
  auto* encode_cmd = app.add_subcommand("encode", "Encode a formula as a periodic-table tensor");
  bool onehot = false;
  bool geometry = false;
  encode_cmd->add_option("--formula", formula);
  encode_cmd->add_flag("--onehot", onehot, "118-value one-hot vector instead");
  encode_cmd->add_flag("--geometry", geometry, "Write the element coordinate table");

  // dataset-build
  auto* build_cmd = app.add_subcommand("dataset-build", "Clean raw listings and synthesize negatives");
  std::string supercon_path, cod_path, eval_path, data_path, negatives_path, model_path, features_path;
  build_cmd->add_option("--supercon", supercon_path)->required()->check(CLI::ExistingFile);
  build_cmd->add_option("--cod", cod_path)->check(CLI::ExistingFile);
  build_cmd->add_option("--eval", eval_path)->check(CLI::ExistingFile);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a model on a dataset CSV");
  double holdout = 0.0;
  train_cmd->add_option("--data", data_path)->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--negatives", negatives_path)->check(CLI::ExistingFile);
  train_cmd->add_option("--holdout", holdout, "Fraction held out for R^2")->check(CLI::Range(0.0, 0.9));

  // evaluate
  auto* eval_cmd = app.add_subcommand("evaluate", "Score a checkpoint, or run a temporal evaluation spec");
  std::string thresholds_text = "0,10";
  eval_cmd->add_option("--model", model_path)->check(CLI::ExistingFile);
  eval_cmd->add_option("--data", data_path)->check(CLI::ExistingFile);
  eval_cmd->add_option("--thresholds", thresholds_text, "Comma-separated kelvin thresholds");
  eval_cmd->add_option("--supercon", supercon_path)->check(CLI::ExistingFile);
  eval_cmd->add_option("--cod", cod_path)->check(CLI::ExistingFile);
  eval_cmd->add_option("--eval", eval_path)->check(CLI::ExistingFile);

  // screen
  auto* screen_cmd = app.add_subcommand("screen", "Rotating-fold candidate screen");
  screen_cmd->add_option("--supercon", supercon_path)->required()->check(CLI::ExistingFile);
  screen_cmd->add_option("--cod", cod_path)->required()->check(CLI::ExistingFile);

  // discover
  auto* discover_cmd = app.add_subcommand("discover", "Family-discovery runs");
  discover_cmd->add_option("--supercon", supercon_path)->required()->check(CLI::ExistingFile);
  discover_cmd->add_option("--cod", cod_path)->check(CLI::ExistingFile);
  discover_cmd->add_option("--eval", eval_path)->check(CLI::ExistingFile);

  // baseline
  auto* baseline_cmd = app.add_subcommand("baseline", "Random-forest classifier on aggregated features");
  double class_threshold = 10.0;
  double test_fraction = 0.2;
  int n_trees = 100;
  baseline_cmd->add_option("--features", features_path)->required()->check(CLI::ExistingFile);
  baseline_cmd->add_option("--data", data_path)->required()->check(CLI::ExistingFile);
  baseline_cmd->add_option("--threshold", class_threshold, "Positive class is Tc above this, kelvin");
  baseline_cmd->add_option("--test-fraction", test_fraction)->check(CLI::Range(0.0, 0.9));
  baseline_cmd->add_option("--trees", n_trees)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code == 0) return kExitOk;
    err << app.help();
    return kExitUsage;
  }
  g.seed_set = seed_opt->count() > 0;

  try {
    if (*parse_cmd) {
      ParseOptions options;
      options.interpunct_as_separator = interpunct;
      const ParseResult parsed = parse_formula(RawFormula(formula), options);
      if (const auto* e = std::get_if<ParseError>(&parsed)) {
        err << "error: " << to_string(e->kind) << ": " << e->message << "\n";
        return kExitData;
      }
      out << composition_line(normalize(std::get<Counts>(parsed)), digits) << "\n";
      return kExitOk;
    }

    if (*encode_cmd) {
      if (!geometry && formula.empty()) throw CLI::RequiredError("--formula");
      const std::string text = render([&](std::ostream& s) {
        if (geometry) {
          write_geometry_csv(s);
          return;
        }
        const Composition c = parse_composition(formula);
        if (onehot) {
          const OneHotVector v = encode_onehot(c);
          std::vector<std::string> fields;
          for (double x : v.values) fields.push_back(format_real(x));
          write_csv_row(s, fields);
        } else {
          write_tensor_csv(s, encode_ptable(c));
        }
      });
      if (g.out.empty()) {
        out << text;
        return kExitOk;
      }
      return with_manifest(g, "encode", {{"formula", formula}, {"onehot", onehot}, {"geometry", geometry}},
                           [&](RunManifest*, Outputs& o) { o.write(geometry ? "geometry.csv" : "tensor.csv", text); });
    }

    if (*build_cmd) {
      require_out(g, "dataset-build");
      const json config = {{"supercon", supercon_path}, {"cod", cod_path}, {"eval", eval_path}};
      return with_manifest(g, "dataset-build", config, [&](RunManifest* m, Outputs& o) {
        m->add_dataset("supercon", supercon_path);
        IngestResult sc_raw = ingest_csv(supercon_path, Source::kSupercon);
        std::vector<MaterialRecord> flagged;
        for (const auto& r : sc_raw.records) {
          if (!r.flagged_reason.empty()) flagged.push_back(r);
        }
        const auto sc = filter_inorganic(drop_missing_tc(dedup_median_tc(drop_flagged(sc_raw.records))));
        std::vector<MaterialRecord> eval;
        if (!eval_path.empty()) {
          m->add_dataset("eval", eval_path);
          IngestResult ev = ingest_csv(eval_path, Source::kEvalList);
          for (const auto& r : ev.records) {
            if (!r.flagged_reason.empty()) flagged.push_back(r);
          }
          eval = drop_flagged(ev.records);
        }
        std::vector<MaterialRecord> negatives;
        json counts = {{"supercon_rows", sc_raw.records.size()}, {"supercon_kept", sc.size()},
                       {"flagged", flagged.size()}, {"eval_kept", eval.size()}};
        if (!cod_path.empty()) {
          m->add_dataset("cod", cod_path);
          IngestResult cod_raw = ingest_csv(cod_path, Source::kCod);
          for (const auto& r : cod_raw.records) {
            if (!r.flagged_reason.empty()) flagged.push_back(r);
          }
          const auto cod = filter_inorganic(dedup_median_tc(drop_flagged(cod_raw.records)));
          negatives = garbage_in(cod, sc, eval);
          counts["cod_kept"] = cod.size();
          counts["negatives"] = negatives.size();
        }
        counts["flagged"] = flagged.size();
        m->set("counts", counts);
        o.write("supercon.csv", render([&](std::ostream& s) { write_dataset_csv(s, sc); }));
        o.write("negatives.csv", render([&](std::ostream& s) { write_dataset_csv(s, negatives); }));
        o.write("eval_list.csv", render([&](std::ostream& s) { write_dataset_csv(s, eval); }));
        o.write("flagged.csv", render([&](std::ostream& s) { write_dataset_csv(s, flagged); }));
        out << sc.size() << " superconductors, " << negatives.size()
            << " negatives, " << flagged.size() << " flagged\n";
      });
    }

    if (*train_cmd) {
      require_out(g, "train");
      const json config = read_config(g);
      ModelConfig model = parse_model_config(config.value("model", json::object()));
      TrainConfig train_config = parse_train_config(config.value("train", json::object()), model.head);
      apply_seed(g, model, train_config);
      return with_manifest(g, "train", config, [&](RunManifest* m, Outputs& o) {
        m->add_dataset("data", data_path);
        auto records = load_records(data_path, Source::kSupercon);
        if (!negatives_path.empty()) {
          m->add_dataset("negatives", negatives_path);
          const auto neg = load_records(negatives_path, Source::kSyntheticNegative);
          records.insert(records.end(), neg.begin(), neg.end());
        }
        std::vector<Composition> comps;
        std::vector<double> tc;
        for (const auto& r : records) {
          if (!r.tc_kelvin) continue;
          comps.push_back(*r.composition);
          tc.push_back(*r.tc_kelvin);
        }
        std::vector<std::size_t> train_ids(comps.size()), test_ids;
        for (std::size_t i = 0; i < comps.size(); ++i) train_ids[i] = i;
        if (holdout > 0.0) {
          Fold f = random_split(comps.size(), holdout, train_config.shuffle_seed);
          train_ids = std::move(f.train_ids);
          test_ids = std::move(f.test_ids);
        }
        std::vector<Composition> train_comps;
        std::vector<double> train_tc;
        for (auto i : train_ids) {
          train_comps.push_back(comps[i]);
          train_tc.push_back(tc[i]);
        }
        const TrainResult result = train(make_training_set(train_comps, train_tc), model, train_config);
        o.write("model.ckpt", render([&](std::ostream& s) { save_checkpoint(s, result.params, train_config); }));
        o.write("loss_trace.csv", render([&](std::ostream& s) {
                  write_csv_row(s, {"epoch", "loss"});
                  for (std::size_t e = 0; e < result.loss_trace.size(); ++e) {
                    write_csv_row(s, {std::to_string(e), format_real(result.loss_trace[e])});
                  }
                }));
        if (!test_ids.empty() && model.head == Head::kRegression) {
          std::vector<Composition> test_comps;
          std::vector<double> truth;
          for (auto i : test_ids) {
            test_comps.push_back(comps[i]);
            truth.push_back(tc[i]);
          }
          const std::vector<double> predicted = predict(result.params, test_comps);
          const double r2 = r_squared(predicted, truth);
          m->set("holdout_r_squared", r2);
          out << "held-out R^2 " << format_real(r2) << "\n";
        }
        out << "final loss " << format_real(result.loss_trace.back()) << "\n";
      });
    }

    if (*eval_cmd) {
      require_out(g, "evaluate");
      if (!model_path.empty()) {
        if (data_path.empty()) throw CLI::RequiredError("--data");
        const std::vector<double> thresholds = parse_thresholds(thresholds_text);
        return with_manifest(g, "evaluate", {{"model", model_path}, {"thresholds", thresholds}},
                             [&](RunManifest* m, Outputs& o) {
          m->add_dataset("model", model_path);
          m->add_dataset("data", data_path);
          std::ifstream in(model_path);
          const Checkpoint ckpt = load_checkpoint(in);
          std::vector<MaterialRecord> records;
          for (auto& r : load_records(data_path, Source::kEvalList)) {
            if (r.tc_kelvin) records.push_back(std::move(r));
          }
          if (records.empty()) throw Error(ErrorCode::kEmptyDataset, data_path + " has no scorable record");
          std::vector<Composition> comps;
          std::vector<double> truth;
          for (const auto& r : records) {
            comps.push_back(*r.composition);
            truth.push_back(*r.tc_kelvin);
          }
          const std::vector<double> predicted = predict(ckpt.params, comps);
          std::vector<std::pair<std::string, EvalReport>> rows;
          for (double t : thresholds) {
            EvalReport report = confusion_at_threshold(predicted, truth, t);
            report.baseline_precision = baseline_precision(truth, t);
            rows.emplace_back("model", report);
          }
          o.write("predictions.csv", render([&](std::ostream& s) { write_predictions_csv(s, records, predicted); }));
          o.write("report.csv", render([&](std::ostream& s) { write_report_csv(s, rows); }));
          out << format_report_table(rows);
        });
      }
      if (g.config.empty() || supercon_path.empty() || eval_path.empty()) {
        throw CLI::RequiredError("evaluate needs --model and --data, or --config, --supercon and --eval");
      }
      ExperimentSpec spec = parse_experiment_spec(read_config(g));
      apply_seed(g, spec);
      if (spec.kind != ExperimentKind::kTemporalEval) {
        throw Error(ErrorCode::kInvalidConfig, "evaluate runs temporal_eval specs");
      }
      return with_manifest(g, "evaluate", spec.to_json(), [&](RunManifest* m, Outputs& o) {
        m->add_dataset("supercon", supercon_path);
        m->add_dataset("eval", eval_path);
        std::vector<MaterialRecord> cod;
        if (!cod_path.empty()) {
          m->add_dataset("cod", cod_path);
          cod = load_records(cod_path, Source::kCod);
        }
        const auto result = run_temporal_eval(load_records(supercon_path, Source::kSupercon), cod,
                                              load_records(eval_path, Source::kEvalList), spec);
        m->set("counts", {{"training", result.training_size}, {"evaluated", result.eval.size()},
                          {"eval_removed_overlap", result.eval_removed_overlap}});
        std::vector<std::pair<std::string, EvalReport>> rows;
        for (std::size_t k = 0; k < result.runs.size(); ++k) {
          for (const auto& report : result.runs[k].reports) rows.emplace_back("run" + std::to_string(k), report);
          o.write("predictions_run" + std::to_string(k) + ".csv", render([&](std::ostream& s) {
                    write_predictions_csv(s, result.eval, result.runs[k].predictions);
                  }));
        }
        o.write("reports.csv", render([&](std::ostream& s) { write_report_csv(s, rows); }));
        const std::string table = format_report_table(rows);
        o.write("table.txt", table);
        out << table;
      });
    }

    if (*screen_cmd) {
      require_out(g, "screen");
      ExperimentSpec spec = parse_experiment_spec(read_config(g));
      apply_seed(g, spec);
      if (spec.kind != ExperimentKind::kCandidateScreen) {
        throw Error(ErrorCode::kInvalidConfig, "screen runs candidate_screen specs");
      }
      return with_manifest(g, "screen", spec.to_json(), [&](RunManifest* m, Outputs& o) {
        m->add_dataset("supercon", supercon_path);
        m->add_dataset("cod", cod_path);
        const auto result = run_candidate_screen(load_records(supercon_path, Source::kSupercon),
                                                 load_records(cod_path, Source::kCod), spec);
        m->set("counts", {{"folds", result.folds}, {"rows", result.rows.size()},
                          {"excluded_family_rows", result.excluded_family_rows}});
        o.write("candidates.csv", render([&](std::ostream& s) { write_candidate_csv(s, result.rows); }));
        o.write("threshold_counts.csv",
                render([&](std::ostream& s) { write_threshold_counts_csv(s, result.threshold_counts); }));
        for (const auto& [t, n] : result.threshold_counts) out << "Tc > " << format_real(t) << " K: " << n << "\n";
      });
    }

    if (*discover_cmd) {
      require_out(g, "discover");
      ExperimentSpec spec = parse_experiment_spec(read_config(g));
      apply_seed(g, spec);
      if (spec.kind != ExperimentKind::kFamilyDiscovery) {
        throw Error(ErrorCode::kInvalidConfig, "discover runs family_discovery specs");
      }
      return with_manifest(g, "discover", spec.to_json(), [&](RunManifest* m, Outputs& o) {
        m->add_dataset("supercon", supercon_path);
        std::vector<MaterialRecord> cod, eval;
        if (!cod_path.empty()) {
          m->add_dataset("cod", cod_path);
          cod = load_records(cod_path, Source::kCod);
        }
        if (!eval_path.empty()) {
          m->add_dataset("eval", eval_path);
          eval = load_records(eval_path, Source::kEvalList);
        }
        const auto result = run_family_discovery(load_records(supercon_path, Source::kSupercon), cod, spec, eval);
        m->set("counts", {{"training", result.training_size}, {"test", result.test.size()},
                          {"test_removed_overlap", result.test_removed_overlap}});
        o.write("runs.csv", render([&](std::ostream& s) { write_discovery_runs_csv(s, result.runs); }));
        o.write("histogram.csv", render([&](std::ostream& s) { write_histogram_csv(s, result.histogram); }));
        o.write("histogram_log.csv",
                render([&](std::ostream& s) { write_histogram_csv(s, result.histogram, true); }));
        for (std::size_t k = 0; k < result.runs.size(); ++k) {
          out << "run " << k << ": " << result.runs[k].predicted_positive << " of " << result.test.size()
              << (result.runs[k].flagged ? " (flagged)" : "") << "\n";
        }
      });
    }

    if (*baseline_cmd) {
      require_out(g, "baseline");
      const json config = {{"features", features_path}, {"data", data_path}, {"threshold_K", class_threshold},
                           {"test_fraction", test_fraction}, {"trees", n_trees}};
      return with_manifest(g, "baseline", config, [&](RunManifest* m, Outputs& o) {
        m->add_dataset("features", features_path);
        m->add_dataset("data", data_path);
        const ElementFeatureTable table = ElementFeatureTable::from_csv(fs::path(features_path));
        std::vector<MaterialRecord> records;
        for (auto& r : load_records(data_path, Source::kSupercon)) {
          if (r.tc_kelvin) records.push_back(std::move(r));
        }
        if (records.size() < 2) throw Error(ErrorCode::kEmptyDataset, data_path + " needs at least two records");
        FeatureMatrix x;
        std::vector<int> y;
        for (const auto& r : records) {
          const AggregatedFeatures f = aggregate_features(*r.composition, table);
          x.emplace_back(f.begin(), f.end());
          y.push_back(*r.tc_kelvin > class_threshold ? 1 : 0);
        }
        const Fold split = random_split(records.size(), test_fraction, g.seed);
        FeatureMatrix train_x;
        std::vector<int> train_y;
        for (auto i : split.train_ids) {
          train_x.push_back(x[i]);
          train_y.push_back(y[i]);
        }
        ForestConfig fc;
        fc.n_trees = n_trees;
        fc.seed = g.seed;
        fc.jobs = g.jobs;
        const ForestModel forest = train_forest(train_x, train_y, fc);
        std::unique_ptr<bool[]> predicted(new bool[split.test_ids.size()]);
        std::unique_ptr<bool[]> truth(new bool[split.test_ids.size()]);
        std::vector<MaterialRecord> test_records;
        std::vector<double> fractions;
        for (std::size_t k = 0; k < split.test_ids.size(); ++k) {
          const auto i = split.test_ids[k];
          const ForestPrediction p = predict_forest(forest, x[i]);
          predicted[k] = p.label == 1;
          truth[k] = y[i] == 1;
          test_records.push_back(records[i]);
          fractions.push_back(p.positive_fraction);
        }
        const std::size_t n = split.test_ids.size();
        EvalReport report = confusion_from_labels(std::span<const bool>(predicted.get(), n),
                                                  std::span<const bool>(truth.get(), n), class_threshold);
        std::vector<std::pair<std::string, EvalReport>> rows{{"forest", report}};
        o.write("report.csv", render([&](std::ostream& s) { write_report_csv(s, rows); }));
        o.write("predictions.csv", render([&](std::ostream& s) {
                  write_csv_row(s, {"formula", "tc_K", "positive_vote_fraction"});
                  for (std::size_t k = 0; k < n; ++k) {
                    write_csv_row(s, {test_records[k].raw.text(), format_real(*test_records[k].tc_kelvin),
                                      format_real(fractions[k])});
                  }
                }));
        out << "accuracy " << format_optional(report.accuracy) << "\n";
      });
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kDivergenceDetected ? kExitNumerical : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace scsearch::cli
