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


#include "scsearch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <memory>
#include <ostream>

#include "scsearch/csv.hpp"
#include "scsearch/error.hpp"

namespace scsearch {
namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) throw Error(ErrorCode::kLengthMismatch, std::to_string(a) + " vs " + std::to_string(b) + " values");
  if (a == 0) throw Error(ErrorCode::kLengthMismatch, "no values");
}

std::string percent(const std::optional<double>& v) {
  if (!v) return "--";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.0f%%", *v * 100.0);
  return buf;
}

}  // namespace

EvalReport confusion_from_labels(std::span<const bool> predicted, std::span<const bool> truth,
                                 double threshold_kelvin) {
  check_lengths(predicted.size(), truth.size());
  EvalReport r;
  r.threshold_kelvin = threshold_kelvin;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i]) (truth[i] ? r.tp : r.fp)++;
    else (truth[i] ? r.fn : r.tn)++;
  }
  r.precision = ratio(r.tp, r.tp + r.fp);
  r.recall = ratio(r.tp, r.tp + r.fn);
  r.accuracy = ratio(r.tp + r.tn, r.total());
  if (r.precision && r.recall && *r.precision + *r.recall > 0.0) {
    r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
  }
  r.baseline_precision = ratio(r.tp + r.fn, r.total());
  return r;
}

EvalReport confusion_at_threshold(std::span<const double> predicted_tc, std::span<const double> true_tc,
                                  double threshold_kelvin) {
  check_lengths(predicted_tc.size(), true_tc.size());
  auto predicted = std::make_unique<bool[]>(predicted_tc.size());
  auto truth = std::make_unique<bool[]>(true_tc.size());
  for (std::size_t i = 0; i < predicted_tc.size(); ++i) {
    predicted[i] = predicted_tc[i] > threshold_kelvin;
    truth[i] = true_tc[i] > threshold_kelvin;
  }
  return confusion_from_labels({predicted.get(), predicted_tc.size()}, {truth.get(), true_tc.size()},
                               threshold_kelvin);
}

double baseline_precision(std::span<const double> true_tc, double threshold_kelvin) {
  if (true_tc.empty()) throw Error(ErrorCode::kEmptyDataset, "no materials");
  const auto positives = std::count_if(true_tc.begin(), true_tc.end(),
                                       [&](double t) { return t > threshold_kelvin; });
  return static_cast<double>(positives) / static_cast<double>(true_tc.size());
}

double r_squared(std::span<const double> predicted, std::span<const double> truth) {
  check_lengths(predicted.size(), truth.size());
  if (truth.size() < 2) throw Error(ErrorCode::kLengthMismatch, "need at least two values");
  double mean = 0.0;
  for (double t : truth) mean += t;
  mean /= static_cast<double>(truth.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ss_res += (truth[i] - predicted[i]) * (truth[i] - predicted[i]);
    ss_tot += (truth[i] - mean) * (truth[i] - mean);
  }
  if (ss_tot == 0.0) throw Error(ErrorCode::kDegenerateTarget, "all true values are equal");
  return 1.0 - ss_res / ss_tot;
}

std::size_t Histogram::total() const {
  std::size_t n = 0;
  for (std::size_t c : counts) n += c;
  return n;
}

Histogram positive_count_histogram(std::span<const std::size_t> runs, double bin_width) {
  if (!(bin_width > 0.0)) throw Error(ErrorCode::kInvalidConfig, "bin width must be positive");
  Histogram h;
  h.bin_width = bin_width;
  const std::size_t max = runs.empty() ? 0 : *std::max_element(runs.begin(), runs.end());
  h.counts.assign(static_cast<std::size_t>(std::floor(static_cast<double>(max) / bin_width)) + 1, 0);
  for (std::size_t r : runs) {
    ++h.counts[static_cast<std::size_t>(std::floor(static_cast<double>(r) / bin_width))];
  }
  return h;
}

void write_histogram_csv(std::ostream& out, const Histogram& h, bool log_scale) {
  std::vector<std::string> header = {"bin_lower", "bin_upper", "count"};
  if (log_scale) header.push_back("log10_count");
  write_csv_row(out, header);
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    std::vector<std::string> row = {format_real(static_cast<double>(k) * h.bin_width),
                                    format_real(static_cast<double>(k + 1) * h.bin_width),
                                    std::to_string(h.counts[k])};
    if (log_scale) {
      row.push_back(h.counts[k] == 0 ? kUndefinedMarker
                                     : format_real(std::log10(static_cast<double>(h.counts[k]))));
    }
    write_csv_row(out, row);
  }
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_real(*value) : kUndefinedMarker;
}

void write_report_csv(std::ostream& out, const std::vector<std::pair<std::string, EvalReport>>& rows) {
  write_csv_row(out, {"label", "threshold_K", "tp", "fp", "tn", "fn", "precision", "recall", "f1",
                      "accuracy", "baseline_precision"});
  for (const auto& [label, r] : rows) {
    write_csv_row(out, {label, format_real(r.threshold_kelvin), std::to_string(r.tp), std::to_string(r.fp),
                        std::to_string(r.tn), std::to_string(r.fn), format_optional(r.precision),
                        format_optional(r.recall), format_optional(r.f1), format_optional(r.accuracy),
                        format_optional(r.baseline_precision)});
  }
}

std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-32s %10s %10s %10s\n", "", "Precision", "Recall", "f1 score");
  out += line;
  std::map<double, std::optional<double>> baselines;
  for (const auto& [label, r] : rows) baselines.emplace(r.threshold_kelvin, r.baseline_precision);
  for (const auto& [threshold, base] : baselines) {
    const std::string name = "Baseline (" + format_real(threshold) + " K)";
    std::snprintf(line, sizeof line, "%-32s %10s %10s %10s\n", name.c_str(), percent(base).c_str(), "--", "--");
    out += line;
    for (const auto& [label, r] : rows) {
      if (r.threshold_kelvin != threshold) continue;
      const std::string row_name = label + " (" + format_real(threshold) + " K)";
      std::snprintf(line, sizeof line, "%-32s %10s %10s %10s\n", row_name.c_str(), percent(r.precision).c_str(),
                    percent(r.recall).c_str(), percent(r.f1).c_str());
      out += line;
    }
  }
  return out;
}

}  // namespace scsearch
