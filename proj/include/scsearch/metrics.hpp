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


// Evaluation quantities: thresholded confusion counts, baseline precision,
// coefficient of determination and predicted-positive histograms.

#ifndef SCSEARCH_METRICS_HPP_
#define SCSEARCH_METRICS_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace scsearch {

/// Ratios that would divide by zero are left empty and printed as "NA".
struct EvalReport {
  double threshold_kelvin = 0.0;
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> accuracy;
  std::optional<double> baseline_precision;

  std::size_t total() const { return tp + fp + tn + fn; }
};

inline constexpr const char* kUndefinedMarker = "NA";

/// Counts from boolean predictions; fills every ratio.
EvalReport confusion_from_labels(std::span<const bool> predicted, std::span<const bool> truth,
                                 double threshold_kelvin);

/// Positive means value > threshold, on both sides.
EvalReport confusion_at_threshold(std::span<const double> predicted_tc,
                                  std::span<const double> true_tc, double threshold_kelvin);

/// Fraction of true values above the threshold.
double baseline_precision(std::span<const double> true_tc, double threshold_kelvin);

/// 1 - SS_res / SS_tot. Throws Error(kDegenerateTarget) when every true value
/// is equal, Error(kLengthMismatch) for mismatched or < 2 values.
double r_squared(std::span<const double> predicted, std::span<const double> truth);

struct Histogram {
  double bin_width = 1.0;
  std::vector<std::size_t> counts;  // bin k covers [k w, (k+1) w)

  std::size_t total() const;
};

Histogram positive_count_histogram(std::span<const std::size_t> runs, double bin_width = 1.0);

/// bin_lower,bin_upper,count[,log10_count]
void write_histogram_csv(std::ostream& out, const Histogram& histogram, bool log_scale = false);

/// label,threshold_K,tp,fp,tn,fn,precision,recall,f1,accuracy,baseline_precision
void write_report_csv(std::ostream& out,
                      const std::vector<std::pair<std::string, EvalReport>>& rows);

/// Text table: one baseline row per threshold, then one row per labelled
/// report with precision, recall and f1 as percentages.
std::string format_report_table(const std::vector<std::pair<std::string, EvalReport>>& rows);

std::string format_optional(const std::optional<double>& value);

}  // namespace scsearch

#endif  // SCSEARCH_METRICS_HPP_
