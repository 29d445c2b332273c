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
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scsearch/error.hpp"
#include "scsearch/metrics.hpp"

namespace scsearch {
namespace {

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

TEST(Confusion, AllPositiveDiseaseTest) {
  std::vector<double> truth(10000, 0.0), predicted(10000, 1.0);
  std::fill(truth.begin(), truth.begin() + 100, 5.0);
  const EvalReport r = confusion_at_threshold(predicted, truth, 0.0);
  EXPECT_EQ(*r.recall, 1.0);
  EXPECT_NEAR(*r.precision, 0.01, 1e-15);
  EXPECT_NEAR(*r.accuracy, 0.01, 1e-15);
  EXPECT_EQ(r.total(), 10000u);
}

TEST(Confusion, SingleConfidentPositive) {
  std::vector<double> truth(10000, 0.0), predicted(10000, 0.0);
  std::fill(truth.begin(), truth.begin() + 100, 5.0);
  predicted[0] = 5.0;
  const EvalReport r = confusion_at_threshold(predicted, truth, 0.0);
  EXPECT_EQ(*r.precision, 1.0);
  EXPECT_NEAR(*r.recall, 0.01, 1e-15);
}

TEST(Confusion, PerfectPrediction) {
  const std::vector<double> v{0.0, 3.0, 12.0, 0.0, 90.0};
  const EvalReport r = confusion_at_threshold(v, v, 0.0);
  EXPECT_EQ(*r.precision, 1.0);
  EXPECT_EQ(*r.recall, 1.0);
  EXPECT_EQ(*r.f1, 1.0);
  EXPECT_EQ(*r.accuracy, 1.0);
}

TEST(Confusion, StrictInequalityAtThreshold) {
  const std::vector<double> exact{10.0}, above{10.0000001};
  EXPECT_EQ(confusion_at_threshold(exact, exact, 10.0).tn, 1u);
  EXPECT_EQ(confusion_at_threshold(above, above, 10.0).tp, 1u);
  const std::vector<double> zero{0.0};
  EXPECT_EQ(confusion_at_threshold(zero, zero, 0.0).tn, 1u);
}

TEST(Confusion, UndefinedRatiosStayEmpty) {
  const std::vector<double> predicted{0.0, 0.0}, truth{0.0, 0.0};
  const EvalReport r = confusion_at_threshold(predicted, truth, 0.0);
  EXPECT_FALSE(r.precision.has_value());
  EXPECT_FALSE(r.recall.has_value());
  EXPECT_FALSE(r.f1.has_value());
  EXPECT_EQ(*r.accuracy, 1.0);
  EXPECT_EQ(format_optional(r.precision), "NA");
}

TEST(Confusion, Errors) {
  const std::vector<double> a{1.0}, b{1.0, 2.0}, none;
  EXPECT_EQ(code_of([&] { confusion_at_threshold(a, b, 0.0); }), ErrorCode::kLengthMismatch);
  EXPECT_EQ(code_of([&] { confusion_at_threshold(none, none, 0.0); }), ErrorCode::kLengthMismatch);
}

TEST(Confusion, MatchesBruteForceRecount) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> length(1, 1000);
  std::uniform_real_distribution<double> tc(0.0, 40.0), coin(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = length(rng);
    std::vector<double> p(n), t(n);
    for (int i = 0; i < n; ++i) {
      // Plenty of exact zeros, as in real Tc lists.
      p[i] = coin(rng) < 0.4 ? 0.0 : tc(rng);
      t[i] = coin(rng) < 0.4 ? 0.0 : tc(rng);
    }
    const double threshold = trial % 3 == 0 ? 0.0 : tc(rng);
    std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
    for (int i = 0; i < n; ++i) {
      const bool pp = p[i] > threshold, tt = t[i] > threshold;
      if (pp && tt) ++tp;
      if (pp && !tt) ++fp;
      if (!pp && !tt) ++tn;
      if (!pp && tt) ++fn;
    }
    const EvalReport r = confusion_at_threshold(p, t, threshold);
    ASSERT_EQ(r.tp, tp);
    ASSERT_EQ(r.fp, fp);
    ASSERT_EQ(r.tn, tn);
    ASSERT_EQ(r.fn, fn);
    ASSERT_EQ(r.total(), static_cast<std::size_t>(n));
    EXPECT_EQ(r.precision.has_value(), tp + fp > 0);
    EXPECT_EQ(r.recall.has_value(), tp + fn > 0);
    if (r.precision) EXPECT_DOUBLE_EQ(*r.precision, static_cast<double>(tp) / static_cast<double>(tp + fp));
    if (r.recall) EXPECT_DOUBLE_EQ(*r.recall, static_cast<double>(tp) / static_cast<double>(tp + fn));
    EXPECT_DOUBLE_EQ(*r.accuracy, static_cast<double>(tp + tn) / n);
    if (r.f1) {
      EXPECT_NEAR(*r.f1, 2 * *r.precision * *r.recall / (*r.precision + *r.recall), 1e-12);
      EXPECT_GE(*r.f1, std::min(*r.precision, *r.recall) - 1e-15);
      EXPECT_LE(*r.f1, std::max(*r.precision, *r.recall) + 1e-15);
    }
    const EvalReport higher = confusion_at_threshold(p, t, threshold + 5.0);
    EXPECT_LE(higher.tp, r.tp);
  }
}

TEST(Confusion, FromLabels) {
  const bool predicted[] = {true, true, false, false};
  const bool truth[] = {true, false, true, false};
  const EvalReport r = confusion_from_labels(predicted, truth, 10.0);
  EXPECT_EQ(r.tp, 1u);
  EXPECT_EQ(r.fp, 1u);
  EXPECT_EQ(r.fn, 1u);
  EXPECT_EQ(r.tn, 1u);
  EXPECT_EQ(r.threshold_kelvin, 10.0);
  EXPECT_EQ(*r.f1, 0.5);
}

TEST(Baseline, Examples) {
  std::vector<double> tc(100, 0.0);
  std::fill(tc.begin(), tc.begin() + 32, 1.5);
  EXPECT_NEAR(baseline_precision(tc, 0.0), 0.32, 1e-15);
  EXPECT_EQ(baseline_precision(tc, 2.0), 0.0);
  const std::vector<double> all{1.0, 2.0};
  EXPECT_EQ(baseline_precision(all, 0.0), 1.0);
}

TEST(RSquared, Examples) {
  const std::vector<double> t{0.0, 1.0, 2.0};
  EXPECT_EQ(r_squared(t, t), 1.0);
  const std::vector<double> mean{1.0, 1.0, 1.0};
  EXPECT_EQ(r_squared(mean, t), 0.0);
  const std::vector<double> p{0.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(r_squared(p, t), 0.5);
  const std::vector<double> flat{3.0, 3.0}, two{1.0, 2.0}, one{1.0};
  EXPECT_EQ(code_of([&] { r_squared(two, flat); }), ErrorCode::kDegenerateTarget);
  EXPECT_EQ(code_of([&] { r_squared(one, one); }), ErrorCode::kLengthMismatch);
}

TEST(RSquared, ShiftInvariant) {
  std::mt19937_64 rng(22);
  std::normal_distribution<double> v(0.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> p(30), t(30), ps(30), ts(30);
    const double k = v(rng) * 10;
    for (int i = 0; i < 30; ++i) {
      t[i] = v(rng);
      p[i] = t[i] + v(rng);
      ps[i] = p[i] + k;
      ts[i] = t[i] + k;
    }
    EXPECT_NEAR(r_squared(p, t), r_squared(ps, ts), 1e-10);
  }
}

TEST(Histogram, Examples) {
  const std::vector<std::size_t> runs{0, 0, 5};
  const Histogram h = positive_count_histogram(runs);
  ASSERT_EQ(h.counts.size(), 6u);
  EXPECT_EQ(h.counts[0], 2u);
  EXPECT_EQ(h.counts[5], 1u);
  EXPECT_EQ(h.total(), 3u);
  const Histogram empty = positive_count_histogram(std::vector<std::size_t>{});
  EXPECT_EQ(empty.total(), 0u);
  EXPECT_TRUE(std::all_of(empty.counts.begin(), empty.counts.end(), [](std::size_t c) { return c == 0; }));
  EXPECT_EQ(code_of([&] { positive_count_histogram(runs, 0.0); }), ErrorCode::kInvalidConfig);
}

TEST(Histogram, ConservesRunsForAnyWidth) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::size_t> count(0, 500);
  std::uniform_real_distribution<double> width(0.5, 50.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> runs(trial);
    for (auto& r : runs) r = count(rng);
    const double w = width(rng);
    const Histogram h = positive_count_histogram(runs, w);
    EXPECT_EQ(h.total(), runs.size());
    for (std::size_t r : runs) {
      const auto bin = static_cast<std::size_t>(std::floor(static_cast<double>(r) / w));
      ASSERT_LT(bin, h.counts.size());
      EXPECT_GT(h.counts[bin], 0u);
    }
  }
}

TEST(Histogram, Csv) {
  const std::vector<std::size_t> runs{0, 0, 1, 10};
  std::ostringstream plain, log;
  write_histogram_csv(plain, positive_count_histogram(runs, 5.0));
  EXPECT_EQ(plain.str(), "bin_lower,bin_upper,count\n0,5,3\n5,10,0\n10,15,1\n");
  write_histogram_csv(log, positive_count_histogram(runs, 5.0), true);
  EXPECT_EQ(log.str(), "bin_lower,bin_upper,count,log10_count\n0,5,3,0.477121255\n5,10,0,NA\n10,15,1,0\n");
}

TEST(Report, CsvAndTable) {
  std::vector<double> truth{0.0, 5.0, 20.0, 0.0}, predicted{1.0, 6.0, 0.0, 0.0};
  EvalReport r = confusion_at_threshold(predicted, truth, 0.0);
  r.baseline_precision = baseline_precision(truth, 0.0);
  std::ostringstream csv;
  write_report_csv(csv, {{"model", r}});
  EXPECT_EQ(csv.str(),
            "label,threshold_K,tp,fp,tn,fn,precision,recall,f1,accuracy,baseline_precision\n"
            "model,0,1,1,1,1,0.5,0.5,0.5,0.5,0.5\n");
  const std::string table = format_report_table({{"model", r}});
  EXPECT_NE(table.find("model"), std::string::npos);
  EXPECT_NE(table.find("50"), std::string::npos);
}

}  // namespace
}  // namespace scsearch
