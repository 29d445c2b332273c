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


// Material records and the cleaning / splitting steps that turn raw
// superconductor and crystallography listings into training data.

#ifndef SCSEARCH_DATASET_HPP_
#define SCSEARCH_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scsearch/formula.hpp"

namespace scsearch {

enum class Source { kSupercon, kCod, kEvalList, kSyntheticNegative };
enum class Family { kCuprate, kFesc, kConventional };

std::string_view to_string(Source source);
std::string_view to_string(Family family);
std::optional<Source> source_from_string(std::string_view text);
std::optional<Family> family_from_string(std::string_view text);

struct MaterialRecord {
  RawFormula raw;
  std::optional<Composition> composition;  // absent when the formula was flagged
  std::optional<double> tc_kelvin;
  std::optional<int> year;
  Source source = Source::kSupercon;
  std::string flagged_reason;  // empty for clean rows
};

/// Builds a record by parsing `formula`; parse failures land in flagged_reason.
MaterialRecord make_record(std::string formula, std::optional<double> tc_kelvin,
                           std::optional<int> year, Source source);

/// Exact-match key for compositions: (Z, fraction rounded to 1e-9) pairs.
using CompositionKey = std::vector<std::pair<int, std::int64_t>>;
CompositionKey composition_key(const Composition& c);

inline constexpr double kOverlapTolerance = 1e-6;

struct IngestResult {
  std::vector<MaterialRecord> records;
  std::size_t kept = 0;
  std::size_t flagged = 0;
  std::size_t blank = 0;  // rows with an empty formula cell, not retained
};

/// Reads a CSV with a required `formula` column and optional `tc_K` and
/// `year` columns. A `source` column, when present, overrides `source` per
/// row. Throws Error(kIoFailure) or Error(kSchemaMismatch).
IngestResult ingest_csv(const std::filesystem::path& path, Source source);
IngestResult ingest_csv(std::istream& in, Source source);

/// formula,tc_K,year,source,family,flagged_reason
void write_dataset_csv(std::ostream& out, const std::vector<MaterialRecord>& records);

/// Merges records with the same composition: Tc becomes the lower median of
/// the known values, year the earliest. Unparsed records pass through.
std::vector<MaterialRecord> dedup_median_tc(const std::vector<MaterialRecord>& records);

/// Drops SUPERCON records without a Tc; other sources are untouched.
std::vector<MaterialRecord> drop_missing_tc(const std::vector<MaterialRecord>& records);

/// Drops unparsed records.
std::vector<MaterialRecord> drop_flagged(const std::vector<MaterialRecord>& records);

Family classify_family(const Composition& c);

/// Carbon together with hydrogen marks an organic compound.
bool is_organic(const Composition& c);
std::vector<MaterialRecord> filter_inorganic(const std::vector<MaterialRecord>& records);

/// Looks up compositions within a per-element tolerance.
class CompositionIndex {
 public:
  explicit CompositionIndex(double tolerance = kOverlapTolerance) : tolerance_(tolerance) {}
  CompositionIndex(const std::vector<MaterialRecord>& records,
                   double tolerance = kOverlapTolerance);

  void insert(const Composition& c);
  bool contains(const Composition& c) const;

 private:
  double tolerance_;
  std::map<std::vector<int>, std::vector<Composition>> buckets_;
};

std::vector<MaterialRecord> remove_overlap(const std::vector<MaterialRecord>& primary,
                                           const std::vector<MaterialRecord>& reference,
                                           double tolerance = kOverlapTolerance);

/// COD records that match neither known superconductors nor the evaluation
/// list, relabelled SYNTHETIC_NEGATIVE with Tc = 0.
std::vector<MaterialRecord> garbage_in(const std::vector<MaterialRecord>& cod,
                                       const std::vector<MaterialRecord>& known_sc,
                                       const std::vector<MaterialRecord>& eval_list);

struct TemporalSplit {
  std::vector<MaterialRecord> train;         // year < cutoff
  std::vector<MaterialRecord> held_out;      // year >= cutoff
  std::vector<MaterialRecord> missing_year;  // reported, in neither side
};

TemporalSplit temporal_split(const std::vector<MaterialRecord>& records, int year_cutoff);

/// Drops records whose composition matches any of `formulas`. Throws
/// Error(kUnknownFormula) if a name does not parse.
std::vector<MaterialRecord> remove_named(const std::vector<MaterialRecord>& records,
                                         const std::vector<std::string>& formulas);

struct Fold {
  std::vector<std::size_t> train_ids;
  std::vector<std::size_t> test_ids;
};

/// Shuffles [0, n) by `seed` and cuts it into ceil(n / fold_size) test folds.
/// Throws Error(kFoldTooLarge) when fold_size is 0 or exceeds n.
std::vector<Fold> rotating_folds(std::size_t n, std::size_t fold_size, std::uint64_t seed);

/// One shuffled split with round(n * test_fraction) test ids (at least one).
Fold random_split(std::size_t n, double test_fraction, std::uint64_t seed);

enum class SplitKind { kTemporal, kRandomFraction, kRotatingFolds };

struct SplitSpec {
  SplitKind kind = SplitKind::kRotatingFolds;
  std::optional<int> year_cutoff;
  std::optional<double> test_fraction;
  std::optional<std::size_t> fold_size;
  std::uint64_t seed = 0;

  /// Throws Error(kInvalidSplit) unless exactly the fields `kind` needs are set.
  void validate() const;
};

std::string_view to_string(SplitKind kind);

}  // namespace scsearch

#endif  // SCSEARCH_DATASET_HPP_
