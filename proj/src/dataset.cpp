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


#include "scsearch/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_map>

#include "scsearch/csv.hpp"
#include "scsearch/error.hpp"

namespace scsearch {
namespace {

constexpr int kZ_H = 1, kZ_C = 6, kZ_O = 8, kZ_P = 15, kZ_S = 16, kZ_Fe = 26,
              kZ_Cu = 29, kZ_As = 33, kZ_Se = 34;

bool has(const Composition& c, int z) {
  return c.contains(*ElementSymbol::from_atomic_number(z));
}

std::vector<int> element_set(const Composition& c) {
  std::vector<int> zs;
  zs.reserve(c.size());
  for (const auto& [e, f] : c) zs.push_back(e.atomic_number());
  return zs;
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t'; });
}

}  // namespace

std::string_view to_string(Source source) {
  switch (source) {
    case Source::kSupercon: return "SUPERCON";
    case Source::kCod: return "COD";
    case Source::kEvalList: return "EVAL_LIST";
    case Source::kSyntheticNegative: return "SYNTHETIC_NEGATIVE";
  }
  return "?";
}

std::string_view to_string(Family family) {
  switch (family) {
    case Family::kCuprate: return "CUPRATE";
    case Family::kFesc: return "FESC";
    case Family::kConventional: return "CONVENTIONAL";
  }
  return "?";
}

std::optional<Source> source_from_string(std::string_view text) {
  for (Source s : {Source::kSupercon, Source::kCod, Source::kEvalList, Source::kSyntheticNegative}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

std::optional<Family> family_from_string(std::string_view text) {
  for (Family f : {Family::kCuprate, Family::kFesc, Family::kConventional}) {
    if (to_string(f) == text) return f;
  }
  return std::nullopt;
}

std::string_view to_string(SplitKind kind) {
  switch (kind) {
    case SplitKind::kTemporal: return "TEMPORAL";
    case SplitKind::kRandomFraction: return "RANDOM_FRACTION";
    case SplitKind::kRotatingFolds: return "ROTATING_FOLDS";
  }
  return "?";
}

MaterialRecord make_record(std::string formula, std::optional<double> tc_kelvin,
                           std::optional<int> year, Source source) {
  MaterialRecord rec{RawFormula(std::move(formula)), std::nullopt, tc_kelvin, year, source, {}};
  ParseResult parsed = parse_formula(rec.raw);
  if (auto* err = std::get_if<ParseError>(&parsed)) {
    rec.flagged_reason = std::string(to_string(err->kind));
    if (err->kind != ParseErrorKind::kUnresolvedVariable) rec.flagged_reason += ": " + err->message;
  } else {
    rec.composition = normalize(std::get<Counts>(parsed));
  }
  return rec;
}

CompositionKey composition_key(const Composition& c) {
  CompositionKey key;
  key.reserve(c.size());
  for (const auto& [e, f] : c) {
    key.emplace_back(e.atomic_number(), static_cast<std::int64_t>(std::llround(f * 1e9)));
  }
  return key;
}

IngestResult ingest_csv(const std::filesystem::path& path, Source source) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  return ingest_csv(in, source);
}

IngestResult ingest_csv(std::istream& in, Source source) {
  const CsvTable table = read_csv(in);
  const auto formula_col = table.column("formula");
  if (!formula_col) throw Error(ErrorCode::kSchemaMismatch, "missing required column 'formula'");
  const auto tc_col = table.column("tc_K");
  const auto year_col = table.column("year");
  const auto source_col = table.column("source");

  IngestResult result;
  for (const auto& row : table.rows) {
    const std::string& formula = row[*formula_col];
    if (blank(formula)) {
      ++result.blank;
      continue;
    }
    std::string problem;
    std::optional<double> tc;
    if (tc_col && !blank(row[*tc_col])) {
      tc = parse_number<double>(row[*tc_col]);
      if (!tc || !std::isfinite(*tc) || *tc < 0.0) {
        problem = "bad tc_K '" + row[*tc_col] + "'";
        tc.reset();
      }
    }
    std::optional<int> year;
    if (year_col && !blank(row[*year_col])) {
      year = parse_number<int>(row[*year_col]);
      if (!year) problem = "bad year '" + row[*year_col] + "'";
    }
    Source row_source = source;
    if (source_col && !blank(row[*source_col])) {
      auto s = source_from_string(row[*source_col]);
      if (!s) throw Error(ErrorCode::kSchemaMismatch, "unknown source '" + row[*source_col] + "'");
      row_source = *s;
    }
    if (row_source == Source::kSyntheticNegative) tc = 0.0;

    MaterialRecord rec = make_record(formula, tc, year, row_source);
    if (!problem.empty() && rec.flagged_reason.empty()) rec.flagged_reason = problem;
    if (rec.flagged_reason.empty()) ++result.kept;
    else ++result.flagged;
    result.records.push_back(std::move(rec));
  }
  return result;
}

void write_dataset_csv(std::ostream& out, const std::vector<MaterialRecord>& records) {
  write_csv_row(out, {"formula", "tc_K", "year", "source", "family", "flagged_reason"});
  for (const MaterialRecord& r : records) {
    write_csv_row(out, {r.raw.text(), r.tc_kelvin ? format_real(*r.tc_kelvin) : "",
                        r.year ? std::to_string(*r.year) : "", std::string(to_string(r.source)),
                        r.composition ? std::string(to_string(classify_family(*r.composition))) : "",
                        r.flagged_reason});
  }
}

std::vector<MaterialRecord> dedup_median_tc(const std::vector<MaterialRecord>& records) {
  std::map<CompositionKey, std::size_t> first_index;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::optional<std::size_t>> group_of(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!records[i].composition) continue;
    auto [it, inserted] = first_index.emplace(composition_key(*records[i].composition), groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
    group_of[i] = it->second;
  }

  std::vector<MaterialRecord> out;
  out.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!group_of[i]) {
      out.push_back(records[i]);
      continue;
    }
    const auto& members = groups[*group_of[i]];
    if (members.front() != i) continue;

    MaterialRecord merged = records[i];
    std::vector<double> tcs;
    std::optional<int> year;
    for (std::size_t m : members) {
      if (records[m].tc_kelvin) tcs.push_back(*records[m].tc_kelvin);
      if (records[m].year && (!year || *records[m].year < *year)) year = records[m].year;
    }
    if (tcs.empty()) {
      merged.tc_kelvin.reset();
    } else {
      const std::size_t mid = (tcs.size() - 1) / 2;
      std::nth_element(tcs.begin(), tcs.begin() + static_cast<std::ptrdiff_t>(mid), tcs.end());
      merged.tc_kelvin = tcs[mid];
    }
    merged.year = year;
    out.push_back(std::move(merged));
  }
  return out;
}

std::vector<MaterialRecord> drop_missing_tc(const std::vector<MaterialRecord>& records) {
  std::vector<MaterialRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [](const MaterialRecord& r) {
    return r.source != Source::kSupercon || r.tc_kelvin.has_value();
  });
  return out;
}

std::vector<MaterialRecord> drop_flagged(const std::vector<MaterialRecord>& records) {
  std::vector<MaterialRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [](const MaterialRecord& r) { return r.composition.has_value(); });
  return out;
}

Family classify_family(const Composition& c) {
  if (has(c, kZ_Cu) && has(c, kZ_O) && c.size() >= 3) return Family::kCuprate;
  if (has(c, kZ_Fe) && (has(c, kZ_As) || has(c, kZ_S) || has(c, kZ_Se) || has(c, kZ_P))) {
    return Family::kFesc;
  }
  return Family::kConventional;
}

bool is_organic(const Composition& c) { return has(c, kZ_C) && has(c, kZ_H); }

std::vector<MaterialRecord> filter_inorganic(const std::vector<MaterialRecord>& records) {
  std::vector<MaterialRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [](const MaterialRecord& r) {
    return !r.composition || !is_organic(*r.composition);
  });
  return out;
}

CompositionIndex::CompositionIndex(const std::vector<MaterialRecord>& records, double tolerance)
    : tolerance_(tolerance) {
  for (const MaterialRecord& r : records) {
    if (r.composition) insert(*r.composition);
  }
}

void CompositionIndex::insert(const Composition& c) { buckets_[element_set(c)].push_back(c); }

bool CompositionIndex::contains(const Composition& c) const {
  auto it = buckets_.find(element_set(c));
  if (it == buckets_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Composition& other) { return c.approx_equal(other, tolerance_); });
}

std::vector<MaterialRecord> remove_overlap(const std::vector<MaterialRecord>& primary,
                                           const std::vector<MaterialRecord>& reference,
                                           double tolerance) {
  const CompositionIndex index(reference, tolerance);
  std::vector<MaterialRecord> out;
  std::copy_if(primary.begin(), primary.end(), std::back_inserter(out), [&](const MaterialRecord& r) {
    return !r.composition || !index.contains(*r.composition);
  });
  return out;
}

std::vector<MaterialRecord> garbage_in(const std::vector<MaterialRecord>& cod,
                                       const std::vector<MaterialRecord>& known_sc,
                                       const std::vector<MaterialRecord>& eval_list) {
  CompositionIndex index(known_sc);
  for (const MaterialRecord& r : eval_list) {
    if (r.composition) index.insert(*r.composition);
  }
  std::vector<MaterialRecord> out;
  for (const MaterialRecord& r : cod) {
    if (!r.composition || index.contains(*r.composition)) continue;
    MaterialRecord neg = r;
    neg.source = Source::kSyntheticNegative;
    neg.tc_kelvin = 0.0;
    out.push_back(std::move(neg));
  }
  return out;
}

TemporalSplit temporal_split(const std::vector<MaterialRecord>& records, int year_cutoff) {
  TemporalSplit split;
  for (const MaterialRecord& r : records) {
    if (!r.year) split.missing_year.push_back(r);
    else if (*r.year < year_cutoff) split.train.push_back(r);
    else split.held_out.push_back(r);
  }
  return split;
}

std::vector<MaterialRecord> remove_named(const std::vector<MaterialRecord>& records,
                                         const std::vector<std::string>& formulas) {
  CompositionIndex index;
  for (const std::string& f : formulas) {
    try {
      index.insert(parse_composition(f));
    } catch (const Error& e) {
      throw Error(ErrorCode::kUnknownFormula, e.what());
    }
  }
  std::vector<MaterialRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out), [&](const MaterialRecord& r) {
    return !r.composition || !index.contains(*r.composition);
  });
  return out;
}

std::vector<Fold> rotating_folds(std::size_t n, std::size_t fold_size, std::uint64_t seed) {
  if (fold_size == 0 || fold_size > n) {
    throw Error(ErrorCode::kFoldTooLarge, "fold size " + std::to_string(fold_size) +
                                              " for " + std::to_string(n) + " records");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const std::size_t fold_count = (n + fold_size - 1) / fold_size;
  std::vector<std::size_t> fold_of(n);
  for (std::size_t i = 0; i < n; ++i) fold_of[order[i]] = i / fold_size;

  std::vector<Fold> folds(fold_count);
  for (std::size_t id = 0; id < n; ++id) {
    for (std::size_t k = 0; k < fold_count; ++k) {
      (fold_of[id] == k ? folds[k].test_ids : folds[k].train_ids).push_back(id);
    }
  }
  return folds;
}

Fold random_split(std::size_t n, double test_fraction, std::uint64_t seed) {
  if (n < 2 || !(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidSplit, "need n >= 2 and test fraction in (0, 1)");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  const std::size_t test_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * test_fraction)), 1, n - 1);
  Fold fold;
  fold.test_ids.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(test_count));
  fold.train_ids.assign(order.begin() + static_cast<std::ptrdiff_t>(test_count), order.end());
  std::sort(fold.test_ids.begin(), fold.test_ids.end());
  std::sort(fold.train_ids.begin(), fold.train_ids.end());
  return fold;
}

void SplitSpec::validate() const {
  const bool ok = [&] {
    switch (kind) {
      case SplitKind::kTemporal:
        return year_cutoff && !test_fraction && !fold_size;
      case SplitKind::kRandomFraction:
        return !year_cutoff && test_fraction && *test_fraction > 0.0 && *test_fraction < 1.0 &&
               !fold_size;
      case SplitKind::kRotatingFolds:
        return !year_cutoff && !test_fraction && fold_size && *fold_size > 0;
    }
    return false;
  }();
  if (!ok) {
    throw Error(ErrorCode::kInvalidSplit,
                "fields do not match split kind " + std::string(to_string(kind)));
  }
}

}  // namespace scsearch
