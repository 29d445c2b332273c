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


// Chemical formula parsing and normalized compositions.
//
// Grammar accepted by parse_formula:
//
//   formula   := item (sep? item)*
//   item      := element subscript? | '(' formula ')' subscript?
//                                   | '[' formula ']' subscript?
//   element   := Upper lower?            (must be one of the 118 symbols)
//   subscript := term (('+' | '-') term)* | ('+' | '-') term ...
//   term      := number variable? | variable
//   variable  := a single lowercase ASCII letter, or U+03B4 (delta)
//   sep       := whitespace, or U+00B7 / '*' when interpuncts are enabled
//
// A subscript that starts with a sign is read as 1 +/- term ("O+x").

#ifndef SCSEARCH_FORMULA_HPP_
#define SCSEARCH_FORMULA_HPP_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scsearch/element.hpp"

namespace scsearch {

/// Formula text exactly as found in the source data.
class RawFormula {
 public:
  // Throws Error(kMalformedSyntax) when `text` is empty.
  explicit RawFormula(std::string text);

  const std::string& text() const noexcept { return text_; }

  friend bool operator==(const RawFormula&, const RawFormula&) = default;

 private:
  std::string text_;
};

/// Unnormalized element counts in formula units.
using Counts = std::map<ElementSymbol, double>;

enum class ParseErrorKind { kUnknownElement, kMalformedSyntax, kUnresolvedVariable };

struct ParseError {
  ParseErrorKind kind;
  std::string message;
  std::size_t position = 0;              // byte offset into the raw text
  std::vector<std::string> variables;    // set for kUnresolvedVariable
};

std::string_view to_string(ParseErrorKind kind);

using ParseResult = std::variant<Counts, ParseError>;

struct ParseOptions {
  // Hydrate/adduct dots ("CuSO4·H2O") are rejected unless enabled.
  bool interpunct_as_separator = false;
};

ParseResult parse_formula(const RawFormula& raw, const ParseOptions& options = {});

/// True when the formula carries a symbolic stoichiometry variable. Variables
/// seen before a syntax error still count.
bool has_unresolved_variables(const RawFormula& raw);

/// Distinct variable names in order of first appearance.
std::vector<std::string> variables_in(const RawFormula& raw);

/// Evaluates every symbolic subscript with `bindings` and re-emits the formula
/// with numeric subscripts. Throws Error with kMissingBinding,
/// kNonPositiveCount, or the syntax error code of the input.
RawFormula substitute_variables(const RawFormula& raw,
                                const std::map<std::string, double>& bindings);

/// Molar fractions keyed by element: strictly positive, summing to one.
class Composition {
 public:
  using Map = std::map<ElementSymbol, double>;

  // Throws Error(kEmptyCounts) or Error(kNonPositiveCount) when `fractions`
  // breaks the invariants.
  static Composition from_fractions(Map fractions);

  const Map& fractions() const noexcept { return fractions_; }
  std::size_t size() const noexcept { return fractions_.size(); }
  bool contains(ElementSymbol e) const { return fractions_.count(e) != 0; }
  double fraction(ElementSymbol e) const;

  Map::const_iterator begin() const { return fractions_.begin(); }
  Map::const_iterator end() const { return fractions_.end(); }

  /// Same element set and every fraction within `tolerance`.
  bool approx_equal(const Composition& other, double tolerance) const;

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  explicit Composition(Map fractions) : fractions_(std::move(fractions)) {}
  Map fractions_;
};

inline constexpr double kCompositionSumTolerance = 1e-9;

Composition normalize(const Counts& counts);

/// parse_formula followed by normalize; throws Error on any parse failure.
Composition parse_composition(std::string_view text, const ParseOptions& options = {});

/// Elements by atomic number, each followed by its fraction. With no digit
/// limit the shortest round-tripping decimal is printed.
std::string canonical_formula(const Composition& c,
                              std::optional<int> significant_digits = std::nullopt);

/// Fixed-point rendering, never scientific notation. Without `significant_digits`
/// the output round-trips exactly.
std::string format_decimal(double value, std::optional<int> significant_digits = std::nullopt);

}  // namespace scsearch

#endif  // SCSEARCH_FORMULA_HPP_
