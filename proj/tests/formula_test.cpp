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
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "scsearch/error.hpp"
#include "scsearch/formula.hpp"

namespace scsearch {
namespace {

Counts counts_of(std::string_view text) {
  const ParseResult r = parse_formula(RawFormula(std::string(text)));
  if (const auto* e = std::get_if<ParseError>(&r)) {
    ADD_FAILURE() << text << ": " << e->message;
    return {};
  }
  return std::get<Counts>(r);
}

Counts make_counts(std::initializer_list<std::pair<const char*, double>> items) {
  Counts c;
  for (const auto& [s, v] : items) c[ElementSymbol::of(s)] = v;
  return c;
}

void expect_counts_near(const Counts& got, const Counts& want, double tol = 1e-12) {
  ASSERT_EQ(got.size(), want.size());
  for (const auto& [e, v] : want) {
    ASSERT_TRUE(got.count(e)) << e.symbol();
    EXPECT_NEAR(got.at(e), v, tol) << e.symbol();
  }
}

ParseErrorKind error_kind(std::string_view text, const ParseOptions& options = {}) {
  const ParseResult r = parse_formula(RawFormula(std::string(text)), options);
  const auto* e = std::get_if<ParseError>(&r);
  if (e == nullptr) {
    ADD_FAILURE() << text << " parsed";
    return ParseErrorKind::kMalformedSyntax;
  }
  return e->kind;
}

// Stack-based walk over element, number and bracket tokens. Knows nothing
// about variables, signs or separators other than spaces; returns nullopt
// for anything else.
std::optional<Counts> token_walk(const std::string& s) {
  std::vector<Counts> stack(1);
  std::vector<char> opens;
  std::size_t i = 0;
  auto read_number = [&](double& out) {
    const std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) ++i;
    const std::string digits = s.substr(start, i - start);
    if (std::count(digits.begin(), digits.end(), '.') > 1 || digits == ".") return false;
    out = std::stod(digits);
    return true;
  };
  while (i < s.size()) {
    const char ch = s[i];
    if (ch == ' ') {
      ++i;
    } else if (std::isupper(static_cast<unsigned char>(ch))) {
      std::optional<ElementSymbol> e;
      if (i + 1 < s.size() && std::islower(static_cast<unsigned char>(s[i + 1]))) {
        e = ElementSymbol::from_symbol(s.substr(i, 2));
        if (e) i += 2;
      }
      if (!e) {
        e = ElementSymbol::from_symbol(s.substr(i, 1));
        if (!e) return std::nullopt;
        ++i;
      }
      double n = 1.0;
      if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
        if (!read_number(n)) return std::nullopt;
      }
      if (n <= 0.0) return std::nullopt;
      stack.back()[*e] += n;
    } else if (ch == '(' || ch == '[') {
      opens.push_back(ch == '(' ? ')' : ']');
      stack.emplace_back();
      ++i;
    } else if (ch == ')' || ch == ']') {
      if (opens.empty() || opens.back() != ch || stack.back().empty()) return std::nullopt;
      opens.pop_back();
      ++i;
      double n = 1.0;
      if (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.')) {
        if (!read_number(n)) return std::nullopt;
      }
      if (n <= 0.0) return std::nullopt;
      Counts inner = std::move(stack.back());
      stack.pop_back();
      for (const auto& [e, v] : inner) stack.back()[e] += v * n;
    } else {
      return std::nullopt;
    }
  }
  if (!opens.empty() || stack.back().empty()) return std::nullopt;
  return stack.back();
}

TEST(ParseFormula, WorkedExamples) {
  expect_counts_near(counts_of("H2He3"), make_counts({{"H", 2}, {"He", 3}}));
  expect_counts_near(counts_of("Ca"), make_counts({{"Ca", 1}}));
  expect_counts_near(counts_of("Ba(Fe0.9Co0.1)2As2"), make_counts({{"Ba", 1}, {"Fe", 1.8}, {"Co", 0.2}, {"As", 2}}));
  expect_counts_near(counts_of("Ca10(Pt3As8)(Fe2As2)5"), make_counts({{"Ca", 10}, {"Pt", 3}, {"As", 18}, {"Fe", 10}}));
  expect_counts_near(counts_of("K4[Fe(CN)6]"), make_counts({{"K", 4}, {"Fe", 1}, {"C", 6}, {"N", 6}}));
  expect_counts_near(counts_of(" Y Ba2  Cu3 O7 "), make_counts({{"Y", 1}, {"Ba", 2}, {"Cu", 3}, {"O", 7}}));
  expect_counts_near(counts_of("NbNb"), make_counts({{"Nb", 2}}));
}

TEST(ParseFormula, Errors) {
  EXPECT_EQ(error_kind("Xx2"), ParseErrorKind::kUnknownElement);
  EXPECT_EQ(error_kind("Qq"), ParseErrorKind::kUnknownElement);
  for (const char* bad : {"(Ba", "Ba)", "Fe()2", "Fe2(", "2Fe", "Cu0O", "Fe..5As", "(Ba]", "Fe-2", "Fe$"}) {
    EXPECT_EQ(error_kind(bad), ParseErrorKind::kMalformedSyntax) << bad;
  }
  EXPECT_EQ(error_kind("CuSO4·5H2O"), ParseErrorKind::kMalformedSyntax);
  EXPECT_EQ(error_kind("YBa2Cu3O7-x"), ParseErrorKind::kUnresolvedVariable);
  EXPECT_THROW(RawFormula(""), Error);
}

TEST(ParseFormula, InterpunctOption) {
  ParseOptions options;
  options.interpunct_as_separator = true;
  const ParseResult r = parse_formula(RawFormula("CuSO4·5H2O"), options);
  ASSERT_TRUE(std::holds_alternative<Counts>(r));
  // The adduct multiplier applies to the following group.
  expect_counts_near(std::get<Counts>(r), make_counts({{"Cu", 1}, {"S", 1}, {"O", 9}, {"H", 10}}));
}

TEST(ParseFormula, AgreesWithTokenWalkOnCorpus) {
  std::ifstream in(SCSEARCH_TEST_DATA_DIR "/formula_corpus.txt");
  ASSERT_TRUE(in) << "corpus missing";
  int compared = 0;
  int lines = 0;
  for (std::string line; std::getline(in, line);) {
    ++lines;
    const ParseResult r = parse_formula(RawFormula(line));
    const std::optional<Counts> oracle = token_walk(line);
    if (!oracle) continue;
    ASSERT_TRUE(std::holds_alternative<Counts>(r)) << line;
    expect_counts_near(std::get<Counts>(r), *oracle);
    ++compared;
  }
  EXPECT_EQ(lines, 200);
  EXPECT_GT(compared, 150);
}

std::string random_formula(std::mt19937_64& rng, int depth = 0) {
  std::uniform_int_distribution<int> z(1, 118);
  std::uniform_int_distribution<int> items(1, 4);
  std::uniform_int_distribution<int> pick(0, 9);
  std::string out;
  const int n = items(rng);
  for (int k = 0; k < n; ++k) {
    if (depth < 3 && pick(rng) == 0) {
      const bool square = pick(rng) < 3;
      out += square ? "[" : "(";
      out += random_formula(rng, depth + 1);
      out += square ? "]" : ")";
    } else {
      out += ElementSymbol::from_atomic_number(z(rng))->symbol();
    }
    const int sub = pick(rng);
    if (sub < 4) {
      out += std::to_string(1 + pick(rng));
    } else if (sub < 6) {
      out += std::to_string(pick(rng)) + "." + std::to_string(1 + pick(rng));
    }
    if (pick(rng) == 0) out += ' ';
  }
  return out;
}

TEST(ParseFormula, AgreesWithTokenWalkOnRandomFormulas) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 3000; ++trial) {
    const std::string f = random_formula(rng);
    const std::optional<Counts> oracle = token_walk(f);
    ASSERT_TRUE(oracle.has_value()) << f;
    const ParseResult r = parse_formula(RawFormula(f));
    ASSERT_TRUE(std::holds_alternative<Counts>(r)) << f;
    expect_counts_near(std::get<Counts>(r), *oracle, 1e-9);
  }
}

TEST(ParseFormula, TotalOnFuzzedInput) {
  std::mt19937_64 rng(9);
  const std::string alphabet = "HBCNOFPSKVYIWUbcdefghilmnorstuxyz0123456789.()[]+- *\xc2\xb7\xce\xb4";
  std::uniform_int_distribution<std::size_t> len(1, 24);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  for (int trial = 0; trial < 20000; ++trial) {
    std::string s;
    const std::size_t n = len(rng);
    for (std::size_t i = 0; i < n; ++i) s += alphabet[ch(rng)];
    const ParseResult r = parse_formula(RawFormula(s));
    if (const auto* c = std::get_if<Counts>(&r)) {
      EXPECT_FALSE(c->empty()) << s;
      for (const auto& [e, v] : *c) EXPECT_GT(v, 0.0) << s;
    } else {
      const auto& e = std::get<ParseError>(r);
      EXPECT_LE(e.position, s.size()) << s;
      EXPECT_FALSE(e.message.empty()) << s;
    }
  }
}

TEST(ParseFormula, GroupExpansionEquivalence) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> z(1, 118);
  for (int trial = 0; trial < 500; ++trial) {
    const std::string a(ElementSymbol::from_atomic_number(z(rng))->symbol());
    const std::string b(ElementSymbol::from_atomic_number(z(rng))->symbol());
    const std::string c(ElementSymbol::from_atomic_number(z(rng))->symbol());
    expect_counts_near(counts_of(a + "(" + b + c + "2)3"), counts_of(a + b + "3" + c + "6"));
  }
}

// Scan for subscript letters: a lowercase letter is a variable unless it
// belongs to the element token started by the capital right before it.
bool variable_scan(const std::string& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 2, "\xce\xb4") == 0) return true;
    if (!std::islower(static_cast<unsigned char>(s[i]))) continue;
    const bool after_capital = i > 0 && std::isupper(static_cast<unsigned char>(s[i - 1]));
    if (after_capital && ElementSymbol::from_symbol(s.substr(i - 1, 2))) continue;
    if (after_capital && !ElementSymbol::from_symbol(s.substr(i - 1, 1))) continue;  // unknown symbol
    return true;
  }
  return false;
}

TEST(Variables, DetectionExamples) {
  EXPECT_TRUE(has_unresolved_variables(RawFormula("H2-xO1+x")));
  EXPECT_FALSE(has_unresolved_variables(RawFormula("CaBi2")));
  EXPECT_TRUE(has_unresolved_variables(RawFormula("La O1-d Fe As")));
  EXPECT_TRUE(has_unresolved_variables(RawFormula("Bi2Sr2CaCu2O8+δ")));
  EXPECT_TRUE(has_unresolved_variables(RawFormula("La2-xSrxCuO4")));
  EXPECT_FALSE(has_unresolved_variables(RawFormula("Cd")));
  EXPECT_EQ(variables_in(RawFormula("H2-xO1+x")), (std::vector<std::string>{"x"}));
  EXPECT_EQ(variables_in(RawFormula("Nd2-xCexCuO4-y")), (std::vector<std::string>{"x", "y"}));
}

TEST(Variables, AgreesWithScanOnCorpus) {
  std::ifstream in(SCSEARCH_TEST_DATA_DIR "/formula_corpus.txt");
  for (std::string line; std::getline(in, line);) {
    EXPECT_EQ(has_unresolved_variables(RawFormula(line)), variable_scan(line)) << line;
  }
}

TEST(Variables, Substitution) {
  EXPECT_EQ(substitute_variables(RawFormula("H2-xO1+x"), {{"x", 0.5}}).text(), "H1.5O1.5");
  EXPECT_EQ(substitute_variables(RawFormula("FeSe1-x"), {{"x", 0.0}}).text(), "FeSe1");
  const RawFormula lsco = substitute_variables(RawFormula("La2-xSrxCuO4"), {{"x", 0.15}});
  expect_counts_near(counts_of(lsco.text()), make_counts({{"La", 1.85}, {"Sr", 0.15}, {"Cu", 1}, {"O", 4}}));
  try {
    substitute_variables(RawFormula("FeSe1-x"), {});
    FAIL() << "expected MissingBinding";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingBinding);
  }
  try {
    substitute_variables(RawFormula("FeSe1-x"), {{"x", 1.0}});
    FAIL() << "expected NonPositiveCount";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveCount);
  }
}

TEST(Normalize, Examples) {
  const Composition hhe = normalize(make_counts({{"H", 2}, {"He", 3}}));
  EXPECT_EQ(hhe.fraction(ElementSymbol::of("H")), 0.4);
  EXPECT_EQ(hhe.fraction(ElementSymbol::of("He")), 0.6);
  const Composition cabi = normalize(make_counts({{"Ca", 1}, {"Bi", 2}}));
  EXPECT_NEAR(cabi.fraction(ElementSymbol::of("Ca")), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(cabi.fraction(ElementSymbol::of("Bi")), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(normalize(make_counts({{"Nb", 1}})).fraction(ElementSymbol::of("Nb")), 1.0);
  try {
    normalize({});
    FAIL() << "expected EmptyCounts";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCounts);
  }
}

TEST(Composition, RejectsBrokenInvariants) {
  EXPECT_THROW(Composition::from_fractions({}), Error);
  EXPECT_THROW(Composition::from_fractions({{ElementSymbol::of("H"), 0.5}}), Error);
  EXPECT_THROW(Composition::from_fractions({{ElementSymbol::of("H"), 1.5}, {ElementSymbol::of("O"), -0.5}}), Error);
  EXPECT_NO_THROW(Composition::from_fractions({{ElementSymbol::of("H"), 0.25}, {ElementSymbol::of("O"), 0.75}}));
}

Counts random_counts(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> z(1, 118);
  std::uniform_int_distribution<int> n(1, 6);
  std::uniform_real_distribution<double> v(1e-3, 50.0);
  Counts c;
  const int k = n(rng);
  while (static_cast<int>(c.size()) < k) c[*ElementSymbol::from_atomic_number(z(rng))] = v(rng);
  return c;
}

TEST(Normalize, Idempotent) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> k(1e-3, 1e3);
  for (int trial = 0; trial < 2000; ++trial) {
    const Composition c = normalize(random_counts(rng));
    Counts scaled;
    const double s = k(rng);
    for (const auto& [e, f] : c) scaled[e] = f * s;
    EXPECT_TRUE(normalize(scaled).approx_equal(c, 1e-15));
  }
}

TEST(Canonical, RoundTrip) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5000; ++trial) {
    const Composition c = normalize(random_counts(rng));
    const std::string text = canonical_formula(c);
    const Composition back = parse_composition(text);
    EXPECT_TRUE(back.approx_equal(c, 1e-12)) << text;
  }
}

TEST(Canonical, OrderedByAtomicNumber) {
  EXPECT_EQ(canonical_formula(parse_composition("TiO2")), "O0.6666666666666666Ti0.3333333333333333");
  EXPECT_EQ(canonical_formula(parse_composition("He3H2")), "H0.4He0.6");
  EXPECT_EQ(canonical_formula(parse_composition("TiO2"), 6), "O0.666667Ti0.333333");
  EXPECT_EQ(format_decimal(1.5), "1.5");
  EXPECT_EQ(format_decimal(2.0), "2");
  EXPECT_EQ(format_decimal(0.000123456789, 3), "0.000123");
}

}  // namespace
}  // namespace scsearch
