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


#include "scsearch/formula.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "scsearch/error.hpp"

namespace scsearch {
namespace {

constexpr std::string_view kDelta = "\xCE\xB4";      // U+03B4
constexpr std::string_view kInterpunct = "\xC2\xB7"; // U+00B7
constexpr int kMaxDepth = 64;

// A subscript: constant + sum(coeff * variable).
struct LinearExpr {
  double constant = 0.0;
  std::vector<std::pair<std::string, double>> terms;

  bool symbolic() const { return !terms.empty(); }
};

struct Node {
  enum class Kind { kElement, kGroup } kind = Kind::kElement;
  std::optional<ElementSymbol> element;
  char opener = '(';
  std::vector<Node> children;
  std::optional<LinearExpr> subscript;
};

class Parser {
 public:
  Parser(std::string_view text, const ParseOptions& options)
      : text_(text), options_(options) {}

  // Returns the parsed tree; on failure error() is set.
  std::vector<Node> run() {
    std::vector<Node> nodes = sequence(0, '\0');
    if (!error_ && nodes.empty()) fail(ParseErrorKind::kMalformedSyntax, "no elements");
    return nodes;
  }

  const std::optional<ParseError>& error() const { return error_; }
  const std::vector<std::string>& variables() const { return variables_; }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  bool starts_with(std::string_view s, std::size_t ahead = 0) const {
    return text_.substr(std::min(text_.size(), pos_ + ahead)).substr(0, s.size()) == s;
  }
  static bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
  static bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  }

  void fail(ParseErrorKind kind, std::string message) {
    if (!error_) error_ = ParseError{kind, std::move(message), pos_, {}};
  }

  bool at_adduct() const { return starts_with(kInterpunct) || peek() == '*'; }

  // Consumes separators. Returns false when a forbidden one was found, or
  // when `stop_at_adduct` is set and an adduct separator comes next.
  bool skip_separators(bool stop_at_adduct = false, bool* saw_adduct = nullptr) {
    while (!at_end()) {
      if (is_space(peek())) {
        ++pos_;
      } else if (at_adduct()) {
        if (!options_.interpunct_as_separator) {
          fail(ParseErrorKind::kMalformedSyntax, "adduct separator not enabled");
          return false;
        }
        if (stop_at_adduct) return false;
        if (saw_adduct != nullptr) *saw_adduct = true;
        pos_ += peek() == '*' ? 1 : kInterpunct.size();
      } else {
        break;
      }
    }
    return true;
  }

  // An adduct part ("5H2O" after an interpunct) runs to the next adduct
  // separator or the enclosing closer, which it leaves unconsumed.
  std::vector<Node> sequence(int depth, char closer, bool adduct_part = false) {
    std::vector<Node> nodes;
    if (depth > kMaxDepth) {
      fail(ParseErrorKind::kMalformedSyntax, "nesting too deep");
      return nodes;
    }
    while (!error_) {
      bool saw_adduct = false;
      if (!skip_separators(adduct_part, &saw_adduct)) break;
      if (at_end()) {
        if (closer != '\0' && !adduct_part) fail(ParseErrorKind::kMalformedSyntax, "unbalanced parenthesis");
        break;
      }
      const char c = peek();
      if (adduct_part && (c == ')' || c == ']')) break;
      if (saw_adduct && is_digit(c)) {
        Node group;
        group.kind = Node::Kind::kGroup;
        group.opener = '\0';
        group.subscript = subscript();
        if (error_) break;
        group.children = sequence(depth + 1, closer, true);
        if (error_) break;
        if (group.children.empty()) {
          fail(ParseErrorKind::kMalformedSyntax, "empty adduct");
          break;
        }
        nodes.push_back(std::move(group));
      } else if (c == '(' || c == '[') {
        ++pos_;
        Node group;
        group.kind = Node::Kind::kGroup;
        group.opener = c;
        group.children = sequence(depth + 1, c == '(' ? ')' : ']');
        if (error_) break;
        if (group.children.empty()) {
          fail(ParseErrorKind::kMalformedSyntax, "empty group");
          break;
        }
        group.subscript = subscript();
        nodes.push_back(std::move(group));
      } else if (c == ')' || c == ']') {
        if (c != closer) {
          fail(ParseErrorKind::kMalformedSyntax, "unbalanced parenthesis");
        } else {
          ++pos_;
        }
        break;
      } else if (is_upper(c)) {
        Node node;
        node.element = element();
        if (error_) break;
        node.subscript = subscript();
        nodes.push_back(std::move(node));
      } else if (is_digit(c) || c == '.' || c == '+' || c == '-') {
        fail(ParseErrorKind::kMalformedSyntax, "dangling subscript");
      } else {
        fail(ParseErrorKind::kMalformedSyntax,
             "unexpected character '" + std::string(1, c) + "'");
      }
    }
    return nodes;
  }

  std::optional<ElementSymbol> element() {
    const std::size_t start = pos_;
    std::string one(1, peek());
    ++pos_;
    if (is_lower(peek())) {
      std::string two = one + peek();
      if (auto e = ElementSymbol::from_symbol(two)) {
        ++pos_;
        return e;
      }
      // A lone lowercase letter after a valid one-letter symbol is a variable
      // subscript ("Ox"); a longer lowercase run is an unknown symbol.
      if (is_lower(peek(1)) || !ElementSymbol::from_symbol(one)) {
        std::size_t end = pos_;
        while (end < text_.size() && is_lower(text_[end])) ++end;
        pos_ = start;
        fail(ParseErrorKind::kUnknownElement,
             "unknown element '" + std::string(text_.substr(start, end - start)) + "'");
        return std::nullopt;
      }
    }
    auto e = ElementSymbol::from_symbol(one);
    if (!e) {
      pos_ = start;
      fail(ParseErrorKind::kUnknownElement, "unknown element '" + one + "'");
    }
    return e;
  }

  bool at_variable(std::size_t ahead = 0) const {
    return (is_lower(peek(ahead)) && !is_lower(peek(ahead + 1))) ||
           starts_with(kDelta, ahead);
  }

  bool at_term(std::size_t ahead = 0) const {
    return is_digit(peek(ahead)) || (peek(ahead) == '.' && is_digit(peek(ahead + 1))) ||
           at_variable(ahead);
  }

  std::optional<double> number() {
    const std::size_t start = pos_;
    while (is_digit(peek())) ++pos_;
    if (peek() == '.') {
      ++pos_;
      while (is_digit(peek())) ++pos_;
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      pos_ = start;
      fail(ParseErrorKind::kMalformedSyntax, "bad number");
      return std::nullopt;
    }
    return value;
  }

  std::string variable() {
    if (starts_with(kDelta)) {
      pos_ += kDelta.size();
      return std::string(kDelta);
    }
    return std::string(1, text_[pos_++]);
  }

  void note_variable(const std::string& name) {
    if (std::find(variables_.begin(), variables_.end(), name) == variables_.end()) {
      variables_.push_back(name);
    }
  }

  // One term, added to `expr` with `sign`.
  void term(LinearExpr& expr, double sign) {
    double coeff = 1.0;
    bool has_number = false;
    if (is_digit(peek()) || peek() == '.') {
      auto n = number();
      if (!n) return;
      coeff = *n;
      has_number = true;
    }
    if (at_variable()) {
      std::string name = variable();
      note_variable(name);
      expr.terms.emplace_back(std::move(name), sign * coeff);
    } else if (has_number) {
      expr.constant += sign * coeff;
    } else {
      fail(ParseErrorKind::kMalformedSyntax, "dangling subscript");
    }
  }

  std::optional<LinearExpr> subscript() {
    const bool signed_start = (peek() == '+' || peek() == '-') && at_term(1);
    if (!signed_start && !at_term()) return std::nullopt;

    LinearExpr expr;
    if (signed_start) {
      expr.constant = 1.0;
    } else {
      term(expr, 1.0);
    }
    while (!error_ && (peek() == '+' || peek() == '-')) {
      const double sign = peek() == '+' ? 1.0 : -1.0;
      ++pos_;
      if (!at_term()) {
        fail(ParseErrorKind::kMalformedSyntax, "dangling sign");
        break;
      }
      term(expr, sign);
    }
    if (is_lower(peek())) {
      fail(ParseErrorKind::kMalformedSyntax, "unexpected lowercase letters");
    }
    if (!error_ && !expr.symbolic() && !(expr.constant > 0.0)) {
      fail(ParseErrorKind::kMalformedSyntax, "non-positive subscript");
    }
    return expr;
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
  std::optional<ParseError> error_;
  std::vector<std::string> variables_;
};

void accumulate(const std::vector<Node>& nodes, double multiplier, Counts& counts) {
  for (const Node& node : nodes) {
    const double m = multiplier * (node.subscript ? node.subscript->constant : 1.0);
    if (node.kind == Node::Kind::kElement) {
      counts[*node.element] += m;
    } else {
      accumulate(node.children, m, counts);
    }
  }
}

bool any_symbolic(const std::vector<Node>& nodes) {
  for (const Node& node : nodes) {
    if (node.subscript && node.subscript->symbolic()) return true;
    if (any_symbolic(node.children)) return true;
  }
  return false;
}

double evaluate(const LinearExpr& expr, const std::map<std::string, double>& bindings) {
  double value = expr.constant;
  for (const auto& [name, coeff] : expr.terms) {
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw Error(ErrorCode::kMissingBinding, "no value for variable '" + name + "'");
    }
    value += coeff * it->second;
  }
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kNonPositiveCount, "subscript evaluates to " + format_decimal(value, 9));
  }
  return value;
}

void emit(const std::vector<Node>& nodes, const std::map<std::string, double>& bindings,
          std::string& out) {
  for (const Node& node : nodes) {
    if (node.kind == Node::Kind::kGroup && node.opener == '\0') {
      out += kInterpunct;
      out += format_decimal(evaluate(*node.subscript, bindings));
      emit(node.children, bindings, out);
      continue;
    }
    if (node.kind == Node::Kind::kElement) {
      out += node.element->symbol();
    } else {
      out += node.opener;
      emit(node.children, bindings, out);
      out += node.opener == '(' ? ')' : ']';
    }
    if (node.subscript) out += format_decimal(evaluate(*node.subscript, bindings));
  }
}

ErrorCode error_code(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kUnknownElement: return ErrorCode::kUnknownElement;
    case ParseErrorKind::kUnresolvedVariable: return ErrorCode::kUnresolvedVariable;
    case ParseErrorKind::kMalformedSyntax: break;
  }
  return ErrorCode::kMalformedSyntax;
}

}  // namespace

RawFormula::RawFormula(std::string text) : text_(std::move(text)) {
  if (text_.empty()) throw Error(ErrorCode::kMalformedSyntax, "empty formula");
}

std::string_view to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kUnknownElement: return "UnknownElement";
    case ParseErrorKind::kMalformedSyntax: return "MalformedSyntax";
    case ParseErrorKind::kUnresolvedVariable: return "UnresolvedVariable";
  }
  return "?";
}

ParseResult parse_formula(const RawFormula& raw, const ParseOptions& options) {
  Parser parser(raw.text(), options);
  std::vector<Node> nodes = parser.run();
  if (parser.error()) return *parser.error();
  if (any_symbolic(nodes)) {
    ParseError err{ParseErrorKind::kUnresolvedVariable, "symbolic subscript", 0,
                   parser.variables()};
    for (const auto& v : err.variables) err.message += " " + v;
    return err;
  }
  Counts counts;
  accumulate(nodes, 1.0, counts);
  return counts;
}

bool has_unresolved_variables(const RawFormula& raw) { return !variables_in(raw).empty(); }

std::vector<std::string> variables_in(const RawFormula& raw) {
  Parser parser(raw.text(), ParseOptions{true});
  parser.run();
  return parser.variables();
}

RawFormula substitute_variables(const RawFormula& raw,
                                const std::map<std::string, double>& bindings) {
  Parser parser(raw.text(), ParseOptions{});
  std::vector<Node> nodes = parser.run();
  if (parser.error()) {
    throw Error(error_code(parser.error()->kind), parser.error()->message);
  }
  std::string out;
  emit(nodes, bindings, out);
  return RawFormula(std::move(out));
}

Composition Composition::from_fractions(Map fractions) {
  if (fractions.empty()) throw Error(ErrorCode::kEmptyCounts, "composition has no elements");
  double total = 0.0;
  for (const auto& [e, f] : fractions) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw Error(ErrorCode::kNonPositiveCount,
                  std::string(e.symbol()) + " fraction " + format_decimal(f, 9));
    }
    total += f;
  }
  if (std::abs(total - 1.0) > kCompositionSumTolerance) {
    throw Error(ErrorCode::kNonPositiveCount,
                "fractions sum to " + format_decimal(total, 12));
  }
  return Composition(std::move(fractions));
}

double Composition::fraction(ElementSymbol e) const {
  auto it = fractions_.find(e);
  return it == fractions_.end() ? 0.0 : it->second;
}

bool Composition::approx_equal(const Composition& other, double tolerance) const {
  if (size() != other.size()) return false;
  auto a = begin();
  auto b = other.begin();
  for (; a != end(); ++a, ++b) {
    if (a->first != b->first || std::abs(a->second - b->second) > tolerance) return false;
  }
  return true;
}

Composition normalize(const Counts& counts) {
  if (counts.empty()) throw Error(ErrorCode::kEmptyCounts, "no element counts");
  double total = 0.0;
  for (const auto& [e, n] : counts) {
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorCode::kNonPositiveCount,
                  std::string(e.symbol()) + " count " + format_decimal(n, 9));
    }
    total += n;
  }
  Composition::Map fractions;
  for (const auto& [e, n] : counts) fractions.emplace(e, n / total);
  return Composition::from_fractions(std::move(fractions));
}

Composition parse_composition(std::string_view text, const ParseOptions& options) {
  ParseResult result = parse_formula(RawFormula(std::string(text)), options);
  if (auto* err = std::get_if<ParseError>(&result)) {
    throw Error(error_code(err->kind), "'" + std::string(text) + "': " + err->message);
  }
  return normalize(std::get<Counts>(result));
}

std::string canonical_formula(const Composition& c, std::optional<int> significant_digits) {
  std::string out;
  for (const auto& [e, f] : c) {
    out += e.symbol();
    out += format_decimal(f, significant_digits);
  }
  return out;
}

std::string format_decimal(double value, std::optional<int> significant_digits) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[512];
  if (!significant_digits) {
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec == std::errc()) return std::string(buf, ptr);
    significant_digits = 17;
  }
  if (value == 0.0) return "0";
  const int digits = std::max(1, *significant_digits);
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  const int decimals = std::clamp(digits - 1 - exponent, 0, 340);
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string out(buf);
  if (out.find('.') != std::string::npos) {
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  return out;
}

}  // namespace scsearch
