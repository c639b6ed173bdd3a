// Copyright 2026 The stlcov Authors.
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

// Recursive-descent parser for the spec DSL.
//
//   spec    := decl* "formula" ":" formula
//   decl    := ("input" | "output") IDENT "in" "[" num "," num "]" ";"
//   formula := or ("->" formula)?
//   or      := and ("or" and)*
//   and     := binary ("and" binary)*
//   binary  := unary (("U" | "S") interval? binary)?
//   unary   := "not" unary | ("G"|"F"|"H"|"P") interval? unary | primary
//   primary := "true" | "false" | "(" formula ")" | affine cmp affine

#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "stlcov/errors.hpp"
#include "stlcov/formula.hpp"

namespace stlcov {
namespace {

enum class Tok { ident, number, punct, end };

struct Token {
  Tok kind;
  std::string text;
  double value = 0.0;
  std::size_t line = 1;
  std::size_t col = 1;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token tok{Tok::punct, "", 0.0, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = Tok::ident;
      tok.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                               std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          j = k;
          while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
        }
      }
      tok.kind = Tok::number;
      tok.text = std::string(src.substr(i, j - i));
      try {
        tok.value = std::stod(tok.text);
      } catch (const std::exception&) {
        throw ParseError("malformed number '" + tok.text + "'", line, col);
      }
      advance(j - i);
    } else {
      static const char* two[] = {"->", "<=", ">="};
      std::string text(1, c);
      for (const char* t : two)
        if (src.substr(i, 2) == t) text = t;
      if (text.size() == 1 && std::string_view("()[],;:+-*<>").find(c) == std::string_view::npos)
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      tok.text = text;
      advance(text.size());
    }
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Tok::end, "<end of input>", 0.0, line, col});
  return out;
}

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {"input", "output", "in",   "formula", "not", "and", "or",
                                          "true",  "false",  "inf",  "G",       "F",   "H",   "P",
                                          "U",     "S"};
  return k;
}

class Parser {
 public:
  Parser(std::string_view src, VariableSet vars) : toks_(tokenize(src)), vars_(std::move(vars)) {}

  IaStlSpec spec() {
    std::vector<VariableProfile> decls;
    std::set<std::string> seen;
    while (peek_is("input") || peek_is("output")) {
      VariableProfile p;
      p.kind = next().text == "input" ? VarKind::input : VarKind::output;
      const Token& name = expect_ident();
      if (keywords().count(name.text)) fail("'" + name.text + "' is reserved", name);
      if (!seen.insert(name.text).second) fail("variable '" + name.text + "' declared twice", name);
      p.name = name.text;
      expect("in");
      expect("[");
      p.lo = signed_number();
      expect(",");
      const Token& hi_tok = peek();
      p.hi = signed_number();
      expect("]");
      expect(";");
      if (!(p.lo <= p.hi)) fail("empty domain for '" + p.name + "'", hi_tok);
      decls.push_back(std::move(p));
    }
    vars_ = VariableSet(std::move(decls));
    expect("formula");
    expect(":");
    IaStlSpec s{vars_, formula()};
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after formula", peek());
    return s;
  }

  Formula whole_formula() {
    Formula f = formula();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "' after formula", peek());
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool peek_is(const std::string& text) const {
    return (peek().kind == Tok::punct || peek().kind == Tok::ident) && peek().text == text;
  }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& what, const Token& at) const {
    throw ParseError(what, at.line, at.col);
  }

  void expect(const std::string& text) {
    if (!peek_is(text)) fail("expected '" + text + "' but found '" + peek().text + "'", peek());
    next();
  }

  const Token& expect_ident() {
    if (peek().kind != Tok::ident) fail("expected identifier but found '" + peek().text + "'", peek());
    return next();
  }

  double signed_number() {
    double sign = 1.0;
    while (peek_is("-") || peek_is("+")) sign *= next().text == "-" ? -1.0 : 1.0;
    if (peek().kind != Tok::number) fail("expected number but found '" + peek().text + "'", peek());
    return sign * next().value;
  }

  unsigned natural() {
    const Token& t = peek();
    if (t.kind != Tok::number || t.value != std::floor(t.value) || t.value < 0 || t.value > 1e9)
      fail("interval bounds must be natural numbers", t);
    next();
    return static_cast<unsigned>(t.value);
  }

  Interval interval_or_all() {
    if (!peek_is("[")) return Interval::all();
    const Token& open = next();
    Interval i;
    i.lo = natural();
    expect(",");
    if (peek_is("inf")) {
      next();
      if (!peek_is(")") && !peek_is("]")) fail("expected ')' after inf", peek());
      next();
      return i;
    }
    i.hi = natural();
    expect("]");
    if (i.lo > *i.hi)
      fail("malformed interval [" + std::to_string(i.lo) + "," + std::to_string(*i.hi) + "]: lower bound exceeds upper",
           open);
    return i;
  }

  Formula formula() {
    Formula lhs = disjunction();
    if (peek_is("->")) {
      next();
      return Formula::implication(lhs, formula());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek_is("or")) {
      next();
      f = Formula::disjunction(f, conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = binary();
    while (peek_is("and")) {
      next();
      f = Formula::conjunction(f, binary());
    }
    return f;
  }

  Formula binary() {
    Formula lhs = unary();
    if (peek_is("U") || peek_is("S")) {
      bool until = next().text == "U";
      Interval i = interval_or_all();
      Formula rhs = binary();
      return until ? Formula::until(i, lhs, rhs) : Formula::since(i, lhs, rhs);
    }
    return lhs;
  }

  Formula unary() {
    if (peek_is("not")) {
      next();
      return Formula::negation(unary());
    }
    for (const char* op : {"G", "F", "H", "P"}) {
      if (peek_is(op)) {
        next();
        Interval i = interval_or_all();
        Formula f = unary();
        switch (op[0]) {
          case 'G':
            return Formula::always(i, f);
          case 'F':
            return Formula::eventually(i, f);
          case 'H':
            return Formula::historically(i, f);
          default:
            return Formula::once(i, f);
        }
      }
    }
    return primary();
  }

  Formula primary() {
    if (peek_is("true")) {
      next();
      return Formula::truth();
    }
    if (peek_is("false")) {
      next();
      return Formula::falsity();
    }
    if (peek_is("(")) {
      std::size_t save = pos_;
      try {
        return comparison();
      } catch (const ParseError&) {
        pos_ = save;
      }
      next();
      Formula f = formula();
      expect(")");
      return f;
    }
    return comparison();
  }

  Formula comparison() {
    Affine lhs = affine();
    const Token& op = peek();
    if (!(peek_is("<") || peek_is("<=") || peek_is(">") || peek_is(">=")))
      fail("expected comparison operator but found '" + op.text + "'", op);
    std::string rel = next().text;
    Affine rhs = affine();
    Atom a;
    a.strict = rel.size() == 1;
    a.f = rel[0] == '>' ? lhs - rhs : rhs - lhs;
    return Formula::atom(std::move(a));
  }

  Affine affine() {
    Affine sum = term();
    while (peek_is("+") || peek_is("-")) {
      bool minus = next().text == "-";
      Affine t = term();
      sum = minus ? sum - t : sum + t;
    }
    return sum;
  }

  Affine term() {
    const Token& start = peek();
    Affine prod = factor();
    for (;;) {
      bool explicit_mul = peek_is("*");
      bool implicit_mul = !explicit_mul && peek().kind == Tok::ident && !keywords().count(peek().text) &&
                          prod.is_constant();
      if (!explicit_mul && !implicit_mul) break;
      if (explicit_mul) next();
      Affine rhs = factor();
      if (prod.is_constant())
        prod = rhs * prod.offset;
      else if (rhs.is_constant())
        prod = prod * rhs.offset;
      else
        fail("only affine expressions are supported", start);
    }
    return prod;
  }

  Affine factor() {
    const Token& t = peek();
    if (peek_is("-")) {
      next();
      return -factor();
    }
    if (peek_is("+")) {
      next();
      return factor();
    }
    if (t.kind == Tok::number) {
      next();
      return Affine::constant(t.value);
    }
    if (peek_is("(")) {
      next();
      Affine a = affine();
      expect(")");
      return a;
    }
    if (t.kind == Tok::ident && !keywords().count(t.text)) {
      if (!vars_.contains(t.text)) fail("undeclared variable '" + t.text + "'", t);
      next();
      return Affine::variable(t.text);
    }
    fail("expected a term but found '" + t.text + "'", t);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  VariableSet vars_;
};

}  // namespace

IaStlSpec parse_spec(std::string_view text) { return Parser(text, VariableSet()).spec(); }

Formula parse_formula(std::string_view text, const VariableSet& vars) {
  return Parser(text, vars).whole_formula();
}

}  // namespace stlcov
