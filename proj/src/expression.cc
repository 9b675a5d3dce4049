// Copyright 2026 The cfgperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cfgperf/expression.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>

#include "cfgperf/error.h"

namespace cfgperf {
namespace {

constexpr double kCompareTolerance = 1e-9;

enum class Tok {
  kName, kNumber, kNot, kAnd, kOr, kImplies, kLParen, kRParen,
  kPlus, kMinus, kStar, kCmp, kEnd,
};

struct Token {
  Tok type;
  std::size_t column;  // 1-based
  std::string text;
  double number = 0.0;
  Comparison cmp = Comparison::kEqual;
};

[[noreturn]] void SyntaxError(std::string_view text, std::size_t column,
                              const std::string& msg) {
  throw Error(ErrorCode::kSyntax, "syntax error at column " +
                                      std::to_string(column) + " in '" +
                                      std::string(text) + "': " + msg);
}

std::vector<Token> Tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok t, std::size_t len) {
    out.push_back({t, i + 1, std::string(s.substr(i, len))});
    i += len;
  };
  auto push_cmp = [&](Comparison c, std::size_t len) {
    push(Tok::kCmp, len);
    out.back().cmp = c;
  };
  while (i < s.size()) {
    const char c = s[i];
    const char n = i + 1 < s.size() ? s[i + 1] : '\0';
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_' || s[j] == '.')) {
        ++j;
      }
      push(Tok::kName, j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(s.data() + i, s.data() + s.size(), value);
      if (ec != std::errc()) SyntaxError(s, i + 1, "malformed number");
      const std::size_t len = static_cast<std::size_t>(ptr - (s.data() + i));
      push(Tok::kNumber, len);
      out.back().number = value;
    } else if (c == '=' && n == '>') {
      push(Tok::kImplies, 2);
    } else if (c == '=' && n == '=') {
      push_cmp(Comparison::kEqual, 2);
    } else if (c == '=') {
      push_cmp(Comparison::kEqual, 1);
    } else if (c == '!' && n == '=') {
      push_cmp(Comparison::kNotEqual, 2);
    } else if (c == '!') {
      push(Tok::kNot, 1);
    } else if (c == '<' && n == '=') {
      push_cmp(Comparison::kLessEqual, 2);
    } else if (c == '<') {
      push_cmp(Comparison::kLess, 1);
    } else if (c == '>' && n == '=') {
      push_cmp(Comparison::kGreaterEqual, 2);
    } else if (c == '>') {
      push_cmp(Comparison::kGreater, 1);
    } else if (c == '&') {
      push(Tok::kAnd, n == '&' ? 2 : 1);
    } else if (c == '|') {
      push(Tok::kOr, n == '|' ? 2 : 1);
    } else if (c == '(') {
      push(Tok::kLParen, 1);
    } else if (c == ')') {
      push(Tok::kRParen, 1);
    } else if (c == '+') {
      push(Tok::kPlus, 1);
    } else if (c == '-') {
      push(Tok::kMinus, 1);
    } else if (c == '*') {
      push(Tok::kStar, 1);
    } else {
      SyntaxError(s, i + 1, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({Tok::kEnd, s.size() + 1, ""});
  return out;
}

}  // namespace

class Expression::Parser {
 public:
  Parser(Expression& expr, std::string_view text, const OptionResolver& resolve)
      : expr_(expr), text_(text), resolve_(resolve), toks_(Tokenize(text)) {}

  int Run() {
    const int root = Implication();
    if (Peek().type != Tok::kEnd) Fail("unexpected '" + Peek().text + "'");
    return root;
  }

 private:
  struct Linear {
    std::map<std::size_t, double> coef;
    double constant = 0.0;
    std::size_t first_column = 0;
    // Set when the expression is exactly one bare name.
    std::optional<std::pair<std::size_t, bool>> bare;
    std::string bare_name;
  };

  const Token& Peek() const { return toks_[pos_]; }
  const Token& Take() { return toks_[pos_++]; }
  [[noreturn]] void Fail(const std::string& msg) const {
    SyntaxError(text_, Peek().column, msg);
  }

  static Node MakeNode(Kind kind, int lhs = -1, int rhs = -1) {
    Node n;
    n.kind = kind;
    n.lhs = lhs;
    n.rhs = rhs;
    return n;
  }

  int Add(Node node) {
    expr_.nodes_.push_back(std::move(node));
    return static_cast<int>(expr_.nodes_.size()) - 1;
  }

  int Implication() {
    const int lhs = Disjunction();
    if (Peek().type == Tok::kImplies) {
      Take();
      const int rhs = Implication();
      return Add(MakeNode(Kind::kImplies, lhs, rhs));
    }
    return lhs;
  }

  int Disjunction() {
    int lhs = Conjunction();
    while (Peek().type == Tok::kOr) {
      Take();
      const int rhs = Conjunction();
      lhs = Add(MakeNode(Kind::kOr, lhs, rhs));
    }
    return lhs;
  }

  int Conjunction() {
    int lhs = Unary();
    while (Peek().type == Tok::kAnd) {
      Take();
      const int rhs = Unary();
      lhs = Add(MakeNode(Kind::kAnd, lhs, rhs));
    }
    return lhs;
  }

  int Unary() {
    if (Peek().type == Tok::kNot) {
      Take();
      const int child = Unary();
      return Add(MakeNode(Kind::kNot, child));
    }
    if (Peek().type == Tok::kLParen) {
      Take();
      const int inner = Implication();
      if (Peek().type != Tok::kRParen) Fail("expected ')'");
      Take();
      return inner;
    }
    return Atom();
  }

  std::pair<std::size_t, bool> Resolve(const Token& tok) {
    auto hit = resolve_(tok.text);
    if (!hit) {
      throw Error(ErrorCode::kUnknownOption,
                  "unknown option '" + tok.text + "' at column " +
                      std::to_string(tok.column) + " in '" +
                      std::string(text_) + "'");
    }
    expr_.referenced_.push_back(hit->first);
    return *hit;
  }

  void Term(Linear& lin, double sign) {
    if (Peek().type == Tok::kMinus) {
      Take();
      sign = -sign;
    }
    if (Peek().type == Tok::kNumber) {
      const double k = Take().number;
      if (Peek().type == Tok::kStar) {
        Take();
        if (Peek().type != Tok::kName) Fail("expected option name after '*'");
        const auto opt = Resolve(Take());
        lin.coef[opt.first] += sign * k;
      } else {
        lin.constant += sign * k;
      }
    } else if (Peek().type == Tok::kName) {
      const Token& name = Take();
      const auto opt = Resolve(name);
      double k = 1.0;
      if (Peek().type == Tok::kStar) {
        Take();
        if (Peek().type != Tok::kNumber) Fail("expected number after '*'");
        k = Take().number;
      }
      lin.coef[opt.first] += sign * k;
    } else {
      Fail("expected option name or number");
    }
  }

  Linear LinearExpr() {
    Linear lin;
    lin.first_column = Peek().column;
    const std::size_t start = pos_;
    Term(lin, 1.0);
    while (Peek().type == Tok::kPlus || Peek().type == Tok::kMinus) {
      const double sign = Take().type == Tok::kPlus ? 1.0 : -1.0;
      Term(lin, sign);
    }
    if (pos_ == start + 1 && toks_[start].type == Tok::kName) {
      lin.bare = resolve_(toks_[start].text);
      lin.bare_name = toks_[start].text;
    }
    return lin;
  }

  int Atom() {
    Linear lhs = LinearExpr();
    if (Peek().type != Tok::kCmp) {
      if (!lhs.bare) SyntaxError(text_, lhs.first_column, "expected comparison");
      if (!lhs.bare->second) {
        SyntaxError(text_, lhs.first_column,
                    "numeric option '" + lhs.bare_name +
                        "' used as a boolean literal");
      }
      Node node = MakeNode(Kind::kLiteral);
      node.option = lhs.bare->first;
      return Add(std::move(node));
    }
    const Comparison op = Take().cmp;
    Linear rhs = LinearExpr();
    Node node = MakeNode(Kind::kCompare);
    node.op = op;
    for (auto& [opt, k] : rhs.coef) lhs.coef[opt] -= k;
    for (auto& [opt, k] : lhs.coef) {
      if (k != 0.0) node.terms.emplace_back(opt, k);
    }
    node.constant = rhs.constant - lhs.constant;
    return Add(std::move(node));
  }

  Expression& expr_;
  std::string_view text_;
  const OptionResolver& resolve_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

Expression Expression::Parse(std::string_view text,
                             const OptionResolver& resolve) {
  Expression expr;
  expr.text_ = std::string(text);
  Parser parser(expr, text, resolve);
  expr.root_ = parser.Run();
  std::sort(expr.referenced_.begin(), expr.referenced_.end());
  expr.referenced_.erase(
      std::unique(expr.referenced_.begin(), expr.referenced_.end()),
      expr.referenced_.end());
  return expr;
}

bool Expression::Evaluate(std::span<const double> values,
                          std::size_t offset) const {
  return Eval(root_, values, offset);
}

bool Expression::Eval(int index, std::span<const double> values,
                      std::size_t offset) const {
  const Node& n = nodes_[static_cast<std::size_t>(index)];
  switch (n.kind) {
    case Kind::kLiteral:
      return values[n.option - offset] > 0.5;
    case Kind::kNot:
      return !Eval(n.lhs, values, offset);
    case Kind::kAnd:
      return Eval(n.lhs, values, offset) && Eval(n.rhs, values, offset);
    case Kind::kOr:
      return Eval(n.lhs, values, offset) || Eval(n.rhs, values, offset);
    case Kind::kImplies:
      return !Eval(n.lhs, values, offset) || Eval(n.rhs, values, offset);
    case Kind::kCompare: {
      double lhs = 0.0;
      for (const auto& [opt, k] : n.terms) lhs += k * values[opt - offset];
      const double diff = lhs - n.constant;
      const double tol = kCompareTolerance * (1.0 + std::fabs(n.constant));
      switch (n.op) {
        case Comparison::kLess: return diff < -tol;
        case Comparison::kLessEqual: return diff <= tol;
        case Comparison::kEqual: return std::fabs(diff) <= tol;
        case Comparison::kNotEqual: return std::fabs(diff) > tol;
        case Comparison::kGreaterEqual: return diff >= -tol;
        case Comparison::kGreater: return diff > tol;
      }
    }
  }
  return false;
}

}  // namespace cfgperf
