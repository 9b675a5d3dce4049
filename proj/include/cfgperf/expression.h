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

#ifndef CFGPERF_EXPRESSION_H_
#define CFGPERF_EXPRESSION_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cfgperf {

enum class Comparison { kLess, kLessEqual, kEqual, kNotEqual, kGreaterEqual, kGreater };

// Resolves an option name to (global option index, is_binary).
using OptionResolver =
    std::function<std::optional<std::pair<std::size_t, bool>>(std::string_view)>;

// A boolean formula over binary literals and linear comparisons of options.
//
// Grammar (lowest to highest precedence):
//   implication := disjunction [ '=>' implication ]
//   disjunction := conjunction { ('|' | '||') conjunction }
//   conjunction := unary { ('&' | '&&') unary }
//   unary       := '!' unary | '(' implication ')' | atom
//   atom        := linear [ cmp linear ]        (bare form must be a binary name)
//   linear      := term { ('+' | '-') term }
//   term        := ['-'] number [ '*' name ] | ['-'] name [ '*' number ]
//   cmp         := '<' | '<=' | '=' | '==' | '!=' | '>=' | '>'
class Expression {
 public:
  // Throws Error(kSyntax) with the column of the offending token, or
  // Error(kUnknownOption) for names the resolver does not know.
  static Expression Parse(std::string_view text, const OptionResolver& resolve);

  // `values[i - offset]` holds the value of global option i. Every referenced
  // option must lie inside the provided window.
  bool Evaluate(std::span<const double> values, std::size_t offset = 0) const;

  const std::string& text() const { return text_; }
  // Sorted, unique global option indices.
  const std::vector<std::size_t>& referenced_options() const { return referenced_; }

 private:
  enum class Kind { kLiteral, kNot, kAnd, kOr, kImplies, kCompare };
  struct Node {
    Kind kind = Kind::kLiteral;
    int lhs = -1;
    int rhs = -1;
    std::size_t option = 0;
    std::vector<std::pair<std::size_t, double>> terms;
    Comparison op = Comparison::kEqual;
    double constant = 0.0;
  };
  class Parser;

  bool Eval(int node, std::span<const double> values, std::size_t offset) const;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
  std::vector<std::size_t> referenced_;
};

}  // namespace cfgperf

#endif  // CFGPERF_EXPRESSION_H_
