// Copyright 2026 The Curvcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "curvcheck/error.hpp"
#include "curvcheck/jet.hpp"

namespace curvcheck {

enum class BinOp : std::uint8_t { Add, Sub, Mul, Div };
enum class FuncId : std::uint8_t { Sin, Cos, Tan, Exp, Log, Sqrt, Sinh, Cosh };

const char* func_name(FuncId f);

/// 1-based character span of a node in the source text (0 for built nodes).
struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Immutable arithmetic expression over variables x1..xn, the constant pi,
/// the binary operators + - * /, integer powers, unary minus and the
/// elementary functions sin, cos, tan, exp, log, sqrt, sinh, cosh.
///
/// Grammar (whitespace insensitive, no implicit multiplication):
///   expr  := term (('+'|'-') term)*
///   term  := unary (('*'|'/') unary)*
///   unary := '-'? power
///   power := atom ('^' intlit)?
///   atom  := number | 'pi' | var | func '(' expr ')' | '(' expr ')'
class Expression {
 public:
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  Expression() = default;

  /// Parses `text`; variables above x<dim> are rejected.  Throws ParseError
  /// with a 1-based character position on any syntax or validation error.
  static Expression parse(std::string_view text, int dim);

  // Builders used by the catalog constructors and by tests.
  static Expression number(double value);
  static Expression pi();
  static Expression variable(int axis);  // 1-based
  static Expression binary(BinOp op, Expression lhs, Expression rhs);
  static Expression negate(Expression inner);
  static Expression power(Expression base, int exponent);
  static Expression call(FuncId f, Expression arg);

  bool valid() const { return root_ != nullptr; }
  /// Largest variable index referenced (0 for constant expressions).
  int max_variable() const;

  double eval(std::span<const double> point) const;
  Jet eval_jet(std::span<const double> point, int order) const;

  /// Unparses into text that reparses to an identical tree.
  std::string print() const;
  /// Structural equality (spans ignored).
  bool same_tree(const Expression& other) const;
  /// Renames x_i -> x_{i+offset}; used when charts are concatenated.
  Expression shift_variables(int offset) const;

  const NodePtr& root() const { return root_; }

 private:
  explicit Expression(NodePtr root) : root_(std::move(root)) {}
  NodePtr root_;
};

/// Flat postfix program compiled from an Expression.  Evaluation reuses
/// caller-provided scratch, so sweeping a grid performs no allocation.
class CompiledExpression {
 public:
  CompiledExpression() = default;
  explicit CompiledExpression(const Expression& e);

  bool valid() const { return !code_.empty(); }
  int max_variable() const { return max_variable_; }

  double eval(std::span<const double> point) const;
  /// Writes layout.count() coefficients of the jet value into `out`.
  void eval_jet(std::span<const double> point, const JetLayout& layout,
                std::span<double> out, std::vector<double>& scratch) const;
  /// Scratch capacity needed by eval_jet for `layout`.
  std::size_t scratch_size(const JetLayout& layout) const;

 private:
  enum class Op : std::uint8_t {
    PushNumber, PushPi, PushVar, Add, Sub, Mul, Div, Neg, PowInt, Func
  };
  struct Instr {
    Op op;
    std::int32_t arg = 0;  // var axis, integer exponent, or FuncId
    double num = 0.0;
  };
  std::vector<Instr> code_;
  int max_variable_ = 0;
  int max_stack_ = 0;
};

}  // namespace curvcheck
