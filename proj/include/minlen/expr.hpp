#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace minlen {

/// Immutable expression tree in the single variable `y`.
///
/// Grammar (loosest to tightest binding):
///   sum     := product (('+' | '-') product)*
///   product := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | 'y' | 'pi' | 'e' | func '(' sum ')' | '(' sum ')'
///
/// Functions: sin cos tan atan sinh cosh tanh sqrt exp ln abs.
/// There is no implicit multiplication; `2y` is a syntax error.
class Expr {
 public:
  enum class Kind { Constant, Variable, Negate, Add, Sub, Mul, Div, Pow, Call };
  enum class Func { Sin, Cos, Tan, Atan, Sinh, Cosh, Tanh, Sqrt, Exp, Ln, Abs };

  struct Node;

  /// Parses `source`; throws SyntaxError carrying the byte offset.
  static Expr parse(std::string_view source);

  /// Evaluates at `y`. Any domain violation or non-finite intermediate
  /// raises EvalError instead of producing NaN/inf.
  double eval(double y) const;

  /// Canonical fully-parenthesised text that re-parses to an equivalent tree.
  std::string print() const;

  const std::string& source() const noexcept { return source_; }

 private:
  Expr(std::shared_ptr<const Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace minlen
