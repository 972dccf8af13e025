#ifndef JMETRIC_EXPRESSION_HPP_
#define JMETRIC_EXPRESSION_HPP_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "jmetric/dual.hpp"

namespace jmetric {

/// Syntax error inside an expression; `column` is 1-based.
class ExpressionError : public std::runtime_error {
 public:
  ExpressionError(std::size_t column, const std::string& message)
      : std::runtime_error(message), column_(column) {}
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// Rational expression in x1..xN built from numbers, + - * / ^ and
/// parentheses. Exponents must be integer constants, e.g. "x1^2", "(1+x2)^-1".
///
///   expr    := term (('+'|'-') term)*
///   term    := unary (('*'|'/') unary)*
///   unary   := ('+'|'-') unary | power
///   power   := primary ('^' unary)?
///   primary := number | 'x' digits | '(' expr ')'
class Expression {
 public:
  /// Throws ExpressionError on syntax errors or variables outside x1..x{n_vars}.
  static Expression parse(std::string_view text, int n_vars);

  double evaluate(std::span<const double> x) const;
  Dual evaluate(std::span<const Dual> x) const;

  const std::string& text() const { return text_; }

 private:
  enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow };
  struct Node {
    Op op;
    double value = 0.0;  // Const
    int index = 0;       // Var: 0-based; Pow: integer exponent
    int lhs = -1;
    int rhs = -1;
  };

  template <typename T>
  T eval(int node, std::span<const T> x) const;

  friend class ExpressionParser;

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace jmetric

#endif  // JMETRIC_EXPRESSION_HPP_
