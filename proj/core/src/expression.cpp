#include "jmetric/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace jmetric {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, int n_vars, Expression& out)
      : text_(text), n_vars_(n_vars), out_(out) {}

  int parse() {
    const int root = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return root;
  }

 private:
  using Op = Expression::Op;
  using Node = Expression::Node;

  [[noreturn]] void fail(const std::string& message) const {
    throw ExpressionError(pos_ + 1, message + " at column " + std::to_string(pos_ + 1));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  int add(Node n) {
    out_.nodes_.push_back(n);
    return static_cast<int>(out_.nodes_.size()) - 1;
  }

  int parse_expr() {
    int lhs = parse_term();
    while (true) {
      if (accept('+'))
        lhs = add({Op::Add, 0.0, 0, lhs, parse_term()});
      else if (accept('-'))
        lhs = add({Op::Sub, 0.0, 0, lhs, parse_term()});
      else
        return lhs;
    }
  }

  int parse_term() {
    int lhs = parse_unary();
    while (true) {
      if (accept('*'))
        lhs = add({Op::Mul, 0.0, 0, lhs, parse_unary()});
      else if (accept('/'))
        lhs = add({Op::Div, 0.0, 0, lhs, parse_unary()});
      else
        return lhs;
    }
  }

  int parse_unary() {
    if (accept('-')) return add({Op::Neg, 0.0, 0, parse_unary(), -1});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  int parse_power() {
    const int base = parse_primary();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    const std::size_t exp_start = pos_;
    const int exponent = parse_unary();
    if (!is_constant(exponent)) {
      pos_ = exp_start;
      fail("exponent must be a constant");
    }
    const double e = out_.eval<double>(exponent, std::span<const double>{});
    if (e != std::round(e) || std::abs(e) > 64) {
      pos_ = exp_start;
      fail("exponent must be an integer in [-64, 64]");
    }
    return add({Op::Pow, 0.0, static_cast<int>(e), base, -1});
  }

  int parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      const int inner = parse_expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == 'x') {
      const std::size_t start = pos_;
      ++pos_;
      std::size_t end = pos_;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
      if (end == pos_) fail("expected variable index after 'x'");
      int idx = 0;
      std::from_chars(text_.data() + pos_, text_.data() + end, idx);
      if (idx < 1 || idx > n_vars_) {
        pos_ = start;
        fail("variable x" + std::to_string(idx) + " outside x1..x" + std::to_string(n_vars_));
      }
      pos_ = end;
      return add({Op::Var, 0.0, idx - 1, -1, -1});
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.'))
        ++end;
      if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
        std::size_t e = end + 1;
        if (e < text_.size() && (text_[e] == '+' || text_[e] == '-')) ++e;
        if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
          while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
          end = e;
        }
      }
      double v = 0.0;
      const auto res = std::from_chars(text_.data() + pos_, text_.data() + end, v);
      if (res.ec != std::errc() || res.ptr != text_.data() + end) fail("malformed number");
      pos_ = end;
      return add({Op::Const, v, 0, -1, -1});
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  bool is_constant(int node) const {
    const Node& n = out_.nodes_[static_cast<std::size_t>(node)];
    switch (n.op) {
      case Op::Const: return true;
      case Op::Var: return false;
      case Op::Neg:
      case Op::Pow: return is_constant(n.lhs);
      default: return is_constant(n.lhs) && is_constant(n.rhs);
    }
  }

  std::string_view text_;
  int n_vars_;
  Expression& out_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(std::string_view text, int n_vars) {
  Expression e;
  e.text_ = std::string(text);
  ExpressionParser p(e.text_, n_vars, e);
  e.root_ = p.parse();
  return e;
}

template <typename T>
T Expression::eval(int node, std::span<const T> x) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.op) {
    case Op::Const: return T(n.value);
    case Op::Var: return x[static_cast<std::size_t>(n.index)];
    case Op::Neg: return -eval(n.lhs, x);
    case Op::Add: return eval(n.lhs, x) + eval(n.rhs, x);
    case Op::Sub: return eval(n.lhs, x) - eval(n.rhs, x);
    case Op::Mul: return eval(n.lhs, x) * eval(n.rhs, x);
    case Op::Div: return eval(n.lhs, x) / eval(n.rhs, x);
    case Op::Pow: return ipow(eval(n.lhs, x), n.index);
  }
  return T(0.0);
}

double Expression::evaluate(std::span<const double> x) const { return eval(root_, x); }
Dual Expression::evaluate(std::span<const Dual> x) const { return eval(root_, x); }

}  // namespace jmetric
