#include "minlen/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "minlen/errors.hpp"

namespace minlen {

struct Expr::Node {
  Kind kind;
  double value = 0.0;       // Constant
  Func func = Func::Sin;    // Call
  std::string name;         // named constant spelling, if any
  std::unique_ptr<const Node> lhs;
  std::unique_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::unique_ptr<const Expr::Node>;

struct FuncName {
  std::string_view name;
  Expr::Func func;
};

constexpr std::array<FuncName, 11> kFuncs{{
    {"sin", Expr::Func::Sin},   {"cos", Expr::Func::Cos},   {"tan", Expr::Func::Tan},
    {"atan", Expr::Func::Atan}, {"sinh", Expr::Func::Sinh}, {"cosh", Expr::Func::Cosh},
    {"tanh", Expr::Func::Tanh}, {"sqrt", Expr::Func::Sqrt}, {"exp", Expr::Func::Exp},
    {"ln", Expr::Func::Ln},     {"abs", Expr::Func::Abs},
}};

std::string_view func_name(Expr::Func f) {
  for (const auto& entry : kFuncs) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

NodePtr make_node(Expr::Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto node = std::make_unique<Expr::Node>();
  node->kind = kind;
  node->lhs = std::move(lhs);
  node->rhs = std::move(rhs);
  return node;
}

NodePtr make_constant(double value, std::string name = {}) {
  auto node = std::make_unique<Expr::Node>();
  node->kind = Expr::Kind::Constant;
  node->value = value;
  node->name = std::move(name);
  return node;
}

struct Token {
  enum class Type { Number, Ident, Op, LParen, RParen, End } type;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  NodePtr parse() {
    auto root = parse_sum();
    if (tok_.type != Token::Type::End) {
      if (tok_.type == Token::Type::RParen) fail("unbalanced parenthesis ')'");
      fail("unexpected token '" + std::string(tok_.text) + "'");
    }
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(tok_.offset, msg); }

  bool is_op(char c) const {
    return tok_.type == Token::Type::Op && tok_.text.size() == 1 && tok_.text[0] == c;
  }

  void advance() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' ||
                                  src_[pos_] == '\r')) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) {
      tok_ = {Token::Type::End, start, {}};
      return;
    }
    const char c = src_[pos_];
    auto is_digit = [](char ch) { return ch >= '0' && ch <= '9'; };
    auto is_alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; };

    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '.')) ++pos_;
      // exponent only when digits follow, so "2*e" keeps the constant e
      if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
        std::size_t look = pos_ + 1;
        if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
        if (look < src_.size() && is_digit(src_[look])) {
          pos_ = look;
          while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
      }
      tok_ = {Token::Type::Number, start, src_.substr(start, pos_ - start)};
      const char* first = src_.data() + start;
      const char* last = src_.data() + pos_;
      auto [ptr, ec] = std::from_chars(first, last, tok_.number);
      if (ec != std::errc() || ptr != last) fail("malformed number '" + std::string(tok_.text) + "'");
      return;
    }
    if (is_alpha(c)) {
      while (pos_ < src_.size() && (is_alpha(src_[pos_]) || is_digit(src_[pos_]))) ++pos_;
      tok_ = {Token::Type::Ident, start, src_.substr(start, pos_ - start)};
      return;
    }
    ++pos_;
    switch (c) {
      case '(':
        tok_ = {Token::Type::LParen, start, src_.substr(start, 1)};
        return;
      case ')':
        tok_ = {Token::Type::RParen, start, src_.substr(start, 1)};
        return;
      case '+':
      case '-':
      case '*':
      case '/':
      case '^':
        tok_ = {Token::Type::Op, start, src_.substr(start, 1)};
        return;
      default:
        tok_ = {Token::Type::Op, start, src_.substr(start, 1)};
        fail(std::string("unexpected character '") + c + "'");
    }
  }

  NodePtr parse_sum() {
    auto lhs = parse_product();
    while (is_op('+') || is_op('-')) {
      const auto kind = is_op('+') ? Expr::Kind::Add : Expr::Kind::Sub;
      advance();
      lhs = make_node(kind, std::move(lhs), parse_product());
    }
    return lhs;
  }

  NodePtr parse_product() {
    auto lhs = parse_unary();
    while (is_op('*') || is_op('/')) {
      const auto kind = is_op('*') ? Expr::Kind::Mul : Expr::Kind::Div;
      advance();
      lhs = make_node(kind, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  NodePtr parse_unary() {
    if (is_op('-')) {
      advance();
      return make_node(Expr::Kind::Negate, parse_unary());
    }
    if (is_op('+')) {
      advance();
      return parse_unary();
    }
    return parse_power();
  }

  NodePtr parse_power() {
    auto base = parse_primary();
    if (is_op('^')) {
      advance();
      return make_node(Expr::Kind::Pow, std::move(base), parse_unary());
    }
    return base;
  }

  NodePtr parse_primary() {
    switch (tok_.type) {
      case Token::Type::Number: {
        auto node = make_constant(tok_.number);
        advance();
        return node;
      }
      case Token::Type::LParen: {
        advance();
        auto inner = parse_sum();
        if (tok_.type != Token::Type::RParen) fail("unbalanced parenthesis, expected ')'");
        advance();
        return inner;
      }
      case Token::Type::Ident: {
        const std::string_view name = tok_.text;
        if (name == "y") {
          advance();
          return make_node(Expr::Kind::Variable);
        }
        if (name == "pi") {
          advance();
          return make_constant(std::numbers::pi, "pi");
        }
        if (name == "e") {
          advance();
          return make_constant(std::numbers::e, "e");
        }
        for (const auto& entry : kFuncs) {
          if (entry.name == name) {
            advance();
            if (tok_.type != Token::Type::LParen) fail("expected '(' after function '" + std::string(name) + "'");
            advance();
            auto arg = parse_sum();
            if (tok_.type != Token::Type::RParen) fail("unbalanced parenthesis, expected ')'");
            advance();
            auto node = std::make_unique<Expr::Node>();
            node->kind = Expr::Kind::Call;
            node->func = entry.func;
            node->lhs = std::move(arg);
            return node;
          }
        }
        fail("unknown identifier '" + std::string(name) + "'");
      }
      case Token::Type::End:
        fail("unexpected end of input");
      case Token::Type::RParen:
        fail("unbalanced parenthesis ')'");
      case Token::Type::Op:
        fail("unexpected token '" + std::string(tok_.text) + "'");
    }
    fail("unexpected token");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token tok_{Token::Type::End, 0, {}};
};

std::string format_constant(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::string print_node(const Expr::Node& n) {
  switch (n.kind) {
    case Expr::Kind::Constant:
      return n.name.empty() ? format_constant(n.value) : n.name;
    case Expr::Kind::Variable:
      return "y";
    case Expr::Kind::Negate:
      return "(-" + print_node(*n.lhs) + ")";
    case Expr::Kind::Add:
      return "(" + print_node(*n.lhs) + " + " + print_node(*n.rhs) + ")";
    case Expr::Kind::Sub:
      return "(" + print_node(*n.lhs) + " - " + print_node(*n.rhs) + ")";
    case Expr::Kind::Mul:
      return "(" + print_node(*n.lhs) + " * " + print_node(*n.rhs) + ")";
    case Expr::Kind::Div:
      return "(" + print_node(*n.lhs) + " / " + print_node(*n.rhs) + ")";
    case Expr::Kind::Pow:
      return "(" + print_node(*n.lhs) + " ^ " + print_node(*n.rhs) + ")";
    case Expr::Kind::Call:
      return std::string(func_name(n.func)) + "(" + print_node(*n.lhs) + ")";
  }
  return {};
}

double checked(const Expr::Node& n, double y, double value) {
  if (!std::isfinite(value)) throw EvalError(print_node(n), y, "non-finite result");
  return value;
}

double eval_node(const Expr::Node& n, double y) {
  switch (n.kind) {
    case Expr::Kind::Constant:
      return n.value;
    case Expr::Kind::Variable:
      return y;
    case Expr::Kind::Negate:
      return -eval_node(*n.lhs, y);
    case Expr::Kind::Add:
      return checked(n, y, eval_node(*n.lhs, y) + eval_node(*n.rhs, y));
    case Expr::Kind::Sub:
      return checked(n, y, eval_node(*n.lhs, y) - eval_node(*n.rhs, y));
    case Expr::Kind::Mul:
      return checked(n, y, eval_node(*n.lhs, y) * eval_node(*n.rhs, y));
    case Expr::Kind::Div: {
      const double num = eval_node(*n.lhs, y);
      const double den = eval_node(*n.rhs, y);
      if (den == 0.0) throw EvalError(print_node(n), y, "division by zero");
      return checked(n, y, num / den);
    }
    case Expr::Kind::Pow: {
      const double base = eval_node(*n.lhs, y);
      const double exponent = eval_node(*n.rhs, y);
      if (base < 0.0 && exponent != std::trunc(exponent)) {
        throw EvalError(print_node(n), y, "non-integer power of a negative base");
      }
      if (base == 0.0 && exponent < 0.0) throw EvalError(print_node(n), y, "division by zero");
      return checked(n, y, std::pow(base, exponent));
    }
    case Expr::Kind::Call: {
      const double x = eval_node(*n.lhs, y);
      switch (n.func) {
        case Expr::Func::Sin: return checked(n, y, std::sin(x));
        case Expr::Func::Cos: return checked(n, y, std::cos(x));
        case Expr::Func::Tan: return checked(n, y, std::tan(x));
        case Expr::Func::Atan: return checked(n, y, std::atan(x));
        case Expr::Func::Sinh: return checked(n, y, std::sinh(x));
        case Expr::Func::Cosh: return checked(n, y, std::cosh(x));
        case Expr::Func::Tanh: return checked(n, y, std::tanh(x));
        case Expr::Func::Sqrt:
          if (x < 0.0) throw EvalError(print_node(n), y, "square root of a negative number");
          return std::sqrt(x);
        case Expr::Func::Exp: return checked(n, y, std::exp(x));
        case Expr::Func::Ln:
          if (x <= 0.0) throw EvalError(print_node(n), y, "logarithm of a non-positive number");
          return checked(n, y, std::log(x));
        case Expr::Func::Abs: return std::abs(x);
      }
    }
  }
  throw EvalError(print_node(n), y, "malformed node");
}

}  // namespace

Expr Expr::parse(std::string_view source) {
  Parser parser(source);
  std::shared_ptr<const Node> root = parser.parse();
  return Expr(std::move(root), std::string(source));
}

double Expr::eval(double y) const { return eval_node(*root_, y); }

std::string Expr::print() const { return print_node(*root_); }

}  // namespace minlen
