#include "radhess/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace radhess {

namespace {

enum class Op {
  Number,
  VarT,
  ConstN,
  Add,
  Sub,
  Mul,
  Div,
  Pow,
  Neg,
  Sqrt,
  Exp,
  Ln,
  Abs,
  Min,
  Max,
};

bool is_integer_valued(double x) {
  return std::isfinite(x) && x == std::floor(x) && std::fabs(x) < 1e15;
}

}  // namespace

struct Expr::Node {
  Op op;
  double value = 0.0;  // Number only
  std::shared_ptr<const Node> lhs, rhs;

  Node(Op o, std::shared_ptr<const Node> l = nullptr,
       std::shared_ptr<const Node> r = nullptr)
      : op(o), lhs(std::move(l)), rhs(std::move(r)) {}
  explicit Node(double v) : op(Op::Number), value(v) {}
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make(Op op, NodePtr l = nullptr, NodePtr r = nullptr) {
  return std::make_shared<const Expr::Node>(op, std::move(l), std::move(r));
}

struct Parser {
  std::string_view src;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ExprError("syntax error at offset " + std::to_string(pos) + ": " + what, pos);
  }

  void skip_ws() {
    while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
  }

  bool eat(char c) {
    skip_ws();
    if (pos < src.size() && src[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  void expect(char c, const char* ctx) {
    if (!eat(c)) fail(std::string("expected '") + c + "' " + ctx);
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    for (;;) {
      if (eat('+'))
        lhs = make(Op::Add, lhs, parse_term());
      else if (eat('-'))
        lhs = make(Op::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Op::Mul, lhs, parse_unary());
      else if (eat('/'))
        lhs = make(Op::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (eat('-')) return make(Op::Neg, parse_unary());
    return parse_power();
  }

  // `^` is right-associative and binds tighter than unary minus; the
  // exponent itself may carry a sign: 2^-3.
  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (eat('^')) return make(Op::Pow, base, parse_unary());
    return base;
  }

  NodePtr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      NodePtr inner = parse_expr();
      expect(')', "to close parenthesis");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    if (c == '\0') fail("unexpected end of input, expected a value");
    fail(std::string("unexpected character '") + c + "', expected a value");
  }

  NodePtr parse_number() {
    std::size_t start = pos;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    if (pos < src.size() && src[pos] == '.') {
      ++pos;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
      std::size_t mark = pos;
      ++pos;
      if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
      if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
      } else {
        pos = mark;  // bare 'e' is not an exponent here
      }
    }
    std::string text(src.substr(start, pos - start));
    if (text == ".") {
      pos = start;
      fail("malformed number");
    }
    return std::make_shared<const Expr::Node>(std::stod(text));
  }

  NodePtr parse_identifier() {
    std::size_t start = pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    std::string name(src.substr(start, pos - start));
    if (name == "t") return make(Op::VarT);
    if (name == "N") return make(Op::ConstN);

    Op op;
    int arity;
    if (name == "sqrt") {
      op = Op::Sqrt;
      arity = 1;
    } else if (name == "exp") {
      op = Op::Exp;
      arity = 1;
    } else if (name == "ln") {
      op = Op::Ln;
      arity = 1;
    } else if (name == "abs") {
      op = Op::Abs;
      arity = 1;
    } else if (name == "pow") {
      op = Op::Pow;
      arity = 2;
    } else if (name == "min") {
      op = Op::Min;
      arity = 2;
    } else if (name == "max") {
      op = Op::Max;
      arity = 2;
    } else {
      pos = start;
      throw ExprError("unknown identifier '" + name + "' at offset " + std::to_string(start),
                      start);
    }

    expect('(', ("after '" + name + "'").c_str());
    NodePtr a = parse_expr();
    NodePtr b;
    if (arity == 2) {
      expect(',', "between arguments");
      b = parse_expr();
    }
    expect(')', "to close argument list");
    return make(op, a, b);
  }
};

double eval_node(const Expr::Node& node, double t, int n) {
  switch (node.op) {
    case Op::Number:
      return node.value;
    case Op::VarT:
      return t;
    case Op::ConstN:
      return static_cast<double>(n);
    case Op::Add:
      return eval_node(*node.lhs, t, n) + eval_node(*node.rhs, t, n);
    case Op::Sub:
      return eval_node(*node.lhs, t, n) - eval_node(*node.rhs, t, n);
    case Op::Mul:
      return eval_node(*node.lhs, t, n) * eval_node(*node.rhs, t, n);
    case Op::Div: {
      double num = eval_node(*node.lhs, t, n);
      double den = eval_node(*node.rhs, t, n);
      if (den == 0.0) throw ExprError("division by zero");
      return num / den;
    }
    case Op::Pow: {
      double base = eval_node(*node.lhs, t, n);
      double expo = eval_node(*node.rhs, t, n);
      if (base < 0.0 && !is_integer_valued(expo))
        throw ExprError("fractional power of a negative base");
      if (base == 0.0 && expo < 0.0) throw ExprError("zero raised to a negative power");
      return std::pow(base, expo);
    }
    case Op::Neg:
      return -eval_node(*node.lhs, t, n);
    case Op::Sqrt: {
      double x = eval_node(*node.lhs, t, n);
      if (x < 0.0) throw ExprError("sqrt of a negative argument");
      return std::sqrt(x);
    }
    case Op::Exp:
      return std::exp(eval_node(*node.lhs, t, n));
    case Op::Ln: {
      double x = eval_node(*node.lhs, t, n);
      if (x <= 0.0) throw ExprError("ln of a non-positive argument");
      return std::log(x);
    }
    case Op::Abs:
      return std::fabs(eval_node(*node.lhs, t, n));
    case Op::Min:
      return std::fmin(eval_node(*node.lhs, t, n), eval_node(*node.rhs, t, n));
    case Op::Max:
      return std::fmax(eval_node(*node.lhs, t, n), eval_node(*node.rhs, t, n));
  }
  throw ExprError("corrupt expression node");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void unparse_node(const Expr::Node& node, std::string& out) {
  auto binary = [&](const char* sym) {
    out += '(';
    unparse_node(*node.lhs, out);
    out += sym;
    unparse_node(*node.rhs, out);
    out += ')';
  };
  auto call = [&](const char* name) {
    out += name;
    out += '(';
    unparse_node(*node.lhs, out);
    if (node.rhs) {
      out += ',';
      unparse_node(*node.rhs, out);
    }
    out += ')';
  };
  switch (node.op) {
    case Op::Number:
      out += format_number(node.value);
      return;
    case Op::VarT:
      out += 't';
      return;
    case Op::ConstN:
      out += 'N';
      return;
    case Op::Add:
      binary("+");
      return;
    case Op::Sub:
      binary("-");
      return;
    case Op::Mul:
      binary("*");
      return;
    case Op::Div:
      binary("/");
      return;
    case Op::Pow:
      binary("^");
      return;
    case Op::Neg:
      out += "(-";
      unparse_node(*node.lhs, out);
      out += ')';
      return;
    case Op::Sqrt:
      call("sqrt");
      return;
    case Op::Exp:
      call("exp");
      return;
    case Op::Ln:
      call("ln");
      return;
    case Op::Abs:
      call("abs");
      return;
    case Op::Min:
      call("min");
      return;
    case Op::Max:
      call("max");
      return;
  }
}

}  // namespace

Expr Expr::parse(std::string_view source) {
  Parser p{source};
  p.skip_ws();
  if (p.pos >= source.size()) throw ExprError("empty expression", 0);
  NodePtr root = p.parse_expr();
  p.skip_ws();
  if (p.pos < source.size()) p.fail("trailing input");
  return Expr(std::move(root));
}

double Expr::eval(double t, int n) const {
  if (!root_) throw ExprError("evaluating an empty expression");
  return eval_node(*root_, t, n);
}

std::string Expr::unparse() const {
  std::string out;
  if (root_) unparse_node(*root_, out);
  return out;
}

}  // namespace radhess
