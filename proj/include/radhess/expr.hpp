#ifndef RADHESS_EXPR_HPP
#define RADHESS_EXPR_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace radhess {

// Error raised while parsing or evaluating an expression. `offset` is the
// byte position in the source text for parse errors, npos for eval errors.
struct ExprError : std::runtime_error {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t offset;
  ExprError(const std::string& msg, std::size_t off = npos)
      : std::runtime_error(msg), offset(off) {}
};

// Immutable scalar expression in one free variable `t` and the named
// dimension constant `N`. Supported: decimal literals, + - * / ^, unary -,
// sqrt, exp, ln, abs, pow, min, max. `^` binds tightest and is
// right-associative; unary minus sits between `^` and `*` `/`.
class Expr {
 public:
  struct Node;

  Expr() = default;  // invalid until assigned from parse()

  static Expr parse(std::string_view source);

  // n is bound to the constant N; requires n >= 3. Throws ExprError on
  // domain violations (sqrt/ln of a negative, division by zero, negative
  // base with fractional exponent).
  double eval(double t, int n) const;

  // Fully parenthesized round-trippable form: parse(unparse()) yields a
  // structurally identical tree.
  std::string unparse() const;

  bool valid() const { return root_ != nullptr; }

 private:
  explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace radhess

#endif
