#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gcinf/field.hpp"
#include "gcinf/jet.hpp"

namespace gcinf {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression tree of the field DSL.
//
// Grammar, loosest to tightest binding:
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' exponent)?          (right associative)
//   exponent:= '-' exponent | power
//   atom    := number | xN | name '(' sum ')' | '(' sum ')'
// Variables are x1..xn (1-based). Functions: exp log sin cos sinh cosh tanh
// sqrt. Numbers are decimal with an optional exponent.
class Expr {
 public:
  enum class Kind { number, variable, negate, add, subtract, multiply, divide, power, call };
  enum class Function { exp, log, sin, cos, sinh, cosh, tanh, sqrt };

  static ExprPtr number(double v);
  // 0-based variable index.
  static ExprPtr variable(int index);
  static ExprPtr negate(ExprPtr a);
  static ExprPtr binary(Kind kind, ExprPtr a, ExprPtr b);
  static ExprPtr call(Function f, ExprPtr a);

  Kind kind() const noexcept { return kind_; }
  double value() const noexcept { return value_; }
  int index() const noexcept { return index_; }
  Function function() const noexcept { return function_; }
  const ExprPtr& lhs() const noexcept { return lhs_; }
  const ExprPtr& rhs() const noexcept { return rhs_; }

  // One more than the largest variable index used, 0 if none.
  int arity() const;
  bool is_constant() const { return arity() == 0; }

 private:
  Expr() = default;
  Kind kind_ = Kind::number;
  double value_ = 0.0;
  int index_ = 0;
  Function function_ = Function::exp;
  ExprPtr lhs_;
  ExprPtr rhs_;
};

const char* function_name(Expr::Function f);

// Throws ParseError (1-based column) on malformed input, unknown names and
// variables beyond `dim`.
ExprPtr parse_expr(std::string_view text, int dim = kMaxJetDim);
// Minimal-parenthesis rendering; numbers use 17 significant digits so
// parse(print(e)) reproduces e.
std::string print_expr(const Expr& e);

Jet eval_jet(const Expr& e, std::span<const Jet> coords);
// Taylor expansion of order `order` at `point`.
Jet eval_jet(const Expr& e, std::span<const double> point, int order);
double eval(const Expr& e, std::span<const double> point);

// Field whose components are the given expressions in `dim` variables.
FieldPtr expr_field(std::vector<ExprPtr> components, int dim);

// Builders with light constant folding, for generating expressions.
ExprPtr operator+(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator-(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator*(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator/(const ExprPtr& a, const ExprPtr& b);
ExprPtr operator-(const ExprPtr& a);

}  // namespace gcinf
