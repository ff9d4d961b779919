#include "gcinf/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "gcinf/error.hpp"

namespace gcinf {

ExprPtr Expr::number(double v) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::number;
  e->value_ = v;
  return e;
}

ExprPtr Expr::variable(int index) {
  if (index < 0 || index >= kMaxJetDim) throw DimensionError("expression variable index out of range");
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::variable;
  e->index_ = index;
  return e;
}

ExprPtr Expr::negate(ExprPtr a) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::negate;
  e->lhs_ = std::move(a);
  return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr a, ExprPtr b) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = kind;
  e->lhs_ = std::move(a);
  e->rhs_ = std::move(b);
  return e;
}

ExprPtr Expr::call(Function f, ExprPtr a) {
  auto e = std::shared_ptr<Expr>(new Expr());
  e->kind_ = Kind::call;
  e->function_ = f;
  e->lhs_ = std::move(a);
  return e;
}

int Expr::arity() const {
  switch (kind_) {
    case Kind::number: return 0;
    case Kind::variable: return index_ + 1;
    default: {
      int a = lhs_ ? lhs_->arity() : 0;
      if (rhs_) a = std::max(a, rhs_->arity());
      return a;
    }
  }
}

const char* function_name(Expr::Function f) {
  switch (f) {
    case Expr::Function::exp: return "exp";
    case Expr::Function::log: return "log";
    case Expr::Function::sin: return "sin";
    case Expr::Function::cos: return "cos";
    case Expr::Function::sinh: return "sinh";
    case Expr::Function::cosh: return "cosh";
    case Expr::Function::tanh: return "tanh";
    case Expr::Function::sqrt: return "sqrt";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Parser

namespace {

bool lookup_function(std::string_view name, Expr::Function& f) {
  static constexpr Expr::Function all[] = {Expr::Function::exp,  Expr::Function::log,  Expr::Function::sin,
                                           Expr::Function::cos,  Expr::Function::sinh, Expr::Function::cosh,
                                           Expr::Function::tanh, Expr::Function::sqrt};
  for (auto c : all) {
    if (name == function_name(c)) {
      f = c;
      return true;
    }
  }
  return false;
}

class Parser {
 public:
  Parser(std::string_view text, int dim) : text_(text), dim_(dim) {}

  ExprPtr parse() {
    skip_space();
    if (at_end()) fail("empty expression");
    ExprPtr e = sum();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, static_cast<int>(pos_) + 1); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t pos) const {
    throw ParseError(what, static_cast<int>(pos) + 1);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr sum() {
    ExprPtr e = product();
    while (true) {
      if (accept('+')) {
        e = Expr::binary(Expr::Kind::add, e, product());
      } else if (accept('-')) {
        e = Expr::binary(Expr::Kind::subtract, e, product());
      } else {
        return e;
      }
    }
  }

  ExprPtr product() {
    ExprPtr e = unary();
    while (true) {
      if (accept('*')) {
        e = Expr::binary(Expr::Kind::multiply, e, unary());
      } else if (accept('/')) {
        e = Expr::binary(Expr::Kind::divide, e, unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    if (accept('-')) return Expr::negate(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (accept('^')) return Expr::binary(Expr::Kind::power, base, exponent());
    return base;
  }

  ExprPtr exponent() {
    if (accept('-')) return Expr::negate(exponent());
    return power();
  }

  ExprPtr atom() {
    skip_space();
    if (at_end()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (!at_end() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) fail_at("malformed number", start);
    if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      const std::size_t epos = pos_;
      ++pos_;
      if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail_at("malformed exponent in number", epos);
    }
    const std::string lexeme(text_.substr(start, pos_ - start));
    return Expr::number(std::strtod(lexeme.c_str(), nullptr));
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    Expr::Function f{};
    if (lookup_function(name, f)) {
      if (!accept('(')) fail("function '" + std::string(name) + "' needs a parenthesized argument");
      ExprPtr arg = sum();
      skip_space();
      if (!at_end() && text_[pos_] == ',') fail("function '" + std::string(name) + "' takes one argument");
      if (!accept(')')) fail("expected ')'");
      return Expr::call(f, arg);
    }
    if (name.size() >= 2 && name[0] == 'x') {
      bool all_digits = true;
      for (std::size_t i = 1; i < name.size(); ++i) all_digits = all_digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (all_digits && name[1] != '0' && name.size() <= 3) {
        const int k = std::stoi(std::string(name.substr(1)));
        if (k > dim_) {
          fail_at("variable " + std::string(name) + " exceeds dimension " + std::to_string(dim_), start);
        }
        return Expr::variable(k - 1);
      }
    }
    fail_at("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view text_;
  int dim_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::add:
    case Expr::Kind::subtract: return 1;
    case Expr::Kind::multiply:
    case Expr::Kind::divide: return 2;
    case Expr::Kind::negate: return 3;
    case Expr::Kind::power: return 4;
    case Expr::Kind::number: return e.value() < 0.0 || std::signbit(e.value()) ? 3 : 5;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out.push_back('(');
    print(e, out);
    out.push_back(')');
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::number: {
      char buf[32];
      const double v = e.value();
      if (std::signbit(v)) {
        std::snprintf(buf, sizeof buf, "%.17g", -v);
        out.push_back('-');
      } else {
        std::snprintf(buf, sizeof buf, "%.17g", v);
      }
      out += buf;
      return;
    }
    case Expr::Kind::variable: out += "x" + std::to_string(e.index() + 1); return;
    case Expr::Kind::negate:
      out.push_back('-');
      print_child(*e.lhs(), 3, out);
      return;
    case Expr::Kind::add:
      print_child(*e.lhs(), 1, out);
      out += " + ";
      print_child(*e.rhs(), 2, out);
      return;
    case Expr::Kind::subtract:
      print_child(*e.lhs(), 1, out);
      out += " - ";
      print_child(*e.rhs(), 2, out);
      return;
    case Expr::Kind::multiply:
      print_child(*e.lhs(), 2, out);
      out += "*";
      print_child(*e.rhs(), 3, out);
      return;
    case Expr::Kind::divide:
      print_child(*e.lhs(), 2, out);
      out += "/";
      print_child(*e.rhs(), 3, out);
      return;
    case Expr::Kind::power:
      print_child(*e.lhs(), 5, out);
      out += "^";
      print_child(*e.rhs(), 3, out);
      return;
    case Expr::Kind::call:
      out += function_name(e.function());
      out.push_back('(');
      print(*e.lhs(), out);
      out.push_back(')');
      return;
  }
}

// Constant value of an exponent subtree, if it has no variables.
bool constant_value(const Expr& e, double& v) {
  if (!e.is_constant()) return false;
  v = eval(e, std::span<const double>());
  return true;
}

}  // namespace

ExprPtr parse_expr(std::string_view text, int dim) {
  if (dim < 1 || dim > kMaxJetDim) throw DimensionError("parse_expr: dimension out of range");
  return Parser(text, dim).parse();
}

std::string print_expr(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

Jet eval_jet(const Expr& e, std::span<const Jet> x) {
  switch (e.kind()) {
    case Expr::Kind::number: return Jet(e.value());
    case Expr::Kind::variable:
      if (e.index() >= static_cast<int>(x.size())) throw DimensionError("expression uses a variable beyond the chart");
      return x[static_cast<std::size_t>(e.index())];
    case Expr::Kind::negate: return -eval_jet(*e.lhs(), x);
    case Expr::Kind::add: return eval_jet(*e.lhs(), x) + eval_jet(*e.rhs(), x);
    case Expr::Kind::subtract: return eval_jet(*e.lhs(), x) - eval_jet(*e.rhs(), x);
    case Expr::Kind::multiply: return eval_jet(*e.lhs(), x) * eval_jet(*e.rhs(), x);
    case Expr::Kind::divide: return eval_jet(*e.lhs(), x) / eval_jet(*e.rhs(), x);
    case Expr::Kind::power: {
      const Jet base = eval_jet(*e.lhs(), x);
      double c = 0.0;
      if (constant_value(*e.rhs(), c)) return pow(base, c);
      return pow(base, eval_jet(*e.rhs(), x));
    }
    case Expr::Kind::call: {
      const Jet a = eval_jet(*e.lhs(), x);
      switch (e.function()) {
        case Expr::Function::exp: return exp(a);
        case Expr::Function::log: return log(a);
        case Expr::Function::sin: return sin(a);
        case Expr::Function::cos: return cos(a);
        case Expr::Function::sinh: return sinh(a);
        case Expr::Function::cosh: return cosh(a);
        case Expr::Function::tanh: return tanh(a);
        case Expr::Function::sqrt: return sqrt(a);
      }
    }
  }
  throw Error("eval_jet: malformed expression");
}

Jet eval_jet(const Expr& e, std::span<const double> point, int order) {
  const auto coords = coordinate_jets(point, order);
  return promoted(eval_jet(e, coords), JetSpace::get(static_cast<int>(point.size()), order));
}

double eval(const Expr& e, std::span<const double> p) {
  switch (e.kind()) {
    case Expr::Kind::number: return e.value();
    case Expr::Kind::variable:
      if (e.index() >= static_cast<int>(p.size())) throw DimensionError("expression uses a variable beyond the chart");
      return p[static_cast<std::size_t>(e.index())];
    case Expr::Kind::negate: return -eval(*e.lhs(), p);
    case Expr::Kind::add: return eval(*e.lhs(), p) + eval(*e.rhs(), p);
    case Expr::Kind::subtract: return eval(*e.lhs(), p) - eval(*e.rhs(), p);
    case Expr::Kind::multiply: return eval(*e.lhs(), p) * eval(*e.rhs(), p);
    case Expr::Kind::divide: {
      const double d = eval(*e.rhs(), p);
      if (d == 0.0) throw DomainError("division by zero");
      return eval(*e.lhs(), p) / d;
    }
    case Expr::Kind::power: {
      const double b = eval(*e.lhs(), p);
      const double x = eval(*e.rhs(), p);
      if (b < 0.0 && std::nearbyint(x) != x) throw DomainError("non-integer power of a negative value");
      if (b == 0.0 && x < 0.0) throw DomainError("division by zero");
      return std::pow(b, x);
    }
    case Expr::Kind::call: {
      const double a = eval(*e.lhs(), p);
      switch (e.function()) {
        case Expr::Function::exp: return std::exp(a);
        case Expr::Function::log:
          if (!(a > 0.0)) throw DomainError("log of non-positive value " + std::to_string(a));
          return std::log(a);
        case Expr::Function::sin: return std::sin(a);
        case Expr::Function::cos: return std::cos(a);
        case Expr::Function::sinh: return std::sinh(a);
        case Expr::Function::cosh: return std::cosh(a);
        case Expr::Function::tanh: return std::tanh(a);
        case Expr::Function::sqrt:
          if (a < 0.0) throw DomainError("sqrt of negative value " + std::to_string(a));
          return std::sqrt(a);
      }
    }
  }
  throw Error("eval: malformed expression");
}

FieldPtr expr_field(std::vector<ExprPtr> components, int dim) {
  for (const auto& c : components) {
    if (!c) throw Error("expr_field: null expression");
    if (c->arity() > dim) throw DimensionError("expression uses a variable beyond the chart dimension");
  }
  const int size = static_cast<int>(components.size());
  return make_algebraic(dim, size, [comps = std::move(components)](std::span<const Jet> x) {
    std::vector<Jet> out;
    out.reserve(comps.size());
    for (const auto& c : comps) out.push_back(eval_jet(*c, x));
    return out;
  });
}

namespace {

bool is_number(const ExprPtr& e, double v) { return e->kind() == Expr::Kind::number && e->value() == v; }

}  // namespace

ExprPtr operator+(const ExprPtr& a, const ExprPtr& b) {
  if (is_number(a, 0.0)) return b;
  if (is_number(b, 0.0)) return a;
  if (a->kind() == Expr::Kind::number && b->kind() == Expr::Kind::number) return Expr::number(a->value() + b->value());
  return Expr::binary(Expr::Kind::add, a, b);
}

ExprPtr operator-(const ExprPtr& a, const ExprPtr& b) {
  if (is_number(b, 0.0)) return a;
  if (is_number(a, 0.0)) return -b;
  if (a->kind() == Expr::Kind::number && b->kind() == Expr::Kind::number) return Expr::number(a->value() - b->value());
  return Expr::binary(Expr::Kind::subtract, a, b);
}

ExprPtr operator*(const ExprPtr& a, const ExprPtr& b) {
  if (is_number(a, 0.0) || is_number(b, 0.0)) return Expr::number(0.0);
  if (is_number(a, 1.0)) return b;
  if (is_number(b, 1.0)) return a;
  if (a->kind() == Expr::Kind::number && b->kind() == Expr::Kind::number) return Expr::number(a->value() * b->value());
  return Expr::binary(Expr::Kind::multiply, a, b);
}

ExprPtr operator/(const ExprPtr& a, const ExprPtr& b) {
  if (is_number(b, 1.0)) return a;
  if (is_number(a, 0.0) && !is_number(b, 0.0)) return Expr::number(0.0);
  return Expr::binary(Expr::Kind::divide, a, b);
}

ExprPtr operator-(const ExprPtr& a) {
  if (a->kind() == Expr::Kind::number) return Expr::number(a->value() == 0.0 ? 0.0 : -a->value());
  if (a->kind() == Expr::Kind::negate) return a->lhs();
  return Expr::negate(a);
}

}  // namespace gcinf
