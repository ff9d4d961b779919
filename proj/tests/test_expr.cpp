#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "gcinf/catalog.hpp"
#include "gcinf/error.hpp"
#include "gcinf/expr.hpp"
#include "gcinf/sampling.hpp"
#include "oracles.hpp"

using namespace gcinf;

TEST_CASE("parse shapes") {
  auto e = parse_expr("sinh(x1)^2", 2);
  REQUIRE(e->kind() == Expr::Kind::power);
  CHECK(e->lhs()->kind() == Expr::Kind::call);
  CHECK(e->lhs()->function() == Expr::Function::sinh);
  CHECK(e->rhs()->value() == 2.0);

  auto q = parse_expr("1/(x3^2)", 3);
  CHECK(q->kind() == Expr::Kind::divide);
  CHECK(q->arity() == 3);

  CHECK(eval(*parse_expr("2*exp(-2*x1)", 1), std::vector<double>{0.0}) == 2.0);
  CHECK(eval(*parse_expr("2^3^2"), std::vector<double>{}) == 512.0);
  CHECK(eval(*parse_expr("-2^2"), std::vector<double>{}) == -4.0);
  CHECK(eval(*parse_expr("2^-1"), std::vector<double>{}) == 0.5);
  CHECK(eval(*parse_expr("1.5e-1*x1 - x2", 2), std::vector<double>{2.0, 1.0}) == doctest::Approx(-0.7));
  CHECK(parse_expr("3")->is_constant());
}

TEST_CASE("parse errors carry a column") {
  auto column = [](const std::string& text, int dim) {
    try {
      parse_expr(text, dim);
    } catch (const ParseError& e) {
      return e.column();
    }
    return -1;
  };
  CHECK(column("x1 + ", 2) == 6);
  CHECK(column("x1 * (x2", 2) == 9);
  CHECK(column("foo(x1)", 2) == 1);
  CHECK(column("x1 + x3", 2) == 6);
  CHECK(column("x1 $ 2", 2) == 4);
  CHECK(column("", 2) == 1);
}

TEST_CASE("print then parse reproduces every catalog expression") {
  for (const auto& doc : catalog_documents()) {
    for (const auto& [key, text] : doc.entries) {
      const auto e = parse_expr(text, doc.dim);
      const std::string printed = print_expr(*e);
      const auto again = parse_expr(printed, doc.dim);
      CHECK_MESSAGE(print_expr(*again) == printed, doc.name() << " " << key);
      const auto c = doc.box.center();
      CHECK(eval(*again, c) == eval(*e, c));
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval(*parse_expr("log(x1)", 1), std::vector<double>{-1.0}), DomainError);
  CHECK_THROWS_AS(eval(*parse_expr("1/x1", 1), std::vector<double>{0.0}), DomainError);
  CHECK_THROWS_AS(eval(*parse_expr("sqrt(x1)", 1), std::vector<double>{-0.5}), DomainError);
}

TEST_CASE("jet evaluation agrees with finite differences on random expressions") {
  UniformSource rng(11);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 2 + trial % 2;
    const auto doc = random_conformal_spec(dim, static_cast<std::uint64_t>(trial + 100));
    const auto e = parse_expr(*doc.entry("u"), dim);
    std::vector<double> p(static_cast<std::size_t>(dim));
    for (auto& v : p) v = rng.next(-0.5, 0.5);
    const Jet j = eval_jet(*e, p, 3);
    auto plain = [&](const oracle::Vec& v) { return eval(*e, std::vector<double>(v.data(), v.data() + v.size())); };
    const oracle::Vec pv = Eigen::Map<const Eigen::VectorXd>(p.data(), dim);
    const int order = 1 + trial % 3;
    std::vector<int> vars;
    for (int k = 0; k < order; ++k) vars.push_back((trial + k) % dim);
    const double fd = oracle::partial(plain, pv, vars, 1e-2);
    CHECK(j.partial(std::span<const int>(vars)) == doctest::Approx(fd).epsilon(1e-5).scale(1.0));
    ++checked;
  }
  CHECK(checked == 50);
}
