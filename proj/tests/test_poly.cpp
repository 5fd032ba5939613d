#include "qforms/poly.hpp"

#include <doctest.h>

#include <random>

using namespace qf;

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

Polynomial random_poly(std::mt19937& rng, const std::vector<std::string>& vars,
                       int max_terms = 5, int max_deg = 3) {
  std::uniform_int_distribution<int> coeff(-6, 6), deg(0, max_deg),
      nterms(1, max_terms);
  Polynomial p(vars);
  int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    Polynomial::Exponents e(vars.size(), 0);
    int budget = deg(rng);
    for (size_t i = 0; i < vars.size() && budget > 0; ++i) {
      std::uniform_int_distribution<int> part(0, budget);
      e[i] = part(rng);
      budget -= e[i];
    }
    int c = coeff(rng);
    if (c != 0) p.set_coefficient(e, p.coefficient(e) + c);
  }
  return p;
}

}  // namespace

TEST_CASE("parser on hand-checked inputs") {
  std::vector<std::string> vars{"x1", "x2", "x3"};
  Polynomial p = Polynomial::parse("x1*x2 + x3^2 - 1", vars);
  CHECK(p.coefficient({1, 1, 0}) == 1);
  CHECK(p.coefficient({0, 0, 2}) == 1);
  CHECK(p.constant_term() == -1);
  CHECK(p.total_degree() == 2);

  CHECK(Polynomial::parse("0", vars).is_zero());
  CHECK(Polynomial::parse("(x+1)^2 - x^2 - 2*x - 1", {"x"}).is_zero());
  CHECK(Polynomial::parse("1/2 + 1/2", {"x"}) == Polynomial::constant(1));
  CHECK(Polynomial::parse("x - -1", {"x"}) ==
        Polynomial::parse("x + 1", {"x"}));
}

TEST_CASE("parser rejects malformed input") {
  std::vector<std::string> vars{"x", "y"};
  CHECK_THROWS_AS(Polynomial::parse("2x", vars), SyntaxError);
  CHECK_THROWS_AS(Polynomial::parse("x*", vars), SyntaxError);
  CHECK_THROWS_AS(Polynomial::parse("(x+y", vars), SyntaxError);
  CHECK_THROWS_AS(Polynomial::parse("x^y", vars), SyntaxError);
  CHECK_THROWS_AS(Polynomial::parse("x/y", vars), SyntaxError);
  CHECK_THROWS_AS(Polynomial::parse("w + 1", vars), UnknownVariable);
  try {
    Polynomial::parse("x + @", vars);
    CHECK(false);
  } catch (const SyntaxError& e) {
    CHECK(e.position == 4);
  }
}

TEST_CASE("substitution on hand-checked inputs") {
  std::vector<std::string> xt{"x", "t"};
  Polynomial x2 = Polynomial::parse("x^2", {"x"});
  Polynomial shifted = x2.substitute({{"x", Polynomial::parse("x + t", xt)}});
  CHECK(shifted == Polynomial::parse("x^2 + 2*x*t + t^2", xt));

  Polynomial x = Polynomial::parse("x", {"x"});
  CHECK(x.substitute({{"x", x}}) == x);
  CHECK_THROWS_AS(x2.substitute({{"y", x}}), MissingAssignment);
}

TEST_CASE("zero detection is exact") {
  CHECK(Polynomial().is_zero());
  CHECK(Polynomial::parse("x - x", {"x"}).is_zero());
  CHECK(Polynomial::parse("x^2 - y^2 - (x-y)*(x+y)", {"x", "y"}).is_zero());
  CHECK(!Polynomial::parse("x^2 - y^2 - (x-y)*(x-y)", {"x", "y"}).is_zero());
}

TEST_CASE("ring laws on random polynomials") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial a = random_poly(rng, kXYZ), b = random_poly(rng, kXYZ),
               c = random_poly(rng, kXYZ);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("substitution composes") {
  std::mt19937 rng(11);
  std::vector<std::string> uv{"u", "v"};
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial p = random_poly(rng, {"x", "y"}, 4, 2);
    Polynomial ax = random_poly(rng, uv, 3, 2), ay = random_poly(rng, uv, 3, 2);
    Polynomial bu = random_poly(rng, {"s"}, 3, 2), bv = random_poly(rng, {"s"}, 3, 2);
    std::map<std::string, Polynomial> A{{"x", ax}, {"y", ay}};
    std::map<std::string, Polynomial> B{{"u", bu}, {"v", bv}};
    std::map<std::string, Polynomial> AB{{"x", ax.substitute(B)}, {"y", ay.substitute(B)}};
    CHECK(p.substitute(A).substitute(B) == p.substitute(AB));
  }
}

TEST_CASE("printing is a parse fixed point") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 60; ++trial) {
    Polynomial p = random_poly(rng, kXYZ);
    std::string s = p.str();
    Polynomial q = Polynomial::parse(s, kXYZ);
    CHECK(q == p);
    CHECK(q.str() == s);
  }
  CHECK(Polynomial().str() == "0");
}

TEST_CASE("evaluation matches substitution by constants") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick(-5, 5);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial p = random_poly(rng, kXYZ);
    std::map<std::string, Rational> point;
    for (const auto& v : kXYZ) point[v] = pick(rng);
    std::map<std::string, Polynomial> consts;
    for (const auto& [k, r] : point) consts[k] = Polynomial::constant(r);
    CHECK(p.substitute(consts).constant_term() == p.evaluate(point));
  }
}

TEST_CASE("single-divisor division certifies exact divisibility") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial f = random_poly(rng, kXYZ, 4, 2);
    if (f.is_zero()) continue;
    Polynomial m = random_poly(rng, kXYZ, 3, 2);
    Polynomial h = m * f;
    auto [quot, rem] = h.divide_by(f);
    CHECK(rem.is_zero());
    CHECK(quot * f == h);
  }
  Polynomial f = Polynomial::parse("x^2 + y", {"x", "y"});
  auto [q, r] = Polynomial::parse("x^2 + y + 1", {"x", "y"}).divide_by(f);
  CHECK(q == Polynomial::constant(1).with_variables({"x", "y"}));
  CHECK(r == Polynomial::constant(1).with_variables({"x", "y"}));
}

TEST_CASE("mod-p zero testing") {
  Polynomial p = Polynomial::parse("5*x^2 + 10*y - 15", {"x", "y"});
  CHECK(p.is_zero_mod(5));
  CHECK(!p.is_zero_mod(3));
  Polynomial half = Polynomial::parse("1/2", {"x"});
  CHECK(!half.is_zero_mod(5));       // 1/2 = 3 mod 5
  CHECK_THROWS(half.is_zero_mod(2));  // denominator collides with p
}

TEST_CASE("polymap composition") {
  std::vector<std::string> xy{"x", "y"};
  PolyMap swap_map{{Polynomial::variable("y", xy), Polynomial::variable("x", xy)}, xy, {}};
  PolyMap twice = compose(swap_map, swap_map);
  CHECK(twice.components[0] == Polynomial::variable("x", xy));
  CHECK(twice.components[1] == Polynomial::variable("y", xy));
  Polynomial p = Polynomial::parse("x^2 - y", xy);
  CHECK(compose(p, xy, swap_map) == Polynomial::parse("y^2 - x", xy));
}
