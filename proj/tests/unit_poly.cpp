#include <random>

#include "ci0/errors.hpp"
#include "ci0/poly.hpp"
#include "doctest.h"

using namespace ci0;

namespace {

Polynomial random_poly(const RingPtr& r, std::mt19937_64& rng, int terms, unsigned maxdeg) {
  std::vector<Term> ts;
  std::uniform_int_distribution<unsigned> e(0, maxdeg);
  for (int i = 0; i < terms; ++i) {
    std::vector<std::uint32_t> ex(r->nvars());
    for (auto& v : ex) v = e(rng);
    ts.push_back({Monomial(ex), Scalar::random(r->field(), rng, 7)});
  }
  return Polynomial::from_terms(r, ts);
}

// Coefficient-wise expansion of a product, independent of the term merge code.
Polynomial schoolbook(const Polynomial& a, const Polynomial& b) {
  Polynomial acc(a.ring());
  for (const auto& s : a.terms())
    for (const auto& t : b.terms()) acc += Polynomial::monomial(a.ring(), s.mono * t.mono, s.coef * t.coef);
  return acc;
}

}  // namespace

TEST_CASE("parse basic forms") {
  auto r = make_ring(Field::rationals(), {"x", "y"});
  auto p = parse_polynomial("x*y", r);
  CHECK(p.size() == 1);
  CHECK(p.leading_monomial() == Monomial({1, 1}));
  CHECK(p.leading_coefficient().is_one());
  auto q = parse_polynomial("x^3 + y^3", r);
  CHECK(q.size() == 2);
  CHECK(q.degree() == 3);
  CHECK(parse_polynomial(" -1/2 * y + (x - y)^2 ", r).to_string() == "x^2 - 2*x*y + y^2 - 1/2*y");
  CHECK(parse_polynomial("0", r).is_zero());
}

TEST_CASE("canonical form over GF(5)") {
  auto r = make_ring(Field::prime(5), {"x", "y"});
  CHECK(parse_polynomial("x^2 - y^2", r).to_string() == "x^2 + 4*y^2");
}

TEST_CASE("parse errors report positions") {
  auto r = make_ring(Field::rationals(), {"x", "y"});
  try {
    parse_polynomial("x + z", r);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_polynomial("2x", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x +", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("1/0", r), ParseError);
  CHECK_THROWS_AS(parse_polynomial("", r), ParseError);
}

TEST_CASE("arithmetic examples") {
  auto r = make_ring(Field::rationals(), {"x", "y"});
  auto P = [&](const char* s) { return parse_polynomial(s, r); };
  CHECK((P("x+y") * P("x-y")) == P("x^2 - y^2"));
  CHECK((P("x^2+y^2") + P("-x^2-y^2")).is_zero());
  auto r2 = make_ring(Field::prime(2), {"x", "y"});
  auto s = parse_polynomial("x+y", r2);
  CHECK(s * s == schoolbook(s, s));
  CHECK((s * s).to_string() == "x^2 + y^2");
  CHECK_THROWS_AS(P("x") + parse_polynomial("x", r2), ContextMismatch);
}

TEST_CASE("monomial orders") {
  MonomialOrder dr, lex(OrderKind::Lex);
  Monomial a({2, 0, 0}), b({0, 1, 1}), c({1, 0, 2});
  CHECK(dr.compare(a, b) > 0);
  CHECK(dr.compare(c, a) > 0);
  CHECK(lex.compare(a, c) > 0);
  CHECK(dr.compare(Monomial({0, 0, 0}), b) < 0);
  CHECK(lex.compare(Monomial({0, 0, 0}), b) < 0);
}

TEST_CASE("ring axioms and parser round trip on random samples") {
  std::mt19937_64 rng(5);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(7)}) {
    for (auto ord : {MonomialOrder(), MonomialOrder(OrderKind::Lex)}) {
      auto r = make_ring(f, {"x", "y", "z"}, ord);
      for (int t = 0; t < 40; ++t) {
        auto a = random_poly(r, rng, 4, 3), b = random_poly(r, rng, 4, 3), c = random_poly(r, rng, 3, 2);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a * b == schoolbook(a, b));
        CHECK((a - a).is_zero());
        CHECK(parse_polynomial(a.to_string(), r) == a);
      }
    }
  }
}
