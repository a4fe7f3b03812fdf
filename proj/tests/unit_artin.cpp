#include <random>

#include "ci0/artin.hpp"
#include "ci0/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ci0;

namespace {

AlgebraPtr ring_of(std::vector<std::string> vars, std::vector<std::string> rels, Field f = Field::rationals()) {
  return ArtinAlgebra::build(f, vars, rels);
}

// dim M^k = dim S/Q - dim S/(Q + m^k), counted with Macaulay matrices.
std::size_t oracle_power_dim(const AlgebraPtr& A, unsigned k) {
  auto gens = A->ideal().source();
  std::size_t full = oracle::quotient_dim_truncated(A->ring(), gens, 12);
  for (const auto& m : monomials_of_degree(A->nvars(), k))
    gens.push_back(Polynomial::monomial(A->ring(), m, Scalar::one(A->field())));
  return full - oracle::quotient_dim_truncated(A->ring(), gens, 12);
}

IdealSubspace span(const AlgebraPtr& A, std::initializer_list<const char*> gens) {
  std::vector<AlgElement> g;
  for (auto s : gens) g.push_back(A->parse(s));
  return ideal_span(A, g);
}

IdealSubspace random_ideal(const AlgebraPtr& A, std::mt19937_64& rng) {
  std::vector<AlgElement> gens;
  for (int k = 0; k < 2; ++k) {
    Vec v = zero_vec(A->field(), A->dim());
    for (std::size_t i = 0; i + 1 < A->dim(); ++i)
      if (rng() % 3 == 0) v[i] = Scalar::random(A->field(), rng, 3);
    gens.emplace_back(A, v);
  }
  return ideal_span(A, gens);
}

}  // namespace

TEST_CASE("build e1.1, ewi and eouf algebras") {
  auto A = ring_of({"x", "y"}, {"x*y", "x^3+y^3"});
  CHECK(A->dim() == 6);
  CHECK(A->embedding_dimension() == 2);
  CHECK(A->exponent() == 4);
  CHECK(A->graded());
  CHECK(A->basis().back().is_one());
  CHECK(A->dim() == oracle::quotient_dim_truncated(A->ring(), A->ideal().source(), 10));
  for (unsigned k = 1; k <= 4; ++k) CHECK(maximal_ideal_power(A, k).dim() == oracle_power_dim(A, k));

  auto W = ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2"});
  CHECK(W->dim() == 8);
  CHECK(W->exponent() == 4);
  CHECK(maximal_ideal_power(W, 3) == socle(W));
  CHECK(socle(W) == principal_ideal(W->parse("x*y*z")));
  CHECK(socle(W).dim() == 1);

  auto O = ring_of({"x", "y"}, {"x^3", "y^3"});
  CHECK(O->dim() == 9);
  CHECK(O->exponent() == 5);
  for (unsigned k = 1; k <= 5; ++k) CHECK(maximal_ideal_power(O, k).dim() == oracle_power_dim(O, k));

  auto R = ring_of({"x", "y"}, {"x*y", "y^2-x^3"});
  CHECK_FALSE(R->graded());
  CHECK(R->exponent() == 4);
}

TEST_CASE("locality and zero-dimensionality are enforced") {
  CHECK_THROWS_AS(ring_of({"x"}, {"x-1"}), NotLocal);
  CHECK_THROWS_AS(ring_of({"x", "y"}, {"x^2-x", "y^2"}), NotLocal);
  CHECK_THROWS_AS(ring_of({"x", "y"}, {"x^2"}), NotZeroDimensional);
  CHECK_THROWS_AS(ring_of({"x"}, {"1"}), NotLocal);
}

TEST_CASE("element arithmetic") {
  auto A = ring_of({"x", "y"}, {"x*y", "x^3+y^3"});
  auto x = A->var(0), y = A->var(1);
  CHECK((x * y).is_zero());
  CHECK(y.pow(3) == -x.pow(3));
  CHECK(x.pow(4).is_zero());
  auto u = A->parse("2 + x + y^2");
  CHECK(u.is_unit());
  CHECK(u * u.inverse() == A->one());
  CHECK_THROWS_AS(x.inverse(), PreconditionError);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    Vec a = zero_vec(A->field(), 6), b = a, c = a;
    for (std::size_t i = 0; i < 6; ++i) {
      a[i] = Scalar::random(A->field(), rng);
      b[i] = Scalar::random(A->field(), rng);
      c[i] = Scalar::random(A->field(), rng);
    }
    AlgElement ea(A, a), eb(A, b), ec(A, c);
    CHECK((ea * eb) * ec == ea * (eb * ec));
    CHECK(ea * eb == eb * ea);
    CHECK(A->element(ea.lift() * eb.lift()) == ea * eb);
  }
}

TEST_CASE("ideal span and colon examples") {
  auto B = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto xA = span(B, {"x"});
  CHECK(xA.dim() == 2);
  CHECK(xA.contains(B->parse("x*y")));
  CHECK(span(B, {"0"}).is_zero());
  CHECK(colon(zero_ideal(B), {B->var(0)}) == xA);
  CHECK(minimal_generator_count(xA) == 1);
  CHECK(minimal_generator_count(zero_ideal(B)) == 0);

  auto W = ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2"});
  auto ann = annihilator(W->parse("x+y+z"));
  CHECK(ann == span(W, {"x*y-x*z", "x*y-y*z"}));
  CHECK(minimal_generator_count(ann) == 2);
  CHECK_FALSE(is_principal(ann));
  for (const auto& b : ann.basis()) CHECK((b * W->parse("x+y+z")).is_zero());
  for (long c : {1L, 2L, -3L}) {
    auto cy = "(" + std::to_string(c) + ")*y";
    CHECK(annihilator(W->parse("x+" + cy)) == principal_ideal(W->parse("x-" + cy)));
  }
}

TEST_CASE("quotient algebras") {
  auto W = ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2"});
  auto I = annihilator(W->parse("x+y+z"));
  auto q = quotient_algebra(I);
  const auto& Ab = q.target();
  CHECK(Ab->dim() == W->dim() - I.dim());
  CHECK(Ab->embedding_dimension() == 3);
  CHECK(Ab->exponent() == 3);
  CHECK(is_gorenstein(Ab));
  CHECK(is_gorenstein_quotient(I));
  CHECK(q.project(W->parse("x*y")) == q.project(W->parse("x*z")));
  CHECK(q.preimage(zero_ideal(Ab)) == I);
  CHECK(q.project(q.lift(Ab->parse("x+y"))) == Ab->parse("x+y"));

  auto O = ring_of({"x", "y"}, {"x^3", "y^3"});
  auto J = annihilator(O->parse("x^2+y^2"));
  CHECK(J == span(O, {"x*y", "y^2-x^2"}));
  auto qo = quotient_algebra(J);
  CHECK(qo.target()->dim() == 4);
  CHECK(qo.target()->embedding_dimension() == 2);
  CHECK(is_gorenstein_quotient(J));

  auto field = quotient_algebra(maximal_ideal(O)).target();
  CHECK(field->dim() == 1);
  CHECK(field->exponent() == 1);
  CHECK_THROWS_AS(quotient_algebra(unit_ideal(O)), PreconditionError);

  auto T = ring_of({"x", "y", "z", "t"}, {"x^2", "y^2", "z^2", "t^2"});
  auto K = annihilator(T->parse("x*y+x*z+z*t"));
  CHECK(is_gorenstein_quotient(K));
  CHECK(quotient_exponent(K) == 3);
  CHECK(maximal_ideal_power(T, 2).contains(K));

  auto N = ring_of({"x", "y"}, {"x^2", "x*y", "y^2"});
  CHECK_FALSE(is_gorenstein_quotient(zero_ideal(N)));
  CHECK(socle(N) == maximal_ideal(N));
}

TEST_CASE("hilbert data and graded symmetry") {
  auto O = ring_of({"x", "y"}, {"x^3", "y^3"});
  CHECK(hilbert_data(O) == std::vector<std::size_t>{1, 2, 3, 2, 1});
  CHECK(graded_symmetry_check(O));
  auto W = ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2"});
  CHECK(hilbert_data(W) == std::vector<std::size_t>{1, 3, 3, 1});
  CHECK(graded_symmetry_check(W));
  auto T = ring_of({"x", "y", "z", "t"}, {"x^2", "y^2", "z^2", "t^2"});
  CHECK(hilbert_data(T) == std::vector<std::size_t>{1, 4, 6, 4, 1});
  CHECK(graded_symmetry_check(T));
  CHECK_THROWS_AS(graded_symmetry_check(ring_of({"x", "y"}, {"x*y", "y^2-x^3"})), NotApplicable);
  CHECK_THROWS_AS(graded_symmetry_check(ring_of({"x", "y"}, {"x^2", "x*y", "y^2"})), NotApplicable);
  std::size_t total = 0;
  for (auto h : hilbert_data(O)) total += h;
  CHECK(total == O->dim());
}

TEST_CASE("lattice properties on random ideals") {
  std::mt19937_64 rng(8);
  std::vector<AlgebraPtr> gor = {
      ring_of({"x", "y"}, {"x^3", "y^3"}),
      ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2"}, Field::prime(3)),
      ring_of({"x", "y"}, {"x*y", "y^2-x^3"}),
      ring_of({"x", "y"}, {"x*y", "x^3+y^3"}, Field::prime(5)),
  };
  for (const auto& A : gor) {
    for (int t = 0; t < 15; ++t) {
      auto I = random_ideal(A, rng);
      auto J = random_ideal(A, rng);
      CHECK(I.is_closed());
      CHECK(colon(zero_ideal(A), colon(zero_ideal(A), I)) == I);
      CHECK(colon(I, J).contains(I));
      CHECK(colon(I, unit_ideal(A)) == I);
      CHECK(colon(I, std::vector<AlgElement>{}) == unit_ideal(A));
      if (!I.is_unit()) {
        auto q = quotient_algebra(I);
        auto lifted = q.preimage(socle(q.target()));
        CHECK(lifted == colon(I, maximal_ideal(A)));
      }
      auto inter = ideal_intersection(I, J);
      for (const auto& b : inter.basis()) CHECK((I.contains(b) && J.contains(b)));
      CHECK(inter.dim() == I.dim() + J.dim() - ideal_sum(I, J).dim());
    }
  }
}
