#include <random>

#include "ci0/chains.hpp"
#include "ci0/errors.hpp"
#include "doctest.h"

using namespace ci0;

namespace {

AlgebraPtr ring_of(std::vector<std::string> vars, std::vector<std::string> rels, Field f = Field::rationals()) {
  return ArtinAlgebra::build(f, vars, rels);
}

AlgMatrix mat(const AlgebraPtr& A, std::vector<std::vector<std::string>> e) { return AlgMatrix::parse(A, e); }

IdealSubspace span(const AlgebraPtr& A, std::initializer_list<const char*> gens) {
  std::vector<AlgElement> g;
  for (auto s : gens) g.push_back(A->parse(s));
  return ideal_span(A, g);
}

AlgebraPtr ewi(Field f = Field::rationals()) { return ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2"}, f); }
AlgebraPtr eouf() { return ring_of({"x", "y"}, {"x^3", "y^3"}); }
AlgebraPtr eiar() { return ring_of({"x", "y"}, {"x*y", "y^2-x^3"}); }

}  // namespace

TEST_CASE("chains from matrix factorizations") {
  auto R = eiar();
  auto c = chain_from_matrix_factorization({mat(R, {{"1", "-x^2"}, {"0", "y"}}), mat(R, {{"y", "0"}, {"0", "1"}})});
  REQUIRE(c.ideals.size() == 3);
  CHECK(c.ideals[0].is_zero());
  CHECK(c.ideals[1] == span(R, {"x"}));
  CHECK(c.ideals[2] == maximal_ideal(R));
  CHECK(c.length() == 2);

  auto U = eouf();
  auto eta2 = mat(U, {{"x", "-y"}, {"-y", "2*x"}});
  auto eta1 = mat(U, {{"x", "-y"}, {"y", "x"}});
  auto s = chain_from_matrix_factorization({eta2, eta1});
  CHECK(s.ideals[1] == annihilator(U->parse("x^2+y^2")));
  CHECK(s.ideals[1] == span(U, {"x^2-y^2", "x*y"}));
  CHECK(s.length() == 2);
  for (const auto& l : s.links) CHECK(l.ci0);

  auto t = chain_from_matrix_factorization(
      {mat(U, {{"x", "0"}, {"-y", "1"}}), mat(U, {{"1", "0"}, {"0", "x"}}), eta1});
  CHECK(t.length() == 3);
  CHECK(t.ideals[1] == s.ideals[1]);

  auto B = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto d = chain_from_matrix_factorization({mat(B, {{"x", "0"}, {"0", "1"}}), mat(B, {{"1", "0"}, {"0", "y"}})});
  CHECK(d.ideals[1] == span(B, {"y"}));

  auto withunit = chain_from_matrix_factorization(
      {mat(B, {{"x", "0"}, {"0", "y"}}), AlgMatrix::identity(B, 2)});
  CHECK_FALSE(withunit.links[0].strict);
  CHECK(withunit.links[0].factor_unit);
  CHECK(withunit.length() == 1);

  CHECK_THROWS_AS(chain_from_matrix_factorization({mat(B, {{"x", "0"}, {"0", "1"}})}), PreconditionError);
}

TEST_CASE("Gorenstein chains from socle factorizations") {
  auto U = eouf();
  auto x = U->parse("x"), y = U->parse("y");
  auto c = gorenstein_chain_from_socle_factorization({x, x, y, y});
  REQUIRE(c.ideals.size() == 5);
  CHECK(c.ideals[1] == annihilator(y));
  CHECK(c.ideals[2] == annihilator(y * y));
  CHECK(c.ideals[3] == annihilator(y * y * x));
  CHECK(c.length() == 4);
  for (const auto& l : c.links) CHECK(l.gorenstein);

  auto q = U->parse("x^2+y^2");
  auto d = gorenstein_chain_from_socle_factorization({q, y, y});
  CHECK(d.length() == 3);
  CHECK(d.ideals[3] == maximal_ideal(U));

  auto v = U->parse("3*x^2*y^2");
  auto e = gorenstein_chain_from_socle_factorization({v});
  CHECK(e.ideals.size() == 2);
  CHECK(e.ideals[1] == maximal_ideal(U));

  CHECK_THROWS_AS(gorenstein_chain_from_socle_factorization({x, y}), PreconditionError);
}

TEST_CASE("Gorenstein chain round trip on random factorizations") {
  std::mt19937_64 rng(13);
  auto U = eouf();
  auto v = U->parse("x^2*y^2");
  int done = 0;
  for (int t = 0; t < 40 && done < 8; ++t) {
    auto a = random_element(U, rng, true);
    if (a.is_zero()) continue;
    auto rest = [&]() -> std::optional<AlgElement> {
      std::vector<Vec> cols;
      for (std::size_t b = 0; b < U->dim(); ++b) cols.push_back(U->mul_basis(b, a.coords()));
      Vec rhs = v.coords();
      auto sol = solve_columns(U->field(), cols, U->dim(), &rhs);
      if (!sol.particular) return std::nullopt;
      return AlgElement(U, *sol.particular);
    }();
    if (!rest) continue;
    ++done;
    auto c = gorenstein_chain_from_socle_factorization({*rest, a});
    CHECK(colon(zero_ideal(U), c.ideals[1]) == principal_ideal(a));
    for (const auto& l : c.links) CHECK(l.strict == !l.witness.is_unit());
  }
  CHECK(done > 0);
}

TEST_CASE("refine pair") {
  auto W = ewi();
  auto phi1 = mat(W, {{"1", "0", "0"}, {"0", "y", "0"}, {"0", "0", "z"}});
  auto I1 = span(W, {"x"});
  CHECK(is_x_nice(phi1).ideal == I1);
  auto g = refine_pair(zero_ideal(W), I1, phi1);
  CHECK(is_wiebe(phi1 * g));
  auto diag = AlgMatrix::diagonal({W->parse("x"), W->one(), W->one()});
  CHECK(is_wiebe(phi1 * diag));

  auto same = refine_pair(I1, I1, phi1);
  CHECK(det(same).is_unit());

  auto U = eouf();
  auto I = annihilator(U->parse("x^2+y^2"));
  auto phi = mat(U, {{"y", "-x"}, {"0", "y"}});
  auto gam = refine_pair(zero_ideal(U), I, phi);
  CHECK(principal_ideal(det(gam)) == colon(zero_ideal(U), I));
  CHECK(principal_ideal(det(gam)) == principal_ideal(U->parse("x^2+y^2")));
  CHECK_THROWS_AS(refine_pair(I1, zero_ideal(W), phi1), PreconditionError);
}

TEST_CASE("minimal generator profiles") {
  auto R = eiar();
  auto p = min_generator_profile(R->parse("y"));
  CHECK(p.all_true());
  REQUIRE(p.z.has_value());
  CHECK(principal_ideal(*p.z) == span(R, {"x"}));
  CHECK(is_wiebe(*p.psi));

  auto W = ewi();
  auto q = min_generator_profile(W->parse("x+y+z"));
  CHECK(q.all_false());
  CHECK(minimal_generator_count(annihilator(W->parse("x+y+z"))) == 2);

  auto r = min_generator_profile(W->parse("x"));
  CHECK(r.all_true());
  CHECK(principal_ideal(*r.z) == span(W, {"x"}));
  CHECK(r.via_refinement);

  CHECK_THROWS_AS(min_generator_profile(W->parse("x*y")), PreconditionError);
  auto N = ring_of({"x", "y", "z"}, {"x^2", "y^2", "z^2", "x*y", "x*z", "y*z"});
  CHECK_THROWS_AS(min_generator_profile(N->parse("x")), PreconditionError);
}

TEST_CASE("profiles agree on sampled generators") {
  std::mt19937_64 rng(19);
  for (auto A : {ewi(Field::prime(5)), eouf(), eiar(), ring_of({"x", "y"}, {"x*y", "x^3+y^3"})}) {
    for (int t = 0; t < 6; ++t) {
      AlgElement y = A->zero();
      for (const auto& v : A->variables()) y += v.scaled(Scalar::random(A->field(), rng, 2));
      y += random_element(A, rng, true) * random_element(A, rng, true);
      if (!is_minimal_generator(y)) continue;
      auto p = min_generator_profile(y);
      CHECK((p.all_true() || p.all_false()));
    }
  }
}

TEST_CASE("principal Gorenstein ideals are C.I.0") {
  std::mt19937_64 rng(31);
  for (auto A : {ewi(), eouf(), ring_of({"x", "y", "z", "t"}, {"x^2", "y^2", "z^2", "t^2"}, Field::prime(3))}) {
    int seen = 0;
    for (int k = 0; k < 12; ++k) {
      auto b = random_element(A, rng, true);
      if (b.is_zero()) continue;
      auto I = principal_ideal(b);
      if (!is_gorenstein_quotient(I)) continue;
      ++seen;
      CHECK(ci0_test(I).is_ci0);
    }
    CHECK(seen >= 0);
  }
}

TEST_CASE("zero divisor pairs") {
  auto R = eiar();
  auto a = zero_divisor_pair_check(R->parse("y"), R->parse("x"));
  CHECK(a.holds());
  CHECK(a.ann_y_is_zA);
  CHECK_FALSE(a.exponent_drop.has_value());

  auto E = ring_of({"x", "y"}, {"x*y", "x^3+y^3"});
  auto b = zero_divisor_pair_check(E->parse("x"), E->parse("y"));
  CHECK(b.holds());
  CHECK(b.exponent_drop == true);

  auto W = ewi();
  auto c = zero_divisor_pair_check(W->parse("x"), W->parse("x"));
  CHECK(c.holds());
  CHECK(annihilator(W->parse("x")) == span(W, {"x"}));

  CHECK_THROWS_AS(zero_divisor_pair_check(W->parse("x"), W->parse("y")), PreconditionError);
}

TEST_CASE("triangular chains") {
  auto W = ewi();
  auto c = triangular_chain(W->variables(), AlgMatrix::diagonal(W->variables()));
  CHECK(c.length() == 3);
  CHECK(c.length() == W->exponent() - 1);
  CHECK(c.ideals[1] == span(W, {"x"}));
  CHECK(c.ideals[2] == span(W, {"x", "y"}));

  auto U = eouf();
  Row z = {U->parse("x^2"), U->parse("x"), U->parse("y^2"), U->parse("y")};
  auto psi = mat(U, {{"x", "-1", "0", "0"}, {"0", "x", "0", "0"}, {"0", "0", "y", "-1"}, {"0", "0", "0", "y"}});
  auto d = triangular_chain(z, psi);
  CHECK(d.length() == 4);
  CHECK(d.length() == U->exponent() - 1);
  for (const auto& l : d.links) CHECK(l.ci0);

  Row bad = {U->parse("x"), U->parse("x"), U->parse("y"), U->parse("y")};
  CHECK_THROWS_AS(triangular_chain(bad, AlgMatrix::diagonal(bad)), PreconditionError);
  auto unit = AlgMatrix::diagonal({W->one(), W->parse("y"), W->parse("z")});
  CHECK_THROWS_AS(triangular_chain(W->variables(), unit), PreconditionError);

  auto back = triangular_from_chain(W->variables());
  REQUIRE(back.has_value());
  CHECK(triangular_chain(W->variables(), *back).length() == 3);
  auto back2 = triangular_from_chain(z);
  REQUIRE(back2.has_value());
  CHECK(triangular_chain(z, *back2).length() == 4);
}

TEST_CASE("minimal exponent checks") {
  auto W = ewi();
  auto r = minimal_exponent_checks(W, {W->parse("x+y+z")});
  CHECK(r.minimal_exponent);
  REQUIRE(r.checks.size() == 4);
  CHECK(r.checks[0].pimi);
  CHECK(r.checks[0].yA_ci0);
  CHECK(principal_ideal(*r.checks[0].z) == span(W, {"x"}));
  CHECK_FALSE(r.checks[3].pimi);
  CHECK_FALSE(r.checks[3].yA_ci0);

  auto B = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto s = minimal_exponent_checks(B);
  CHECK(s.minimal_exponent);
  CHECK(s.checks[0].square_in_rest);
  CHECK(span(B, {"y"}).contains(B->parse("x^2")));

  auto U = eouf();
  auto t = minimal_exponent_checks(U);
  CHECK_FALSE(t.minimal_exponent);
}

TEST_CASE("element decomposability") {
  auto T2 = ring_of({"x", "y", "z", "t"}, {"x^2", "y^2", "z^2", "t^2"}, Field::prime(2));
  auto a = decompose_search(T2->parse("x*y+x*z+z*t"));
  CHECK(a.status == DecompositionStatus::IndecomposableCertified);
  auto T3 = ring_of({"x", "y", "z", "t"}, {"x^2", "y^2", "z^2", "t^2"}, Field::prime(3));
  CHECK(decompose_search(T3->parse("x*y+x*z+z*t")).status == DecompositionStatus::IndecomposableCertified);
  auto b = decompose_search(T3->parse("x*y+x*z"));
  REQUIRE(b.status == DecompositionStatus::Decomposed);
  CHECK(b.element_witness->first * b.element_witness->second == T3->parse("x*y+x*z"));

  auto W = ewi();
  CHECK(decompose_search(W->parse("x+y")).status == DecompositionStatus::IndecomposableCertified);
  auto p = decompose_search(W->parse("x*y+x*z+y*z"));
  REQUIRE(p.status == DecompositionStatus::Decomposed);
  CHECK(p.element_witness->first * p.element_witness->second == W->parse("x*y+x*z+y*z"));
  auto TQ = ring_of({"x", "y", "z", "t"}, {"x^2", "y^2", "z^2", "t^2"});
  auto q = decompose_search(TQ->parse("x*y+x*z+z*t"));
  CHECK(q.status == DecompositionStatus::Inconclusive);
  CHECK_FALSE(q.constraints.empty());
  CHECK_THROWS_AS(decompose_search(W->one()), PreconditionError);
}

TEST_CASE("matrix decomposability") {
  auto psi = std::vector<std::vector<std::string>>{{"x", "-y"}, {"y", "x+y"}};
  auto A7 = ring_of({"x", "y"}, {"x^2", "y^2"}, Field::prime(7));
  auto r7 = decompose_search(mat(A7, psi));
  REQUIRE(r7.status == DecompositionStatus::Decomposed);
  auto [beta, gamma] = *r7.matrix_witness;
  CHECK(beta * gamma == mat(A7, psi));
  CHECK_FALSE(det(beta).is_unit());
  CHECK_FALSE(det(gamma).is_unit());
  auto w = mat(A7, {{"x", "2"}, {"y", "1"}}) * mat(A7, {{"1", "5"}, {"0", "x+3*y"}});
  CHECK(w == mat(A7, psi));

  auto A5 = ring_of({"x", "y"}, {"x^2", "y^2"}, Field::prime(5));
  CHECK(decompose_search(mat(A5, psi)).status == DecompositionStatus::IndecomposableCertified);

  auto AQ = ring_of({"x", "y"}, {"x^2", "y^2"});
  auto q = decompose_search(mat(AQ, psi));
  CHECK(q.status == DecompositionStatus::Inconclusive);
  REQUIRE(q.univariate.size() == 2);
  CHECK(q.univariate[0].polynomial == "f^2 - f + 1");
  CHECK(q.univariate[1].polynomial == "u^2 + u + 1");
  for (const auto& u : q.univariate) CHECK(u.roots.empty());

  auto dq = decompose_search(AlgMatrix::diagonal(AQ->variables()));
  CHECK(dq.status == DecompositionStatus::Decomposed);

  auto W = ewi(Field::prime(3));
  CHECK(decompose_search(AlgMatrix::diagonal({W->parse("x+y"), W->one(), W->one()})).status ==
        DecompositionStatus::IndecomposableCertified);
}

TEST_CASE("polynomial roots") {
  Field Q = Field::rationals();
  auto s = [&](long v) { return Scalar::from_int(Q, v); };
  auto r = polynomial_roots({s(1), s(-3), s(2)});
  CHECK(r.size() == 2);
  for (const auto& t : r) CHECK((s(2) * t * t - s(3) * t + s(1)).is_zero());
  CHECK(polynomial_roots({s(1), s(1), s(1)}).empty());
  CHECK(polynomial_roots({s(0), s(1)}).size() == 1);
  Field F7 = Field::prime(7);
  auto g = polynomial_roots({Scalar::one(F7), Scalar::one(F7), Scalar::one(F7)});
  CHECK(g.size() == 2);
  Field F5 = Field::prime(5);
  CHECK(polynomial_roots({Scalar::one(F5), Scalar::one(F5), Scalar::one(F5)}).empty());
}

TEST_CASE("maximal chain probe") {
  auto W = ewi();
  auto a = max_length_chain_probe(W, 1);
  CHECK(a.best_length == 3);
  CHECK(a.upper_bound == 3);
  CHECK(a.bequi_witness);

  auto U = eouf();
  auto b = max_length_chain_probe(U, 1);
  CHECK(b.best_length == 4);
  auto c = max_length_chain_probe(U, 1, 400, annihilator(U->parse("x^2+y^2")));
  CHECK(c.best_length == 3);
}

TEST_CASE("split realizations") {
  auto R = eiar();
  auto s = realize_split_generators(R->parse("y"));
  CHECK(s.regenerates);
  CHECK(s.generators[0] == s.y_lift * s.z_lift);
  auto S = R->ring();
  CHECK(ideal_equal(buchberger(S, s.generators),
                    buchberger(S, {parse_polynomial("x*y", S), parse_polynomial("y^2-x^3", S)})));

  auto W = ewi();
  auto t = realize_split_generators(W->parse("x"));
  CHECK(t.regenerates);

  auto E = ring_of({"x", "y"}, {"x*y", "x^3+y^3"});
  auto u = realize_split_generators(E->parse("x"));
  CHECK(u.regenerates);
  CHECK(u.z_lift.degree() >= 1);
  CHECK(u.generators[1].degree() >= 2);

  CHECK_THROWS_AS(realize_split_generators(W->parse("x+y+z")), PreconditionError);
}
