#include <random>

#include "ci0/errors.hpp"
#include "ci0/field.hpp"
#include "doctest.h"

using namespace ci0;

TEST_CASE("field descriptors") {
  CHECK(Field::parse("Q").is_rational());
  CHECK(Field::parse("GF(7)").characteristic() == 7);
  CHECK(Field::parse("ZZ/5").characteristic() == 5);
  CHECK(Field::parse(" 3 ").characteristic() == 3);
  CHECK_THROWS_AS(Field::parse("GF(6)"), PreconditionError);
  CHECK_THROWS_AS(Field::parse("GF(x)"), ParseError);
  CHECK(Field::prime(2147483647).characteristic() == 2147483647u);
  CHECK_THROWS_AS(Field::prime(2147483659ULL), PreconditionError);
}

TEST_CASE("rationals stay in lowest terms") {
  Field q = Field::rationals();
  Scalar a = Scalar::from_fraction(q, 6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK((a + Scalar::from_fraction(q, 3, 2)).is_zero());
  CHECK((a * a).to_string() == "9/4");
  CHECK((a / a).is_one());
  CHECK_THROWS_AS(Scalar::zero(q).inverse(), PreconditionError);
}

TEST_CASE("prime field residues are canonical") {
  Field f = Field::prime(5);
  CHECK(Scalar::from_int(f, -1).residue() == 4);
  CHECK(Scalar::from_fraction(f, 1, 2).residue() == 3);
  CHECK_THROWS_AS(Scalar::from_fraction(f, 1, 5), PreconditionError);
  CHECK_THROWS_AS(Scalar::one(f) + Scalar::one(Field::prime(7)), ContextMismatch);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(11);
  for (Field f : {Field::rationals(), Field::prime(2), Field::prime(3), Field::prime(7), Field::prime(65521)}) {
    for (int trial = 0; trial < 200; ++trial) {
      Scalar a = Scalar::random(f, rng, 9), b = Scalar::random(f, rng, 9), c = Scalar::random(f, rng, 9);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a - a == Scalar::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == Scalar::one(f));
      Scalar s = c;
      s.add_mul(a, b);
      CHECK(s == c + a * b);
    }
  }
}

TEST_CASE("Fermat: a^p = a in GF(p)") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u, 7919u}) {
    Field f = Field::prime(p);
    for (int k = 0; k < 50; ++k) {
      Scalar a = Scalar::random(f, rng);
      CHECK(a.pow(p) == a);
    }
  }
}
