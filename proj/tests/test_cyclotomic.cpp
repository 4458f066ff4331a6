#include <doctest.h>

#include <random>

#include "bicotwist/cyclotomic.hpp"

using namespace bicotwist;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, long order) {
  std::uniform_int_distribution<long> num(-3, 3);
  std::uniform_int_distribution<long> den(1, 3);
  std::vector<Rational> coeffs(euler_phi(order));
  for (auto& c : coeffs) {
    c = Rational(num(rng), den(rng));
    c.canonicalize();
  }
  return Cyclotomic(order, coeffs);
}

}  // namespace

TEST_CASE("roots of unity") {
  CHECK(Cyclotomic::root_of_unity(4, 2) == Cyclotomic(-1));
  CHECK(Cyclotomic::root_of_unity(1, 5) == Cyclotomic(1));
  Cyclotomic z3 = Cyclotomic::root_of_unity(3, 1);
  Cyclotomic z32 = Cyclotomic::root_of_unity(3, 2);
  CHECK(z3 + z32 == Cyclotomic(-1));
  CHECK(Cyclotomic::root_of_unity(4, 0) == Cyclotomic(1));
  CHECK(Cyclotomic::root_of_unity(5, -1) == Cyclotomic::root_of_unity(5, 4));
  CHECK_THROWS_AS(Cyclotomic::root_of_unity(0, 1), Error);

  // zeta_N^N = 1 for a few orders.
  for (long n : {1L, 2L, 3L, 4L, 6L, 8L, 12L}) {
    Cyclotomic z = Cyclotomic::root_of_unity(n, 1);
    Cyclotomic p(1);
    for (long k = 0; k < n; ++k) p *= z;
    CHECK(p == Cyclotomic(1));
  }
}

TEST_CASE("field arithmetic examples") {
  Cyclotomic i = Cyclotomic::root_of_unity(4, 1);
  CHECK(Cyclotomic(1) / i == Cyclotomic::root_of_unity(4, 3));
  CHECK(Cyclotomic(1) / i == -i);
  CHECK(i * i == Cyclotomic(-1));
  CHECK(Cyclotomic(Rational(1, 2)) + Cyclotomic(Rational(1, 3)) == Cyclotomic(Rational(5, 6)));
  CHECK_THROWS_WITH_AS(Cyclotomic(1) / Cyclotomic(0), doctest::Contains("division by zero"),
                       Error);
}

TEST_CASE("field axioms on randomized inputs") {
  std::mt19937_64 rng(20240811);
  const long orders[] = {1, 3, 4, 6};
  for (int round = 0; round < 60; ++round) {
    Cyclotomic a = random_element(rng, orders[rng() % 4]);
    Cyclotomic b = random_element(rng, orders[rng() % 4]);
    Cyclotomic c = random_element(rng, orders[rng() % 4]);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) {
      CHECK(a * a.inverse() == Cyclotomic(1));
      CHECK((b / a) * a == b);
    }
  }
}

TEST_CASE("canonical form: equal values subtract to zero") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 30; ++round) {
    Cyclotomic a = random_element(rng, 12);
    Cyclotomic b = random_element(rng, 12);
    Cyclotomic s = a + b;
    CHECK((s - b) == a);
    CHECK((s - b - a).is_zero());
  }
  // Same value reached through different orders compares equal.
  CHECK(Cyclotomic::root_of_unity(2, 1) == Cyclotomic::root_of_unity(4, 2));
  CHECK(Cyclotomic::root_of_unity(3, 1) == Cyclotomic::root_of_unity(6, 2));
}

TEST_CASE("embedding preserves arithmetic") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 20; ++round) {
    Cyclotomic a = random_element(rng, 4);
    Cyclotomic b = random_element(rng, 4);
    CHECK((a + b).embedded(12) == a.embedded(12) + b.embedded(12));
    CHECK((a * b).embedded(12) == a.embedded(12) * b.embedded(12));
  }
  CHECK_THROWS_AS(Cyclotomic::root_of_unity(4, 1).embedded(6), Error);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("5/6") == Rational(5, 6));
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("4/8") == Rational(1, 2));
  CHECK(format_rational(Rational(5, 6)) == "5/6");
  CHECK(format_rational(Rational(-3)) == "-3");
  CHECK_THROWS_AS(parse_rational("1.5"), Error);
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("a/b"), Error);
}

TEST_CASE("stable textual form") {
  Cyclotomic x = Cyclotomic(Rational(1, 2)) - Cyclotomic::root_of_unity(12, 3);
  CHECK(x.str() == "1/2 - z12^3");
  CHECK(Cyclotomic(0).str() == "0");
  CHECK(Cyclotomic::root_of_unity(4, 1).str() == "z4");
  // Representations are reduced modulo Phi_12: zeta^5 = zeta^3 - zeta.
  Cyclotomic z5 = Cyclotomic::root_of_unity(12, 5);
  CHECK(z5.str() == "-z12 + z12^3");
}
