#include <doctest.h>

#include <stdexcept>

#include "treegh/errors.hpp"
#include "treegh/rational.hpp"

using treegh::Rational;

TEST_CASE("parse accepts fractions, integers and decimals") {
  CHECK(Rational::parse("3/6") == Rational(1, 2));
  CHECK(Rational::parse("-4") == Rational(-4));
  CHECK(Rational::parse("2.75") == Rational(11, 4));
  CHECK(Rational::parse("-.5") == Rational(-1, 2));
  CHECK(Rational::parse("+7/1") == Rational(7));
}

TEST_CASE("parse rejects malformed text") {
  for (std::string bad : {"", "1/0", "a", "1/2/3", "1.", "--1", "1 /2", "0x10"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), treegh::ValidationError);
  }
}

TEST_CASE("canonical form and rendering") {
  const Rational r(6, -4);
  CHECK(r.str() == "-3/2");
  CHECK(Rational(0).str() == "0/1");
  CHECK(r.denominator() == 2);
  CHECK(Rational(5).is_integer());
  CHECK(Rational(2, 3).decimal(3) == "0.667");
  CHECK(Rational(-2, 3).decimal(2) == "-0.67");
  CHECK(Rational(-1, 1000).decimal(2) == "0.00");
  CHECK(Rational(5, 2).decimal(0) == "3");
}

TEST_CASE("arithmetic and ordering are exact") {
  const Rational a(1, 3);
  const Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == b);
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(b < a);
  CHECK(treegh::max(a, b) == a);
  CHECK(treegh::abs(Rational(-7, 2)) == Rational(7, 2));
  CHECK_THROWS_AS(a / Rational(0), std::domain_error);
}

TEST_CASE("ceil_sqrt matches the definition") {
  CHECK(treegh::ceil_sqrt(Rational(0)) == 0);
  CHECK(treegh::ceil_sqrt(Rational(16)) == 4);
  CHECK(treegh::ceil_sqrt(Rational(17)) == 5);
  CHECK(treegh::ceil_sqrt(Rational(1, 4)) == 1);
  for (int p = 1; p < 200; p += 7) {
    for (int q = 1; q < 9; ++q) {
      const Rational x(p, q);
      const mpz_class k = treegh::ceil_sqrt(x);
      const Rational kr{mpq_class(k)};
      const Rational km1{mpq_class(k - 1)};
      CHECK(kr * kr >= x);
      CHECK(km1 * km1 < x);
    }
  }
}
