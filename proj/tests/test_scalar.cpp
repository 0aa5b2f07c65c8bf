#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "quomm/scalar.hpp"

using namespace quomm;

namespace {

const Param q{"q"};
const Param q12 = Param::pair(1, 2);

Scalar random_scalar(std::mt19937_64& rng) {
  // small random Laurent polynomial ratio in q and q12
  auto poly = [&] {
    Scalar s;
    std::uniform_int_distribution<int> e(-2, 2);
    for (int i = 0; i < 3; ++i) {
      Monomial m = Monomial(q, e(rng)) * Monomial(q12, e(rng));
      s += Scalar::monomial(oracle::random_rational(rng, 5), m);
    }
    return s;
  };
  Scalar den = poly();
  while (den.is_zero()) den = poly();
  return poly() / den;
}

}  // namespace

TEST_CASE("rational arithmetic and literals") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("7") == 7);
  CHECK(to_string(parse_rational("4/8")) == "1/2");
  CHECK_THROWS_AS(parse_rational("4/-8"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("inverse parameter pair cancels") {
  const Scalar a(q12);
  CHECK((a * (Scalar(1) / a)).is_one());
  CHECK((a * (Scalar(1) / a)).substitute({}) == 1);
  CHECK(a.pow(-1).substitute({{q12, Rational(7, 5)}}) * Rational(7, 5) == 1);
}

TEST_CASE("cyclotomic quotient reduces to a polynomial") {
  const Scalar x(q);
  const Scalar quotient = (Scalar(1) - x.pow(3)) / (Scalar(1) - x);
  // oracle: long division of 1 - q^3 by 1 - q
  const auto [quo, rem] = oracle::divide({1, 0, 0, -1}, {1, -1});
  CHECK(rem.empty());
  Scalar expected;
  for (std::size_t k = 0; k < quo.size(); ++k) expected += Scalar::monomial(quo[k], Monomial(q, static_cast<int>(k)));
  CHECK(quotient == expected);
  CHECK(quotient.is_laurent_polynomial());
  CHECK(quotient.substitute({{q, 2}}) == 7);
}

TEST_CASE("division by zero and poles") {
  CHECK_THROWS_AS(Scalar(q) / Scalar(), DivisionByZero);
  const Scalar f = Scalar(1) / (Scalar(q) - Scalar(2));
  CHECK_THROWS_AS(f.substitute({{q, 2}}), PoleError);
  CHECK_THROWS_AS(Scalar(q).substitute({}), std::invalid_argument);
}

TEST_CASE("q-numbers") {
  CHECK(q_number(0, q).is_zero());
  for (long n = 0; n <= 6; ++n) {
    Scalar geometric;
    for (long k = 0; k < n; ++k) geometric += Scalar::monomial(1, Monomial(q, static_cast<int>(k)));
    CHECK(q_number(n, q) == geometric);
    CHECK(q_number(n, q).substitute({{q, 1}}) == n);
  }
  // [-1]_{q^2} at q = 2: (1 - 1/4)/(1 - 4)
  CHECK(q_number(-1, q, 2).substitute({{q, 2}}) == Rational(-1, 4));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    const long n = std::uniform_int_distribution<long>(0, 9)(rng);
    CHECK(q_number(-n, q) == -(Scalar(q).pow(static_cast<int>(-n)) * q_number(n, q)));
    const Rational v = oracle::generic_rational(rng);
    const Rational direct = (1 - pow(v, 3 * n)) / (1 - pow(v, 3));
    CHECK(q_number(n, q, 3).substitute({{q, v}}) == direct);
  }
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 40; ++i) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    CHECK((a + (-a)).is_zero());
    if (!a.is_zero()) CHECK((a / a).is_one());
    CHECK(a * b == b * a);
  }
}

TEST_CASE("substitution is a ring homomorphism") {
  std::mt19937_64 rng(7);
  int checked = 0;
  while (checked < 40) {
    const Scalar a = random_scalar(rng), b = random_scalar(rng);
    const ParamPoint pt{{q, oracle::random_rational(rng)}, {q12, oracle::random_rational(rng)}};
    try {
      const Rational va = a.substitute(pt), vb = b.substitute(pt);
      CHECK((a * b).substitute(pt) == va * vb);
      CHECK((a + b).substitute(pt) == va + vb);
      CHECK((a - b).substitute(pt) == va - vb);
      ++checked;
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("even rebasing") {
  const Scalar p(Param{"p"});
  const Scalar x = p.pow(4) - Scalar(3) * p.pow(-2);
  const Scalar y = rebase_even(x, Param{"p"}, q);
  CHECK(y == Scalar(q).pow(2) - Scalar(3) * Scalar(q).pow(-1));
  CHECK_THROWS_AS(rebase_even(p, Param{"p"}, q), std::invalid_argument);
}

TEST_CASE("literal rendering") {
  CHECK(to_string(Scalar(Rational(3, 2)) / Scalar(q12)) == "3/2*q12^-1");
  CHECK(to_string(Scalar()) == "0");
}
