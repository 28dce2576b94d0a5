#include <catch2/catch_amalgamated.hpp>

#include "qtrop/qlaurent.hpp"

using namespace qtrop;

namespace {

QLaurent q_power(const Rat& e) { return QLaurent::monomial(1, e); }

QLaurent random_poly(Rng& rng, bool allow_zero = true) {
  QLaurent p;
  int nterms = static_cast<int>(rng.int_in(allow_zero ? 0 : 1, 5));
  for (int i = 0; i < nterms; ++i) {
    Rat e(rng.int_in(-6, 6), 2);
    Rat c(rng.int_in(-5, 5));
    p.add_term(e, c);
  }
  if (!allow_zero && p.is_zero()) p.add_term(Rat(1), Rat(1));
  return p;
}

}  // namespace

TEST_CASE("addition merges and cancels terms") {
  CHECK((q_power(1) + q_power(1).scaled(-1)).is_zero());
  QLaurent a = q_power(Rat(1, 2)) + q_power(Rat(-1, 2));
  QLaurent b = q_power(Rat(1, 2));
  QLaurent sum = a + b;
  CHECK(sum.coeff(Rat(1, 2)) == 2);
  CHECK(sum.coeff(Rat(-1, 2)) == 1);
  CHECK(sum.term_count() == 2);
  CHECK(bracket_minus(1) + bracket_plus(1) == q_power(1).scaled(2));
}

TEST_CASE("multiplication") {
  Rng rng(11);
  QLaurent p = random_poly(rng);
  CHECK(QLaurent(1) * p == p);
  CHECK(bracket_minus(Rat(1, 2)) * bracket_plus(Rat(1, 2)) == bracket_minus(1));
  QLaurent two_sq = q_analog(2) * q_analog(2);
  CHECK(two_sq == q_power(1) + QLaurent(2) + q_power(-1));
}

TEST_CASE("brackets") {
  CHECK(bracket_plus(0) == QLaurent(2));
  CHECK(bracket_minus(0).is_zero());
  CHECK(bracket_minus(1) == q_power(1) - q_power(-1));
  CHECK(bracket_plus(Rat(-3, 2)) == bracket_plus(Rat(3, 2)));
  CHECK(bracket_minus(Rat(-3, 2)) == -bracket_minus(Rat(3, 2)));
}

TEST_CASE("q_analog basics") {
  CHECK(q_analog(1) == QLaurent(1));
  CHECK(q_analog(2) == q_power(Rat(1, 2)) + q_power(Rat(-1, 2)));
  CHECK(q_analog(3) == q_power(1) + QLaurent(1) + q_power(-1));
  CHECK_THROWS_AS(q_analog(0), std::invalid_argument);
  for (long a = 1; a <= 10; ++a) {
    CHECK(q_analog(a).eval_at_one() == a);
    CHECK(q_analog(a) * bracket_minus(Rat(1, 2)) == bracket_minus(Rat(a, 2)));
    CHECK(q_analog(a).symmetric_under_q_inverse());
  }
}

TEST_CASE("eval_at_one") {
  CHECK(QLaurent().eval_at_one() == 0);
  CHECK(bracket_plus(Rat(7, 3)).eval_at_one() == 2);
  QLaurent p = q_power(Rat(5, 2)).scaled(3) - q_power(-2);
  CHECK(p.eval_at_one() == 2);
}

TEST_CASE("div_exact on bracket quotients") {
  CHECK(div_exact(bracket_minus(Rat(3, 2)), bracket_minus(Rat(1, 2))) == q_analog(3));
  CHECK(div_exact(bracket_minus(1), bracket_plus(Rat(1, 2))) == bracket_minus(Rat(1, 2)));
  Rng rng(5);
  QLaurent p = random_poly(rng, false);
  CHECK(div_exact(p, p) == QLaurent(1));
  CHECK_THROWS_AS(div_exact(QLaurent(1) + q_power(1), bracket_minus(1)), NotDivisible);
  CHECK_THROWS_AS(div_exact(QLaurent(1), QLaurent()), NotDivisible);
  CHECK(div_exact(QLaurent(), bracket_minus(1)).is_zero());
}

TEST_CASE("div_exact with mixed exponent denominators") {
  Rat theta(2, 7);
  QLaurent num = bracket_plus(2 * theta - 1) * bracket_minus(1);
  CHECK(div_exact(num, bracket_minus(1)) == bracket_plus(2 * theta - 1));
  CHECK(div_exact(num, bracket_plus(2 * theta - 1)) == bracket_minus(1));
}

TEST_CASE("ring axioms on random triples") {
  Rng rng(123);
  for (int trial = 0; trial < 50; ++trial) {
    QLaurent a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("bracket product identity") {
  for (long a = 1; a <= 8; ++a)
    for (long b = 1; b <= 8; ++b) {
      QLaurent lhs = bracket_minus(Rat(a, 2)) * bracket_plus(Rat(b, 2)) +
                     bracket_minus(Rat(b, 2)) * bracket_plus(Rat(a, 2));
      CHECK(lhs == bracket_minus(Rat(a + b, 2)).scaled(2));
    }
}

TEST_CASE("div_exact inverts multiplication") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    QLaurent a = random_poly(rng, false), b = random_poly(rng, false);
    CHECK(div_exact(a * b, b) == a);
  }
}

TEST_CASE("serialization round trip and ordering") {
  QLaurent p = bracket_minus(Rat(5, 2)).scaled(Rat(3, 4)) + q_power(Rat(1, 3));
  auto data = p.serialized();
  REQUIRE(data.size() == 3);
  for (std::size_t i = 1; i < data.size(); ++i) {
    Rat prev = make_rat(data[i - 1][0], data[i - 1][1]);
    Rat cur = make_rat(data[i][0], data[i][1]);
    CHECK(prev < cur);
  }
  CHECK(QLaurent::deserialized(data) == p);
}

TEST_CASE("text rendering") {
  CHECK(QLaurent().text() == "0");
  QLaurent p = q_power(Rat(1, 2)).scaled(2) - q_power(-1);
  CHECK(p.text() == "-1*q^(-1) + 2*q^(1/2)");
}
