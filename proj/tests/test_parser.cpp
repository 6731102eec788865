#include "doctest.h"

#include "charp/errors.hpp"
#include "charp/parser.hpp"

#include <random>

using namespace charp;

namespace {

FieldPtr f9() {
  FieldSpec s;
  s.p = 3;
  s.n = 2;
  s.modulus = {1, 0, 1};
  return s.build();
}

RatFunc random_ratfunc(const FieldPtr& F, std::mt19937_64& rng) {
  const Poly n = rng() % 5 == 0 ? Poly(F) : Poly::random(F, static_cast<int>(rng() % 8), rng);
  const Poly d = Poly::random(F, static_cast<int>(rng() % 6), rng);
  return RatFunc(n, d);
}

}  // namespace

TEST_CASE("expressions parse to the expected rational functions") {
  auto F = Field::prime(3);
  const RatFunc t = RatFunc::var(F);
  const RatFunc one = RatFunc::constant(F, 1);
  CHECK(parse_ratfunc("(t-1)^2*(t^2-t-1)^2", F) == (t - one).pow(2) * (t * t - t - one).pow(2));
  CHECK(parse_ratfunc("-t^2 + 1", F) == one - t * t);
  CHECK(parse_ratfunc("  4 * t ", F) == t);
  CHECK(parse_ratfunc("2*t", F) == t * RatFunc::constant(F, 2));
  CHECK_THROWS_AS(parse_ratfunc("2t", F), ParseError);
  CHECK(parse_ratfunc("(t^2-1)/(t+1)", F) == t - one);
  CHECK(parse_ratfunc("-(t)^3", F) == -t.pow(3));
  CHECK(parse_ratfunc("t^0", F) == one);
  CHECK(parse_ratfunc("1/t/t", F) == t.pow(-2));
  CHECK(parse_poly("t^3 - t", F) == Poly::var(F).pow(3) - Poly::var(F));
}

TEST_CASE("malformed input reports a position") {
  auto F = Field::prime(3);
  auto pos = [&](const char* s) -> long {
    try {
      parse_ratfunc(s, F);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(pos("t +") == 3);
  CHECK(pos("t^^2") == 2);
  CHECK(pos("(t+1") == 4);
  CHECK(pos("t^2^3") == 3);
  CHECK(pos("t^-1") == 2);
  CHECK(pos("x") == 0);
  CHECK(pos("g") == 0);
  CHECK(pos("t^9999999") >= 0);
  CHECK_THROWS_AS(parse_ratfunc("1/(t-t)", F), MathError);
  CHECK_THROWS_AS(parse_poly("1/t", F), MathError);
}

TEST_CASE("the generator symbol g over F_9") {
  auto F = f9();
  const RatFunc g = parse_ratfunc("g", F);
  CHECK(parse_ratfunc("g^2 + 1", F).is_zero());
  CHECK(format_ratfunc(parse_ratfunc("(g + 1)*t", F)) == "(g + 1)*t");
  CHECK(g * g == RatFunc::constant(F, -1));
}

TEST_CASE("formatting is canonical") {
  auto F = Field::prime(3);
  CHECK(format_ratfunc(parse_ratfunc("(t-1)^2*(t^2-t-1)^2/(t^2-1)", F)) == "(t^5 + t^3 - t - 1)/(t + 1)");
  CHECK(format_ratfunc(parse_ratfunc("0", F)) == "0");
  CHECK(format_ratfunc(parse_ratfunc("-1", F)) == "-1");
  CHECK(join_terms({}) == "0");
  CHECK(join_terms({{true, "a"}, {false, "b"}, {true, "c"}}) == "-a + b - c");
  CHECK(power_text("z", 0).empty());
  CHECK(power_text("z", 1) == "z");
  CHECK(power_text("t", -3) == "t^-3");
}

TEST_CASE("format then parse is the identity on 1000 random rational functions") {
  std::mt19937_64 rng(2024);
  const FieldPtr fields[] = {Field::prime(3), Field::prime(5), Field::prime(7), f9()};
  for (int i = 0; i < 1000; ++i) {
    const FieldPtr& F = fields[i % 4];
    const RatFunc x = random_ratfunc(F, rng);
    const std::string s = format_ratfunc(x);
    INFO(s);
    REQUIRE(parse_ratfunc(s, F) == x);
  }
}
