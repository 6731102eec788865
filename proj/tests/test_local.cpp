#include "doctest.h"

#include "charp/errors.hpp"
#include "charp/local.hpp"
#include "charp/parser.hpp"

#include <random>

using namespace charp;

namespace {

RatFunc random_nonzero(const FieldPtr& F, std::mt19937_64& rng) {
  return RatFunc(Poly::random(F, static_cast<int>(rng() % 6), rng),
                 Poly::random(F, static_cast<int>(rng() % 6), rng));
}

std::vector<Place> sample_places(const FieldPtr& F) {
  // t^2 + 1 is irreducible over F_3, t^2 + 2 over F_5
  const char* quadratic = F->characteristic() % 4 == 3 ? "t^2 + 1" : "t^2 + 2";
  return {Place::infinity(F), Place::finite(parse_poly("t", F)), Place::finite(parse_poly("t + 1", F)),
          Place::finite(parse_poly(quadratic, F))};
}

LocalElement random_one_unit(const Place& v, long prec, std::mt19937_64& rng) {
  std::vector<Elem> c(prec);
  c[0] = 1;
  for (long i = 1; i < prec; ++i) c[i] = v.residue_field()->random(rng);
  if (c[1] == 0) c[1] = 1;
  return LocalElement::from_coeffs(v, 0, c);
}

std::string series(const LocalElement& x) {
  std::string s;
  for (long e = x.valuation(); e < x.precision(); ++e) s += std::to_string(x.coeff(e)) + " ";
  return s;
}

}  // namespace

TEST_CASE("expansions of small examples") {
  auto F = Field::prime(3);
  const Place t = Place::finite(parse_poly("t", F));
  const Place inf = Place::infinity(F);
  const LocalElement g = expand_at(parse_ratfunc("1/(1-t)", F), t, 4);
  CHECK(g.valuation() == 0);
  CHECK(g.precision() == 4);
  CHECK(series(g) == "1 1 1 1 ");
  const LocalElement a = expand_at(parse_ratfunc("t^2 - 1", F), inf, 4);
  CHECK(a.valuation() == -2);
  CHECK(series(a) == "1 0 2 0 ");
  const LocalElement b = expand_at(parse_ratfunc("t^2 - 1", F), t, 4);
  CHECK(series(b) == "2 0 1 0 ");
  CHECK_THROWS_AS(b.coeff(4), PrecisionError);
}

TEST_CASE("degree-2 places expand through the residue field") {
  auto F = Field::prime(3);
  const Place v = Place::finite(parse_poly("t^2 + 1", F));
  const Field& R = *v.residue_field();
  // t itself is the unit theta + pi * (...); its square is -1 + pi exactly
  const LocalElement t = expand_at(parse_ratfunc("t", F), v, 10);
  const LocalElement sq = t * t;
  CHECK(sq.coeff(0) == R.from_int(-1));
  CHECK(sq.coeff(1) == 1);
  for (long e = 2; e < 10; ++e) CHECK(sq.coeff(e) == 0);
}

TEST_CASE("expansion is a ring homomorphism to the stated precision") {
  std::mt19937_64 rng(8);
  for (auto F : {Field::prime(3), Field::prime(5)}) {
    for (const Place& v : sample_places(F)) {
      for (int i = 0; i < 200; ++i) {
        const RatFunc x = random_nonzero(F, rng), y = random_nonzero(F, rng);
        const LocalElement ex = expand_at(x, v, 15), ey = expand_at(y, v, 15);
        CHECK(agree(ex * ey, expand_at(x * y, v, 15)));
        if (!(x + y).is_zero()) CHECK(agree(ex + ey, expand_at(x + y, v, 15)));
        CHECK(agree(ex.inverse(), expand_at(x.inverse(), v, 15)));
        CHECK(ex.valuation() == ord_at(x, v));
      }
    }
  }
}

TEST_CASE("positive parts") {
  auto F = Field::prime(3);
  const Place t = Place::finite(parse_poly("t", F));
  const PositivePart pp = positive_part(expand_at(parse_ratfunc("2*t^3 + 2*t^4", F), t, 6));
  CHECK(pp.exponent == Rational(3));
  CHECK(series(pp.unit) == "1 1 0 0 0 0 ");
  const PositivePart c = positive_part(expand_at(parse_ratfunc("2", F), t, 5));
  CHECK(c.exponent == Rational(0));
  CHECK(series(c.unit) == "1 0 0 0 0 ");
  std::mt19937_64 rng(9);
  for (const Place& v : sample_places(F)) {
    for (int i = 0; i < 50; ++i) {
      const RatFunc x = random_nonzero(F, rng), y = random_nonzero(F, rng);
      const PositivePart a = positive_part(expand_at(x, v, 12)), b = positive_part(expand_at(y, v, 12));
      const PositivePart ab = positive_part(expand_at(x * y, v, 12));
      const PositivePart prod = a * b;
      CHECK(prod.exponent == ab.exponent);
      CHECK(agree(prod.unit, ab.unit));
    }
  }
  CHECK_THROWS_AS(positive_part(LocalElement::zero(t, 5)), MathError);
}

TEST_CASE("Z_p-powers of 1-units") {
  std::mt19937_64 rng(10);
  auto F = Field::prime(3);
  const Place t = Place::finite(parse_poly("t", F));
  const LocalElement one_plus_t = LocalElement::from_coeffs(t, 0, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(agree(zp_power(one_plus_t, Rational(1)), one_plus_t));
  CHECK(agree(zp_power(one_plus_t.pow(2), Rational(1, 2)), one_plus_t));
  const LocalElement r = zp_power(one_plus_t, Rational(1, 2));
  CHECK(agree(r * r, one_plus_t));
  CHECK(r.precision() == 20);
  CHECK_THROWS_AS(zp_power(one_plus_t, Rational(1, 3)), MathError);

  const Rational exps[] = {Rational(1, 2), Rational(-3, 4), Rational(5), Rational(7, 10), Rational(-1, 8)};
  for (const Place& v : sample_places(F)) {
    for (int i = 0; i < 20; ++i) {
      const LocalElement u = random_one_unit(v, 25, rng);
      const Rational a = exps[rng() % 5], b = exps[rng() % 5];
      CHECK(agree(zp_power(u, a) * zp_power(u, b), zp_power(u, a + b)));
      CHECK(agree(zp_power(zp_power(u, a), b), zp_power(u, a * b)));
      const LocalElement w = zp_power(u, a);
      CHECK(agree(w.pow(a.denominator()), u.pow(a.numerator())));
    }
  }
}

TEST_CASE("p-th power test") {
  std::mt19937_64 rng(11);
  auto F = Field::prime(3);
  const Place t = Place::finite(parse_poly("t", F));
  CHECK(pth_power_test(LocalElement::constant(t, 1, 10), 1));
  CHECK(pth_power_test(LocalElement::constant(t, 1, 10), 3));
  CHECK_FALSE(pth_power_test(expand_at(parse_ratfunc("1 + t", F), t, 10), 1));
  for (int i = 0; i < 50; ++i) {
    const LocalElement u = random_one_unit(t, 60, rng);
    CHECK(pth_power_test(u * u * u, 1));
    CHECK(pth_power_test(u.frobenius().frobenius(), 2));
  }
  // 1 + t^9 is a ninth power, but ten digits cannot show it
  const LocalElement s = expand_at(parse_ratfunc("1 + t^9", F), t, 10);
  CHECK_THROWS_AS(pth_power_test(s, 2), PrecisionError);
  CHECK(pth_power_test(expand_at(parse_ratfunc("1 + t^9", F), t, 82), 2));
}
