#include "doctest.h"

#include "charp/heights.hpp"
#include "charp/io.hpp"
#include "support.hpp"

#include <random>

using namespace charp;
using S = Series<RatFunc>;

namespace {

bool same(const S& a, const S& b) { return first_difference(a, b) >= std::min(a.precision(), b.precision()); }

std::vector<fixture::RandomCurve> sample_curves(uint32_t p, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<fixture::RandomCurve> out;
  for (int i = 0; i < count; ++i) out.push_back(fixture::random_curve(Field::prime(p), rng));
  return out;
}

}  // namespace

TEST_CASE("sigma of the ternary example through z^7") {
  const auto& ex = fixture::ex9();
  const auto& F = ex.F;
  const SigmaSeries<RatFunc> s = exact_sigma_series(ex.E, 9);
  REQUIRE(s.series.precision() == 9);
  CHECK(s.series.coeff(1) == fixture::rf(F, "1"));
  CHECK(s.series.coeff(3) == fixture::rf(F, "-(t^2-1)"));
  CHECK(s.series.coeff(5) == fixture::rf(F, "(t-1)^2*(t^2-t-1)^2/(t^2-1)"));
  CHECK(s.series.coeff(7) == fixture::rf(F, "-(t^11+t^9+t^5-t^2-1)/(t+1)^6"));
  for (long e : {0L, 2L, 4L, 6L, 8L}) CHECK(s.series.coeff(e).is_zero());
  CHECK(render_sigma(s.series) ==
        "z - (t^2 - 1)*z^3 + (t^5 + t^3 - t - 1)/(t + 1)*z^5 - "
        "(t^11 + t^9 + t^5 - t^2 - 1)/(t^6 - t^3 + 1)*z^7 + O(z^9)");
}

TEST_CASE("sigma is z + O(z^2) at the lowest precision") {
  const S s = exact_sigma_series(fixture::ex9().E, 2).series;
  CHECK(render_sigma(s) == "z + O(z^2)");
}

TEST_CASE("sigma has lead z and is odd under the formal inverse") {
  for (uint32_t p : {3u, 5u}) {
    for (const auto& rc : sample_curves(p, 4, 100 + p)) {
      const long M = 10;
      const S s = exact_sigma_series(rc.E, M).series;
      CHECK(s.valuation() == 1);
      CHECK(s.lead().is_one());
      FormalGroup<RatFunc> fg(rc.E.a());
      const S neg = fg.negate(fg.generator(M + 1)).z;
      CHECK(same(s.compose(neg), -s));
      if (rc.E.a1().is_zero() && rc.E.a3().is_zero()) {
        for (long e = 0; e < M; e += 2) CHECK(s.coeff(e).is_zero());
      }
    }
  }
}

TEST_CASE("sigma([m] z) = sigma(z)^(m^2) f_m(z) as series") {
  std::vector<Curve> curves{fixture::ex9().E};
  for (uint32_t p : {3u, 5u}) {
    for (const auto& rc : sample_curves(p, 2, 200 + p)) curves.push_back(rc.E);
  }
  for (const Curve& E : curves) {
    const long p = E.field()->characteristic();
    const long M = 2 * p + 3;
    FormalGroup<RatFunc> fg(E.a());
    const S s = exact_sigma_series(E, M).series;
    for (long m : {2L, p}) {
      const S mz = fg.mult_by(m, m * M);
      const S lhs = s.compose(mz);
      const S fm = fg.division_series(m, M);
      const S rhs = s.pow(m * m) * fm;
      CHECK(lhs.valuation() == rhs.valuation());
      CHECK(same(lhs, rhs));
      CHECK(std::min(lhs.relative_precision(), rhs.relative_precision()) >= M - 1);
    }
  }
}

TEST_CASE("local and exact sigma agree at a finite place and at infinity") {
  const auto& ex = fixture::ex9();
  const Place t = fixture::place_t(ex.F);
  const Place inf = Place::infinity(ex.F);
  for (const CurvePoint& P0 : {ex.P, ex.Q}) {
    const CurvePoint P30 = mul_point(ex.E, 30, P0);
    CHECK(agree(sigma_at(ex.E, P30, t, 20), sigma_at_exact(ex.E, P30, t, 20)));
    const CurvePoint P6 = mul_point(ex.E, 6, P0);
    CHECK(agree(sigma_at(ex.E, P6, inf, 12), sigma_at_exact(ex.E, P6, inf, 12)));
  }
}

TEST_CASE("exact sigma series is cached and stable") {
  const auto& ex = fixture::ex9();
  const S a = exact_sigma_series(ex.E, 12).series;
  const S b = exact_sigma_series(ex.E, 12).series;
  CHECK(same(a, b));
  const S c = exact_sigma_series(ex.E, 9).series;
  CHECK(same(a, c));
}

TEST_CASE("a supersingular place is rejected") {
  const FieldPtr F = Field::prime(3);
  const Curve E(F, AInvariants<RatFunc>{RatFunc(F), RatFunc(F), RatFunc(F), fixture::rf(F, "-1"),
                                        fixture::rf(F, "t")});
  CHECK(hasse_invariant(E).is_zero());
  CHECK_THROWS_AS(exact_sigma_series(E, 5), MathError);
  CHECK_THROWS_AS(require_ordinary(E, fixture::place_t(F)), MathError);
}
