#include "doctest.h"

#include "charp/formal_group.hpp"
#include "charp/sigma.hpp"
#include "charp/verify.hpp"
#include "support.hpp"

#include <random>

using namespace charp;
using S = Series<RatFunc>;

namespace {

bool same(const S& a, const S& b) { return first_difference(a, b) >= std::min(a.precision(), b.precision()); }

S random_formal(const FieldPtr& F, long prec, std::mt19937_64& rng) {
  std::vector<RatFunc> c;
  for (long e = 1; e < prec; ++e) c.push_back(RatFunc(Poly::random(F, static_cast<int>(rng() % 2), rng)));
  return S::from_coeffs(RatFunc(F), 1, std::move(c));
}

FormalPoint<RatFunc> point_of(const FormalGroup<RatFunc>& fg, const S& z) {
  const S w = fg.w(z.precision() + 2).compose(z);
  return {z, w};
}

std::vector<Curve> test_curves() {
  std::vector<Curve> out{fixture::ex9().E};
  std::mt19937_64 rng(31);
  for (uint32_t p : {3u, 5u}) {
    for (int i = 0; i < 3; ++i) out.push_back(fixture::random_curve(Field::prime(p), rng).E);
  }
  return out;
}

}  // namespace

TEST_CASE("w(z) solves the Weierstrass equation in (z, w) coordinates") {
  for (const Curve& E : test_curves()) {
    FormalGroup<RatFunc> fg(E.a());
    const auto& a = E.a();
    const S w = fg.w(20);
    const S z = S::variable(a.a1.zero_like(), 20);
    const S rhs = z.pow(3) + w * z * a.a1 + w * z * z * a.a2 + w * w * a.a3 + w * w * z * a.a4 + w.pow(3) * a.a6;
    CHECK(same(w, rhs));
    CHECK(w.valuation() == 3);
  }
}

TEST_CASE("formal group axioms") {
  std::mt19937_64 rng(32);
  for (const Curve& E : test_curves()) {
    FormalGroup<RatFunc> fg(E.a());
    const FieldPtr& F = E.field();
    const long N = 9;
    const auto a = point_of(fg, random_formal(F, N, rng));
    const auto b = point_of(fg, random_formal(F, N, rng));
    const auto c = point_of(fg, random_formal(F, N, rng));
    CHECK(same(fg.add(a, b).z, fg.add(b, a).z));
    CHECK(same(fg.add(fg.add(a, b), c).z, fg.add(a, fg.add(b, c)).z));
    CHECK(fg.add(a, fg.negate(a)).z.is_zero());
    // [m + n] = F([m], [n])
    for (long m : {1L, 2L, 3L}) {
      for (long n : {1L, 2L, 4L}) {
        CHECK(same(fg.mult_by(m + n, 12), fg.add(fg.multiple(m, 12), fg.multiple(n, 12)).z));
      }
    }
    CHECK(same(fg.mult_by(-1, 10), fg.negate(fg.generator(10)).z));
  }
}

TEST_CASE("multiples agree with repeated chord addition") {
  for (const Curve& E : test_curves()) {
    FormalGroup<RatFunc> fg(E.a());
    const long N = 14;
    FormalPoint<RatFunc> acc = fg.generator(N);
    for (long m = 2; m <= 7; ++m) {
      acc = fg.add(acc, fg.generator(N));
      const auto fast = fg.multiple(m, N);
      CHECK(fast.z.precision() == N);
      CHECK(same(fast.z, acc.z));
      CHECK(same(fast.w, acc.w));
    }
  }
}

TEST_CASE("multiples over a completion agree with the exact series") {
  const auto& ex = fixture::ex9();
  const Place t = fixture::place_t(ex.F);
  const long T = 12, N = 20;
  FormalGroup<LocalInteger> local(ex.E.a().map<LocalInteger>([&](const RatFunc& c) { return LocalInteger::from(c, t, T); }));
  FormalGroup<RatFunc> exact(ex.E.a());
  for (long m : {3L, 5L, 9L}) {
    const S e = exact.mult_by(m, N);
    const auto l = local.mult_by(m, N);
    REQUIRE(l.precision() == N);
    for (long i = 0; i < N; ++i) CHECK(l.coeff(i) == LocalInteger::from(e.coeff(i), t, T));
  }
}

TEST_CASE("the bivariate law agrees with the chord construction") {
  const Curve& E = fixture::ex9().E;
  FormalGroup<RatFunc> fg(E.a());
  const auto F = fg.group_law(8);
  CHECK(same(F.at_z2_zero(), S::variable(E.a().a1.zero_like(), 8)));
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; i + j < 8; ++j) CHECK(F.coeff(i, j) == F.coeff(j, i));
  }
  // F(z, z) = [2](z)
  std::vector<RatFunc> diag(8, E.a().a1.zero_like());
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; i + j < 8; ++j) diag[i + j] = diag[i + j] + F.coeff(i, j);
  }
  CHECK(same(S::from_coeffs(E.a().a1.zero_like(), 0, diag), fg.mult_by(2, 8)));
}

TEST_CASE("doubling matches the affine tangent formula") {
  for (const Curve& E : test_curves()) {
    const auto& a = E.a();
    FormalGroup<RatFunc> fg(a);
    const long rel = 10;
    const S x = fg.x(rel), y = fg.y(rel);
    auto k = [&](long v) { return a.a1.int_like(v); };
    const S lambda = (x * x * k(3) + x * a.a2 * k(2) - y * a.a1 + S::constant(a.a4, rel)) /
                     (y * k(2) + x * a.a1 + S::constant(a.a3, rel));
    const S nu = y - lambda * x;
    const S x2 = lambda * lambda + lambda * a.a1 - x * k(2) - S::constant(a.a2, rel);
    const S y2 = -(lambda + S::constant(a.a1, rel)) * x2 - nu - S::constant(a.a3, rel);
    CHECK(same(-(x2 / y2), fg.mult_by(2, 8)));
  }
}

TEST_CASE("multiplication by p^n lives in z^(p^n) with the predicted lead") {
  for (const Curve& E : test_curves()) {
    const long p = E.field()->characteristic();
    const RatFunc alpha = hasse_invariant(E);
    FormalGroup<RatFunc> fg(E.a());
    const S mp = fg.mult_by(p, 4 * p);
    for (long e = mp.valuation(); e < mp.precision(); ++e) {
      if (e % p != 0) CHECK(mp.coeff(e).is_zero());
    }
    CHECK(mp.valuation() == p);
    CHECK(mp.coeff(p) == alpha);
    if (p == 3) {
      const S m9 = fg.mult_by(9, 27);
      CHECK(m9.valuation() == 9);
      CHECK(m9.coeff(9) == alpha.pow(4));  // alpha^((p^2 - 1)/(p - 1))
      CHECK_NOTHROW(m9.deflate(9));
    }
  }
}

TEST_CASE("division series: recursion and Frobenius compatibility") {
  for (const Curve& E : test_curves()) {
    const long p = E.field()->characteristic();
    FormalGroup<RatFunc> fg(E.a());
    const Discrepancy d = check_division_recursion(E, 2, p * p + p);
    CHECK(d.holds());
    CHECK(d.joint_precision >= p * p + p);
    // f_p(w)^p = G^F(w^(p^2)) where f_p(z) = G(z^p)
    const S fp = fg.division_series(p, 3 * p);
    const S G = fp.deflate(p);
    CHECK(same(fp.pow(p), G.frobenius().inflate(p * p)));
    CHECK(fp.valuation() == p - p * p);
    CHECK(fp.lead() == hasse_invariant(E));
  }
}

TEST_CASE("p^N parts from the level-p series match the direct expansions") {
  const Curve& E = fixture::ex9().E;
  FormalGroup<RatFunc> fg(E.a());
  const long K = 3;
  const auto parts = p_power_parts(fg, 3, 2, K);
  const S g_direct = fg.mult_by(9, 9 * (K + 1)).deflate(9);
  const S G_direct = fg.division_series(9, 9 * (K + 1)).deflate(9);
  CHECK(parts.g.precision() == K + 1);
  CHECK(same(parts.g, g_direct));
  CHECK(parts.G.relative_precision() >= K);
  CHECK(same(parts.G, G_direct));
}

TEST_CASE("division series agree with division polynomials at a point") {
  // f_m(z(P)) at a point of the formal group equals the global value f_m(P)
  const auto& ex = fixture::ex9();
  const Place t = fixture::place_t(ex.F);
  const CurvePoint P = mul_point(ex.E, 30, ex.P);
  for (long m : {2L, 3L, 4L, -2L}) {
    const LocalElement direct = division_value_at(ex.E, P, m, t, 30);
    FormalGroup<RatFunc> fg(ex.E.a());
    const S f = fg.division_series(m, 12);
    const auto proto = LocalInteger(t, 60);
    const auto fl = f.map(proto, [&](const RatFunc& c) { return LocalInteger::from(c, t, 60); });
    const LocalElement series = evaluate(fl, z_at(P, t, 60));
    CHECK(agree(direct, series));
  }
}
