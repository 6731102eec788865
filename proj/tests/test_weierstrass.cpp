#include "doctest.h"

#include "charp/heights.hpp"
#include "support.hpp"

#include <random>

using namespace charp;

namespace {

Elem at(const RatFunc& f, Elem c) {
  const Field& F = *f.field();
  return F.div(f.num().eval(c), f.den().eval(c));
}

/// Number of points on the specialization at t = c, by brute force.
long long count_points(const Curve& E, Elem c) {
  const Field& F = *E.field();
  const Elem a1 = at(E.a1(), c), a2 = at(E.a2(), c), a3 = at(E.a3(), c), a4 = at(E.a4(), c),
             a6 = at(E.a6(), c);
  long long n = 1;
  for (Elem x = 0; x < F.order(); ++x) {
    for (Elem y = 0; y < F.order(); ++y) {
      const Elem lhs = F.add(F.mul(y, y), F.add(F.mul(a1, F.mul(x, y)), F.mul(a3, y)));
      const Elem x2 = F.mul(x, x);
      const Elem rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)), F.add(F.mul(a4, x), a6));
      if (lhs == rhs) ++n;
    }
  }
  return n;
}

/// Tangent construction written out directly.
CurvePoint affine_double(const Curve& E, const CurvePoint& P) {
  if (P.is_zero()) return P;
  const FieldPtr& F = E.field();
  auto k = [&](long long v) { return RatFunc::constant(F, v); };
  const RatFunc den = k(2) * P.y + E.a1() * P.x + E.a3();
  if (den.is_zero()) return CurvePoint::zero();
  const RatFunc lambda = (k(3) * P.x * P.x + k(2) * E.a2() * P.x + E.a4() - E.a1() * P.y) / den;
  const RatFunc nu = P.y - lambda * P.x;
  const RatFunc x3 = lambda * lambda + E.a1() * lambda - E.a2() - k(2) * P.x;
  const RatFunc y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return CurvePoint::affine(x3, y3);
}

RatFunc discriminant_oracle(const Curve& E) {
  const FieldPtr& F = E.field();
  auto k = [&](long long v) { return RatFunc::constant(F, v); };
  const RatFunc &a1 = E.a1(), &a2 = E.a2(), &a3 = E.a3(), &a4 = E.a4(), &a6 = E.a6();
  const RatFunc b2 = a1 * a1 + k(4) * a2;
  const RatFunc b4 = k(2) * a4 + a1 * a3;
  const RatFunc b6 = a3 * a3 + k(4) * a6;
  const RatFunc b8 = a1 * a1 * a6 + k(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - k(8) * b4 * b4 * b4 - k(27) * b6 * b6 + k(9) * b2 * b4 * b6;
}

long naive_degree(const CurvePoint& P) {
  return std::max(P.x.num().degree(), P.x.den().degree());
}

std::vector<fixture::RandomCurve> sample(int per_prime, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<fixture::RandomCurve> out;
  for (uint32_t p : {3u, 5u}) {
    for (int i = 0; i < per_prime; ++i) out.push_back(fixture::random_curve(Field::prime(p), rng));
  }
  return out;
}

}  // namespace

TEST_CASE("invariants of the worked example") {
  const auto& ex = fixture::ex9();
  CHECK(ex.E.discriminant() == discriminant_oracle(ex.E));
  CHECK(hasse_invariant(ex.E) == fixture::rf(ex.F, "t^2-1"));
  CHECK(on_curve(ex.E, ex.P));
  CHECK(on_curve(ex.E, ex.Q));
  CHECK(ex.E.is_integral());
  CHECK_NOTHROW(check_finite_minimality(ex.E, false));
}

TEST_CASE("discriminant and Hasse invariant on random curves") {
  for (const auto& rc : sample(5, 11)) {
    const Curve& E = rc.E;
    CHECK(E.discriminant() == discriminant_oracle(E));
    const FieldPtr& F = E.field();
    const RatFunc alpha = hasse_invariant(E);
    // a_p = p + 1 - #E(F_p) is congruent to the Hasse invariant at each good fibre
    for (Elem c = 0; c < F->order(); ++c) {
      if (E.discriminant().den().eval(c) == 0 || E.discriminant().num().eval(c) == 0) continue;
      if (alpha.den().eval(c) == 0) continue;
      const long long ap = static_cast<long long>(F->order()) + 1 - count_points(E, c);
      CHECK(F->from_int(ap) == at(alpha, c));
    }
  }
}

TEST_CASE("reduction types agree with discriminant and c4 valuations") {
  for (const Curve& E : {fixture::ex9().E, sample(2, 12)[0].E, sample(2, 12)[3].E}) {
    for (const Place& v : bad_places(E)) {
      const ReductionInfo info = reduction_info(E, v);
      const int od = ord_at(E.discriminant(), v);
      const int oc = ord_at(E.c4(), v);
      CHECK(od > 0);
      CHECK(info.ord_disc == od);
      if (oc == 0) {
        CHECK(info.type == ReductionType::Multiplicative);
        CHECK(info.ordinary);
      } else {
        CHECK(info.type == ReductionType::Additive);
        CHECK_FALSE(info.ordinary);
      }
    }
    CHECK(reduction_info(E, fixture::place_t(E.field())).type == ReductionType::Good);
  }
}

TEST_CASE("group law matches the affine doubling formula on 100 points") {
  int checked = 0;
  for (const auto& rc : sample(10, 13)) {
    CurvePoint P = rc.P;
    for (int k = 0; k < 5; ++k) {
      const CurvePoint D = add_points(rc.E, P, P);
      CHECK(D == affine_double(rc.E, P));
      CHECK(D == mul_point(rc.E, 2, P));
      CHECK(on_curve(rc.E, D));
      ++checked;
      P = add_points(rc.E, P, rc.P);
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("group axioms and division values") {
  for (const auto& rc : sample(3, 14)) {
    const Curve& E = rc.E;
    const CurvePoint P = rc.P, Q = mul_point(E, 2, rc.P), R = mul_point(E, -3, rc.P);
    CHECK(add_points(E, P, negate(E, P)).is_zero());
    CHECK(add_points(E, add_points(E, P, Q), R) == add_points(E, P, add_points(E, Q, R)));
    CHECK(sub_points(E, Q, P) == P);
    // x(mP) = x - psi_(m-1) psi_(m+1) / psi_m^2
    for (long m : {2L, 3L, 4L, 5L}) {
      const RatFunc psi_m = division_value(E, P, m);
      const RatFunc x_m = P.x - division_value(E, P, m - 1) * division_value(E, P, m + 1) / (psi_m * psi_m);
      CHECK(x_m == mul_point(E, m, P).x);
    }
  }
}

TEST_CASE("model changes") {
  const auto& ex = fixture::ex9();
  const ModelIso iso{fixture::rf(ex.F, "t+1"), fixture::rf(ex.F, "t"), fixture::rf(ex.F, "1"),
                     fixture::rf(ex.F, "t^2")};
  const Curve E2 = iso.apply(ex.E);
  const CurvePoint P2 = iso.apply(ex.P);
  CHECK(on_curve(E2, P2));
  CHECK(E2.discriminant() == ex.E.discriminant() / iso.u.pow(12));
  CHECK(iso.inverse().apply(E2).a() .a6 == ex.E.a6());
  CHECK(iso.inverse().apply(P2) == ex.P);
  CHECK(iso.then(iso.inverse()).apply(ex.E).a().a2 == ex.E.a2());
  CHECK(add_points(E2, P2, iso.apply(ex.Q)) == iso.apply(add_points(ex.E, ex.P, ex.Q)));
}

TEST_CASE("model at infinity") {
  const auto& ex = fixture::ex9();
  const InfinityModel im = infinity_minimal_model(ex.E);
  CHECK(im.r == 1);
  const Place inf = Place::infinity(ex.F);
  CHECK(im.model.is_integral_at(inf));
  CHECK(ord_at(im.model.discriminant(), inf) < 12);
  CHECK(on_curve(im.model, im.iso.apply(ex.P)));
  CHECK(in_formal_group(ex.E, mul_point(ex.E, 6, ex.P), inf));
  CHECK_FALSE(in_formal_group(ex.E, ex.P, inf));
}

TEST_CASE("minimal multiples of the worked example") {
  const auto& ex = fixture::ex9();
  const Place t = fixture::place_t(ex.F);
  CHECK(minimal_multiple_in(ex.E, ex.P, t) == 30);
  CHECK(minimal_multiple_in(ex.E, ex.Q, t) == 30);
  CHECK(minimal_multiple_in(ex.E, ex.P, Place::infinity(ex.F)) == 6);
}

TEST_CASE("Neron-Tate heights of the worked example") {
  const auto& ex = fixture::ex9();
  CHECK(neron_tate(ex.E, ex.P) == Rational(1, 6));
  CHECK(neron_tate(ex.E, ex.Q) == Rational(5, 12));
  // the naive degree of x(nP) is exactly 2 n^2 h on multiples in the identity components
  CHECK(naive_degree(mul_point(ex.E, 48, ex.P)) == 2 * 48 * 48 / 6);
  CHECK(naive_degree(mul_point(ex.E, 48, ex.Q)) == 2 * 48 * 48 * 5 / 12);
}

TEST_CASE("Neron-Tate height against the naive limit and quadraticity") {
  for (const auto& rc : sample(3, 15)) {
    const Rational h = neron_tate(rc.E, rc.P);
    CHECK(h > 0);
    const long n = 16;
    const double limit = static_cast<double>(naive_degree(mul_point(rc.E, n, rc.P))) / (2.0 * n * n);
    CHECK(std::abs(limit - boost::rational_cast<double>(h)) < 0.05);
    CHECK(neron_tate(rc.E, mul_point(rc.E, 3, rc.P)) == Rational(9) * h);
    const CurvePoint Q = mul_point(rc.E, 2, rc.P);
    const CurvePoint S = add_points(rc.E, rc.P, Q), D = sub_points(rc.E, rc.P, Q);
    CHECK(neron_tate(rc.E, S) + neron_tate(rc.E, D) ==
          Rational(2) * (h + neron_tate(rc.E, Q)));
  }
}

TEST_CASE("torsion points have height zero") {
  const FieldPtr F = Field::prime(5);
  // (0, 0) has order 2 on y^2 = x^3 + a2 x^2 + a4 x
  const Curve E(F, AInvariants<RatFunc>{RatFunc(F), fixture::rf(F, "t"), RatFunc(F), fixture::rf(F, "t+1"),
                                        RatFunc(F)});
  const CurvePoint T = CurvePoint::affine(RatFunc(F), RatFunc(F));
  CHECK(on_curve(E, T));
  CHECK(mul_point(E, 2, T).is_zero());
  CHECK(is_torsion(E, T));
  CHECK(neron_tate(E, T) == Rational(0));
}

TEST_CASE("singular curves are rejected") {
  const FieldPtr F = Field::prime(3);
  CHECK_THROWS_AS(Curve(F, AInvariants<RatFunc>{RatFunc(F), RatFunc(F), RatFunc(F), RatFunc(F), fixture::rf(F, "t")}),
                  MathError);
}
