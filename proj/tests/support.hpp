#pragma once

#include "charp/errors.hpp"
#include "charp/factor.hpp"
#include "charp/heights.hpp"
#include "charp/parser.hpp"

#include <optional>
#include <random>
#include <string>

namespace fixture {

using namespace charp;

struct Example {
  FieldPtr F;
  Curve E;
  CurvePoint P, Q;
};

inline RatFunc rf(const FieldPtr& F, const char* s) { return parse_ratfunc(s, F); }

/// y^2 = x^3 + (t^2 - 1)x^2 + (t-1)^2(t^2-t-1)^2 over F_3(t).
inline const Example& ex9() {
  static const Example ex = [] {
    Example e;
    e.F = Field::prime(3);
    e.E = Curve(e.F, AInvariants<RatFunc>{rf(e.F, "0"), rf(e.F, "t^2-1"), rf(e.F, "0"), rf(e.F, "0"),
                                          rf(e.F, "(t-1)^2*(t^2-t-1)^2")});
    e.P = CurvePoint::affine(rf(e.F, "0"), rf(e.F, "(t-1)*(t^2-t-1)"));
    e.Q = CurvePoint::affine(rf(e.F, "t^2-t"), rf(e.F, "t^2-1"));
    return e;
  }();
  return ex;
}

inline Place place_t(const FieldPtr& F) { return Place::finite(Poly::var(F)); }

struct RandomCurve {
  Curve E;
  CurvePoint P;
};

/// A curve through a chosen point (x0, y0), with good ordinary reduction at t,
/// minimal at finite places, and a usable model at infinity.
/// a_i has degree at most i so the infinity model is close at hand.
inline std::optional<RandomCurve> try_random_curve(const FieldPtr& F, std::mt19937_64& rng) {
  auto poly = [&](int deg) { return RatFunc(Poly::random(F, deg, rng)); };
  std::uniform_int_distribution<int> coin(0, 2);
  const RatFunc x0 = poly(1), y0 = poly(1);
  AInvariants<RatFunc> a{coin(rng) == 0 ? poly(1) : RatFunc(F), poly(2), coin(rng) == 0 ? poly(2) : RatFunc(F),
                         poly(3), RatFunc(F)};
  a.a6 = y0 * y0 + a.a1 * x0 * y0 + a.a3 * y0 - x0 * x0 * x0 - a.a2 * x0 * x0 - a.a4 * x0;
  Curve E(F, a);
  if (E.discriminant().is_zero()) return std::nullopt;
  const Place t = place_t(F);
  if (ord_at(E.discriminant(), t) != 0) return std::nullopt;
  const RatFunc alpha = hasse_invariant(E);
  if (alpha.is_zero() || ord_at(alpha, t) != 0) return std::nullopt;
  try {
    check_finite_minimality(E, false);
    const InfinityModel im = infinity_minimal_model(E);
    require_ordinary(im.model, Place::infinity(F));
  } catch (const MathError&) {
    return std::nullopt;
  }
  RandomCurve rc{E, CurvePoint::affine(x0, y0)};
  if (is_torsion(E, rc.P)) return std::nullopt;
  return rc;
}

/// Conditions shared by the generators: good ordinary reduction at t, finite
/// minimality, an ordinary model at infinity.
inline bool usable(const Curve& E) {
  const Place t = place_t(E.field());
  if (ord_at(E.discriminant(), t) != 0) return false;
  const RatFunc alpha = hasse_invariant(E);
  if (alpha.is_zero() || ord_at(alpha, t) != 0) return false;
  try {
    check_finite_minimality(E, false);
    require_ordinary(infinity_minimal_model(E).model, Place::infinity(E.field()));
  } catch (const MathError&) {
    return false;
  }
  return true;
}

struct TwoPointCurve {
  Curve E;
  CurvePoint P, Q;
};

/// A curve through (x0, y0) and (x0 + c, y1), c a nonzero constant, so that a4
/// and a6 come out polynomial.
inline std::optional<TwoPointCurve> try_two_point_curve(const FieldPtr& F, std::mt19937_64& rng) {
  auto poly = [&](int deg) { return RatFunc(Poly::random(F, deg, rng)); };
  const RatFunc c = RatFunc::constant(F, 1 + static_cast<long long>(rng() % (F->characteristic() - 1)));
  const RatFunc x0 = poly(1), y0 = poly(1), x1 = x0 + c, y1 = poly(1);
  AInvariants<RatFunc> a{rng() % 3 == 0 ? poly(1) : RatFunc(F), poly(2), rng() % 3 == 0 ? poly(2) : RatFunc(F),
                         RatFunc(F), RatFunc(F)};
  auto rest = [&](const RatFunc& x, const RatFunc& y) {
    return y * y + a.a1 * x * y + a.a3 * y - x * x * x - a.a2 * x * x;
  };
  a.a4 = (rest(x1, y1) - rest(x0, y0)) / c;
  a.a6 = rest(x0, y0) - a.a4 * x0;
  if (a.a4.num().degree() > 4) return std::nullopt;
  TwoPointCurve r;
  try {
    r.E = Curve(F, a);
  } catch (const MathError&) {
    return std::nullopt;
  }
  if (!usable(r.E)) return std::nullopt;
  r.P = CurvePoint::affine(x0, y0);
  r.Q = CurvePoint::affine(x1, y1);
  if (is_torsion(r.E, r.P) || is_torsion(r.E, r.Q)) return std::nullopt;
  if (is_torsion(r.E, add_points(r.E, r.P, r.Q)) || is_torsion(r.E, sub_points(r.E, r.P, r.Q))) {
    return std::nullopt;
  }
  return r;
}

inline TwoPointCurve two_point_curve(const FieldPtr& F, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    if (auto r = try_two_point_curve(F, rng)) return *r;
  }
  throw InternalError("no random two-point curve found");
}

inline RandomCurve random_curve(const FieldPtr& F, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    if (auto rc = try_random_curve(F, rng)) return *rc;
  }
  throw InternalError("no random ordinary curve found");
}

}  // namespace fixture
