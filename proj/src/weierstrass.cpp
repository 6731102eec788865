#include "charp/weierstrass.hpp"

#include "charp/errors.hpp"
#include "charp/factor.hpp"

#include <algorithm>
#include <cmath>

namespace charp {

namespace {

RatFunc K(const FieldPtr& f, long long v) { return RatFunc::constant(f, v); }

}  // namespace

Curve::Curve(FieldPtr f, AInvariants<RatFunc> a) : f_(std::move(f)), a_(std::move(a)) {
  b2_ = a_.b2();
  b4_ = a_.b4();
  b6_ = a_.b6();
  b8_ = a_.b8();
  c4_ = b2_ * b2_ - K(f_, 24) * b4_;
  c6_ = -(b2_ * b2_ * b2_) + K(f_, 36) * b2_ * b4_ - K(f_, 216) * b6_;
  disc_ = -(b2_ * b2_ * b8_) - K(f_, 8) * b4_ * b4_ * b4_ - K(f_, 27) * b6_ * b6_ +
          K(f_, 9) * b2_ * b4_ * b6_;
  if (disc_.is_zero()) throw MathError("singular curve: discriminant is zero");
}

bool Curve::is_integral() const {
  return a1().is_polynomial() && a2().is_polynomial() && a3().is_polynomial() &&
         a4().is_polynomial() && a6().is_polynomial();
}

bool Curve::is_integral_at(const Place& v) const {
  for (const RatFunc* c : {&a_.a1, &a_.a2, &a_.a3, &a_.a4, &a_.a6}) {
    if (ord_at(*c, v) < 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// group law

bool on_curve(const Curve& E, const CurvePoint& P) {
  if (P.is_zero()) return true;
  const RatFunc& x = P.x;
  const RatFunc& y = P.y;
  const RatFunc lhs = y * y + E.a1() * x * y + E.a3() * y;
  const RatFunc rhs = x * x * x + E.a2() * x * x + E.a4() * x + E.a6();
  return lhs == rhs;
}

CurvePoint negate(const Curve& E, const CurvePoint& P) {
  if (P.is_zero()) return P;
  return CurvePoint::affine(P.x, -P.y - E.a1() * P.x - E.a3());
}

CurvePoint add_points(const Curve& E, const CurvePoint& P, const CurvePoint& Q) {
  if (P.is_zero()) return Q;
  if (Q.is_zero()) return P;
  RatFunc lambda, nu;
  if (P.x == Q.x) {
    const RatFunc d = P.y + Q.y + E.a1() * Q.x + E.a3();
    if (d.is_zero()) return CurvePoint::zero();
    const RatFunc& x = P.x;
    const RatFunc& y = P.y;
    const RatFunc den = K(E.field(), 2) * y + E.a1() * x + E.a3();
    lambda = (K(E.field(), 3) * x * x + K(E.field(), 2) * E.a2() * x + E.a4() - E.a1() * y) / den;
    nu = (-(x * x * x) + E.a4() * x + K(E.field(), 2) * E.a6() - E.a3() * y) / den;
  } else {
    const RatFunc dx = Q.x - P.x;
    lambda = (Q.y - P.y) / dx;
    nu = (P.y * Q.x - Q.y * P.x) / dx;
  }
  const RatFunc x3 = lambda * lambda + E.a1() * lambda - E.a2() - P.x - Q.x;
  const RatFunc y3 = -(lambda + E.a1()) * x3 - nu - E.a3();
  return CurvePoint::affine(x3, y3);
}

CurvePoint sub_points(const Curve& E, const CurvePoint& P, const CurvePoint& Q) {
  return add_points(E, P, negate(E, Q));
}

CurvePoint mul_point(const Curve& E, long long m, const CurvePoint& P) {
  if (m < 0) return mul_point(E, -m, negate(E, P));
  CurvePoint result = CurvePoint::zero();
  CurvePoint base = P;
  while (m > 0) {
    if (m & 1) result = add_points(E, result, base);
    m >>= 1;
    if (m) base = add_points(E, base, base);
  }
  return result;
}

// ---------------------------------------------------------------------------
// model changes

ModelIso ModelIso::identity(const FieldPtr& f) {
  return ModelIso{K(f, 1), RatFunc(f), RatFunc(f), RatFunc(f)};
}

ModelIso ModelIso::scaling(const RatFunc& u) {
  const FieldPtr& f = u.field();
  return ModelIso{u, RatFunc(f), RatFunc(f), RatFunc(f)};
}

Curve ModelIso::apply(const Curve& E) const {
  const FieldPtr& f = E.field();
  const RatFunc& t = w_shift;
  const RatFunc ui = u.inverse();
  const RatFunc u2 = ui * ui, u3 = u2 * ui, u4 = u2 * u2, u6 = u3 * u3;
  AInvariants<RatFunc> a;
  a.a1 = (E.a1() + K(f, 2) * s) * ui;
  a.a2 = (E.a2() - s * E.a1() + K(f, 3) * r - s * s) * u2;
  a.a3 = (E.a3() + r * E.a1() + K(f, 2) * t) * u3;
  a.a4 = (E.a4() - s * E.a3() + K(f, 2) * r * E.a2() - (t + r * s) * E.a1() + K(f, 3) * r * r -
          K(f, 2) * s * t) *
         u4;
  a.a6 = (E.a6() + r * E.a4() + r * r * E.a2() + r * r * r - t * E.a3() - t * t -
          r * t * E.a1()) *
         u6;
  return Curve(f, a);
}

CurvePoint ModelIso::apply(const CurvePoint& P) const {
  if (P.is_zero()) return P;
  const RatFunc ui = u.inverse();
  const RatFunc xr = P.x - r;
  return CurvePoint::affine(xr * ui * ui, (P.y - s * xr - w_shift) * ui * ui * ui);
}

ModelIso ModelIso::then(const ModelIso& b) const {
  return ModelIso{u * b.u, r + u * u * b.r, s + u * b.s,
                  w_shift + u * u * s * b.r + u * u * u * b.w_shift};
}

ModelIso ModelIso::inverse() const {
  const RatFunc ui = u.inverse();
  return ModelIso{ui, -r * ui * ui, -s * ui, (r * s - w_shift) * ui * ui * ui};
}

// ---------------------------------------------------------------------------
// Hasse invariant, reduction

RatFunc hasse_invariant(const Curve& E) {
  const FieldPtr& f = E.field();
  const long p = f->characteristic();
  const RatFunc inv2 = K(f, 2).inverse();
  const RatFunc inv4 = inv2 * inv2;
  // f(x) = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, low degree first
  const std::vector<RatFunc> base{E.b6() * inv4, E.b4() * inv2, E.b2() * inv4, K(f, 1)};
  std::vector<RatFunc> acc{K(f, 1)};
  for (long k = 0; k < (p - 1) / 2; ++k) {
    std::vector<RatFunc> next(acc.size() + 3, RatFunc(f));
    for (size_t i = 0; i < acc.size(); ++i) {
      for (size_t j = 0; j < base.size(); ++j) {
        if (!acc[i].is_zero() && !base[j].is_zero()) next[i + j] += acc[i] * base[j];
      }
    }
    acc = std::move(next);
  }
  return static_cast<size_t>(p - 1) < acc.size() ? acc[p - 1] : RatFunc(f);
}

std::string to_string(ReductionType t) {
  switch (t) {
    case ReductionType::Good: return "good";
    case ReductionType::Multiplicative: return "multiplicative";
    case ReductionType::Additive: return "additive";
  }
  return "?";
}

InfinityModel infinity_minimal_model(const Curve& E) {
  if (!E.is_integral()) throw MathError("curve coefficients must lie in F_q[t]");
  int r = 0;
  const RatFunc* as[] = {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()};
  const int weight[] = {1, 2, 3, 4, 6};
  for (int i = 0; i < 5; ++i) {
    if (as[i]->is_zero()) continue;
    const int d = as[i]->num().degree();
    r = std::max(r, (d + weight[i] - 1) / weight[i]);
  }
  InfinityModel m;
  m.r = r;
  m.iso = ModelIso::scaling(RatFunc(Poly::monomial(E.field(), 1, r)));
  m.model = m.iso.apply(E);
  const int od = ord_at(m.model.discriminant(), Place::infinity(E.field()));
  if (od < 0 || od >= 12) {
    throw MathError("scaled model is not certified minimal at infinity (ord disc' = " +
                    std::to_string(od) + ")");
  }
  return m;
}

namespace {

ReductionInfo classify(const Curve& M, const Place& v) {
  ReductionInfo info;
  info.place = v;
  info.ord_disc = ord_at(M.discriminant(), v);
  info.ord_c4 = M.c4().is_zero() ? kInfiniteOrd : ord_at(M.c4(), v);
  if (info.ord_disc == 0) {
    info.type = ReductionType::Good;
  } else if (info.ord_c4 == 0) {
    info.type = ReductionType::Multiplicative;
  } else {
    info.type = ReductionType::Additive;
  }
  const RatFunc alpha = hasse_invariant(M);
  const bool unit_alpha = !alpha.is_zero() && ord_at(alpha, v) == 0;
  info.ordinary = (info.type == ReductionType::Good && unit_alpha) ||
                  info.type == ReductionType::Multiplicative;
  return info;
}

}  // namespace

ReductionInfo reduction_info(const Curve& E, const Place& v) {
  if (v.is_infinity()) return classify(infinity_minimal_model(E).model, v);
  if (!E.is_integral_at(v)) throw MathError("model is not integral at " + v.name());
  return classify(E, v);
}

std::vector<Place> bad_places(const Curve& E) {
  std::vector<Place> out;
  const RatFunc& d = E.discriminant();
  for (const Poly* part : {&d.num(), &d.den()}) {
    if (part->degree() < 1) continue;
    for (const Factor& fa : factor(*part)) out.push_back(Place::finite(fa.f));
  }
  return out;
}

void check_finite_minimality(const Curve& E, bool attested) {
  if (!E.is_integral()) throw MathError("curve coefficients must lie in F_q[t]");
  if (attested) return;
  for (const Factor& fa : factor(E.discriminant().num())) {
    if (fa.multiplicity >= 12) {
      throw MathError("cannot certify minimality at " + Place::finite(fa.f).name() +
                      " (ord disc >= 12); pass an attestation to proceed");
    }
  }
}

// ---------------------------------------------------------------------------
// local data

namespace {

bool nonsingular_reduction(const Curve& E, const CurvePoint& P, const Place& w) {
  if (P.is_zero()) return true;
  if (ord_at(P.x, w) < 0) return true;
  const RatFunc fx = E.a1() * P.y - K(E.field(), 3) * P.x * P.x -
                     K(E.field(), 2) * E.a2() * P.x - E.a4();
  const RatFunc fy = K(E.field(), 2) * P.y + E.a1() * P.x + E.a3();
  return !(ord_at(fx, w) > 0 && ord_at(fy, w) > 0);
}

}  // namespace

bool in_identity_component(const Curve& E, const CurvePoint& P, const Place& w) {
  if (P.is_zero()) return true;
  if (P.x.is_zero()) return false;
  if (w.is_infinity()) {
    const InfinityModel im = infinity_minimal_model(E);
    return nonsingular_reduction(im.model, im.iso.apply(P), w);
  }
  return nonsingular_reduction(E, P, w);
}

bool in_formal_group(const Curve& E, const CurvePoint& P, const Place& w) {
  if (P.is_zero()) return true;
  if (P.x.is_zero()) return false;
  if (w.is_infinity()) {
    const InfinityModel im = infinity_minimal_model(E);
    return ord_at(P.x, w) + 2 * im.r <= -2;
  }
  return ord_at(P.x, w) <= -2;
}

int local_height(const Curve& E, const CurvePoint& P, const Place& w) {
  if (P.is_zero()) return 0;
  if (!in_identity_component(E, P, w)) {
    throw MathError("point has singular reduction at " + w.name());
  }
  if (P.x.is_zero()) return 0;
  int o = ord_at(P.x, w);
  if (w.is_infinity()) o += 2 * infinity_minimal_model(E).r;
  return std::max(-o, 0);
}

namespace {

struct FFPoint {
  bool inf = true;
  Elem x = 0, y = 0;
  friend bool operator==(const FFPoint& a, const FFPoint& b) {
    return a.inf == b.inf && (a.inf || (a.x == b.x && a.y == b.y));
  }
};

struct FFCurve {
  const Field* F;
  Elem a1, a2, a3, a4, a6;

  FFPoint add(const FFPoint& P, const FFPoint& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    const Field& f = *F;
    Elem lambda, nu;
    if (P.x == Q.x) {
      const Elem d = f.add(f.add(f.add(P.y, Q.y), f.mul(a1, Q.x)), a3);
      if (d == 0) return FFPoint{};
      const Elem den = f.add(f.add(f.mul(2, P.y), f.mul(a1, P.x)), a3);
      const Elem x2 = f.mul(P.x, P.x);
      const Elem num = f.sub(f.add(f.add(f.mul(f.from_int(3), x2), f.mul(f.from_int(2), f.mul(a2, P.x))), a4),
                             f.mul(a1, P.y));
      lambda = f.div(num, den);
      const Elem nnum = f.sub(f.add(f.add(f.neg(f.mul(x2, P.x)), f.mul(a4, P.x)), f.mul(f.from_int(2), a6)),
                              f.mul(a3, P.y));
      nu = f.div(nnum, den);
    } else {
      const Elem dx = f.sub(Q.x, P.x);
      lambda = f.div(f.sub(Q.y, P.y), dx);
      nu = f.div(f.sub(f.mul(P.y, Q.x), f.mul(Q.y, P.x)), dx);
    }
    const Elem x3 = f.sub(f.sub(f.sub(f.add(f.mul(lambda, lambda), f.mul(a1, lambda)), a2), P.x), Q.x);
    const Elem y3 = f.sub(f.sub(f.neg(f.mul(f.add(lambda, a1), x3)), nu), a3);
    return FFPoint{false, x3, y3};
  }
};

Elem reduce_rat(const RatFunc& x, const Place& w) {
  const Field& F = *w.residue_field();
  return F.div(w.reduce(x.num()), w.reduce(x.den()));
}

// Order of P modulo w, for a good place w of E where P is defined.
long order_mod(const Curve& E, const CurvePoint& P, const Place& w) {
  FFCurve c{w.residue_field().get(), reduce_rat(E.a1(), w), reduce_rat(E.a2(), w),
            reduce_rat(E.a3(), w), reduce_rat(E.a4(), w), reduce_rat(E.a6(), w)};
  FFPoint pt;
  if (!P.is_zero() && ord_at(P.x, w) >= 0) pt = FFPoint{false, reduce_rat(P.x, w), reduce_rat(P.y, w)};
  const uint64_t q = w.residue_field()->order();
  const long bound = static_cast<long>(q + 1 + 2 * (std::sqrt(static_cast<double>(q)) + 1));
  FFPoint acc = pt;
  for (long k = 1; k <= bound; ++k) {
    if (acc.inf) return k;
    acc = c.add(acc, pt);
  }
  throw InternalError("point order modulo a place exceeds the Hasse bound");
}

}  // namespace

bool is_torsion(const Curve& E, const CurvePoint& P) {
  if (P.is_zero()) return true;
  const FieldPtr& f = E.field();
  const RatFunc alpha = hasse_invariant(E);
  std::vector<long> orders;
  // good ordinary places of degree 1, then 2
  for (int deg = 1; deg <= 2 && orders.size() < 3; ++deg) {
    const uint64_t q = f->order();
    const uint64_t count = deg == 1 ? q : q * q;
    for (uint64_t code = 0; code < count && orders.size() < 3; ++code) {
      std::vector<Elem> co;
      uint64_t c = code;
      for (int i = 0; i < deg; ++i) {
        co.push_back(static_cast<Elem>(c % q));
        c /= q;
      }
      co.push_back(1);
      const Poly pi(f, co);
      if (deg > 1 && !is_irreducible(pi)) continue;
      const Place w = Place::finite(pi);
      if (!E.is_integral_at(w) || ord_at(E.discriminant(), w) != 0) continue;
      if (alpha.is_zero() || ord_at(alpha, w) != 0) continue;
      orders.push_back(order_mod(E, P, w));
    }
  }
  if (orders.empty()) throw MathError("no good ordinary place of degree <= 2 for torsion detection");
  for (long o : orders) {
    if (o != orders.front()) return false;
  }
  return mul_point(E, orders.front(), P).is_zero();
}

namespace {

template <class Pred>
long first_multiple(const Curve& E, const CurvePoint& P, MultipleSearch opts, Pred&& ok) {
  CurvePoint Q = P;
  for (long n = 1; n <= opts.cap; ++n) {
    if (Q.is_zero() || ok(Q)) return n;
    Q = add_points(E, Q, P);
  }
  throw MathError("no suitable multiple of the point within the search cap " +
                  std::to_string(opts.cap));
}

}  // namespace

long minimal_multiple_identity_component(const Curve& E, const CurvePoint& P, MultipleSearch opts) {
  if (P.is_zero()) return 1;
  const std::vector<Place> bad = bad_places(E);
  const InfinityModel im = infinity_minimal_model(E);
  const Place inf = Place::infinity(E.field());
  return first_multiple(E, P, opts, [&](const CurvePoint& Q) {
    for (const Place& w : bad) {
      if (!nonsingular_reduction(E, Q, w)) return false;
    }
    return nonsingular_reduction(im.model, im.iso.apply(Q), inf);
  });
}

long minimal_multiple_in(const Curve& E, const CurvePoint& P, const Place& v, MultipleSearch opts) {
  if (P.is_zero()) return 1;
  const std::vector<Place> bad = bad_places(E);
  const InfinityModel im = infinity_minimal_model(E);
  const Place inf = Place::infinity(E.field());
  return first_multiple(E, P, opts, [&](const CurvePoint& Q) {
    const int shift = v.is_infinity() ? 2 * im.r : 0;
    if (Q.x.is_zero() || ord_at(Q.x, v) + shift > -2) return false;
    for (const Place& w : bad) {
      if (!nonsingular_reduction(E, Q, w)) return false;
    }
    return nonsingular_reduction(im.model, im.iso.apply(Q), inf);
  });
}

Rational neron_tate(const Curve& E, const CurvePoint& P, MultipleSearch opts) {
  if (P.is_zero() || is_torsion(E, P)) return Rational(0);
  const long n = minimal_multiple_identity_component(E, P, opts);
  const CurvePoint Q = mul_point(E, n, P);
  const InfinityModel im = infinity_minimal_model(E);
  const Place inf = Place::infinity(E.field());
  // finite places: lambda_w(Q) is the multiplicity of w in den x(Q)
  long long lambda_sum = 0;
  for (const Factor& part : squarefree_decomposition(Q.x.den())) {
    lambda_sum += static_cast<long long>(part.f.degree()) * part.multiplicity;
  }
  lambda_sum += local_height(E, Q, inf);
  // Neron's normalization of the local heights on the identity component
  long long disc_sum = 0;
  for (const Factor& fa : factor(E.discriminant().num())) {
    disc_sum += static_cast<long long>(fa.f.degree()) * fa.multiplicity;
  }
  disc_sum += ord_at(im.model.discriminant(), inf);
  const Rational hq = Rational(lambda_sum, 2) + Rational(disc_sum, 12);
  return hq / Rational(static_cast<long long>(n) * n);
}

RatFunc division_value(const Curve& E, const CurvePoint& P, long m) {
  if (P.is_zero()) throw MathError("division polynomial at the point at infinity");
  const FieldPtr f = E.field();
  DivisionPolynomials<RatFunc> dp(P.x, P.y, E.a1(), E.a3(), E.b2(), E.b4(), E.b6(), E.b8(),
                                  [f](long long k) { return RatFunc::constant(f, k); });
  return dp.psi(m);
}

}  // namespace charp
