#pragma once

#include "charp/local.hpp"
#include "charp/ratfunc.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace charp {

/// a-invariants over any commutative ring with int_like(), plus b-invariants.
template <class C>
struct AInvariants {
  C a1, a2, a3, a4, a6;

  C b2() const { return a1 * a1 + a2.int_like(4) * a2; }
  C b4() const { return a2.int_like(2) * a4 + a1 * a3; }
  C b6() const { return a3 * a3 + a6.int_like(4) * a6; }
  C b8() const {
    return a1 * a1 * a6 + a6.int_like(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  template <class D, class F>
  AInvariants<D> map(F&& f) const {
    return AInvariants<D>{f(a1), f(a2), f(a3), f(a4), f(a6)};
  }
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_q(t).
class Curve {
 public:
  Curve() = default;
  /// Throws MathError when the discriminant vanishes.
  Curve(FieldPtr f, AInvariants<RatFunc> a);

  const FieldPtr& field() const { return f_; }
  const AInvariants<RatFunc>& a() const { return a_; }
  const RatFunc& a1() const { return a_.a1; }
  const RatFunc& a2() const { return a_.a2; }
  const RatFunc& a3() const { return a_.a3; }
  const RatFunc& a4() const { return a_.a4; }
  const RatFunc& a6() const { return a_.a6; }
  const RatFunc& b2() const { return b2_; }
  const RatFunc& b4() const { return b4_; }
  const RatFunc& b6() const { return b6_; }
  const RatFunc& b8() const { return b8_; }
  const RatFunc& c4() const { return c4_; }
  const RatFunc& c6() const { return c6_; }
  const RatFunc& discriminant() const { return disc_; }
  /// All a_i in F_q[t].
  bool is_integral() const;
  /// Min over i of ord_v(a_i) >= 0.
  bool is_integral_at(const Place& v) const;

 private:
  FieldPtr f_;
  AInvariants<RatFunc> a_;
  RatFunc b2_, b4_, b6_, b8_, c4_, c6_, disc_;
};

struct CurvePoint {
  bool infinite = true;
  RatFunc x, y;

  static CurvePoint zero() { return {}; }
  static CurvePoint affine(RatFunc x, RatFunc y) { return {false, std::move(x), std::move(y)}; }
  bool is_zero() const { return infinite; }
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const CurvePoint& a, const CurvePoint& b) { return !(a == b); }
};

bool on_curve(const Curve& E, const CurvePoint& P);
CurvePoint negate(const Curve& E, const CurvePoint& P);
CurvePoint add_points(const Curve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint sub_points(const Curve& E, const CurvePoint& P, const CurvePoint& Q);
CurvePoint mul_point(const Curve& E, long long m, const CurvePoint& P);

/// x = u^2 x' + r, y = u^3 y' + s u^2 x' + w_shift.
struct ModelIso {
  RatFunc u, r, s, w_shift;

  static ModelIso identity(const FieldPtr& f);
  static ModelIso scaling(const RatFunc& u);
  /// Model in the primed coordinates.
  Curve apply(const Curve& E) const;
  CurvePoint apply(const CurvePoint& P) const;
  /// Applying the result equals applying *this, then b.
  ModelIso then(const ModelIso& b) const;
  ModelIso inverse() const;
};

/// Coefficient of x^(p-1) in f(x)^((p-1)/2), y^2 = f(x) the completed square.
RatFunc hasse_invariant(const Curve& E);

enum class ReductionType { Good, Multiplicative, Additive };
std::string to_string(ReductionType t);

struct ReductionInfo {
  Place place;
  ReductionType type = ReductionType::Good;
  bool ordinary = false;
  int ord_disc = 0;
  int ord_c4 = 0;
};

/// At infinity the classification is made on the infinity model.
ReductionInfo reduction_info(const Curve& E, const Place& v);

struct InfinityModel {
  Curve model;
  ModelIso iso;
  int r = 0;  // u = t^r
};

/// Scales by u = t^r, r = max ceil(deg a_i / i), so the model is integral at
/// infinity. Throws MathError unless ord_inf(disc') < 12.
InfinityModel infinity_minimal_model(const Curve& E);

/// Finite places dividing the discriminant, sorted.
std::vector<Place> bad_places(const Curve& E);

/// Integral over F_q[t] and ord_w(disc) < 12 at each bad finite place, unless
/// attested. Throws MathError otherwise.
void check_finite_minimality(const Curve& E, bool attested);

/// Nonsingular reduction at w (finite: on E; infinity: on the infinity model).
bool in_identity_component(const Curve& E, const CurvePoint& P, const Place& w);
/// ord_w(x(P)) <= -2, on the infinity model for w = infinity.
bool in_formal_group(const Curve& E, const CurvePoint& P, const Place& w);

/// max(-ord_w x(P), 0); infinity uses the infinity model. Throws MathError
/// when P has singular reduction at w.
int local_height(const Curve& E, const CurvePoint& P, const Place& w);

/// Declared torsion when m P = O for the orders m of P modulo a few good
/// ordinary places of degree one.
bool is_torsion(const Curve& E, const CurvePoint& P);

struct MultipleSearch {
  long cap = 2000;
};

/// Smallest n >= 1 with nP in the identity component at every bad finite
/// place and at infinity, and in the formal group at v.
long minimal_multiple_in(const Curve& E, const CurvePoint& P, const Place& v,
                         MultipleSearch opts = {});
/// Same without the formal-group condition.
long minimal_multiple_identity_component(const Curve& E, const CurvePoint& P,
                                         MultipleSearch opts = {});

/// Neron-Tate height (degree normalization: deg of Ĥ_inf equals twice it).
Rational neron_tate(const Curve& E, const CurvePoint& P, MultipleSearch opts = {});

/// Multiplication-free division polynomial recursion over a ring R.
///
/// F_m is psi_m for odd m and psi_m / psi_2 for even m; psi_2^2 is replaced by
/// B = 4x^3 + b2 x^2 + 2 b4 x + b6, which equals it on the curve.
template <class R>
class DivisionPolynomials {
 public:
  DivisionPolynomials(R x, R y, R a1, R a3, R b2, R b4, R b6, R b8,
                      std::function<R(long long)> from_int)
      : from_int_(std::move(from_int)) {
    const R two = from_int_(2), three = from_int_(3), four = from_int_(4), five = from_int_(5),
            ten = from_int_(10);
    const R x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    psi2_ = two * y + a1 * x + a3;
    B_ = four * x3 + b2 * x2 + two * b4 * x + b6;
    F_.emplace(0, from_int_(0));
    F_.emplace(1, from_int_(1));
    F_.emplace(2, from_int_(1));
    F_.emplace(3, three * x4 + b2 * x3 + three * b4 * x2 + three * b6 * x + b8);
    const R x5 = x4 * x, x6 = x5 * x;
    F_.emplace(4, two * x6 + b2 * x5 + five * b4 * x4 + ten * b6 * x3 + ten * b8 * x2 +
                      (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6));
  }

  const R& psi2() const { return psi2_; }
  const R& B() const { return B_; }

  /// F_m for m >= 0.
  const R& F(long m) {
    auto it = F_.find(m);
    if (it != F_.end()) return it->second;
    R val;
    const long k = m / 2;
    if (m % 2 == 0) {
      const R& fk = F(k);
      val = fk * (F(k + 2) * sq(F(k - 1)) - F(k - 2) * sq(F(k + 1)));
    } else if (k % 2 == 0) {
      val = sq(B_) * F(k + 2) * cube(F(k)) - F(k - 1) * cube(F(k + 1));
    } else {
      val = F(k + 2) * cube(F(k)) - sq(B_) * F(k - 1) * cube(F(k + 1));
    }
    return F_.emplace(m, std::move(val)).first->second;
  }

  /// psi_m, with psi_{-m} = -psi_m.
  R psi(long m) {
    if (m < 0) return from_int_(0) - psi(-m);
    if (m % 2 == 0) return psi2_ * F(m);
    return F(m);
  }

 private:
  static R sq(const R& a) { return a * a; }
  static R cube(const R& a) { return a * a * a; }

  std::function<R(long long)> from_int_;
  R psi2_, B_;
  std::map<long, R> F_;
};

/// psi_m(P) for the point P on E.
RatFunc division_value(const Curve& E, const CurvePoint& P, long m);

}  // namespace charp
