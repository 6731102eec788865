#pragma once

// The formal group of a Weierstrass model at O in the parameter z = -x/y,
// with w = -1/y, over a coefficient domain C (see series.hpp).

#include "charp/series.hpp"
#include "charp/weierstrass.hpp"

#include <mutex>

namespace charp {

template <class C>
struct FormalPoint {
  Series<C> z, w;
};

namespace detail {

/// Third point of the chord through (z1, w1) and (z2, w2) with slope lambda,
/// reflected: the formal sum. S is Series<C> or BiSeries<C>; one is 1 in S.
template <class S, class C>
std::pair<S, S> chord_sum(const AInvariants<C>& a, const S& z1, const S& w1, const S& z2,
                          const S& lambda, const S& one) {
  const S nu = w1 - lambda * z1;
  const S l2 = lambda * lambda;
  const S num = lambda * a.a1 + nu * a.a2 + l2 * a.a3 + lambda * nu * a.a4.int_like(2) * a.a4 +
                l2 * nu * a.a6.int_like(3) * a.a6;
  const S den = one + lambda * a.a2 + l2 * a.a4 + l2 * lambda * a.a6;
  const S z3 = -z1 - z2 - num / den;
  const S w3 = lambda * z3 + nu;
  const S d = one - z3 * a.a1 - w3 * a.a3;
  const S dinv = one / d;
  return {-(z3 * dinv), -(w3 * dinv)};
}

/// sum_n A_n (z2^n - z1^n) / (z2 - z1) for w = sum A_n z^n, without division.
template <class S, class C>
S divided_difference(const Series<C>& w, const S& z1, const S& z2, const S& one, long max_n) {
  S h = one;  // h_{n-1}(z1, z2) = sum_{i+j=n-1} z1^i z2^j
  S z2pow = one;
  S lambda = one - one;
  for (long n = 1; n <= max_n; ++n) {
    if (n > 1) {
      z2pow = z2pow * z2;
      h = h * z1 + z2pow;
    }
    if (n >= w.valuation() && n < w.precision()) {
      const C& A = w.coeff(n);
      if (!A.is_zero()) lambda = lambda + h * A;
    }
  }
  return lambda;
}

}  // namespace detail

template <class C>
class FormalGroup {
 public:
  FormalGroup(AInvariants<C> a) : a_(std::move(a)) {}

  const AInvariants<C>& a() const { return a_; }
  const C& proto() const { return a_.a1; }

  /// w(z) + O(z^N), from w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3.
  Series<C> w(long N) const {
    std::lock_guard<std::mutex> lock(mu_);
    if (w_.precision() >= N && w_cached_) return w_.truncated(N);
    const C one = proto().one_like();
    const Series<C> z = Series<C>::variable(proto(), N);
    Series<C> w = Series<C>::monomial(one, 3, std::min(N, 4L));
    long len = std::min(N, 4L);
    while (len < N) {
      len = std::min(2 * len, N);
      const Series<C> zz = z.truncated(len);
      const Series<C> ww = w.extended(len);
      const Series<C> F = ww - (zz * zz * zz + zz * ww * a_.a1 + zz * zz * ww * a_.a2 +
                                ww * ww * a_.a3 + zz * ww * ww * a_.a4 + ww * ww * ww * a_.a6);
      const Series<C> dF = (Series<C>::constant(one, len) - zz * a_.a1 - zz * zz * a_.a2 -
                            ww * a_.a3.int_like(2) * a_.a3 - zz * ww * a_.a4.int_like(2) * a_.a4 -
                            ww * ww * a_.a6.int_like(3) * a_.a6);
      w = (ww - F / dF).truncated(len);
    }
    w_ = w.extended(N).truncated(N);
    w_cached_ = true;
    return w_;
  }

  /// x(z) = z / w with relative precision rel (valuation -2).
  Series<C> x(long rel) const {
    const Series<C> ww = w(rel + 3);
    return Series<C>::variable(proto(), rel + 3) / ww;
  }
  /// y(z) = -1 / w with relative precision rel (valuation -3).
  Series<C> y(long rel) const { return -(w(rel + 3).inverse()); }

  FormalPoint<C> generator(long N) const {
    return {Series<C>::variable(proto(), N), w(N)};
  }

  FormalPoint<C> add(const FormalPoint<C>& p, const FormalPoint<C>& q) const {
    const long N = std::min({p.z.precision(), q.z.precision(), p.w.precision(), q.w.precision()});
    if (p.z.is_zero()) return q;
    if (q.z.is_zero()) return p;
    const Series<C> one = Series<C>::constant(proto().one_like(), N);
    // w mod z^(N+1) fixes the slope mod z^N
    const Series<C> wz = w(N + 1);
    const Series<C> lambda = detail::divided_difference(wz, p.z, q.z, one, N + 1).truncated(N);
    auto [z3, w3] = detail::chord_sum(a_, p.z, p.w, q.z, lambda, one);
    return {z3.truncated(N), w3.truncated(N)};
  }

  FormalPoint<C> negate(const FormalPoint<C>& p) const {
    const long N = p.z.precision();
    const Series<C> one = Series<C>::constant(proto().one_like(), N);
    const Series<C> d = (one - p.z * a_.a1 - p.w * a_.a3).inverse();
    return {-(p.z * d), -(p.w * d)};
  }

  /// [m](z) + O(z^N).
  FormalPoint<C> multiple(long m, long N) const {
    if (m < 0) return negate(multiple(-m, N));
    long slack = 4;
    for (long b = m; b > 1; b >>= 1) slack += 2;
    for (int attempt = 0; attempt < 8; ++attempt, slack *= 2) {
      const long Nw = N + slack;
      FormalPoint<C> result{Series<C>::zero(proto(), Nw), Series<C>::zero(proto(), Nw)};
      FormalPoint<C> base = generator(Nw);
      long k = m;
      while (k > 0) {
        if (k & 1) result = chain_add(result, base);
        k >>= 1;
        if (k) base = chain_double(base);
      }
      if (result.z.precision() >= N && result.w.precision() >= N) {
        return {result.z.truncated(N), result.w.truncated(N)};
      }
    }
    throw PrecisionError("multiplication series lost too much precision", N);
  }
  Series<C> mult_by(long m, long N) const { return multiple(m, N).z; }

  /// F(z1, z2) to total degree < prec.
  BiSeries<C> group_law(int prec) const {
    using B = BiSeries<C>;
    const C& c = proto();
    const B one = B::constant(c.one_like(), prec);
    const B z1 = B::z1(c, prec), z2 = B::z2(c, prec);
    const Series<C> wz = w(prec + 1);
    const B w1 = eval_bi(wz, z1, one, prec);
    const B lambda = detail::divided_difference(wz, z1, z2, one, prec + 1);
    return detail::chord_sum(a_, z1, w1, z2, lambda, one).first;
  }

  /// f_m(z) with relative precision rel, normalized so the lead is
  /// m z^(1 - m^2) for p not dividing m.
  Series<C> division_series(long m, long rel) const {
    if (m == 0) throw MathError("f_0 is not defined");
    long slack = 8;
    for (int attempt = 0; attempt < 8; ++attempt) {
      const long r0 = rel + slack;
      const Series<C> xs = x(r0), ys = y(r0);
      const C& c = proto();
      auto K = [&](long long k) { return Series<C>::constant(c.int_like(k), r0 + 8); };
      auto lift = [&](const C& v) { return Series<C>::constant(v, r0 + 8); };
      DivisionPolynomials<Series<C>> dp(xs, ys, lift(a_.a1), lift(a_.a3), lift(a_.b2()),
                                        lift(a_.b4()), lift(a_.b6()), lift(a_.b8()), K);
      Series<C> f = dp.psi(m < 0 ? -m : m);
      const long am = m < 0 ? -m : m;
      if (am % 2 == 0) f = -f;
      if (m < 0) f = -f;
      if (f.relative_precision() >= rel) {
        return f.truncated(f.valuation() + rel);
      }
      slack *= 2;
    }
    throw PrecisionError("division polynomial expansion lost too much precision", rel);
  }

 private:
  // Chord and tangent steps for multiple(): slopes by one division, the
  // precision loss tracked by the series arithmetic.
  FormalPoint<C> chain_add(const FormalPoint<C>& p, const FormalPoint<C>& q) const {
    if (p.z.is_zero()) return q;
    if (q.z.is_zero()) return p;
    const Series<C> d = q.z - p.z;
    if (d.is_zero() || !d.lead().is_unit()) return add(p, q);
    const long N = std::min(p.z.precision(), q.z.precision());
    const Series<C> one = Series<C>::constant(proto().one_like(), N);
    const Series<C> lambda = (q.w - p.w) / d;
    auto [z3, w3] = detail::chord_sum(a_, p.z, p.w, q.z, lambda, one);
    return {z3, w3};
  }

  // dw/dz on w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
  FormalPoint<C> chain_double(const FormalPoint<C>& p) const {
    if (p.z.is_zero()) return p;
    const Series<C>& z = p.z;
    const Series<C>& w = p.w;
    const long N = z.precision();
    const C& c = proto();
    const Series<C> one = Series<C>::constant(c.one_like(), N);
    const Series<C> zz = z * z, zw = z * w, ww = w * w;
    const Series<C> num = zz * c.int_like(3) + w * a_.a1 + zw * (c.int_like(2) * a_.a2) + ww * a_.a4;
    const Series<C> den = one - z * a_.a1 - zz * a_.a2 - w * (c.int_like(2) * a_.a3) -
                          zw * (c.int_like(2) * a_.a4) - ww * (c.int_like(3) * a_.a6);
    const Series<C> lambda = num / den;
    auto [z3, w3] = detail::chord_sum(a_, z, w, z, lambda, one);
    return {z3, w3};
  }

  static BiSeries<C> eval_bi(const Series<C>& f, const BiSeries<C>& z, const BiSeries<C>& one,
                             int prec) {
    BiSeries<C> acc = one - one;
    BiSeries<C> pw = one;
    for (long n = 0; n < prec; ++n) {
      if (n > 0) pw = pw * z;
      if (n >= f.valuation() && n < f.precision()) {
        const C& c = f.coeff(n);
        if (!c.is_zero()) acc = acc + pw * c;
      }
    }
    return acc;
  }

  AInvariants<C> a_;
  mutable std::mutex mu_;
  mutable Series<C> w_;
  mutable bool w_cached_ = false;
};

/// A Series over a coefficient domain with an exact-integer power helper.
template <class C>
C power(const C& x, unsigned long long e) {
  C result = x.one_like();
  C base = x;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

}  // namespace charp
