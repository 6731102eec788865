#pragma once

// The Mazur-Tate sigma function of an ordinary curve as the infinite product
//
//   sigma(z) = z * prod_{n >= 1} B_n(z)^(p^(n-1)),
//
// where, writing [p](z) = g_1(z^p), f_p(z) = g_p(z^p), h_1 = g_1^{-1},
// h_n = h_{n-1}^(p) o h_1 (so h_n = g_n^{-1} for [p^n](z) = g_n(z^(p^n))),
// G(u) = u^(p-1) g_p(u) and h_n = z H,
//
//   B_n = c_n H^(1-p) G^(p^(n-1))(h_n),  c_n = 1 / (alpha^(p^(n-1)) alpha^(p^n - 1)).
//
// A superscript (p^k) on a series is the coefficientwise p^k-th power. The
// factor B_n^(p^(n-1)) is that twist of B_n evaluated at z^(p^(n-1)).

#include "charp/formal_group.hpp"

#include <memory>

namespace charp {

template <class C>
struct SigmaSeries {
  Series<C> series;  // sigma + O(z^precision)
  int factors_used = 0;
};

/// sigma mod z^M for the formal group fg with Hasse invariant alpha (a unit
/// of C). Every bracket is checked to be a 1-unit series.
template <class C>
SigmaSeries<C> sigma_series(const FormalGroup<C>& fg, const C& alpha, long M) {
  const C& proto = fg.proto();
  const long p = static_cast<long>(characteristic(alpha));
  if (!alpha.is_unit()) throw MathError("Hasse invariant is not invertible: curve is not ordinary");
  if (M <= 1) return {Series<C>::zero(proto, M), 0};
  const long K = M - 1;  // the product is needed mod z^K

  // [p](z) = g_1(z^p); h_1 = g_1^{-1}
  const Series<C> mp = fg.mult_by(p, p * (K + 1));
  const Series<C> g1 = mp.deflate(p);
  if (g1.valuation() != 1 || !(g1.lead() - alpha).is_zero()) {
    throw InternalError("[p](z) does not have leading term alpha z^p");
  }
  const Series<C> h1 = g1.reverse();

  // f_p(z) = g_p(z^p); G(u) = u^(p-1) g_p(u) + O(u^K)
  const Series<C> fp = fg.division_series(p, p * K);
  if (fp.valuation() != p - p * p || !(fp.lead() - alpha).is_zero()) {
    throw InternalError("f_p does not have leading term alpha z^(p - p^2)");
  }
  const Series<C> G = fp.deflate(p).shifted(p - 1).truncated(K);

  Series<C> prod = Series<C>::constant(proto.one_like(), K);
  Series<C> hn = h1;
  Series<C> Gn = G;
  C alpha_pn1 = alpha;  // alpha^(p^(n-1))
  int used = 0;
  long ppow = 1;  // p^(n-1)
  for (long n = 1; ppow < K; ++n) {
    const long Kn = (K + ppow - 1) / ppow;
    if (n > 1) {
      hn = hn.frobenius().truncated(Kn + 1).compose(h1.truncated(Kn + 1));
      Gn = Gn.frobenius();
      alpha_pn1 = alpha_pn1.frobenius();
    }
    const Series<C> h = hn.truncated(Kn + 1);
    const Series<C> H = h.shifted(-1);
    // alpha^(p^n - 1) = (alpha^(p^(n-1)))^p / alpha
    const C alpha_pn_1 = alpha_pn1.frobenius() * alpha.inverse();
    const C cn = (alpha_pn1 * alpha_pn_1).inverse();
    Series<C> bracket = (H.pow(1 - p) * Gn.truncated(Kn).compose(h)) * cn;
    bracket = bracket.truncated(Kn);
    if (bracket.valuation() != 0 || !(bracket.lead() - proto.one_like()).is_zero()) {
      throw InternalError("sigma product bracket is not a 1-unit");
    }
    Series<C> factor = bracket;
    for (long k = 1; k < n; ++k) factor = factor.frobenius();
    prod = (prod * factor.inflate(ppow)).truncated(K);
    ++used;
    ppow *= p;
  }
  return {prod.shifted(1).truncated(M), used};
}

template <class C>
struct PPowerParts {
  Series<C> g;  // [p^N](z) = g(z^(p^N))
  Series<C> G;  // f_{p^N}(z) = G(z^(p^N))
};

/// g and G to K relative terms, built from the level-p series:
/// [p^n] = [p^(n-1)] o [p] and f_{p^n}(z) = f_{p^(n-1)}([p](z)) f_p(z)^(p^(2n-2)) give, with w = z^(p^n),
///   g_n(w) = g_{n-1}(g_1^(F^(n-1))(w)),
///   G_n(w) = G_{n-1}(g_1^(F^(n-1))(w)) * G_1^(F^(2n-2))(w^(p^(n-1))).
template <class C>
PPowerParts<C> p_power_parts(const FormalGroup<C>& fg, long p, int N, long K) {
  if (N < 1) throw MathError("N must be positive");
  const Series<C> g1 = fg.mult_by(p, p * (K + 1)).deflate(p);
  const Series<C> G1 = fg.division_series(p, p * (K + 1)).deflate(p);
  PPowerParts<C> r{g1, G1};
  Series<C> twist = g1, G1twist = G1;
  long ppow = 1;
  for (int n = 2; n <= N; ++n) {
    twist = twist.frobenius();
    G1twist = G1twist.frobenius().frobenius();
    ppow *= p;
    r.g = r.g.compose(twist);
    r.G = r.G.compose(twist) * G1twist.inflate(ppow);
  }
  r.g = r.g.truncated(K + 1);
  r.G = r.G.truncated(r.G.valuation() + K);
  return r;
}

}  // namespace charp
