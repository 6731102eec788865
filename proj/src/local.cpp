#include "charp/local.hpp"

#include "charp/errors.hpp"
#include "charp/kernels.hpp"

#include <algorithm>

namespace charp {

namespace rs {

std::vector<Elem> mul(const Field& f, const std::vector<Elem>& a, const std::vector<Elem>& b,
                      size_t n) {
  if (a.empty() || b.empty()) return std::vector<Elem>(std::min(n, a.size() + b.size()), 0);
  n = std::min(n, a.size() + b.size() - 1);
  std::vector<Elem> out(n, 0);
  if (f.is_prime()) {
    kernels::convolve_mod(a, b, out, f.characteristic());
    return out;
  }
  for (size_t i = 0; i < a.size() && i < n; ++i) {
    if (a[i] == 0) continue;
    const size_t jmax = std::min(b.size(), n - i);
    for (size_t j = 0; j < jmax; ++j) {
      if (b[j] != 0) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
    }
  }
  return out;
}

std::vector<Elem> inverse(const Field& f, const std::vector<Elem>& a, size_t n) {
  if (a.empty() || a[0] == 0) throw MathError("series inverse needs a unit constant term");
  std::vector<Elem> b{f.inv(a[0])};
  size_t len = 1;
  while (len < n) {
    len = std::min(2 * len, n);
    std::vector<Elem> a_cut(a.begin(), a.begin() + std::min(a.size(), len));
    std::vector<Elem> e = mul(f, a_cut, b, len);
    // b <- b * (2 - a*b)
    for (Elem& x : e) x = f.neg(x);
    e.resize(len, 0);
    e[0] = f.add(e[0], f.from_int(2));
    b = mul(f, b, e, len);
  }
  b.resize(n, 0);
  return b;
}

}  // namespace rs

// ---------------------------------------------------------------------------
// Place::t_expansion

std::vector<Elem> Place::t_expansion(int n) const {
  if (is_infinity()) throw MathError("t has no expansion at infinity in s = 1/t");
  std::lock_guard<std::mutex> lock(d_->mu);
  auto& cache = d_->t_cache;
  if (static_cast<int>(cache.size()) >= n) return {cache.begin(), cache.begin() + n};
  const Field& F = *d_->residue;
  std::vector<Elem> out(std::max(n, 2), 0);
  if (d_->degree == 1) {
    out[0] = d_->theta;
    out[1] = 1;
  } else {
    // h(Y) = pi(theta + Y) by a Taylor shift, then Y = h^{-1}(X) by Newton.
    const int d = d_->degree;
    std::vector<Elem> h(d + 1);
    for (int i = 0; i <= d; ++i) h[i] = F.from_base(d_->pi.coeff(i));
    for (int i = 0; i <= d; ++i) {
      for (int j = d - 1; j >= i; --j) h[j] = F.add(h[j], F.mul(d_->theta, h[j + 1]));
    }
    if (h[0] != 0 || h[1] == 0) throw InternalError("place polynomial is not separable at theta");
    std::vector<Elem> dh(d);
    for (int i = 1; i <= d; ++i) dh[i - 1] = F.mul(F.from_int(i), h[i]);
    auto eval = [&](const std::vector<Elem>& poly, const std::vector<Elem>& y, size_t len) {
      std::vector<Elem> acc(len, 0);
      for (int i = static_cast<int>(poly.size()) - 1; i >= 0; --i) {
        acc = rs::mul(F, acc, y, len);
        acc.resize(len, 0);
        acc[0] = F.add(acc[0], poly[i]);
      }
      return acc;
    };
    std::vector<Elem> y{0, F.inv(h[1])};
    size_t len = 2;
    const size_t target = out.size();
    while (len < target) {
      len = std::min(2 * len, target);
      y.resize(len, 0);
      std::vector<Elem> r = eval(h, y, len);
      r[1] = F.sub(r[1], 1);
      const std::vector<Elem> q = rs::mul(F, r, rs::inverse(F, eval(dh, y, len), len), len);
      for (size_t i = 0; i < q.size(); ++i) y[i] = F.sub(y[i], q[i]);
    }
    y.resize(target, 0);
    out = y;
    out[0] = d_->theta;
  }
  cache = out;
  return {out.begin(), out.begin() + n};
}

// ---------------------------------------------------------------------------
// LocalElement

LocalElement LocalElement::zero(const Place& v, long prec) {
  LocalElement x;
  x.v_ = v;
  x.lead_ = prec;
  return x;
}

LocalElement LocalElement::from_coeffs(const Place& v, long lead, std::vector<Elem> coeffs) {
  size_t k = 0;
  while (k < coeffs.size() && coeffs[k] == 0) ++k;
  LocalElement x;
  x.v_ = v;
  x.lead_ = lead + static_cast<long>(k);
  if (k < coeffs.size()) {
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(k));
    x.c_ = std::move(coeffs);
  }
  return x;
}

LocalElement LocalElement::constant(const Place& v, Elem c, long prec) {
  if (c == 0) return zero(v, prec);
  std::vector<Elem> co(std::max(prec, 1L), 0);
  co[0] = c;
  return from_coeffs(v, 0, std::move(co));
}

Elem LocalElement::coeff(long e) const {
  if (e >= precision()) throw PrecisionError("coefficient beyond known precision", precision());
  if (e < lead_) return 0;
  return c_[e - lead_];
}

LocalElement LocalElement::operator-() const {
  LocalElement r = *this;
  const Field& F = *v_.residue_field();
  for (Elem& x : r.c_) x = F.neg(x);
  return r;
}

LocalElement operator+(const LocalElement& a, const LocalElement& b) {
  if (a.v_ != b.v_) throw InternalError("adding local elements at different places");
  const long prec = std::min(a.precision(), b.precision());
  const long lo = std::min(a.lead_, b.lead_);
  if (prec <= lo) return LocalElement::zero(a.v_, prec);
  const Field& F = *a.v_.residue_field();
  std::vector<Elem> c(prec - lo, 0);
  for (size_t i = 0; i < a.c_.size() && a.lead_ + static_cast<long>(i) < prec; ++i) {
    c[a.lead_ - lo + i] = a.c_[i];
  }
  for (size_t i = 0; i < b.c_.size() && b.lead_ + static_cast<long>(i) < prec; ++i) {
    Elem& t = c[b.lead_ - lo + i];
    t = F.add(t, b.c_[i]);
  }
  return LocalElement::from_coeffs(a.v_, lo, std::move(c));
}

LocalElement operator*(const LocalElement& a, const LocalElement& b) {
  if (a.v_ != b.v_) throw InternalError("multiplying local elements at different places");
  if (a.is_zero() || b.is_zero()) {
    return LocalElement::zero(a.v_, std::min(a.precision() + b.lead_, b.precision() + a.lead_));
  }
  const size_t n = std::min(a.c_.size(), b.c_.size());
  LocalElement r;
  r.v_ = a.v_;
  r.lead_ = a.lead_ + b.lead_;
  r.c_ = rs::mul(*a.v_.residue_field(), a.c_, b.c_, n);
  r.c_.resize(n, 0);
  return r;
}

LocalElement LocalElement::inverse() const {
  if (is_zero()) throw MathError("inverse of a local element that is zero to its precision");
  LocalElement r;
  r.v_ = v_;
  r.lead_ = -lead_;
  r.c_ = rs::inverse(*v_.residue_field(), c_, c_.size());
  return r;
}

LocalElement LocalElement::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  if (is_zero()) {
    if (e == 0) return constant(v_, 1, 1);
    return zero(v_, precision() * e);
  }
  LocalElement result = constant(v_, 1, relative_precision());
  LocalElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

LocalElement LocalElement::scaled(Elem c) const {
  if (c == 0) return zero(v_, precision());
  LocalElement r = *this;
  const Field& F = *v_.residue_field();
  for (Elem& x : r.c_) x = F.mul(x, c);
  return r;
}

LocalElement LocalElement::shifted(long k) const {
  LocalElement r = *this;
  r.lead_ += k;
  return r;
}

LocalElement LocalElement::truncated(long prec) const {
  if (prec >= precision()) return *this;
  if (prec <= lead_) return zero(v_, prec);
  LocalElement r = *this;
  r.c_.resize(prec - lead_);
  return r;
}

LocalElement LocalElement::frobenius() const {
  const Field& F = *v_.residue_field();
  const long p = F.characteristic();
  if (is_zero()) return zero(v_, lead_ * p);
  LocalElement r;
  r.v_ = v_;
  r.lead_ = lead_ * p;
  r.c_.assign(c_.size() * p, 0);
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i * p] = F.frobenius(c_[i]);
  return r;
}

long first_difference(const LocalElement& a, const LocalElement& b) {
  const long joint = std::min(a.precision(), b.precision());
  for (long e = std::min(a.lead_, b.lead_); e < joint; ++e) {
    if (a.coeff(e) != b.coeff(e)) return e;
  }
  return joint;
}

// ---------------------------------------------------------------------------
// expansions

namespace {

std::vector<Elem> expand_unit_poly(const Poly& g, const Place& v, long n) {
  const Field& F = *v.residue_field();
  std::vector<Elem> acc(n, 0);
  if (v.degree() == 1) {
    const Elem c = v.theta();
    for (int i = g.degree(); i >= 0; --i) {
      for (long j = n - 1; j >= 1; --j) acc[j] = F.add(F.mul(c, acc[j]), acc[j - 1]);
      acc[0] = F.add(F.mul(c, acc[0]), g.coeff(i));
    }
    return acc;
  }
  const std::vector<Elem> tt = v.t_expansion(static_cast<int>(n));
  for (int i = g.degree(); i >= 0; --i) {
    acc = rs::mul(F, acc, tt, n);
    acc.resize(n, 0);
    acc[0] = F.add(acc[0], F.from_base(g.coeff(i)));
  }
  return acc;
}

}  // namespace

LocalElement expand_at(const Poly& x, const Place& v, long relprec) {
  if (x.is_zero()) return LocalElement::zero(v, relprec);
  if (relprec <= 0) return LocalElement::zero(v, ord_at(x, v));
  if (v.is_infinity()) {
    const int n = x.degree();
    std::vector<Elem> r(relprec, 0);
    for (long i = 0; i < relprec && i <= n; ++i) r[i] = x.coeff(n - static_cast<int>(i));
    return LocalElement::from_coeffs(v, -n, std::move(r));
  }
  auto [k, g] = x.strip_factor(v.poly());
  return LocalElement::from_coeffs(v, k, expand_unit_poly(g, v, relprec));
}

LocalElement expand_at(const RatFunc& x, const Place& v, long relprec) {
  if (x.is_zero()) return LocalElement::zero(v, relprec);
  if (x.is_polynomial()) return expand_at(x.num(), v, relprec);
  return expand_at(x.num(), v, relprec) * expand_at(x.den(), v, relprec).inverse();
}

// ---------------------------------------------------------------------------
// LocalInteger

LocalInteger::LocalInteger(Place v, long cap) : v_(std::move(v)), c_(cap, 0) {}

LocalInteger LocalInteger::from(const RatFunc& x, const Place& v, long cap) {
  if (x.is_zero()) return LocalInteger(v, cap);
  const int ord = ord_at(x, v);
  if (ord < 0) throw MathError("coefficient is not integral at " + v.name());
  if (ord >= cap) return LocalInteger(v, cap);
  return from(expand_at(x, v, cap - ord), cap);
}

LocalInteger LocalInteger::from(const LocalElement& x, long cap) {
  if (x.precision() < cap) throw PrecisionError("local element known to too few digits", x.precision());
  if (!x.is_zero() && x.valuation() < 0) throw MathError("local element is not integral");
  LocalInteger r(x.place(), cap);
  for (long i = 0; i < cap; ++i) r.c_[i] = x.coeff(i);
  return r;
}

long LocalInteger::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return static_cast<long>(i);
  }
  return cap();
}

LocalElement LocalInteger::to_element() const { return LocalElement::from_coeffs(v_, 0, c_); }

LocalInteger LocalInteger::one_like() const {
  LocalInteger r(v_, cap());
  if (!r.c_.empty()) r.c_[0] = 1;
  return r;
}

LocalInteger LocalInteger::int_like(long long v) const {
  LocalInteger r(v_, cap());
  if (!r.c_.empty()) r.c_[0] = v_.residue_field()->from_int(v);
  return r;
}

bool LocalInteger::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](Elem x) { return x == 0; });
}

LocalInteger LocalInteger::inverse() const {
  if (!is_unit()) throw MathError("inverse of a non-unit in O_v / pi^T");
  LocalInteger r(v_, 0);
  r.c_ = rs::inverse(*v_.residue_field(), c_, c_.size());
  return r;
}

LocalInteger LocalInteger::frobenius() const {
  const Field& F = *v_.residue_field();
  const size_t p = F.characteristic();
  LocalInteger r(v_, cap());
  for (size_t i = 0; i * p < c_.size(); ++i) r.c_[i * p] = F.frobenius(c_[i]);
  return r;
}

LocalInteger LocalInteger::operator-() const {
  LocalInteger r = *this;
  const Field& F = *v_.residue_field();
  for (Elem& x : r.c_) x = F.neg(x);
  return r;
}

namespace {
void check_caps(const LocalInteger& a, const LocalInteger& b) {
  if (a.cap() != b.cap()) throw InternalError("mixing O_v / pi^T values with different caps");
}
}  // namespace

LocalInteger operator+(const LocalInteger& a, const LocalInteger& b) {
  check_caps(a, b);
  LocalInteger r = a;
  const Field& F = *a.v_.residue_field();
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(r.c_[i], b.c_[i]);
  return r;
}

LocalInteger operator-(const LocalInteger& a, const LocalInteger& b) {
  check_caps(a, b);
  LocalInteger r = a;
  const Field& F = *a.v_.residue_field();
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.sub(r.c_[i], b.c_[i]);
  return r;
}

LocalInteger operator*(const LocalInteger& a, const LocalInteger& b) {
  check_caps(a, b);
  LocalInteger r(a.v_, 0);
  r.c_ = rs::mul(*a.v_.residue_field(), a.c_, b.c_, a.c_.size());
  r.c_.resize(a.c_.size(), 0);
  return r;
}

// ---------------------------------------------------------------------------
// positive parts, Z_p powers, p^N-th powers

PositivePart positive_part(const LocalElement& x) {
  if (x.is_zero()) throw MathError("positive part of an element that is zero to its precision");
  const Field& F = *x.place().residue_field();
  PositivePart r;
  r.place = x.place();
  r.exponent = Rational(x.valuation());
  r.unit = LocalElement::from_coeffs(x.place(), 0, x.unit_coeffs()).scaled(F.inv(x.lead_coeff()));
  return r;
}

PositivePart positive_one(const Place& v, long prec) {
  return PositivePart{v, Rational(0), LocalElement::constant(v, 1, prec)};
}

PositivePart PositivePart::inverse() const {
  return PositivePart{place, -exponent, unit.inverse()};
}

PositivePart PositivePart::pow(Rational e) const {
  return PositivePart{place, exponent * e, zp_power(unit, e)};
}

PositivePart operator*(const PositivePart& a, const PositivePart& b) {
  if (a.place != b.place) throw InternalError("multiplying positive parts at different places");
  return PositivePart{a.place, a.exponent + b.exponent, a.unit * b.unit};
}

namespace {

bool is_one_unit(const LocalElement& u) {
  return !u.is_zero() && u.valuation() == 0 && u.lead_coeff() == 1;
}

long long modinv(long long a, long long m) {
  __int128 g0 = m, g1 = ((a % m) + m) % m, s0 = 0, s1 = 1;
  while (g1 != 0) {
    const __int128 q = g0 / g1;
    __int128 t = g0 - q * g1;
    g0 = g1;
    g1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (g0 != 1) throw MathError("exponent denominator is not invertible mod p");
  __int128 r = s0 % m;
  if (r < 0) r += m;
  return static_cast<long long>(r);
}

}  // namespace

LocalElement zp_power(const LocalElement& u, Rational a) {
  if (!is_one_unit(u)) throw MathError("zp_power needs a 1-unit");
  const Field& F = *u.place().residue_field();
  const long long p = F.characteristic();
  if (a.denominator() % p == 0) throw MathError("p divides the denominator of the exponent");
  const long n = u.precision();
  if (a.denominator() == 1 && a.numerator() >= 0 && a.numerator() < p) return u.pow(a.numerator());
  // u^(p^L) = 1 mod pi^(p^L), so only a mod p^L matters once p^L >= n.
  long long m = p;
  while (m < n) m *= p;
  const __int128 num = ((static_cast<__int128>(a.numerator()) % m) + m) % m;
  long long e = static_cast<long long>(num * modinv(a.denominator(), m) % m);
  LocalElement result = LocalElement::constant(u.place(), 1, n);
  LocalElement pw = u;
  while (e > 0) {
    const long long digit = e % p;
    if (digit) result = result * pw.pow(digit);
    e /= p;
    if (e) pw = pw.frobenius().truncated(n);
  }
  return result;
}

bool pth_power_test(const LocalElement& u, int N) {
  if (!is_one_unit(u)) throw MathError("pth_power_test needs a 1-unit");
  if (N <= 0) return true;
  long long k = 1;
  const long long p = u.place().residue_field()->characteristic();
  for (int i = 0; i < N; ++i) k *= p;
  long first = -1;
  for (long e = 1; e < u.precision(); ++e) {
    if (u.coeff(e) == 0) continue;
    if (e % k != 0) return false;
    if (first < 0) first = e;
  }
  if (first < 0) return true;
  if (u.precision() <= k * first) {
    throw PrecisionError("too few digits to decide p^N-th power", u.precision());
  }
  return true;
}

}  // namespace charp
