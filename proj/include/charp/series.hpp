#pragma once

// Truncated Laurent series in one variable z over a coefficient domain C.
//
// C must provide +, -, *, unary -, inverse(), is_zero(), is_unit(),
// zero_like(), one_like(), int_like(long long) and frobenius() (x -> x^p).
// RatFunc and LocalInteger are the two domains in use.
//
// A series is c_0 z^val + c_1 z^(val+1) + ... + O(z^prec) with c_0 nonzero.
// A zero series is just O(z^prec). Precision is tracked pessimistically by
// every operation.

#include "charp/errors.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace charp {

template <class C>
class Series {
 public:
  Series() = default;

  static Series zero(const C& proto, long prec) {
    Series s;
    s.zero_ = proto.zero_like();
    s.val_ = prec;
    return s;
  }
  /// sum c[i] z^(val+i) + O(z^(val + c.size())).
  static Series from_coeffs(const C& proto, long val, std::vector<C> c) {
    Series s;
    s.zero_ = proto.zero_like();
    s.val_ = val;
    s.c_ = std::move(c);
    s.normalize();
    return s;
  }
  /// c z^e + O(z^prec).
  static Series monomial(const C& c, long e, long prec) {
    if (prec <= e) return zero(c, prec);
    std::vector<C> v(prec - e, c.zero_like());
    v[0] = c;
    return from_coeffs(c, e, std::move(v));
  }
  static Series variable(const C& proto, long prec) { return monomial(proto.one_like(), 1, prec); }
  static Series constant(const C& c, long prec) { return monomial(c, 0, prec); }

  long valuation() const { return val_; }
  long precision() const { return val_ + static_cast<long>(c_.size()); }
  long relative_precision() const { return static_cast<long>(c_.size()); }
  bool is_zero() const { return c_.empty(); }
  const C& zero_coeff() const { return zero_; }
  const std::vector<C>& coeffs() const { return c_; }
  const C& lead() const { return c_.empty() ? zero_ : c_[0]; }

  /// Coefficient of z^e; throws PrecisionError beyond the precision.
  C coeff(long e) const {
    if (e >= precision()) throw PrecisionError("series coefficient beyond precision", precision());
    if (e < val_) return zero_;
    return c_[e - val_];
  }

  Series operator-() const {
    Series r = *this;
    for (C& x : r.c_) x = -x;
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) { return a.add(b, false); }
  friend Series operator-(const Series& a, const Series& b) { return a.add(b, true); }

  friend Series operator*(const Series& a, const Series& b) {
    if (a.is_zero() || b.is_zero()) {
      return zero(a.zero_, std::min(a.precision() + b.val_, b.precision() + a.val_));
    }
    const size_t n = std::min(a.c_.size(), b.c_.size());
    std::vector<C> out(n, a.zero_);
    for (size_t i = 0; i < n; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; i + j < n; ++j) {
        if (b.c_[j].is_zero()) continue;
        out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return from_coeffs(a.zero_, a.val_ + b.val_, std::move(out));
  }

  friend Series operator*(const Series& a, const C& c) {
    if (c.is_zero()) return zero(a.zero_, a.precision());
    Series r = a;
    for (C& x : r.c_) x = x * c;
    r.normalize();
    return r;
  }
  friend Series operator*(const C& c, const Series& a) { return a * c; }
  friend Series operator/(const Series& a, const Series& b) { return a * b.inverse(); }

  Series& operator+=(const Series& b) { return *this = *this + b; }
  Series& operator-=(const Series& b) { return *this = *this - b; }
  Series& operator*=(const Series& b) { return *this = *this * b; }

  /// Adds the constant c (exactly known).
  Series plus_constant(const C& c) const {
    if (c.is_zero()) return *this;
    if (precision() <= 0) return *this;
    return *this + monomial(c, 0, precision());
  }

  /// Requires a unit leading coefficient.
  Series inverse() const {
    if (is_zero() || !c_[0].is_unit()) {
      throw MathError("series inverse needs a unit leading coefficient");
    }
    const size_t n = c_.size();
    std::vector<C> b(n, zero_);
    const C i0 = c_[0].inverse();
    b[0] = i0;
    for (size_t k = 1; k < n; ++k) {
      C acc = zero_;
      for (size_t i = 1; i <= k; ++i) {
        if (!c_[i].is_zero() && !b[k - i].is_zero()) acc = acc + c_[i] * b[k - i];
      }
      b[k] = -(acc * i0);
    }
    return from_coeffs(zero_, -val_, std::move(b));
  }

  Series pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Series result = constant(zero_.one_like(), relative_precision());
    if (e == 0) return result;
    Series base = *this;
    bool first = true;
    while (e > 0) {
      if (e & 1) {
        result = first ? base : result * base;
        first = false;
      }
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// f(h) for h with positive valuation.
  Series compose(const Series& h) const {
    const long vh = h.val_;
    if (h.is_zero() || vh < 1) throw MathError("composition needs an inner series of positive valuation");
    const long nf = precision();
    if (is_zero()) return zero(zero_, nf * vh);
    const long vf = val_;
    const long e = vf != 0 ? vf : 1;
    const long P = std::min(nf * vh, h.precision() + (e - 1) * vh);
    const long R = P - vf * vh;
    if (R <= 0) return zero(zero_, P);
    const long terms = std::min<long>(static_cast<long>(c_.size()), (R + vh - 1) / vh);
    const Series ht = h.truncated(R + vh);
    Series acc = constant(c_[terms - 1], R);
    for (long i = terms - 2; i >= 0; --i) {
      acc = (acc * ht).truncated(R).plus_constant(c_[i]);
    }
    acc = acc.extended(R);
    if (vf != 0) acc = acc * h.pow(vf);
    return acc.truncated(P);
  }

  /// Compositional inverse of a series z*(unit) + ...; same precision.
  Series reverse() const {
    if (val_ != 1 || !c_[0].is_unit()) {
      throw MathError("reversion needs valuation 1 and a unit leading coefficient");
    }
    const long N = precision();
    const C one = zero_.one_like();
    Series h = monomial(c_[0].inverse(), 1, std::min(2L, N));
    long len = 2;
    while (len < N) {
      len = std::min(2 * len, N);
      const Series g = truncated(len);
      const Series hx = h.extended(len);
      const Series r = g.compose(hx) - variable(zero_, len);
      const Series d = g.derivative().compose(hx);
      h = (hx - r / d).truncated(len);
    }
    return h.truncated(N);
  }

  /// Coefficientwise p-th powers.
  Series frobenius() const {
    Series r = *this;
    for (C& x : r.c_) x = x.frobenius();
    r.normalize();
    return r;
  }

  /// z -> z^k.
  Series inflate(long k) const {
    if (k == 1) return *this;
    std::vector<C> out(c_.size() * k, zero_);
    for (size_t i = 0; i < c_.size(); ++i) out[i * k] = c_[i];
    if (is_zero()) return zero(zero_, val_ * k);
    return from_coeffs(zero_, val_ * k, std::move(out));
  }

  /// g with this = g(z^k); throws MathError naming the first exponent not
  /// divisible by k.
  Series deflate(long k) const {
    if (k == 1) return *this;
    const long prec = precision();
    const long newprec = prec >= 0 ? (prec + k - 1) / k : -((-prec) / k);
    for (size_t i = 0; i < c_.size(); ++i) {
      const long e = val_ + static_cast<long>(i);
      if (!c_[i].is_zero() && e % k != 0) {
        throw MathError("series has a term at exponent " + std::to_string(e) +
                        ", not divisible by " + std::to_string(k));
      }
    }
    if (is_zero()) return zero(zero_, newprec);
    const long newval = val_ / k;
    std::vector<C> out;
    for (long j = newval; j < newprec; ++j) out.push_back(coeff(j * k));
    return from_coeffs(zero_, newval, std::move(out));
  }

  Series derivative() const {
    const long prec = precision() - 1;
    std::vector<C> out;
    const long lo = val_ - 1;
    for (long e = lo; e < prec; ++e) {
      const C c = coeff(e + 1);
      out.push_back(c.is_zero() ? zero_ : c * zero_.int_like(e + 1));
    }
    return from_coeffs(zero_, lo, std::move(out));
  }

  Series truncated(long prec) const {
    if (prec >= precision()) return *this;
    if (prec <= val_) return zero(zero_, prec);
    Series r = *this;
    r.c_.resize(prec - val_);
    return r;
  }

  /// Declares the missing coefficients up to prec to be exactly zero.
  Series extended(long prec) const {
    if (prec <= precision()) return *this;
    if (is_zero()) return zero(zero_, prec);
    Series r = *this;
    r.c_.resize(prec - val_, zero_);
    return r;
  }

  /// Multiply by z^k.
  Series shifted(long k) const {
    Series r = *this;
    r.val_ += k;
    return r;
  }

  /// Applies f to each coefficient, producing a series over another domain.
  template <class D, class F>
  Series<D> map(const D& proto, F&& f) const {
    std::vector<D> out;
    out.reserve(c_.size());
    for (const C& x : c_) out.push_back(x.is_zero() ? proto.zero_like() : f(x));
    if (is_zero()) return Series<D>::zero(proto, val_);
    return Series<D>::from_coeffs(proto, val_, std::move(out));
  }

  /// Lowest exponent where a and b differ, or their joint precision.
  friend long first_difference(const Series& a, const Series& b) {
    const long joint = std::min(a.precision(), b.precision());
    for (long e = std::min(a.val_, b.val_); e < joint; ++e) {
      if (!(a.coeff(e) - b.coeff(e)).is_zero()) return e;
    }
    return joint;
  }

 private:
  void normalize() {
    size_t k = 0;
    while (k < c_.size() && c_[k].is_zero()) ++k;
    if (k == 0) return;
    val_ += static_cast<long>(k);
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(k));
  }

  Series add(const Series& b, bool negate) const {
    const long prec = std::min(precision(), b.precision());
    const long lo = std::min(val_, b.val_);
    if (prec <= lo) return zero(zero_, prec);
    std::vector<C> out(prec - lo, zero_);
    for (size_t i = 0; i < c_.size() && val_ + static_cast<long>(i) < prec; ++i) {
      out[val_ - lo + i] = c_[i];
    }
    for (size_t i = 0; i < b.c_.size() && b.val_ + static_cast<long>(i) < prec; ++i) {
      C& t = out[b.val_ - lo + i];
      t = negate ? t - b.c_[i] : t + b.c_[i];
    }
    return from_coeffs(zero_, lo, std::move(out));
  }

  C zero_;
  long val_ = 0;
  std::vector<C> c_;
};

/// Power series in z1, z2 truncated by total degree < prec (exact otherwise).
template <class C>
class BiSeries {
 public:
  BiSeries() = default;
  BiSeries(const C& proto, int prec) : zero_(proto.zero_like()), prec_(prec) {
    c_.assign(static_cast<size_t>(prec) * prec, zero_);
  }
  static BiSeries constant(const C& c, int prec) {
    BiSeries r(c, prec);
    if (prec > 0) r.at(0, 0) = c;
    return r;
  }
  static BiSeries z1(const C& proto, int prec) {
    BiSeries r(proto, prec);
    if (prec > 1) r.at(1, 0) = proto.one_like();
    return r;
  }
  static BiSeries z2(const C& proto, int prec) {
    BiSeries r(proto, prec);
    if (prec > 1) r.at(0, 1) = proto.one_like();
    return r;
  }

  int precision() const { return prec_; }
  /// Coefficient of z1^i z2^j, i + j < precision().
  const C& coeff(int i, int j) const { return c_[static_cast<size_t>(i) * prec_ + j]; }
  C& at(int i, int j) { return c_[static_cast<size_t>(i) * prec_ + j]; }

  BiSeries operator-() const {
    BiSeries r = *this;
    for (C& x : r.c_) x = -x;
    return r;
  }
  friend BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    BiSeries r = a;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] + b.c_[k];
    return r;
  }
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b) {
    BiSeries r = a;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] - b.c_[k];
    return r;
  }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b) {
    const int n = a.prec_;
    BiSeries r(a.zero_, n);
    for (int i1 = 0; i1 < n; ++i1) {
      for (int j1 = 0; i1 + j1 < n; ++j1) {
        const C& x = a.coeff(i1, j1);
        if (x.is_zero()) continue;
        for (int i2 = 0; i1 + j1 + i2 < n; ++i2) {
          for (int j2 = 0; i1 + j1 + i2 + j2 < n; ++j2) {
            const C& y = b.coeff(i2, j2);
            if (!y.is_zero()) r.at(i1 + i2, j1 + j2) = r.coeff(i1 + i2, j1 + j2) + x * y;
          }
        }
      }
    }
    return r;
  }
  friend BiSeries operator*(const BiSeries& a, const C& c) {
    BiSeries r = a;
    for (C& x : r.c_) x = x * c;
    return r;
  }

  /// Requires a unit constant term.
  BiSeries inverse() const {
    const C& c0 = coeff(0, 0);
    if (!c0.is_unit()) throw MathError("bivariate inverse needs a unit constant term");
    const C i0 = c0.inverse();
    // 1/(c0 (1 + r)) = i0 * sum (-r)^k, r without constant term
    BiSeries r = *this * i0;
    r.at(0, 0) = zero_;
    const BiSeries minus_r = -r;
    BiSeries sum = constant(zero_.one_like(), prec_);
    BiSeries term = sum;
    for (int k = 1; k < prec_; ++k) {
      term = term * minus_r;
      sum = sum + term;
    }
    return sum * i0;
  }
  friend BiSeries operator/(const BiSeries& a, const BiSeries& b) { return a * b.inverse(); }

  /// Restriction z2 = 0 as a univariate series in z1.
  Series<C> at_z2_zero() const {
    std::vector<C> v;
    for (int i = 0; i < prec_; ++i) v.push_back(coeff(i, 0));
    return Series<C>::from_coeffs(zero_, 0, std::move(v));
  }

  friend bool operator==(const BiSeries& a, const BiSeries& b) {
    if (a.prec_ != b.prec_) return false;
    for (int i = 0; i < a.prec_; ++i) {
      for (int j = 0; i + j < a.prec_; ++j) {
        if (!(a.coeff(i, j) - b.coeff(i, j)).is_zero()) return false;
      }
    }
    return true;
  }

 private:
  C zero_;
  int prec_ = 0;
  std::vector<C> c_;
};

}  // namespace charp
