#include "charp/ratfunc.hpp"

#include "charp/errors.hpp"
#include "charp/factor.hpp"

namespace charp {

RatFunc::RatFunc(Poly num) : n_(std::move(num)), d_(Poly::constant(n_.field(), 1)) {}

RatFunc::RatFunc(Poly num, Poly den) {
  if (den.is_zero()) throw MathError("rational function with zero denominator");
  const FieldPtr f = den.field() ? den.field() : num.field();
  if (num.is_zero()) {
    n_ = Poly(f);
    d_ = Poly::constant(f, 1);
    return;
  }
  Poly g = gcd(num, den);
  if (!g.is_one()) {
    num = num / g;
    den = den / g;
  }
  const Elem il = f->inv(den.lead());
  n_ = num.scaled(il);
  d_ = den.scaled(il);
}

RatFunc RatFunc::constant(const FieldPtr& f, long long v) {
  return RatFunc(Poly::constant(f, f->from_int(v)));
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.d_ == b.d_) {
    if (a.d_.is_one()) return RatFunc(a.n_ + b.n_, a.d_, RatFunc::Reduced{});
    return RatFunc(a.n_ + b.n_, a.d_);
  }
  if (a.d_.is_one()) return RatFunc(a.n_ * b.d_ + b.n_, b.d_, RatFunc::Reduced{});
  if (b.d_.is_one()) return RatFunc(a.n_ + b.n_ * a.d_, a.d_, RatFunc::Reduced{});
  const Poly g = gcd(a.d_, b.d_);
  if (g.is_one()) {
    return RatFunc(a.n_ * b.d_ + b.n_ * a.d_, a.d_ * b.d_, RatFunc::Reduced{});
  }
  const Poly ad = a.d_ / g;
  const Poly bd = b.d_ / g;
  Poly num = a.n_ * bd + b.n_ * ad;
  Poly den = ad * b.d_;
  if (num.is_zero()) return RatFunc(a.field());
  const Poly g2 = gcd(num, g);
  if (!g2.is_one()) {
    num = num / g2;
    den = den / g2;
  }
  return RatFunc(std::move(num), std::move(den), RatFunc::Reduced{});
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(a.field() ? a.field() : b.field());
  if (a.d_.is_one() && b.d_.is_one()) {
    return RatFunc(a.n_ * b.n_, a.d_, RatFunc::Reduced{});
  }
  const Poly g1 = gcd(a.n_, b.d_);
  const Poly g2 = gcd(b.n_, a.d_);
  Poly n1 = g1.is_one() ? a.n_ : a.n_ / g1;
  Poly d2 = g1.is_one() ? b.d_ : b.d_ / g1;
  Poly n2 = g2.is_one() ? b.n_ : b.n_ / g2;
  Poly d1 = g2.is_one() ? a.d_ : a.d_ / g2;
  Poly num = n1 * n2;
  Poly den = d1 * d2;
  // monic denominators stay monic; gcd divisions keep them monic too
  return RatFunc(std::move(num), std::move(den), RatFunc::Reduced{});
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw MathError("inverse of zero rational function");
  const Elem il = field()->inv(n_.lead());
  return RatFunc(d_.scaled(il), n_.scaled(il), Reduced{});
}

RatFunc RatFunc::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(n_.pow(static_cast<uint64_t>(e)), d_.pow(static_cast<uint64_t>(e)), Reduced{});
}

RatFunc RatFunc::frobenius() const {
  return RatFunc(n_.frobenius(), d_.frobenius(), Reduced{});
}

// ---------------------------------------------------------------------------

Place Place::infinity(const FieldPtr& f) {
  auto d = std::make_shared<Data>();
  d->infinite = true;
  d->degree = 1;
  d->field = f;
  d->residue = f;
  d->pi = Poly(f);
  Place pl;
  pl.d_ = std::move(d);
  return pl;
}

Place Place::finite(const Poly& pi) {
  if (!pi.is_monic() || pi.degree() < 1) {
    throw MathError("place polynomial must be monic of positive degree");
  }
  if (!is_irreducible(pi)) throw MathError("place polynomial is not irreducible");
  auto d = std::make_shared<Data>();
  d->infinite = false;
  d->degree = pi.degree();
  d->field = pi.field();
  d->pi = pi;
  if (pi.degree() == 1) {
    d->residue = pi.field();
    d->theta = pi.field()->neg(pi.coeff(0));
  } else {
    d->residue = Field::extension(pi.field(), pi.coeffs());
    d->theta = d->residue->generator();
  }
  Place pl;
  pl.d_ = std::move(d);
  return pl;
}

Elem Place::reduce(const Poly& f) const {
  if (d_->infinite) throw MathError("reduce() needs a finite place");
  if (d_->degree == 1) return f.eval(d_->theta);
  const Poly r = f % d_->pi;
  return d_->residue->from_digits(r.coeffs());
}

bool operator==(const Place& a, const Place& b) {
  if (a.d_ == b.d_) return true;
  if (!a.d_ || !b.d_) return false;
  if (a.d_->infinite != b.d_->infinite) return false;
  return a.d_->infinite || a.d_->pi == b.d_->pi;
}

int ord_at(const Poly& x, const Place& v) {
  if (x.is_zero()) return kInfiniteOrd;
  if (v.is_infinity()) return -x.degree();
  return x.strip_factor(v.poly()).first;
}

int ord_at(const RatFunc& x, const Place& v) {
  if (x.is_zero()) return kInfiniteOrd;
  return ord_at(x.num(), v) - ord_at(x.den(), v);
}

}  // namespace charp
