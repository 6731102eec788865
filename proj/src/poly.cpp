#include "charp/poly.hpp"

#include "charp/errors.hpp"
#include "charp/kernels.hpp"

#include <algorithm>

namespace charp {

namespace {

const FieldPtr& pick_field(const Poly& a, const Poly& b) {
  if (a.field()) return a.field();
  if (b.field()) return b.field();
  throw InternalError("polynomial without a field");
}

}  // namespace

Poly::Poly(FieldPtr f, std::vector<Elem> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FieldPtr& f, Elem c) { return Poly(f, {c}); }

Poly Poly::monomial(const FieldPtr& f, Elem c, int degree) {
  std::vector<Elem> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(f, std::move(v));
}

Poly Poly::operator-() const {
  Poly r(f_);
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->neg(c_[i]);
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  const FieldPtr& f = pick_field(a, b);
  const auto& big = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
  const auto& small = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
  Poly r(f);
  r.c_ = big;
  for (std::size_t i = 0; i < small.size(); ++i) r.c_[i] = f->add(r.c_[i], small[i]);
  r.trim();
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  const FieldPtr& f = pick_field(a, b);
  Poly r(f);
  if (a.c_.empty() || b.c_.empty()) return r;
  const std::size_t n = a.c_.size() + b.c_.size() - 1;
  r.c_.assign(n, 0);
  if (f->is_prime()) {
    kernels::convolve_mod(a.c_, b.c_, r.c_, f->characteristic());
  } else {
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r.c_[i + j] = f->add(r.c_[i + j], f->mul(a.c_[i], b.c_[j]));
      }
    }
  }
  r.trim();
  return r;
}

Poly Poly::scaled(Elem c) const {
  Poly r(f_);
  if (c == 0) return r;
  r.c_.resize(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = f_->mul(c_[i], c);
  return r;
}

Poly Poly::shifted(int k) const {
  if (c_.empty()) return *this;
  Poly r(f_);
  r.c_.assign(static_cast<std::size_t>(k), 0);
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw MathError("polynomial division by zero");
  const FieldPtr& f = pick_field(a, b);
  if (a.degree() < b.degree()) return {Poly(f), a};
  std::vector<Elem> rem = a.c_;
  const int db = b.degree();
  std::vector<Elem> quo(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  const Elem il = f->inv(b.lead());
  const bool prime = f->is_prime();
  const uint32_t p = f->characteristic();
  for (int k = a.degree(); k >= db; --k) {
    const Elem c = f->mul(rem[k], il);
    if (c == 0) continue;
    const int d = k - db;
    quo[d] = c;
    if (prime) {
      std::span<uint32_t> y(rem.data() + d, static_cast<std::size_t>(db) + 1);
      kernels::axpy_mod(f->neg(c), b.c_, y, p);
    } else {
      for (int i = 0; i <= db; ++i) rem[d + i] = f->sub(rem[d + i], f->mul(c, b.c_[i]));
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly Poly::monic() const {
  if (c_.empty() || c_.back() == 1) return *this;
  return scaled(f_->inv(c_.back()));
}

Poly Poly::derivative() const {
  Poly r(f_);
  if (c_.size() <= 1) return r;
  r.c_.resize(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) {
    r.c_[i - 1] = f_->mul(c_[i], f_->from_int(static_cast<long long>(i)));
  }
  r.trim();
  return r;
}

Elem Poly::eval(Elem x) const {
  Elem r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = f_->add(f_->mul(r, x), *it);
  return r;
}

Poly Poly::pow(uint64_t e) const {
  Poly r = constant(f_, 1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Poly Poly::powmod(uint64_t e, const Poly& m) const {
  Poly r = constant(f_, 1) % m, b = *this % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

Poly Poly::frobenius() const {
  if (c_.empty()) return *this;
  const uint32_t p = f_->characteristic();
  std::vector<Elem> v(static_cast<std::size_t>(degree()) * p + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) v[i * p] = f_->frobenius(c_[i]);
  return Poly(f_, std::move(v));
}

Poly Poly::frobenius_root() const {
  if (c_.empty()) return *this;
  const uint32_t p = f_->characteristic();
  std::vector<Elem> v(static_cast<std::size_t>(degree()) / p + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (i % p != 0) throw MathError("polynomial is not a p-th power");
    v[i / p] = f_->frobenius_inverse(c_[i]);
  }
  return Poly(f_, std::move(v));
}

Poly Poly::reversed(int n) const {
  std::vector<Elem> v(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < c_.size() && static_cast<int>(i) < n; ++i) {
    v[static_cast<std::size_t>(n) - 1 - i] = c_[i];
  }
  return Poly(f_, std::move(v));
}

std::pair<int, Poly> Poly::strip_factor(const Poly& pi) const {
  if (is_zero()) throw MathError("valuation of zero polynomial");
  int k = 0;
  Poly cur = *this;
  for (;;) {
    auto [q, r] = divmod(cur, pi);
    if (!r.is_zero()) break;
    cur = std::move(q);
    ++k;
  }
  return {k, cur};
}

Poly Poly::random(const FieldPtr& f, int degree, std::mt19937_64& rng, bool monic) {
  std::vector<Elem> v(static_cast<std::size_t>(degree) + 1);
  for (auto& c : v) c = f->random(rng);
  if (monic) {
    v.back() = 1;
  } else if (v.back() == 0) {
    v.back() = 1 + static_cast<Elem>(rng() % (f->order() - 1));
  }
  return Poly(f, std::move(v));
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

XgcdResult xgcd(const Poly& a, const Poly& b) {
  const FieldPtr& f = a.field() ? a.field() : b.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f, 1), s1(f);
  Poly t0(f), t1 = Poly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = Poly::divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Poly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Elem il = f->inv(r0.lead());
  return {r0.scaled(il), s0.scaled(il), t0.scaled(il)};
}

Poly invmod(const Poly& a, const Poly& m) {
  auto res = xgcd(a % m, m);
  if (!res.g.is_one()) throw MathError("polynomial not invertible modulo m");
  return res.s % m;
}

}  // namespace charp
