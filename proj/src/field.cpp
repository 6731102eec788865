#include "charp/field.hpp"

#include "charp/errors.hpp"

#include <algorithm>

namespace charp {

namespace {

constexpr uint64_t kTableLimit = uint64_t{1} << 20;

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

bool is_prime_number(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldPtr Field::prime(uint32_t p) {
  if (p < 3 || !is_prime_number(p)) {
    throw MathError("characteristic must be an odd prime, got " + std::to_string(p));
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = p;
  f->order_ = p;
  f->base_order_ = 1;
  return f;
}

FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus) {
  if (!base) throw MathError("extension of a null field");
  if (modulus.size() < 3 || modulus.back() != 1) {
    throw MathError("extension modulus must be monic of degree >= 2");
  }
  const int d = static_cast<int>(modulus.size()) - 1;
  long double ord = 1;
  for (int i = 0; i < d; ++i) ord *= static_cast<long double>(base->order());
  if (ord >= static_cast<long double>(uint64_t{1} << 31)) {
    throw MathError("field order too large (must stay below 2^31)");
  }
  std::shared_ptr<Field> f(new Field());
  f->p_ = base->characteristic();
  f->base_ = std::move(base);
  f->base_order_ = f->base_->order();
  f->deg_ = d;
  f->absdeg_ = d * f->base_->absolute_degree();
  f->order_ = static_cast<uint64_t>(ord);
  f->modulus_ = std::move(modulus);
  if (f->order_ <= kTableLimit) f->build_tables();
  return f;
}

Elem Field::generator() const {
  if (!base_) throw MathError("prime field has no extension generator");
  return static_cast<Elem>(base_order_);
}

Elem Field::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::vector<Elem> Field::digits(Elem a) const {
  std::vector<Elem> d(deg_, 0);
  if (!base_) {
    d[0] = a;
    return d;
  }
  for (int i = 0; i < deg_; ++i) {
    d[i] = static_cast<Elem>(a % base_order_);
    a = static_cast<Elem>(a / base_order_);
  }
  return d;
}

Elem Field::from_digits(const std::vector<Elem>& d) const {
  if (!base_) return d.empty() ? 0 : d[0];
  uint64_t code = 0;
  for (int i = std::min<int>(deg_, static_cast<int>(d.size())) - 1; i >= 0; --i) {
    code = code * base_order_ + d[i];
  }
  return static_cast<Elem>(code);
}

Elem Field::add_ext(Elem a, Elem b) const {
  uint64_t code = 0, scale = 1;
  for (int i = 0; i < deg_; ++i) {
    const Elem da = static_cast<Elem>(a % base_order_);
    const Elem db = static_cast<Elem>(b % base_order_);
    a = static_cast<Elem>(a / base_order_);
    b = static_cast<Elem>(b / base_order_);
    code += scale * base_->add(da, db);
    scale *= base_order_;
  }
  return static_cast<Elem>(code);
}

Elem Field::neg_ext(Elem a) const {
  uint64_t code = 0, scale = 1;
  for (int i = 0; i < deg_; ++i) {
    code += scale * base_->neg(static_cast<Elem>(a % base_order_));
    a = static_cast<Elem>(a / base_order_);
    scale *= base_order_;
  }
  return static_cast<Elem>(code);
}

Elem Field::mul_slow(Elem a, Elem b) const {
  const auto da = digits(a);
  const auto db = digits(b);
  std::vector<Elem> prod(2 * deg_ - 1, 0);
  for (int i = 0; i < deg_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < deg_; ++j) {
      prod[i + j] = base_->add(prod[i + j], base_->mul(da[i], db[j]));
    }
  }
  // modulus is monic: X^d = -sum_{i<d} m_i X^i
  for (int k = 2 * deg_ - 2; k >= deg_; --k) {
    const Elem c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (int i = 0; i < deg_; ++i) {
      prod[k - deg_ + i] = base_->sub(prod[k - deg_ + i], base_->mul(c, modulus_[i]));
    }
  }
  prod.resize(deg_);
  return from_digits(prod);
}

void Field::build_tables() {
  const uint64_t q1 = order_ - 1;
  const auto factors = prime_factors(q1);
  auto slow_pow = [&](Elem a, uint64_t e) {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul_slow(r, a);
      a = mul_slow(a, a);
      e >>= 1;
    }
    return r;
  };
  Elem g = 0;
  for (Elem cand = 2; cand < order_; ++cand) {
    bool primitive = true;
    for (uint64_t l : factors) {
      if (slow_pow(cand, q1 / l) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw MathError("extension modulus is not irreducible");
  log_.assign(order_, 0);
  exp_.assign(q1, 0);
  Elem x = 1;
  for (uint64_t i = 0; i < q1; ++i) {
    exp_[i] = x;
    log_[x] = static_cast<uint32_t>(i);
    x = mul_slow(x, g);
  }
  if (x != 1) throw MathError("extension modulus is not irreducible");
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw MathError("inverse of zero in F_q");
  if (!base_) {
    // extended Euclid on integers
    long long t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      const long long q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  if (!log_.empty()) {
    const uint32_t l = log_[a];
    return exp_[l == 0 ? 0 : static_cast<uint32_t>(order_ - 1 - l)];
  }
  return pow(a, order_ - 2);
}

Elem Field::pow(Elem a, uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Elem Field::frobenius(Elem a) const {
  if (!base_) return a;
  return pow(a, p_);
}

Elem Field::frobenius_inverse(Elem a) const {
  if (!base_) return a;
  return pow(a, order_ / p_);
}

bool Field::is_square(Elem a) const {
  return a == 0 || pow(a, (order_ - 1) / 2) == 1;
}

Elem Field::random(std::mt19937_64& rng) const {
  std::uniform_int_distribution<uint64_t> dist(0, order_ - 1);
  return static_cast<Elem>(dist(rng));
}

long long Field::signed_value(Elem a) const {
  const long long v = static_cast<long long>(a);
  return v > static_cast<long long>(p_ / 2) ? v - p_ : v;
}

}  // namespace charp
