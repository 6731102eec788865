#pragma once

// Finite fields F_q of odd characteristic.
//
// Elements are plain 32-bit codes interpreted by a Field object. For the
// prime field the code is the residue in [0, p). For an extension L = B[X]/(m)
// of a base field B of order b, the code of sum_i c_i X^i is sum_i code(c_i) b^i.
// Extensions may be stacked, which is how residue fields of places of F_q(t)
// of degree > 1 are realized.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace charp {

using Elem = uint32_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field : public std::enable_shared_from_this<Field> {
 public:
  static FieldPtr prime(uint32_t p);
  /// base[X]/(modulus); modulus is monic (leading code 1), coefficients in base,
  /// degree >= 2. Irreducibility is the caller's responsibility; see FieldSpec.
  static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus);

  uint32_t characteristic() const { return p_; }
  uint64_t order() const { return order_; }
  /// Degree over the immediate base (1 for a prime field).
  int degree() const { return deg_; }
  /// Degree over F_p.
  int absolute_degree() const { return absdeg_; }
  bool is_prime() const { return base_ == nullptr; }
  const FieldPtr& base() const { return base_; }
  const std::vector<Elem>& modulus() const { return modulus_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// Class of X in base[X]/(modulus). Prime fields have no generator.
  Elem generator() const;
  Elem from_int(long long v) const;
  /// Embeds an element of the immediate base field.
  Elem from_base(Elem b) const { return b; }

  Elem add(Elem a, Elem b) const {
    if (!base_) {
      const uint32_t s = a + b;
      return s >= p_ ? s - p_ : s;
    }
    return add_ext(a, b);
  }
  Elem neg(Elem a) const {
    if (!base_) return a == 0 ? 0 : p_ - a;
    return neg_ext(a);
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (!base_) return static_cast<Elem>(static_cast<uint64_t>(a) * b % p_);
    if (a == 0 || b == 0) return 0;
    if (!log_.empty()) {
      uint32_t s = log_[a] + log_[b];
      if (s >= order_ - 1) s -= static_cast<uint32_t>(order_ - 1);
      return exp_[s];
    }
    return mul_slow(a, b);
  }
  /// Throws MathError on zero.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, uint64_t e) const;
  /// a^p.
  Elem frobenius(Elem a) const;
  /// The unique b with b^p = a.
  Elem frobenius_inverse(Elem a) const;
  bool is_square(Elem a) const;

  /// Coefficients of a over the immediate base, low degree first.
  std::vector<Elem> digits(Elem a) const;
  Elem from_digits(const std::vector<Elem>& d) const;

  Elem random(std::mt19937_64& rng) const;

  /// Symmetric integer representative for prime fields: value in (-p/2, p/2].
  long long signed_value(Elem a) const;

 private:
  Field() = default;
  Elem add_ext(Elem a, Elem b) const;
  Elem neg_ext(Elem a) const;
  Elem mul_slow(Elem a, Elem b) const;
  void build_tables();

  uint32_t p_ = 0;
  uint64_t order_ = 0;
  uint64_t base_order_ = 0;
  int deg_ = 1;
  int absdeg_ = 1;
  FieldPtr base_;
  std::vector<Elem> modulus_;
  std::vector<uint32_t> log_;
  std::vector<Elem> exp_;
};

bool is_prime_number(uint64_t n);

/// User-facing description of F_q: p, n and (when n > 1) a monic modulus of
/// degree n over F_p given low-degree-first.
struct FieldSpec {
  uint32_t p = 3;
  int n = 1;
  std::vector<uint32_t> modulus;

  /// Validates (p odd prime, modulus irreducible of degree n) and builds F_q.
  FieldPtr build() const;
};

}  // namespace charp
