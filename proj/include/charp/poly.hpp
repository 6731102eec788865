#pragma once

#include "charp/field.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace charp {

/// Univariate polynomial over a finite field, low degree first, always trimmed.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr f) : f_(std::move(f)) {}
  Poly(FieldPtr f, std::vector<Elem> coeffs);

  static Poly constant(const FieldPtr& f, Elem c);
  static Poly monomial(const FieldPtr& f, Elem c, int degree);
  /// The variable t.
  static Poly var(const FieldPtr& f) { return monomial(f, 1, 1); }

  const FieldPtr& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem coeff(int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
  }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<Elem>& coeffs() const { return c_; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }
  Poly scaled(Elem c) const;
  /// Multiply by t^k.
  Poly shifted(int k) const;

  /// Euclidean division; throws MathError when b is zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  friend Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly monic() const;
  Poly derivative() const;
  Elem eval(Elem x) const;
  Poly pow(uint64_t e) const;
  Poly powmod(uint64_t e, const Poly& m) const;
  /// f^p, i.e. coefficientwise Frobenius and t -> t^p.
  Poly frobenius() const;
  /// Inverse of frobenius(); requires every exponent divisible by p.
  Poly frobenius_root() const;
  /// Coefficients of t^{n-1-i}: the polynomial t^n f(1/t) for n >= deg + 1.
  Poly reversed(int n) const;
  /// Largest k with pi^k | f (f nonzero), and f / pi^k.
  std::pair<int, Poly> strip_factor(const Poly& pi) const;

  static Poly random(const FieldPtr& f, int degree, std::mt19937_64& rng,
                     bool monic = false);

 private:
  void trim();
  FieldPtr f_;
  std::vector<Elem> c_;
};

/// Monic gcd (zero if both are zero).
Poly gcd(const Poly& a, const Poly& b);

/// Returns (g, s, t) with s*a + t*b = g, g monic.
struct XgcdResult {
  Poly g, s, t;
};
XgcdResult xgcd(const Poly& a, const Poly& b);

/// Inverse of a modulo m; throws MathError when not invertible.
Poly invmod(const Poly& a, const Poly& m);

}  // namespace charp
