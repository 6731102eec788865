#pragma once

#include "charp/poly.hpp"

#include <limits>
#include <mutex>
#include <memory>
#include <string>
#include <vector>

namespace charp {

/// Element of k = F_q(t), kept reduced with a monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const FieldPtr& f) : n_(f), d_(Poly::constant(f, 1)) {}
  explicit RatFunc(Poly num);
  RatFunc(Poly num, Poly den);

  static RatFunc constant(const FieldPtr& f, long long v);
  static RatFunc var(const FieldPtr& f) { return RatFunc(Poly::var(f)); }

  const Poly& num() const { return n_; }
  const Poly& den() const { return d_; }
  const FieldPtr& field() const { return n_.field(); }

  bool is_zero() const { return n_.is_zero(); }
  bool is_one() const { return n_.is_one() && d_.is_one(); }
  bool is_polynomial() const { return d_.is_one(); }
  bool is_constant() const { return d_.is_one() && n_.is_constant(); }

  RatFunc operator-() const { return RatFunc(-n_, d_, Reduced{}); }
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator-=(const RatFunc& b) { return *this = *this - b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  RatFunc& operator/=(const RatFunc& b) { return *this = *this / b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.n_ == b.n_ && a.d_ == b.d_;
  }

  /// Throws MathError on zero.
  RatFunc inverse() const;
  RatFunc pow(long long e) const;
  /// x^p.
  RatFunc frobenius() const;

  // Coefficient-domain interface shared with LocalInteger.
  RatFunc zero_like() const { return RatFunc(field()); }
  RatFunc one_like() const { return constant(field(), 1); }
  RatFunc int_like(long long v) const { return constant(field(), v); }
  bool is_unit() const { return !is_zero(); }

 private:
  struct Reduced {};
  RatFunc(Poly num, Poly den, Reduced) : n_(std::move(num)), d_(std::move(den)) {}
  Poly n_, d_;
};

inline uint32_t characteristic(const RatFunc& x) { return x.field()->characteristic(); }

constexpr int kInfiniteOrd = std::numeric_limits<int>::max();

/// A place of F_q(t): a monic irreducible polynomial or the infinite place.
class Place {
  struct Data {
    bool infinite = false;
    int degree = 1;
    FieldPtr field;
    FieldPtr residue;
    Poly pi;
    Elem theta = 0;
    mutable std::vector<Elem> t_cache;
    mutable std::mutex mu;
  };

 public:
  Place() = default;
  static Place infinity(const FieldPtr& f);
  /// Validates that pi is monic and irreducible.
  static Place finite(const Poly& pi);

  bool is_infinity() const { return d_->infinite; }
  bool is_finite() const { return !d_->infinite; }
  /// Uniformizer polynomial of a finite place.
  const Poly& poly() const { return d_->pi; }
  /// deg pi for finite places, 1 at infinity.
  int degree() const { return d_->degree; }
  const FieldPtr& field() const { return d_->field; }
  /// F_q for infinity and degree-one places, F_q[X]/(pi) otherwise.
  const FieldPtr& residue_field() const { return d_->residue; }
  /// Class of t in the residue field (finite places).
  Elem theta() const { return d_->theta; }
  /// "inf", or the text of pi.
  std::string name() const;

  /// f mod pi as a residue-field element (finite places).
  Elem reduce(const Poly& f) const;
  /// Coefficients c_0..c_{n-1} with t = sum c_i pi^i in F_{q^d}[[pi]].
  std::vector<Elem> t_expansion(int n) const;

  friend bool operator==(const Place& a, const Place& b);
  friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }

 private:
  std::shared_ptr<const Data> d_;
};

/// Valuation at a place; kInfiniteOrd for zero. ord_inf = deg(den) - deg(num).
int ord_at(const RatFunc& x, const Place& v);
int ord_at(const Poly& x, const Place& v);

}  // namespace charp
