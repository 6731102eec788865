#pragma once

// Completions k_v = F_v((pi_v)) of F_q(t), truncated.
//
// At a finite place of degree d the residue field F_v = F_q[X]/(pi_v) is a
// coefficient field of the completion and t maps to theta + Y(pi) with
// Y(0) = 0. At infinity the uniformizer is s = 1/t and F_v = F_q.

#include "charp/ratfunc.hpp"

#include <boost/rational.hpp>

#include <string>
#include <vector>

namespace charp {

using Rational = boost::rational<long long>;

/// Truncated power series over a residue field, as raw coefficient vectors.
namespace rs {
std::vector<Elem> mul(const Field& f, const std::vector<Elem>& a, const std::vector<Elem>& b,
                      size_t n);
/// a[0] must be nonzero.
std::vector<Elem> inverse(const Field& f, const std::vector<Elem>& a, size_t n);
}  // namespace rs

/// An element of k_v known modulo pi^precision.
class LocalElement {
 public:
  LocalElement() = default;
  /// The element known only to be 0 mod pi^prec.
  static LocalElement zero(const Place& v, long prec);
  /// pi^lead * (c_0 + c_1 pi + ...), precision lead + coeffs.size(). Leading
  /// zeros are stripped.
  static LocalElement from_coeffs(const Place& v, long lead, std::vector<Elem> coeffs);
  static LocalElement constant(const Place& v, Elem c, long prec);

  const Place& place() const { return v_; }
  bool is_zero() const { return c_.empty(); }
  /// Lead exponent; the precision for a zero element.
  long valuation() const { return lead_; }
  long precision() const { return lead_ + static_cast<long>(c_.size()); }
  long relative_precision() const { return static_cast<long>(c_.size()); }
  const std::vector<Elem>& unit_coeffs() const { return c_; }
  Elem lead_coeff() const { return c_.empty() ? 0 : c_[0]; }
  /// Coefficient of pi^e; throws PrecisionError when e >= precision().
  Elem coeff(long e) const;

  LocalElement operator-() const;
  friend LocalElement operator+(const LocalElement& a, const LocalElement& b);
  friend LocalElement operator-(const LocalElement& a, const LocalElement& b) { return a + (-b); }
  friend LocalElement operator*(const LocalElement& a, const LocalElement& b);
  friend LocalElement operator/(const LocalElement& a, const LocalElement& b) {
    return a * b.inverse();
  }
  /// Throws MathError for an element that is zero to its precision.
  LocalElement inverse() const;
  LocalElement pow(long long e) const;
  LocalElement scaled(Elem c) const;
  /// Multiply by pi^k.
  LocalElement shifted(long k) const;
  LocalElement truncated(long prec) const;
  /// x^p: coefficients to the p-th power, exponents times p.
  LocalElement frobenius() const;

  /// Lowest exponent where a and b differ, or their joint precision.
  friend long first_difference(const LocalElement& a, const LocalElement& b);
  friend bool agree(const LocalElement& a, const LocalElement& b) {
    return first_difference(a, b) >= std::min(a.precision(), b.precision());
  }

 private:
  Place v_;
  long lead_ = 0;
  std::vector<Elem> c_;
};

/// Laurent expansion of x at v with relative precision relprec (x != 0), or
/// the zero element known to pi^relprec for x = 0.
LocalElement expand_at(const RatFunc& x, const Place& v, long relprec);
LocalElement expand_at(const Poly& x, const Place& v, long relprec);

/// Element of O_v / pi^T for a fixed cap T: the coefficient ring used when
/// formal-group series are evaluated locally.
class LocalInteger {
 public:
  LocalInteger() = default;
  LocalInteger(Place v, long cap);
  /// Requires ord_v(x) >= 0.
  static LocalInteger from(const RatFunc& x, const Place& v, long cap);
  /// Requires valuation >= 0 and precision >= cap.
  static LocalInteger from(const LocalElement& x, long cap);

  const Place& place() const { return v_; }
  long cap() const { return static_cast<long>(c_.size()); }
  const std::vector<Elem>& coeffs() const { return c_; }
  /// First nonzero exponent, or cap() for zero.
  long valuation() const;
  LocalElement to_element() const;

  LocalInteger zero_like() const { return LocalInteger(v_, cap()); }
  LocalInteger one_like() const;
  LocalInteger int_like(long long v) const;
  bool is_zero() const;
  bool is_unit() const { return !c_.empty() && c_[0] != 0; }
  LocalInteger inverse() const;
  LocalInteger frobenius() const;

  LocalInteger operator-() const;
  friend LocalInteger operator+(const LocalInteger& a, const LocalInteger& b);
  friend LocalInteger operator-(const LocalInteger& a, const LocalInteger& b);
  friend LocalInteger operator*(const LocalInteger& a, const LocalInteger& b);
  friend LocalInteger operator/(const LocalInteger& a, const LocalInteger& b) {
    return a * b.inverse();
  }
  LocalInteger& operator+=(const LocalInteger& b) { return *this = *this + b; }
  LocalInteger& operator-=(const LocalInteger& b) { return *this = *this - b; }
  LocalInteger& operator*=(const LocalInteger& b) { return *this = *this * b; }
  friend bool operator==(const LocalInteger& a, const LocalInteger& b) { return a.c_ == b.c_; }

 private:
  Place v_;
  std::vector<Elem> c_;
};

inline uint32_t characteristic(const LocalInteger& x) {
  return x.place().residue_field()->characteristic();
}

/// pi^exponent * unit with unit a 1-unit.
struct PositivePart {
  Place place;
  Rational exponent{0};
  LocalElement unit;

  long precision() const { return unit.precision(); }
  PositivePart inverse() const;
  /// Root extraction uses zp_power, so the denominator of e must be prime to p.
  PositivePart pow(Rational e) const;
  friend PositivePart operator*(const PositivePart& a, const PositivePart& b);
  friend PositivePart operator/(const PositivePart& a, const PositivePart& b) {
    return a * b.inverse();
  }
};

/// Throws MathError on an element that is zero to its precision.
PositivePart positive_part(const LocalElement& x);
/// The trivial value 1 known to relative precision prec.
PositivePart positive_one(const Place& v, long prec);

/// u^a for a 1-unit u and a in Z_(p). Throws MathError if p divides den(a).
LocalElement zp_power(const LocalElement& u, Rational a);

/// Whether the 1-unit u is a p^N-th power, judged from its known digits.
/// Throws PrecisionError when too few digits are known to decide.
bool pth_power_test(const LocalElement& u, int N);

}  // namespace charp
