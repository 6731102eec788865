#include "charp/parser.hpp"

#include "charp/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace charp {

namespace {

constexpr long long kMaxExponent = 1'000'000;

class Parser {
 public:
  Parser(std::string_view s, const FieldPtr& f) : s_(s), f_(f) {}

  RatFunc parse() {
    RatFunc r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, i_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (accept('+')) {
        r += term();
      } else if (accept('-')) {
        r -= term();
      } else {
        return r;
      }
    }
  }

  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (accept('*')) {
        r *= unary();
      } else if (accept('/')) {
        const size_t at = i_;
        RatFunc d = unary();
        if (d.is_zero()) throw MathError("division by zero at position " + std::to_string(at));
        r /= d;
      } else {
        return r;
      }
    }
  }

  RatFunc unary() {
    if (accept('-')) return -unary();
    return power();
  }

  RatFunc power() {
    RatFunc base = atom();
    if (accept('^')) {
      skip();
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        fail("expected a nonnegative integer exponent");
      }
      long long e = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        e = e * 10 + (s_[i_] - '0');
        if (e > kMaxExponent) fail("exponent too large");
        ++i_;
      }
      skip();
      if (i_ < s_.size() && s_[i_] == '^') fail("chained exponents need parentheses");
      return base.pow(e);
    }
    return base;
  }

  RatFunc atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const uint32_t p = f_->characteristic();
      uint64_t v = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        v = (v * 10 + static_cast<uint64_t>(s_[i_] - '0')) % p;
        ++i_;
      }
      return RatFunc(Poly::constant(f_, static_cast<Elem>(v)));
    }
    if (c == 't') {
      ++i_;
      return RatFunc::var(f_);
    }
    if (c == 'g') {
      if (f_->is_prime()) fail("'g' is only defined when n > 1");
      ++i_;
      return RatFunc(Poly::constant(f_, f_->generator()));
    }
    if (c == '(') {
      ++i_;
      RatFunc r = expr();
      if (!accept(')')) fail("expected ')'");
      return r;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  FieldPtr f_;
  size_t i_ = 0;
};

bool in_prime_subfield(const Field& f, Elem a) { return a < f.characteristic(); }

bool has_plus_minus(const std::string& s) {
  return s.find(" + ") != std::string::npos || s.find(" - ") != std::string::npos;
}

bool is_single_term(const Poly& f) {
  int n = 0;
  for (Elem c : f.coeffs()) n += c != 0;
  return n == 1;
}

bool lead_negative(const Poly& f) {
  const Field& F = *f.field();
  return in_prime_subfield(F, f.lead()) && F.signed_value(f.lead()) < 0;
}

}  // namespace

RatFunc parse_ratfunc(std::string_view text, const FieldPtr& f) {
  return Parser(text, f).parse();
}

Poly parse_poly(std::string_view text, const FieldPtr& f) {
  RatFunc r = parse_ratfunc(text, f);
  if (!r.is_polynomial()) throw MathError("expected a polynomial, got a proper fraction");
  return r.num();
}

std::string power_text(const std::string& var, long long e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return var + "^" + std::to_string(e);
}

std::string join_terms(const std::vector<SignedTerm>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) {
      if (terms[i].negative) out += "-";
    } else {
      out += terms[i].negative ? " - " : " + ";
    }
    out += terms[i].body;
  }
  return out;
}

SignedTerm format_term(const Field& f, Elem c, const std::string& monomial,
                       const std::string& symbol) {
  SignedTerm t;
  if (in_prime_subfield(f, c)) {
    const long long s = f.signed_value(c);
    t.negative = s < 0;
    const long long a = std::llabs(s);
    if (monomial.empty()) {
      t.body = std::to_string(a);
    } else {
      t.body = a == 1 ? monomial : std::to_string(a) + "*" + monomial;
    }
    return t;
  }
  std::string text = format_elem(f, c, symbol);
  const bool single = !has_plus_minus(text);
  if (text[0] == '-') {
    t.negative = true;
    text = single ? text.substr(1) : format_elem(f, f.neg(c), symbol);
  }
  if (!single) text = "(" + text + ")";
  t.body = monomial.empty() ? text : text + "*" + monomial;
  return t;
}

std::string format_elem(const Field& f, Elem a, const std::string& symbol) {
  if (f.is_prime()) return std::to_string(f.signed_value(a));
  const auto d = f.digits(a);
  std::vector<SignedTerm> terms;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) {
    if (d[i] != 0) terms.push_back(format_term(*f.base(), d[i], power_text(symbol, i)));
  }
  return join_terms(terms);
}

std::string format_poly(const Poly& f, const std::string& var) {
  std::vector<SignedTerm> terms;
  const auto& c = f.coeffs();
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (c[i] != 0) terms.push_back(format_term(*f.field(), c[i], power_text(var, i)));
  }
  return join_terms(terms);
}

std::string format_ratfunc(const RatFunc& x, const std::string& var) {
  if (x.is_polynomial()) return format_poly(x.num(), var);
  std::string n = format_poly(x.num(), var);
  std::string d = format_poly(x.den(), var);
  if (has_plus_minus(n)) n = "(" + n + ")";
  if (has_plus_minus(d) || d.find('*') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

SignedTerm format_term(const RatFunc& c, const std::string& monomial, const std::string& var) {
  const Field& F = *c.field();
  if (c.is_polynomial() && is_single_term(c.num())) {
    const int k = c.num().degree();
    SignedTerm t = format_term(F, c.num().lead(), power_text(var, k));
    if (!monomial.empty()) t.body = t.body == "1" ? monomial : t.body + "*" + monomial;
    return t;
  }
  SignedTerm t;
  RatFunc a = c;
  if (lead_negative(c.num())) {
    t.negative = true;
    a = -c;
  }
  std::string text = format_ratfunc(a, var);
  if (monomial.empty()) {
    t.body = text;
  } else if (a.is_polynomial()) {
    t.body = "(" + text + ")*" + monomial;
  } else {
    t.body = text + "*" + monomial;
  }
  return t;
}

}  // namespace charp

namespace charp {

std::string Place::name() const {
  return is_infinity() ? "inf" : format_poly(poly());
}

}  // namespace charp
