#pragma once

// Expression input and canonical text output for F_q, F_q[t] and F_q(t).
//
// Grammar (standard precedence, left associative, ^ binds tightest):
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' integer)?
//   atom   := integer | 't' | 'g' | '(' expr ')'
// 'g' names the generator of F_q over F_p and is only accepted when n > 1.

#include "charp/ratfunc.hpp"

#include <string>
#include <string_view>

namespace charp {

/// Throws ParseError (with a 0-based offset) or MathError (division by zero).
RatFunc parse_ratfunc(std::string_view text, const FieldPtr& f);
/// Like parse_ratfunc but requires a polynomial result.
Poly parse_poly(std::string_view text, const FieldPtr& f);

/// Element of F_q: a signed integer for the prime field, else a polynomial in
/// `symbol` with coefficients in the base field.
std::string format_elem(const Field& f, Elem a, const std::string& symbol = "g");
/// Descending powers of `var`, e.g. "t^2 - t - 1".
std::string format_poly(const Poly& f, const std::string& var = "t");
/// "num", or "num/den" with parentheses where the grammar needs them.
std::string format_ratfunc(const RatFunc& x, const std::string& var = "t");

/// One signed summand "c*m" as used inside a sum: returns (negative, body) with
/// body the text of |c|*m (or c*m when no sign can be pulled out). `monomial`
/// is empty for a constant term.
struct SignedTerm {
  bool negative = false;
  std::string body;
};
SignedTerm format_term(const RatFunc& c, const std::string& monomial,
                       const std::string& var = "t");
SignedTerm format_term(const Field& f, Elem c, const std::string& monomial,
                       const std::string& symbol = "g");

/// Joins signed terms as "a - b + c"; "0" for an empty list.
std::string join_terms(const std::vector<SignedTerm>& terms);

/// "z", "z^3", "" for exponent 0.
std::string power_text(const std::string& var, long long e);

}  // namespace charp
