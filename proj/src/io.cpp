#include "charp/io.hpp"

#include "charp/errors.hpp"
#include "charp/factor.hpp"
#include "charp/parser.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace charp {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t i = 0;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

namespace {

std::map<std::string, std::string> parse_keys(const std::string& text, const char* what) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(std::string(what) + " line " + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (kv.count(key)) {
      throw ParseError(std::string(what) + " line " + std::to_string(lineno) + ": duplicate key " + key);
    }
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

long parse_long(const std::string& s, const char* key) {
  try {
    size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad integer for ") + key + ": " + s);
  }
}

}  // namespace

CurveFile parse_curve_text(const std::string& text) {
  auto kv = parse_keys(text, "curve");
  for (const auto& [k, _] : kv) {
    static const char* known[] = {"p", "n", "modulus", "a1", "a2", "a3", "a4", "a6"};
    if (std::find_if(std::begin(known), std::end(known), [&](const char* s) { return k == s; }) ==
        std::end(known)) {
      throw ParseError("unknown curve key " + k);
    }
  }
  if (!kv.count("p")) throw ParseError("curve file needs p");
  CurveFile cf;
  const long p = parse_long(kv["p"], "p");
  const long n = kv.count("n") ? parse_long(kv["n"], "n") : 1;
  if (p < 3 || p > 65521) throw MathError("p must be an odd prime below 65536");
  if (n < 1 || n > 16) throw MathError("n must lie in 1..16");
  cf.spec.p = static_cast<uint32_t>(p);
  cf.spec.n = static_cast<int>(n);
  if (n > 1) {
    if (!kv.count("modulus")) throw ParseError("n > 1 needs a modulus (a monic irreducible in g)");
    std::string m = kv["modulus"];
    for (char& ch : m) {
      if (ch == 'g') ch = 't';
    }
    const Poly f = parse_poly(m, Field::prime(cf.spec.p));
    cf.spec.modulus.assign(f.coeffs().begin(), f.coeffs().end());
  } else if (kv.count("modulus")) {
    throw ParseError("modulus is only meaningful for n > 1");
  }
  const FieldPtr F = cf.spec.build();
  auto coef = [&](const char* k) {
    return kv.count(k) ? parse_ratfunc(kv[k], F) : RatFunc(F);
  };
  cf.curve = Curve(F, AInvariants<RatFunc>{coef("a1"), coef("a2"), coef("a3"), coef("a4"), coef("a6")});
  if (cf.curve.discriminant().is_zero()) throw MathError("singular curve (discriminant 0)");
  return cf;
}

CurveFile load_curve(const std::filesystem::path& path) {
  CurveFile cf = parse_curve_text(read_file(path));
  cf.dir = path.parent_path();
  return cf;
}

CurvePoint parse_point_text(const std::string& text, const Curve& E) {
  auto kv = parse_keys(text, "point");
  if (!kv.count("x") || !kv.count("y") || kv.size() != 2) {
    throw ParseError("point file needs exactly the keys x and y");
  }
  const CurvePoint P = CurvePoint::affine(parse_ratfunc(kv["x"], E.field()), parse_ratfunc(kv["y"], E.field()));
  if (!on_curve(E, P)) throw MathError("point is not on the curve");
  return P;
}

CurvePoint load_point(const std::string& spec, const CurveFile& cf) {
  if (spec == "O") return CurvePoint::zero();
  std::filesystem::path path(spec);
  if (!std::filesystem::exists(path)) path = cf.dir / (spec + ".point");
  if (!std::filesystem::exists(path)) throw ParseError("no point file for " + spec);
  return parse_point_text(read_file(path), cf.curve);
}

Place parse_place(const std::string& text, const FieldPtr& f) {
  if (text == "inf" || text == "infinity") return Place::infinity(f);
  return Place::finite(parse_poly(text, f));
}

// ---------------------------------------------------------------------------
// rendering

std::string render_sigma(const Series<RatFunc>& s, const std::string& var) {
  std::vector<SignedTerm> terms;
  for (long e = s.valuation(); e < s.precision(); ++e) {
    const RatFunc& c = s.coeff(e);
    if (!c.is_zero()) terms.push_back(format_term(c, power_text(var, e)));
  }
  terms.push_back({false, "O(" + power_text(var, s.precision()) + ")"});
  return join_terms(terms);
}

std::string uniformizer_text(const Place& v) {
  if (v.is_infinity()) return "t^-1";
  if (v.degree() > 1) return "pi";
  const std::string p = format_poly(v.poly());
  return p == "t" ? p : "(" + p + ")";
}

namespace {

std::string place_power(const Place& v, long k) {
  if (v.is_infinity()) return power_text("t", -k);
  const std::string u = uniformizer_text(v);
  if (k == 0) return "";
  if (k == 1) return u;
  return u + "^" + std::to_string(k);
}

std::string residue_symbol(const Place& v) { return !v.is_infinity() && v.degree() > 1 ? "th" : "g"; }

}  // namespace

std::string rational_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string render_height(const HeightValue& h, std::optional<long> digits) {
  const Place& v = h.place();
  const LocalElement& u = h.value.unit;
  long n = u.precision();
  if (digits) n = std::min(n, *digits);
  const Rational ex = h.value.exponent;
  const bool integral = ex.denominator() == 1;
  const long base = integral ? static_cast<long>(ex.numerator()) : 0;
  const Field& R = *v.residue_field();
  std::vector<SignedTerm> terms;
  for (long i = 0; i < n; ++i) {
    const Elem c = u.coeff(i);
    if (c != 0) terms.push_back(format_term(R, c, place_power(v, base + i), residue_symbol(v)));
  }
  terms.push_back({false, "O(" + place_power(v, base + n) + ")"});
  std::string series = join_terms(terms);
  if (integral) return series;
  const std::string x = v.is_infinity() ? "t" : uniformizer_text(v);
  const Rational shown = v.is_infinity() ? -ex : ex;
  return x + "^(" + rational_text(shown) + ")*(" + series + ")";
}

std::string height_label(const HeightValue& h, const std::string& point_name) {
  long shown = h.multiple_used;
  if (h.root_applied != Rational(1)) {
    const long long d = h.root_applied.denominator();
    long long r = 1;
    while (r * r < d) ++r;
    shown /= static_cast<long>(r);
  }
  const std::string place = h.place().is_infinity() ? "inf" : h.place().name();
  const std::string mult = shown == 1 ? "" : std::to_string(shown);
  return "H_" + (place.size() > 1 && !h.place().is_infinity() ? "(" + place + ")" : place) + "(" + mult +
         point_name + ")";
}

nlohmann::json sigma_json(const Series<RatFunc>& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (long e = s.valuation(); e < s.precision(); ++e) {
    const RatFunc& c = s.coeff(e);
    if (!c.is_zero()) coeffs.push_back({e, format_ratfunc(c)});
  }
  return {{"variable", "z"}, {"precision", s.precision()}, {"coefficients", coeffs}};
}

nlohmann::json height_json(const HeightValue& h) {
  const Place& v = h.place();
  const Field& R = *v.residue_field();
  nlohmann::json coeffs = nlohmann::json::array();
  const LocalElement& u = h.value.unit;
  for (long i = 0; i < u.precision(); ++i) {
    const Elem c = u.coeff(i);
    if (c == 0) continue;
    if (R.degree() == 1) {
      coeffs.push_back({i, R.signed_value(c)});
    } else {
      coeffs.push_back({i, format_elem(R, c, residue_symbol(v))});
    }
  }
  return {{"place", v.name()},
          {"exponent", rational_text(h.exponent())},
          {"unit_coefficients", coeffs},
          {"precision", h.precision()},
          {"multiple_used", h.multiple_used},
          {"root_applied", rational_text(h.root_applied)}};
}

// ---------------------------------------------------------------------------
// golden comparison

std::optional<long> trailing_order(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.rfind("O(");
  if (open == std::string::npos || t.back() != ')') return std::nullopt;
  const std::string inner = t.substr(open + 2, t.size() - open - 3);
  const auto caret = inner.rfind('^');
  if (caret == std::string::npos || inner.back() == ')') return 1;
  std::string k = inner.substr(caret + 1);
  if (!k.empty() && k.front() == '(' && k.back() == ')') k = k.substr(1, k.size() - 2);
  try {
    return std::stol(k);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

GoldenResult compare_sigma_golden(const Series<RatFunc>& s, const std::string& expected) {
  GoldenResult r;
  r.expected = trim(expected);
  const auto k = trailing_order(r.expected);
  if (!k) throw ParseError("golden sigma has no O-term");
  if (s.precision() < *k) throw PrecisionError("sigma computed to fewer terms than the golden file", s.precision());
  r.actual = render_sigma(s.truncated(*k));
  r.match = r.actual == r.expected;
  return r;
}

GoldenResult compare_height_golden(const HeightValue& h, const std::string& expected) {
  GoldenResult r;
  r.expected = trim(expected);
  const auto k = trailing_order(r.expected);
  if (!k) throw ParseError("golden height has no O-term");
  const Rational ex = h.value.exponent;
  if (ex.denominator() != 1) throw MathError("golden comparison needs an integral exponent");
  // offset of the O-term relative to the unit's leading digit
  const long base = static_cast<long>(ex.numerator());
  const long digits = h.place().is_infinity() ? -*k - base : *k - base;
  if (digits > h.precision()) {
    throw PrecisionError("height computed to fewer digits than the golden file", h.precision());
  }
  r.actual = render_height(h, digits);
  r.match = r.actual == r.expected;
  return r;
}

}  // namespace charp
