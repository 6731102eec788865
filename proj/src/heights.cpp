#include "charp/heights.hpp"

#include "charp/errors.hpp"
#include "charp/parser.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace charp {

namespace {

std::string model_key(const Curve& E) {
  const Field& F = *E.field();
  std::string k = "p=" + std::to_string(F.characteristic()) + ";n=" + std::to_string(F.degree());
  for (Elem c : F.modulus()) k += "," + std::to_string(c);
  for (const RatFunc* a : {&E.a1(), &E.a2(), &E.a3(), &E.a4(), &E.a6()}) {
    k += ";" + format_ratfunc(*a);
  }
  return k;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::mutex g_cache_mu;
std::map<std::string, Series<LocalInteger>> g_local_cache;
std::map<std::string, SigmaSeries<RatFunc>> g_exact_cache;

std::filesystem::path disk_path(const std::string& key) {
  const char* dir = std::getenv("CHARP_HEIGHTS_CACHE");
  if (!dir || !*dir) return {};
  char name[64];
  std::snprintf(name, sizeof name, "sigma-%016llx.txt",
                static_cast<unsigned long long>(fnv1a(key)));
  return std::filesystem::path(dir) / name;
}

std::optional<SigmaSeries<RatFunc>> disk_load(const std::string& key, const FieldPtr& f, long M) {
  const auto path = disk_path(key);
  if (path.empty()) return std::nullopt;
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != "key " + key) return std::nullopt;
  long prec = 0;
  int used = 0;
  if (!std::getline(in, line) || std::sscanf(line.c_str(), "precision %ld factors %d", &prec, &used) != 2) {
    return std::nullopt;
  }
  if (prec < M) return std::nullopt;
  try {
    std::vector<RatFunc> coeffs;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      coeffs.push_back(parse_ratfunc(line, f));
    }
    if (static_cast<long>(coeffs.size()) != prec) return std::nullopt;
    auto s = Series<RatFunc>::from_coeffs(RatFunc(f), 0, std::move(coeffs));
    return SigmaSeries<RatFunc>{s.truncated(M), used};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void disk_store(const std::string& key, const SigmaSeries<RatFunc>& s) {
  const auto path = disk_path(key);
  if (path.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(path.parent_path(), ec);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << "key " << key << "\n";
    out << "precision " << s.series.precision() << " factors " << s.factors_used << "\n";
    for (long e = 0; e < s.series.precision(); ++e) out << format_ratfunc(s.series.coeff(e)) << "\n";
  }
  std::filesystem::rename(tmp, path, ec);
}

long strip_p(long n, long p) {
  while (n % p == 0) n /= p;
  return n;
}

LocalElement exact_power(const Place& v, long k, long relprec) {
  return LocalElement::constant(v, 1, relprec).shifted(k);
}

}  // namespace

void require_ordinary(const Curve& model, const Place& v) {
  if (!model.is_integral_at(v)) throw MathError("model is not integral at " + v.name());
  const RatFunc alpha = hasse_invariant(model);
  if (alpha.is_zero()) throw MathError("curve is supersingular (Hasse invariant 0)");
  if (ord_at(alpha, v) != 0) throw MathError("reduction at " + v.name() + " is not ordinary");
}

LocalModel local_model(const Curve& E, const CurvePoint& P, const Place& v) {
  if (!v.is_infinity()) return LocalModel{E, P, 0};
  const InfinityModel im = infinity_minimal_model(E);
  return LocalModel{im.model, im.iso.apply(P), im.r};
}

LocalElement z_at(const CurvePoint& P, const Place& v, long relprec) {
  if (P.is_zero()) return LocalElement::zero(v, relprec);
  return expand_at(-(P.x / P.y), v, relprec);
}

LocalElement evaluate(const Series<LocalInteger>& s, const LocalElement& z) {
  const Place& v = z.place();
  if (z.is_zero() || z.valuation() < 1) throw MathError("evaluation point is not in the maximal ideal");
  const long e = z.valuation();
  const LocalElement tail = LocalElement::zero(v, s.precision() * e);
  if (s.is_zero()) return tail;
  const auto& c = s.coeffs();
  LocalElement acc = c.back().to_element();
  for (long j = static_cast<long>(c.size()) - 2; j >= 0; --j) acc = acc * z + c[j].to_element();
  if (s.valuation() != 0) acc = acc * z.pow(s.valuation());
  return acc + tail;
}

Series<LocalInteger> local_sigma_series(const Curve& model, const Place& v, long T, long M) {
  const std::string key = model_key(model) + "|" + v.name() + "|" + std::to_string(T);
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_local_cache.find(key);
    if (it != g_local_cache.end() && it->second.precision() >= M) return it->second.truncated(M);
  }
  require_ordinary(model, v);
  auto conv = [&](const RatFunc& x) { return LocalInteger::from(x, v, T); };
  FormalGroup<LocalInteger> fg(model.a().template map<LocalInteger>(conv));
  const LocalInteger alpha = conv(hasse_invariant(model));
  Series<LocalInteger> s = sigma_series(fg, alpha, M).series;
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto& slot = g_local_cache[key];
  if (slot.precision() < s.precision() || slot.coeffs().empty()) slot = s;
  return s;
}

SigmaSeries<RatFunc> exact_sigma_series(const Curve& model, long M) {
  const std::string key = model_key(model);
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_exact_cache.find(key);
    if (it != g_exact_cache.end() && it->second.series.precision() >= M) {
      return {it->second.series.truncated(M), it->second.factors_used};
    }
  }
  if (auto hit = disk_load(key, model.field(), M)) return *hit;
  const RatFunc alpha = hasse_invariant(model);
  if (alpha.is_zero()) throw MathError("curve is supersingular (Hasse invariant 0)");
  FormalGroup<RatFunc> fg(model.a());
  SigmaSeries<RatFunc> s = sigma_series(fg, alpha, M);
  disk_store(key, s);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto& slot = g_exact_cache[key];
  if (slot.series.precision() < s.series.precision()) slot = s;
  return s;
}

namespace {

struct SigmaPlan {
  LocalModel lm;
  LocalElement z;
  long T = 0, M = 0;
};

SigmaPlan plan_sigma(const Curve& E, const CurvePoint& P, const Place& v, long vprec) {
  SigmaPlan plan{local_model(E, P, v), {}, 0, 0};
  require_ordinary(plan.lm.model, v);
  if (P.is_zero()) throw MathError("sigma is not defined at O");
  if (ord_at(plan.lm.point.x, v) > -2) {
    throw MathError("point is not in the formal group at " + v.name());
  }
  plan.z = z_at(plan.lm.point, v, vprec);
  const long e = plan.z.valuation();
  plan.T = vprec;
  plan.M = (vprec + e - 1) / e + 1;
  return plan;
}

LocalElement finish_sigma(const SigmaPlan& plan, LocalElement val, long vprec) {
  if (plan.lm.r != 0) val = val * exact_power(val.place(), plan.lm.r, vprec);
  return val.truncated(val.valuation() + vprec);
}

}  // namespace

LocalElement sigma_at(const Curve& E, const CurvePoint& P, const Place& v, long vprec) {
  const SigmaPlan plan = plan_sigma(E, P, v, vprec);
  const Series<LocalInteger> s = local_sigma_series(plan.lm.model, v, plan.T, plan.M);
  return finish_sigma(plan, evaluate(s, plan.z), vprec);
}

LocalElement sigma_at_exact(const Curve& E, const CurvePoint& P, const Place& v, long vprec) {
  const SigmaPlan plan = plan_sigma(E, P, v, vprec);
  const Series<RatFunc> s = exact_sigma_series(plan.lm.model, plan.M).series;
  const LocalInteger proto(v, plan.T);
  const Series<LocalInteger> sl = s.map(proto, [&](const RatFunc& c) {
    return LocalInteger::from(c, v, plan.T);
  });
  return finish_sigma(plan, evaluate(sl, plan.z), vprec);
}

LocalElement division_value_at(const Curve& E, const CurvePoint& P, long m, const Place& v,
                               long relprec) {
  if (m == 0) throw MathError("f_0 is not defined");
  const long am = m < 0 ? -m : m;
  RatFunc f = division_value(E, P, am);
  if (am % 2 == 0) f = -f;
  if (m < 0) f = -f;
  return expand_at(f, v, relprec);
}

// ---------------------------------------------------------------------------
// heights

HeightValue canonical_height(const Curve& E, const CurvePoint& P, const Place& v, long vprec,
                             const HeightOptions& opts) {
  check_finite_minimality(E, opts.attest_minimal);
  require_ordinary(local_model(E, CurvePoint::zero(), v).model, v);
  HeightValue h;
  h.value = positive_one(v, vprec);
  if (P.is_zero()) return h;
  const long n = opts.multiple ? *opts.multiple : minimal_multiple_in(E, P, v, opts.search);
  if (n < 1) throw MathError("the multiple must be positive");
  h.multiple_used = n;
  const CurvePoint Q = mul_point(E, n, P);
  if (Q.is_zero()) return h;
  if (!in_formal_group(E, Q, v)) {
    throw MathError(std::to_string(n) + "P is not in the formal group at " + v.name());
  }
  const LocalElement sigma = sigma_at(E, Q, v, vprec);
  const LocalElement den = expand_at(Q.x.den(), v, vprec);
  h.value = positive_part(den * sigma.pow(-2));
  if (!opts.multiple) {
    const long n0 = strip_p(n, E.field()->characteristic());
    if (n0 > 1) {
      h.root_applied = Rational(1, static_cast<long long>(n0) * n0);
      h.value = h.value.pow(h.root_applied);
    }
  }
  return h;
}

IdeleSummary idele_summary(const Curve& E, const CurvePoint& P, const Place& v, long vprec) {
  if (P.is_zero() || !in_formal_group(E, P, v)) {
    throw MathError("point is not a nonzero point of the formal group at " + v.name());
  }
  IdeleSummary s;
  s.den_factorization = factor(P.x.den());
  for (const Factor& f : s.den_factorization) {
    if (v.is_infinity() || !(f.f == v.poly())) s.component_ords.emplace_back(f.f, Rational(f.multiplicity, 2));
  }
  s.sigma = sigma_at(E, P, v, vprec);
  s.iso = v.is_infinity() ? infinity_minimal_model(E).iso : ModelIso::identity(E.field());
  return s;
}

HeightValue pairing(const Curve& E, const CurvePoint& P, const CurvePoint& Q, const Place& v,
                    long vprec, const HeightOptions& opts) {
  HeightValue h;
  h.value = positive_one(v, vprec);
  if (P.is_zero() || Q.is_zero()) return h;
  const CurvePoint S = add_points(E, P, Q);
  long n = 1;
  if (opts.multiple) {
    n = *opts.multiple;
  } else {
    n = std::lcm(minimal_multiple_in(E, P, v, opts.search), minimal_multiple_in(E, Q, v, opts.search));
    if (!S.is_zero()) n = std::lcm(n, minimal_multiple_in(E, S, v, opts.search));
  }
  HeightOptions at_n = opts;
  at_n.multiple = n;
  const HeightValue hp = canonical_height(E, P, v, vprec, at_n);
  const HeightValue hq = canonical_height(E, Q, v, vprec, at_n);
  const HeightValue hs = canonical_height(E, S, v, vprec, at_n);
  h.value = (hs.value / (hp.value * hq.value)).pow(Rational(1, 2));
  h.multiple_used = n;
  if (!opts.multiple) {
    const long n0 = strip_p(n, E.field()->characteristic());
    if (n0 > 1) {
      h.root_applied = Rational(1, static_cast<long long>(n0) * n0);
      h.value = h.value.pow(h.root_applied);
    }
  }
  return h;
}

DegreeRelation degree_relation(const Curve& E, const CurvePoint& P, const HeightOptions& opts) {
  DegreeRelation d;
  if (P.is_zero() || is_torsion(E, P)) return d;
  const Place inf = Place::infinity(E.field());
  const long n = opts.multiple ? *opts.multiple : minimal_multiple_in(E, P, inf, opts.search);
  HeightOptions at_n = opts;
  at_n.multiple = n;
  const HeightValue h = canonical_height(E, P, inf, 2, at_n);
  d.multiple_used = n;
  d.degree = h.exponent() / Rational(static_cast<long long>(n) * n);
  d.twice_neron_tate = Rational(2) * neron_tate(E, P, opts.search);
  return d;
}

PowerProbe power_probe(const Curve& E, const CurvePoint& P, const Place& v, int N, long vprec,
                       const HeightOptions& opts) {
  PowerProbe r;
  const long n = opts.multiple ? *opts.multiple : minimal_multiple_in(E, P, v, opts.search);
  HeightOptions at_n = opts;
  at_n.multiple = n;
  const HeightValue h = canonical_height(E, P, v, vprec, at_n);
  long long pN = 1;
  const long p = E.field()->characteristic();
  for (int i = 0; i < N; ++i) pN *= p;
  const Rational ex = h.value.exponent;
  const bool exp_ok = ex.denominator() == 1 && ex.numerator() % pN == 0;
  r.is_power = exp_ok && pth_power_test(h.value.unit, N);
  r.multiple_used = n;
  r.twice_neron_tate = Rational(2) * neron_tate(E, P, opts.search) * Rational(static_cast<long long>(n) * n);
  r.p_power_divides = r.twice_neron_tate.denominator() % p != 0 &&
                      r.twice_neron_tate.numerator() % pN == 0;
  return r;
}

// ---------------------------------------------------------------------------
// identities

namespace {

void require_formal(const Curve& E, const CurvePoint& P, const Place& v, const char* what) {
  if (P.is_zero() || !in_formal_group(E, P, v)) {
    throw MathError(std::string(what) + " is not a nonzero point of the formal group at " + v.name());
  }
}

Discrepancy compare(const LocalElement& a, const LocalElement& b) {
  return Discrepancy{first_difference(a, b), std::min(a.precision(), b.precision())};
}

}  // namespace

Discrepancy check_identity_a(const Curve& E, const CurvePoint& P, const CurvePoint& Q,
                             const Place& v, long vprec) {
  const CurvePoint S = add_points(E, P, Q);
  const CurvePoint D = sub_points(E, P, Q);
  require_formal(E, P, v, "P");
  require_formal(E, Q, v, "Q");
  require_formal(E, S, v, "P+Q");
  require_formal(E, D, v, "P-Q");
  const LocalElement sp = sigma_at(E, P, v, vprec);
  const LocalElement sq = sigma_at(E, Q, v, vprec);
  const LocalElement lhs = sigma_at(E, S, v, vprec) * sigma_at(E, D, v, vprec) *
                           (sp * sp * sq * sq).inverse();
  const LocalElement rhs = expand_at(Q.x - P.x, v, vprec);
  return compare(lhs, rhs);
}

Discrepancy check_identity_b(const Curve& E, const CurvePoint& Q, long m, const Place& v,
                             long vprec) {
  require_formal(E, Q, v, "Q");
  const CurvePoint mQ = mul_point(E, m, Q);
  require_formal(E, mQ, v, "mQ");
  const LocalElement lhs = sigma_at(E, mQ, v, vprec);
  const LocalElement rhs = sigma_at(E, Q, v, vprec).pow(static_cast<long long>(m) * m) *
                           division_value_at(E, Q, m, v, vprec);
  return compare(lhs, rhs);
}

Discrepancy check_identity_c(const Curve& E, const CurvePoint& Q, const Place& v, long vprec) {
  return check_identity_b(E, Q, E.field()->characteristic(), v, vprec);
}

bool check_sigma_congruence(const Curve& E, const CurvePoint& P, const Place& v, int N,
                            long vprec) {
  if (N <= 0) return true;
  const SigmaPlan plan = plan_sigma(E, P, v, vprec);
  const Curve& model = plan.lm.model;
  const long p = E.field()->characteristic();
  long pN = 1;
  for (int i = 0; i < N; ++i) pN *= p;
  const long e = plan.z.valuation();
  const long K = (vprec + e - 1) / e + 1;
  const long T = plan.T;
  auto conv = [&](const RatFunc& x) { return LocalInteger::from(x, v, T); };
  FormalGroup<LocalInteger> fg(model.a().template map<LocalInteger>(conv));

  const LocalElement sig = evaluate(local_sigma_series(model, v, T, plan.M), plan.z);
  const PPowerParts<LocalInteger> parts = p_power_parts(fg, p, N, K + 1);
  // u = ([p^N]^{-1}(z))^(p^N) = g_N^{-1}(z), and f_{p^N}([p^N]^{-1}(z)) = G_N(u)
  const LocalElement u = evaluate(parts.g.reverse(), plan.z);
  const LocalElement rhs = evaluate(parts.G, u);
  const PositivePart ratio = positive_part(sig / rhs);
  if (ratio.exponent.denominator() != 1 || ratio.exponent.numerator() % pN != 0) return false;
  return pth_power_test(ratio.unit.truncated(vprec), N);
}

}  // namespace charp
