#include "charp/verify.hpp"

#include "charp/errors.hpp"
#include "charp/formal_group.hpp"
#include "charp/sigma.hpp"

#include <numeric>

namespace charp {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Skip: return "SKIP";
  }
  return "?";
}

Discrepancy check_division_recursion(const Curve& E, int n, long zprec) {
  if (n < 1) throw MathError("n must be positive");
  const long p = E.field()->characteristic();
  long pn1 = 1;
  for (int i = 1; i < n; ++i) pn1 *= p;
  const long pn = pn1 * p;
  FormalGroup<RatFunc> fg(E.a());
  const Series<RatFunc> lhs = fg.division_series(pn, zprec);
  const Series<RatFunc> fp = fg.division_series(p, zprec);
  Series<RatFunc> rhs = fp.pow(pn1 * pn1);
  if (n > 1) {
    const Series<RatFunc> outer = fg.division_series(pn1, zprec);
    const long need = p * (zprec + 1) + p * (pn1 * pn1 + 1);
    rhs = outer.compose(fg.mult_by(p, need)) * rhs;
  }
  const long lead = lhs.valuation();
  return Discrepancy{first_difference(lhs, rhs) - lead,
                     std::min(lhs.precision(), rhs.precision()) - lead};
}

bool same_height(const PositivePart& a, const PositivePart& b) {
  return a.exponent == b.exponent && agree(a.unit, b.unit);
}

namespace {

struct Suite {
  std::vector<CheckResult> out;

  template <class F>
  void run(const std::string& name, F&& body) {
    CheckResult r{name, CheckStatus::Pass, {}};
    try {
      body(r);
    } catch (const PrecisionError& e) {
      r.status = CheckStatus::Fail;
      r.detail = std::string("precision: ") + e.what();
    } catch (const MathError& e) {
      r.status = CheckStatus::Skip;
      r.detail = e.what();
    }
    out.push_back(std::move(r));
  }
};

void expect(CheckResult& r, bool ok, const std::string& detail) {
  if (!ok) {
    r.status = CheckStatus::Fail;
    r.detail = detail;
  }
}

void expect_discrepancy(CheckResult& r, const Discrepancy& d) {
  expect(r, d.holds(),
         "differs at " + std::to_string(d.first_difference) + " of " + std::to_string(d.joint_precision));
  if (r.status == CheckStatus::Pass) r.detail = "to " + std::to_string(d.joint_precision);
}

PositivePart height_at(const Curve& E, const CurvePoint& P, const Place& v, long vprec,
                       bool attested) {
  HeightOptions o;
  o.multiple = 1;
  o.attest_minimal = attested;
  return canonical_height(E, P, v, vprec, o).value;
}

}  // namespace

std::vector<CheckResult> verify_curve(const Curve& E, const VerifyOptions& opts) {
  Suite s;
  const long p = E.field()->characteristic();

  s.run("minimal at finite places", [&](CheckResult&) { check_finite_minimality(E, opts.attest_minimal); });

  s.run("sigma lead 1 and odd", [&](CheckResult& r) {
    const auto sig = exact_sigma_series(E, opts.zprec).series;
    bool ok = sig.valuation() == 1 && sig.coeff(1) == sig.coeff(1).one_like();
    for (long e = 2; e < sig.precision(); e += 2) ok = ok && sig.coeff(e).is_zero();
    expect(r, ok, "sigma is not z + odd terms");
  });

  s.run("f_{p^2} recursion", [&](CheckResult& r) {
    expect_discrepancy(r, check_division_recursion(E, 2, p * p + p));
  });

  for (const auto& [name, P] : opts.points) {
    s.run("degree relation " + name, [&](CheckResult& r) {
      HeightOptions o;
      o.attest_minimal = opts.attest_minimal;
      o.search = opts.search;
      const DegreeRelation d = degree_relation(E, P, o);
      expect(r, d.degree == d.twice_neron_tate,
             "deg " + std::to_string(d.degree.numerator()) + "/" + std::to_string(d.degree.denominator()) +
                 " vs 2h " + std::to_string(d.twice_neron_tate.numerator()) + "/" +
                 std::to_string(d.twice_neron_tate.denominator()));
    });
  }

  for (const Place& v : opts.places) {
    const std::string at = " at " + v.name();
    bool ordinary = true;
    s.run("ordinary" + at, [&](CheckResult& r) {
      try {
        require_ordinary(local_model(E, CurvePoint::zero(), v).model, v);
      } catch (const MathError&) {
        ordinary = false;
        throw;
      }
      r.detail = "alpha is a unit";
    });
    if (!ordinary) continue;

    // multiples of the user points landing in the formal group at v
    std::vector<std::pair<std::string, CurvePoint>> formal;
    for (const auto& [name, P] : opts.points) {
      if (P.is_zero() || is_torsion(E, P)) continue;
      s.run("formal multiple " + name + at, [&](CheckResult& r) {
        const long n = minimal_multiple_in(E, P, v, opts.search);
        formal.emplace_back(std::to_string(n) + name, mul_point(E, n, P));
        r.detail = "n = " + std::to_string(n);
      });
    }

    for (const auto& [name, P] : formal) {
      for (long m : {-1L, 2L, 3L}) {
        s.run("identity (b) m=" + std::to_string(m) + " " + name + at,
              [&](CheckResult& r) { expect_discrepancy(r, check_identity_b(E, P, m, v, opts.vprec)); });
      }
      s.run("identity (c) " + name + at,
            [&](CheckResult& r) { expect_discrepancy(r, check_identity_c(E, P, v, opts.vprec)); });
      s.run("sigma congruence N=1 " + name + at,
            [&](CheckResult& r) { expect(r, check_sigma_congruence(E, P, v, 1, opts.vprec), "ratio is not a p-th power"); });
      s.run("evenness " + name + at, [&](CheckResult& r) {
        expect(r, same_height(height_at(E, P, v, opts.vprec, opts.attest_minimal),
                              height_at(E, negate(E, P), v, opts.vprec, opts.attest_minimal)),
               "H(-P) != H(P)");
      });
      for (long m : {2L, 3L}) {
        s.run("quadratic m=" + std::to_string(m) + " " + name + at, [&](CheckResult& r) {
          const PositivePart h = height_at(E, P, v, opts.vprec, opts.attest_minimal);
          const PositivePart hm = height_at(E, mul_point(E, m, P), v, opts.vprec, opts.attest_minimal);
          expect(r, same_height(hm, h.pow(Rational(m * m))), "H(mP) != H(P)^(m^2)");
        });
      }
      s.run("model scaling " + name + at, [&](CheckResult& r) {
        const ModelIso iso = ModelIso::scaling(RatFunc::constant(E.field(), 2));
        const PositivePart a = height_at(E, P, v, opts.vprec, opts.attest_minimal);
        const PositivePart b = height_at(iso.apply(E), iso.apply(P), v, opts.vprec, opts.attest_minimal);
        expect(r, a.exponent == b.exponent && a.precision() == b.precision() && agree(a.unit, b.unit), "height changed under u = 2");
      });
      s.run("power probe N=1 " + name + at, [&](CheckResult& r) {
        HeightOptions o;
        o.multiple = 1;
        o.attest_minimal = opts.attest_minimal;
        if (v.is_infinity()) {
          r.status = CheckStatus::Skip;
          r.detail = "finite places only";
          return;
        }
        const PowerProbe pp = power_probe(E, P, v, 1, opts.vprec, o);
        r.detail = std::string(pp.is_power ? "p-th power" : "not a p-th power") + ", p | 2h: " +
                   (pp.p_power_divides ? "yes" : "no");
      });
    }

    for (size_t i = 0; i < formal.size(); ++i) {
      for (size_t j = i + 1; j < formal.size(); ++j) {
        const auto& [pn, P] = formal[i];
        const auto& [qn, Q] = formal[j];
        if (add_points(E, P, Q).is_zero() || sub_points(E, P, Q).is_zero()) continue;
        s.run("identity (a) " + pn + "," + qn + at,
              [&](CheckResult& r) { expect_discrepancy(r, check_identity_a(E, P, Q, v, opts.vprec)); });
        s.run("parallelogram " + pn + "," + qn + at, [&](CheckResult& r) {
          auto H = [&](const CurvePoint& X) { return height_at(E, X, v, opts.vprec, opts.attest_minimal); };
          const PositivePart hp = H(P), hq = H(Q);
          expect(r, same_height(H(add_points(E, P, Q)) * H(sub_points(E, P, Q)), hp * hp * hq * hq),
                 "H(P+Q)H(P-Q) != H(P)^2 H(Q)^2");
        });
      }
    }
  }
  return s.out;
}

}  // namespace charp
