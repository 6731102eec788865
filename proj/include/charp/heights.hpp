#pragma once

// Sigma evaluation in k_v, the canonical heights Ĥ_v and pairings, and the
// checks built on them.
//
// sigma_at(E, P, v) is sigma_{E,omega}(P) for the model E. At infinity it is
// computed on the scaled model E' (integral at infinity) through
// sigma_E = u^{-1} sigma_E', u = t^r.

#include "charp/factor.hpp"
#include "charp/sigma.hpp"

#include <optional>

namespace charp {

/// z(P) = -x/y expanded at v.
LocalElement z_at(const CurvePoint& P, const Place& v, long relprec);

/// s(z) for a series with coefficients in O_v / pi^T and z in k_v.
LocalElement evaluate(const Series<LocalInteger>& s, const LocalElement& z);

/// sigma mod z^M with coefficients in O_v / pi^T for a model integral and
/// ordinary at v. Memoized.
Series<LocalInteger> local_sigma_series(const Curve& model, const Place& v, long T, long M);
/// Exact sigma mod z^M. Memoized, optionally on disk (CHARP_HEIGHTS_CACHE).
SigmaSeries<RatFunc> exact_sigma_series(const Curve& model, long M);

/// sigma_E(P) with relative precision vprec; P must lie in the formal group at v.
LocalElement sigma_at(const Curve& E, const CurvePoint& P, const Place& v, long vprec);
/// Same value through the exact series, coefficients expanded afterwards.
LocalElement sigma_at_exact(const Curve& E, const CurvePoint& P, const Place& v, long vprec);

/// f_m(P) in k_v, normalized as sigma(mP) = sigma(P)^(m^2) f_m(P).
LocalElement division_value_at(const Curve& E, const CurvePoint& P, long m, const Place& v,
                               long relprec);

struct HeightOptions {
  /// Evaluate at exactly this multiple and apply no root.
  std::optional<long> multiple;
  MultipleSearch search;
  /// Skip the ord(disc) < 12 minimality certificate at finite places.
  bool attest_minimal = false;
};

struct HeightValue {
  PositivePart value;
  long multiple_used = 1;
  Rational root_applied{1};

  const Place& place() const { return value.place; }
  /// ord_v for finite v, -ord_inf (the degree) at infinity.
  Rational exponent() const {
    return value.place.is_infinity() ? -value.exponent : value.exponent;
  }
  /// Known digits of the unit part.
  long precision() const { return value.unit.precision(); }
};

/// Ĥ_v(P), for finite v or infinity.
HeightValue canonical_height(const Curve& E, const CurvePoint& P, const Place& v, long vprec,
                             const HeightOptions& opts = {});

/// <P, Q>_v = (Ĥ_v(P+Q) / (Ĥ_v(P) Ĥ_v(Q)))^(1/2) on a common multiple.
HeightValue pairing(const Curve& E, const CurvePoint& P, const CurvePoint& Q, const Place& v,
                    long vprec, const HeightOptions& opts = {});

struct DegreeRelation {
  Rational degree;  // deg Ĥ_inf(nP) / n^2
  Rational twice_neron_tate;
  long multiple_used = 1;
};
DegreeRelation degree_relation(const Curve& E, const CurvePoint& P, const HeightOptions& opts = {});

struct PowerProbe {
  bool is_power = false;
  Rational twice_neron_tate;  // of the evaluated multiple
  bool p_power_divides = false;
  long multiple_used = 1;
};
PowerProbe power_probe(const Curve& E, const CurvePoint& P, const Place& v, int N, long vprec,
                       const HeightOptions& opts = {});

struct Discrepancy {
  long first_difference = 0;
  long joint_precision = 0;
  bool holds() const { return first_difference >= joint_precision; }
};

/// sigma(P+Q) sigma(P-Q) / (sigma(P)^2 sigma(Q)^2) against x(Q) - x(P).
Discrepancy check_identity_a(const Curve& E, const CurvePoint& P, const CurvePoint& Q,
                             const Place& v, long vprec);
/// sigma(mQ) against sigma(Q)^(m^2) f_m(Q).
Discrepancy check_identity_b(const Curve& E, const CurvePoint& Q, long m, const Place& v,
                             long vprec);
/// The m = p case of (b).
Discrepancy check_identity_c(const Curve& E, const CurvePoint& Q, const Place& v, long vprec);

/// sigma(P) / f_{p^N}([p^N]^{-1}(z(P))) is a p^N-th power, judged to precision.
bool check_sigma_congruence(const Curve& E, const CurvePoint& P, const Place& v, int N,
                            long vprec);

/// The pieces of the idele i(P) behind Ĥ_v(P) = <den(x(P)) / sigma(P)^2>_v.
struct IdeleSummary {
  std::vector<Factor> den_factorization;  // den(x(P)) = prod pi_w^(e_w)
  /// ord_w(i(P)_w) = lambda_w(P) / 2 for finite w != v with lambda_w(P) > 0,
  /// keyed by the monic irreducible of w.
  std::vector<std::pair<Poly, Rational>> component_ords;
  LocalElement sigma;  // sigma_E(P) in k_v
  ModelIso iso;        // E -> model used at v (identity for finite v)
};
IdeleSummary idele_summary(const Curve& E, const CurvePoint& P, const Place& v, long vprec);

/// The model on which local computations at v happen (E, or E' at infinity)
/// and the point transported to it.
struct LocalModel {
  Curve model;
  CurvePoint point;
  int r = 0;  // sigma_E = t^{-r} sigma_model at infinity
};
LocalModel local_model(const Curve& E, const CurvePoint& P, const Place& v);

/// Throws MathError unless the model is integral at v with alpha a v-unit.
void require_ordinary(const Curve& model, const Place& v);

}  // namespace charp
