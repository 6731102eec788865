#include "doctest.h"

#include "charp/factor.hpp"
#include "charp/parser.hpp"

#include <map>
#include <random>

using namespace charp;

namespace {

Poly expand(const std::vector<Factor>& fs, const FieldPtr& F) {
  Poly r = Poly::constant(F, 1);
  for (const auto& f : fs) r = r * f.f.pow(f.multiplicity);
  return r;
}

// irreducibility by brute force over all monic divisors of degree <= deg/2
bool irreducible_oracle(const Poly& f) {
  const FieldPtr& F = f.field();
  const uint64_t q = F->order();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    std::vector<Elem> c(d + 1, 0);
    c[d] = 1;
    while (true) {
      if ((f % Poly(F, c)).is_zero()) return false;
      int i = 0;
      while (i < d && ++c[i] == q) c[i++] = 0;
      if (i == d) break;
    }
  }
  return f.degree() >= 1;
}

}  // namespace

TEST_CASE("discriminant of the worked example factors as expected") {
  auto F = Field::prime(3);
  const Poly disc = parse_poly("-(t+1)^3*(t-1)^5*(t^2-t-1)^2", F);
  const auto fs = factor(disc);
  REQUIRE(fs.size() == 3);
  std::map<std::string, int> got;
  for (const auto& f : fs) got[format_poly(f.f)] = f.multiplicity;
  CHECK(got == std::map<std::string, int>{{"t + 1", 3}, {"t - 1", 5}, {"t^2 - t - 1", 2}});
  CHECK(expand(fs, F).scaled(disc.lead()) == disc);
}

TEST_CASE("irreducibility test agrees with exhaustive search") {
  std::mt19937_64 rng(11);
  for (uint32_t p : {3u, 5u}) {
    auto F = Field::prime(p);
    for (int i = 0; i < 150; ++i) {
      const Poly f = Poly::random(F, 1 + static_cast<int>(rng() % 6), rng, true);
      CHECK(is_irreducible(f) == irreducible_oracle(f));
    }
  }
}

TEST_CASE("factorization reconstructs random polynomials") {
  std::mt19937_64 rng(12);
  FieldSpec s9;
  s9.p = 3;
  s9.n = 2;
  s9.modulus = {1, 0, 1};
  for (auto F : {Field::prime(3), Field::prime(5), Field::prime(7), s9.build()}) {
    for (int i = 0; i < 40; ++i) {
      // products with repeated and p-th power factors
      Poly f = Poly::random(F, 1 + static_cast<int>(rng() % 5), rng, true);
      f = f * Poly::random(F, 1 + static_cast<int>(rng() % 4), rng, true).pow(2);
      if (i % 3 == 0) f = f * Poly::random(F, 1, rng, true).pow(F->characteristic());
      const auto fs = factor(f);
      CHECK(expand(fs, F) == f);
      for (size_t k = 0; k < fs.size(); ++k) {
        CHECK(fs[k].f.is_monic());
        CHECK(is_irreducible(fs[k].f));
        if (k > 0) CHECK(!(fs[k].f == fs[k - 1].f));
      }
      const auto sq = squarefree_decomposition(f);
      CHECK(expand(sq, F) == f);
      for (const auto& part : sq) CHECK(gcd(part.f, part.f.derivative()).is_one());
    }
  }
}
