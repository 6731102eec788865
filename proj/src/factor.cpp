#include "charp/factor.hpp"

#include "charp/errors.hpp"

#include <algorithm>
#include <random>

namespace charp {

namespace {

Poly frobenius_step(const Poly& x, const Poly& f) {
  return x.powmod(x.field()->order(), f);
}

void sort_factors(std::vector<Factor>& fs) {
  std::sort(fs.begin(), fs.end(), [](const Factor& a, const Factor& b) {
    if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
    const auto& ca = a.f.coeffs();
    const auto& cb = b.f.coeffs();
    return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
  });
}

void equal_degree_split(const Poly& f, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const FieldPtr& F = f.field();
  const uint64_t q = F->order();
  for (;;) {
    Poly a = Poly::random(F, f.degree() - 1, rng);
    if (a.degree() < 1) continue;
    Poly g = gcd(a, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
    // (q^d - 1)/2 = (q - 1)/2 * (1 + q + ... + q^{d-1})
    Poly s = a % f;
    Poly acc = s;
    for (int i = 1; i < d; ++i) {
      s = s.powmod(q, f);
      acc = (acc * s) % f;
    }
    Poly b = acc.powmod((q - 1) / 2, f);
    b = b - Poly::constant(F, 1);
    g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split(f / g, d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Poly& f) {
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  const Poly m = f.monic();
  const Poly t = Poly::var(f.field());
  Poly x = t;
  for (int k = 1; k <= n / 2; ++k) {
    x = frobenius_step(x, m);
    if (!gcd(x - t, m).is_one()) return false;
  }
  return true;
}

std::vector<Factor> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw MathError("squarefree decomposition of zero");
  std::vector<Factor> out;
  Poly c = f.monic();
  if (c.degree() < 1) return out;
  const int p = static_cast<int>(f.field()->characteristic());
  std::vector<Poly> parts;  // parts[i] has multiplicity i+1
  auto put = [&](const Poly& a, int mult) {
    if (a.degree() < 1) return;
    if (static_cast<int>(parts.size()) < mult) parts.resize(mult, Poly::constant(f.field(), 1));
    parts[mult - 1] = parts[mult - 1] * a;
  };
  int scale = 1;
  while (c.degree() >= 1) {
    const Poly d = c.derivative();
    if (d.is_zero()) {
      c = c.frobenius_root();
      scale *= p;
      continue;
    }
    Poly g = gcd(c, d);
    Poly w = c / g;
    int i = 1;
    while (w.degree() >= 1) {
      const Poly y = gcd(w, g);
      const Poly z = w / y;
      put(z.monic(), i * scale);
      ++i;
      w = y;
      g = g / y;
    }
    // g now has only exponents divisible by p
    if (g.degree() >= 1) {
      c = g.monic().frobenius_root();
      scale *= p;
    } else {
      break;
    }
  }
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].degree() >= 1) out.push_back({parts[i].monic(), static_cast<int>(i + 1)});
  }
  return out;
}

std::vector<Factor> factor(const Poly& f) {
  std::vector<Factor> out;
  std::mt19937_64 rng(0x5eedf00dULL);
  for (const Factor& sq : squarefree_decomposition(f)) {
    Poly rest = sq.f;
    const Poly t = Poly::var(f.field());
    Poly x = t;
    for (int d = 1; rest.degree() >= 1; ++d) {
      if (2 * d > rest.degree()) {
        out.push_back({rest.monic(), sq.multiplicity});
        break;
      }
      x = frobenius_step(x % rest, rest);
      const Poly g = gcd(x - t, rest);
      if (g.degree() >= 1) {
        std::vector<Poly> pieces;
        equal_degree_split(g, d, rng, pieces);
        for (const Poly& piece : pieces) out.push_back({piece.monic(), sq.multiplicity});
        rest = rest / g;
        x = x % rest;
      }
    }
  }
  // merge equal factors coming from different squarefree parts
  sort_factors(out);
  std::vector<Factor> merged;
  for (const Factor& fa : out) {
    if (!merged.empty() && merged.back().f == fa.f) {
      merged.back().multiplicity += fa.multiplicity;
    } else {
      merged.push_back(fa);
    }
  }
  return merged;
}

FieldPtr FieldSpec::build() const {
  if (!is_prime_number(p) || p == 2) throw MathError("p must be an odd prime");
  FieldPtr base = Field::prime(p);
  if (n == 1) {
    if (!modulus.empty() && modulus.size() != 2) {
      throw MathError("modulus given for n = 1 must be linear or omitted");
    }
    return base;
  }
  if (n < 1) throw MathError("n must be positive");
  if (static_cast<int>(modulus.size()) != n + 1) {
    throw MathError("modulus must have degree n");
  }
  std::vector<Elem> m;
  for (uint32_t c : modulus) m.push_back(c % p);
  if (m.back() != 1) throw MathError("modulus must be monic");
  if (!is_irreducible(Poly(base, m))) throw MathError("modulus is not irreducible");
  return Field::extension(base, m);
}

}  // namespace charp
