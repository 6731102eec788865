#pragma once

#include "charp/poly.hpp"

#include <utility>
#include <vector>

namespace charp {

struct Factor {
  Poly f;
  int multiplicity = 1;
};

/// Rabin-style test over F_q; constants are not irreducible.
bool is_irreducible(const Poly& f);

/// Pairwise coprime squarefree monic a_i with f = lead * prod a_i^i.
std::vector<Factor> squarefree_decomposition(const Poly& f);

/// Complete factorization into monic irreducibles, sorted by (degree, coeffs).
/// Randomized equal-degree splitting uses a fixed seed.
std::vector<Factor> factor(const Poly& f);

}  // namespace charp
