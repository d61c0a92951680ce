#pragma once

#include <utility>
#include <vector>

#include "latwalk/poly.hpp"

namespace lw {

// Roots in Q(i) of a univariate polynomial (each listed once).
// Candidate search gives up on coefficients whose norms exceed a fixed bound.
std::vector<GQ> gaussian_rational_roots(const PolyQ& p);

struct GQFactor {
  PolyQ f;           // monic
  int mult = 1;
  bool irreducible;  // false when the factor was left unsplit (degree >= 3 remainder)
};

// Factorization over Q(i) into linear and quadratic pieces where possible.
// Returns the leading coefficient separately.
std::vector<GQFactor> factor_gq(const PolyQ& p, GQ* lead = nullptr);

}  // namespace lw
