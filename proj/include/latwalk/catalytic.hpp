#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latwalk/crbvp.hpp"
#include "latwalk/sympoly.hpp"

namespace lw {

// P(x0; scalars; x, t) = 0 where x0 is the series named `catalytic`.
struct CatalyticEquation {
  std::string label;
  std::string catalytic;
  SymPoly poly;
  SeriesSpace space;
  std::vector<std::string> scalars;  // all other symbols, sorted

  int degree() const { return poly.degree(catalytic); }
  SymPoly coeff(int k) const { return poly.coeff(catalytic, k); }
  std::string json() const;
  // rows: power of x0, monomial in the scalars, coefficient
  std::string csv() const;
};
CatalyticEquation make_catalytic(const std::string& label, const std::string& catalytic, const SymPoly& poly,
                                 const SeriesSpace& space);

struct ResidualReport {
  int N = 0;
  bool ok = false;
  std::optional<mpq_class> first_failure;  // t-exponent of the first nonzero term
  std::string json() const;
};
ResidualReport residual_report(const SymPoly& P, const SymBinding& b, int N);

// A(1/x) - m0(x) A(x) = sqrt(delta) B(x); A and B contain only x-side series and scalars
struct SeparatedInput {
  SymPoly A, B;
  RatFunc delta, m0;
  SeriesSpace space;
  std::string catalytic;          // series that plays x0 in the cubic
  std::optional<RatFunc> weight;  // symmetric multiplier; chosen as a power of delta when absent
};

// With s = 2 m0 = +-1 and the weight w:
//   w (A^2 - s A A~ + A~^2) = wC4,   w A^3 = wC4 A + wC5
// wC4 and wC5 contain only scalar symbols.
struct SeparatedCubic {
  SeparatedInput input;
  RatFunc weight;
  int sigma = 1;
  SymPoly wC4, wC5;
  SymPoly quadratic;  // w (A^2 - s A A~ + A~^2) - wC4
  CatalyticEquation cubic;  // w A^3 - wC4 A - wC5 with A expanded

  SymPoly C4() const { return wC4 * weight.inv(); }
  SymPoly C5() const { return wC5 * weight.inv(); }
  // the input relation, the quadratic and the cubic on data
  struct Check {
    ResidualReport relation, quadratic, cubic;
    bool ok() const { return relation.ok && quadratic.ok && cubic.ok; }
  };
  // sqrt(delta) is read from the scalar `sqrt_symbol` of the binding
  Check check(const SymBinding& b, int N, const std::string& sqrt_symbol) const;
  std::string json() const;
  std::string csv() const;
};

// throws MathError when m0 is not +-1/2, when no weight makes the coefficients splittable, or when
// the series do not drop out of C4 or C5
SeparatedCubic derive_separated_cubic(const SeparatedInput& in);

// f with f(1/x) - m0(x) f(x) = c1(x); throws MathError when m0(x) m0(1/x) = 1 and no solution exists
RatFunc automorphism_offset(const RatFunc& c1, const RatFunc& m0);

// For a left vector v with v(1/x) P0(x) = m0(x) v(x):
//   A = v.H + f,  B = v(1/x) P1(x) H(x) + v(1/x) C_sqrt
// with the offset f absorbing v(1/x) C_rational. Unknown labels become series symbols
// (valuation 1 for Hn/Vn labels, 0 otherwise) and scalar labels become scalar symbols.
SeparatedInput separated_from_crbvp(const CRBVP& c, const RatVec& v, const RatFunc& m0, const std::string& catalytic);
SeriesSpace crbvp_space(const CRBVP& c);
// the series part of A (v.H) and the offset separately
struct EigenCombination {
  SymPoly vH;
  SymPoly offset;  // scalar symbols allowed (one term per scalar label)
};
EigenCombination eigen_combination(const CRBVP& c, const RatVec& v, const RatFunc& m0);

// p with every power s^e, e >= d, reduced by s^d -> value
SymPoly reduce_power(const SymPoly& p, const std::string& s, int d, const SymPoly& value);
// q / p when q is a symbol-free multiple of p
std::optional<RatFunc> proportional_factor(const SymPoly& p, const SymPoly& q);

// ---------------------------------------------------------------- Newton polygon

struct PuiseuxSegment {
  mpq_class exponent;  // roots behave like c t^exponent
  int count = 0;
  int from = 0, to = 0;  // x-degrees of the end points
  PolyQ edge;            // edge polynomial in c
  std::vector<GQ> rational_roots;
};

struct PuiseuxLeading {
  std::vector<std::pair<int, mpq_class>> points;  // (x-degree, t-valuation) of the known coefficients
  std::vector<PuiseuxSegment> segments;
  int zero_roots = 0;  // roots equal to 0 (x divides the polynomial)
  int total() const;
  // roots tending to 0 with t: the count of Theorem 2 when the t^0 part is a monomial x^k
  int small_roots() const;
  std::string json() const;
};

// coefficients[k] multiplies x^k; each must be free of x. Throws MathError when all vanish.
PuiseuxLeading newton_puiseux_leading(const std::vector<TSeries>& coefficients);
// a series whose t-coefficients are polynomials in x, regrouped by powers of x
std::vector<TSeries> x_coefficients(const TSeries& s);

// ---------------------------------------------------------------- nondegeneracy

struct NondegeneracyReport {
  int N = 0;
  PuiseuxLeading roots;  // of d/dx0 P on data
  std::optional<mpq_class> root_exponent;
  int root_count = 0;
  PolyQ edge;
  TSeries block;  // P_{x0 x0} P_{xx} - P_{x0 x}^2 on data
  std::optional<mpq_class> block_exponent;
  PolyQ block_leading;  // leading coefficient as a polynomial in c
  bool block_ok = false;
  std::optional<mpq_class> scalar_exponent;
  GQ scalar_leading;  // leading coefficient of det[d P / d s_j (X_i)] divided by V(c)
  bool scalar_ok = false;
  bool ok = false;
  std::string note;
  std::string json() const;
};

// Leading-order certificate that the Jacobian of the system
//   P(X_i) = P_{x0}(X_i) = P_x(X_i) = 0,  i = 1..k
// in the unknowns x0(X_i), X_i and the k scalars is nonsingular. The roots X_i of P_{x0} on data
// come from the Newton polygon; both the 2x2 blocks and the scalar block are expanded at
// X = c t^e with c a root of the edge polynomial, symbolically in c.
NondegeneracyReport jacobian_nondegeneracy(const CatalyticEquation& eq, const SymBinding& b, int N);

// ---------------------------------------------------------------- solvable k

struct SolvableKRow {
  int equation = 0;  // 1..4
  int separation = 1;  // 1: rational separation, 2: sqrt(delta)-weighted separation
  PolyQ poly;          // in k
  std::vector<GQ> k_roots;
  std::vector<GQ> lambdas;  // 1 / (1 - k)
  std::vector<PolyQ> other_factors;
};

struct SolvableK {
  int n = 0;
  std::vector<SolvableKRow> rows;
  std::optional<bool> reciprocal;  // odd n: roots of the second case are the reciprocals of the first
  std::string json() const;
  std::string csv() const;
  std::string text() const;
};

// throws MathError for n < 2
SolvableK solvable_k(int n);

}  // namespace lw
