#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latwalk/matrix.hpp"
#include "latwalk/walk.hpp"

namespace lw {

// H(1/x) = (P0(x) + P1(x) sqrt(delta)) H(x) + C(x)
struct CRBVP {
  std::string name;
  GQ p = GQ(1);
  int n = 0;
  RatMatrix P0, P1;
  RatFunc delta;
  std::vector<std::string> unknowns;
  // C(x) = sum_s s * C[s] over scalar labels s; "1" is the constant part
  std::map<std::string, QuadVec> C;

  QuadMatrix M() const { return combine(P0, P1, delta); }
  std::vector<std::string> scalar_labels() const;
  std::string json() const;
};

// sum_k at_inv[k] H_k(1/x) + sum_k at_x[k] H_k(x) + sum_s rest[s] s = 0
struct LinearRelation {
  QuadVec at_inv, at_x;
  std::map<std::string, QuadExt> rest;
  // the same relation with x -> 1/x
  LinearRelation swapped() const;
  std::string str(const std::vector<std::string>& names) const;
};

// M = -A^{-1} B and C = -A^{-1} c from n relations
CRBVP assemble_from_relations(const std::string& name, const std::vector<std::string>& unknowns,
                              const RatFunc& delta, const std::vector<LinearRelation>& rels);

// kernel-root substituted relations (upper half plane at x and 1/x, fourth quadrant combination)
std::vector<LinearRelation> three_quadrant_relations(const GQ& p);
// lower half plane at x and 1/x, second quadrant combination, first/second quadrant combination
std::vector<LinearRelation> outside_quadrant_relations();

// unknowns (Hp, Hp_-1, Hn)
CRBVP assemble_three_quadrant(const GQ& p = GQ(1));
// unknowns (Hn_-1, Hp_-1, Hn, Hp)
CRBVP assemble_outside_quadrant();

// Enumerated data for the labels of a system. Each H_k(x) is a series in nonnegative powers of x:
// negative sections are read with x -> 1/x. Scalars are points like "F_0,-1".
struct Binding {
  int N = 0;
  std::map<std::string, TSeries> H;
  std::map<std::string, TSeries> scalars;
  TSeries at_x(const std::string& label) const;
  TSeries at_inv(const std::string& label) const;
  TSeries scalar(const std::string& label) const;
};
Binding bind_sections(const WalkModel& m, const CoeffTable& tab, const std::vector<std::string>& unknowns,
                      const std::vector<std::string>& scalars = {});

TSeries relation_residual(const LinearRelation& r, const std::vector<std::string>& unknowns, const Binding& b);
// H(1/x) - M H(x) - C componentwise
std::vector<TSeries> system_residual(const CRBVP& c, const Binding& b);

struct AutomorphismReport {
  bool delta_symmetric = false;
  bool au1 = false, au2 = false;
  bool solvable_exact = false;
  std::optional<bool> solvable_series;
  int order = 0;
  std::vector<std::pair<int, int>> au1_bad, au2_bad;
  std::vector<std::string> c_bad;
  bool ok() const { return delta_symmetric && au1 && au2 && solvable_exact && solvable_series.value_or(true); }
  std::string json() const;
};

// au1: P0(x)P0(1/x) + delta P1(x)P1(1/x) = Id, au2: P0(x)P1(1/x) + P1(x)P0(1/x) = 0, exactly;
// solvability M(1/x) C(x) + C(1/x) = 0 exactly per scalar label and, when data is given, mod t^N
AutomorphismReport check_automorphism(const CRBVP& c, const Binding* data = nullptr, int N = 0);

// exact RatFunc basis of {v : v P = 0}, free coordinates last
std::vector<RatVec> left_null_basis(const RatMatrix& P);

enum class EigenTag { NullOfP1, Unit, DoubleRational, Jordan, GaloisPair, Unclassified };
std::string tag_name(EigenTag t);

struct EigenFactor {
  PolyR f;  // monic in lambda
  int mult = 1;
  bool extension = false;  // irreducible quadratic over Q(i)(x, t)
  RatFunc disc;            // discriminant for quadratic factors
};

struct Eigenpair {
  RatFunc lambda;
  RatFunc mu;  // eigenvalue of P1(x)P1(1/x) on the same left vectors
  int alg_mult = 1, geo_mult = 1;
  bool symmetric = false;   // lambda(x) = lambda(1/x)
  bool pairing_ok = false;  // lambda + mu delta = 1 and v P1 P1(1/x) = mu v
  std::vector<RatVec> left;  // left eigenvectors of P0(x)P0(1/x)
  EigenTag tag = EigenTag::Unclassified;
};

struct EigenReport {
  PolyR char_poly, char_poly_P1;
  std::vector<EigenFactor> factors;
  std::vector<Eigenpair> pairs;
  std::vector<std::string> galois;  // quadratic factors left as extensions, as strings
  bool double_quarter = false;      // lambda = 1/4 with multiplicity 2 (recorded, not assumed)
  std::vector<RatFunc> lambdas() const;  // with multiplicity
  std::vector<RatFunc> mus() const;
  std::string json() const;
};

EigenReport eigen_classify(const CRBVP& c);
// eigen analysis of one matrix; pairing uses P1 and delta when given
EigenReport eigen_structure(const RatMatrix& M0, const RatMatrix* P1 = nullptr, const RatFunc* delta = nullptr);

struct SeparableRelation {
  std::vector<std::string> unknowns;
  RatVec at_inv, at_x;
  std::map<std::string, QuadExt> rest;
  RatVec v;      // v(x) with v(x) P1(x) = 0
  RatFunc k, f;  // v(x) P0(x) = k(x) v(1/x), k = f(x)/f(1/x)
  bool separable = false;

  // clears denominators of the unknown coefficients and removes common factors
  SeparableRelation normalized() const;
  LinearRelation as_linear() const;
  std::string str() const;
  std::string json() const;
};

// v(x) H(1/x) - (v P0)(x) H(x) - v(x) C(x) = 0 for v with v P1 = 0
SeparableRelation null_relation(const CRBVP& c, const RatVec& v);
// balances v by the antisymmetric split of k so that v_L(x) P0(x) = v_L(1/x)
SeparableRelation balanced_null_vector(const CRBVP& c, const RatVec& v);
SeparableRelation combine_relations(const std::vector<SeparableRelation>& rels, const std::vector<RatFunc>& w);

// [x^>] and [x^<] parts of a separable relation. The positive part reads
// sum_k at_x[k] H_k(x) + boundary + PR(x) = 0, where boundary collects the finitely many
// coefficients [x^i]H_k that cross x^0.
struct BoundaryTerm {
  RatFunc coeff;  // multiplies label's x^i coefficient
  std::string label;
  int i = 0;
  bool from_inv = false;
};
struct SplitRelation {
  SeparableRelation rel;  // denominators cleared
  std::vector<BoundaryTerm> pos_boundary, neg_boundary;
  std::map<std::string, TSeries> PR, NR;  // split of each rest coefficient
  int N = 0;
  std::string pos_str() const;
  std::string neg_str() const;
};
SplitRelation split_relation(const SeparableRelation& r, int N);
TSeries separable_residual(const SeparableRelation& r, const Binding& b);
// the two part equations evaluated on data
std::pair<TSeries, TSeries> split_residuals(const SplitRelation& s, const Binding& b);

struct SymmetricEigvector {
  RatVec v;
  RatFunc m0;
  bool ok = false;  // v(x) P0(1/x) = m0(1/x) v(1/x)
};
// v(x) = v3(x) + v3(1/x) P0(x) / m0(x), m0 from the symmetric split of lambda
SymmetricEigvector symmetric_eigvector(const CRBVP& c, const RatFunc& lambda, const RatVec& seed);

// Data of a Galois-conjugate eigen-subspace:
// m_0 = a + b sqrt(d), m_1 = s + r sqrt(d), v(1/x) C = J1 + J2 sqrt(d) + J3 sqrt(D) + J4 sqrt(d) sqrt(D)
struct GaloisData {
  RatFunc a, b, s, r, d, D;
  RatFunc J1, J2, J3, J4;
};

// element of Q(x,t)(sqrt d)(sqrt D) as u + w sqrt(D), u and w over sqrt(d)
struct BiQuad {
  QuadExt u, w;
  RatFunc D;
  friend BiQuad operator+(const BiQuad& p, const BiQuad& q);
  friend BiQuad operator-(const BiQuad& p, const BiQuad& q);
  friend BiQuad operator*(const BiQuad& p, const BiQuad& q);
  friend bool operator==(const BiQuad& p, const BiQuad& q) { return p.u == q.u && p.w == q.w; }
};

struct ConjugateProduct {
  RatFunc f, g;  // offset solving (s + r sqrt d)(f + g sqrt d) = J3 + J4 sqrt d
  RatFunc F, G;  // (a + b sqrt d)(f + g sqrt d) - (J1 + J2 sqrt d)
  QuadExt S;     // norm over sqrt(d) of m_0 + m_1 sqrt(D), an element over sqrt(D)
  RatMatrix A0, A1;  // reduced 2x2 system (R, I)(1/x) = (A0 + A1 sqrt D)(R, I)(x)
  std::string json() const;
};
// throws MathError when s^2 - d r^2 = 0
ConjugateProduct conjugate_product(const GaloisData& g);
// checks (R~ + F)^2 - (I~ + G)^2 d = S ((R + f)^2 - (I + g)^2 d) where R~ + I~ sqrt d is the
// image of R + I sqrt d under the conjugate pair of equations; exact over both extensions
bool product_relation_holds(const GaloisData& g, const ConjugateProduct& cp, const RatFunc& R, const RatFunc& I);
// the same identity expanded in t with sqrt(D) read as a series (d must be a perfect square
// of a series or zero is not required: d enters only polynomially)
bool product_relation_series(const GaloisData& g, const ConjugateProduct& cp, const RatFunc& R, const RatFunc& I, int N);

}  // namespace lw
