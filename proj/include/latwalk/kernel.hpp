#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latwalk/biseries.hpp"
#include "latwalk/ratfunc.hpp"
#include "latwalk/walk.hpp"

namespace lw {

// K = 1 - t S(x,y) with S = A(x) y + B(x) + C(x)/y = a(y) x + b(y) + c(y)/x.
// The y-side coefficients a, b, c are stored as Laurent polynomials in the variable x.
struct Kernel {
  std::vector<Step> steps;
  LaurentPoly A, B, C;
  LaurentPoly a, b, c;

  BiSeries biseries(int N) const;
  RatFunc A_rf() const;
  RatFunc B_rf() const;
  RatFunc C_rf() const;
  // (1 - tB)^2 - 4 t^2 A C
  RatFunc delta() const;
  std::string str() const;
};

Kernel build_kernel(const WalkModel& m);

struct KernelRoots {
  int N = 0;
  TSeries Y0;        // mod t^N
  TSeries tAY1;      // t A(x) Y1 = ((1 - tB) + sqrt(delta)) / 2, the other root scaled to a power series
  std::optional<TSeries> Y1inv;  // 1/Y1 = A Y0 / C when C is a monomial
  RatFunc product;   // Y0 Y1 = C/A
  RatFunc sum;       // Y0 + Y1 = (1 - tB)/(tA)
  QuadExt Y0_exact;  // (1 - tB)/(2tA) - sqrt(delta)/(2tA)
  bool root_ok = false, product_ok = false, sum_ok = false;
};

// throws MathError when no root is analytic at t = 0
KernelRoots kernel_roots(const Kernel& k, int N);

// (x, y) -> (X, Y). Both are rational in x and y; y occupies the second variable slot of RatFunc.
// Elements of the form (sx * x^ex, ry(x) * y^ey) are flagged as monomial; orbit sums need that form.
struct GroupElement {
  RatFunc X = RatFunc::x(), Y = RatFunc::t();
  bool monomial = true;
  GQ sx = GQ(1);
  int ex = 1;
  RatFunc ry = RatFunc(1);
  int ey = 1;
  int length = 0;
  std::string word;  // generators applied, e.g. "phi.psi"

  std::string x_str() const;
  std::string y_str() const;
  std::string str() const { return "(" + x_str() + ", " + y_str() + ")"; }
  friend bool operator==(const GroupElement& u, const GroupElement& v) { return u.X == v.X && u.Y == v.Y; }
};

struct GroupReport {
  std::vector<GroupElement> elements;
  bool closed = false;
  std::string note;
};

GroupReport walk_group(const Kernel& k, int cap = 16);
// S(X, Y) = S(x, y) checked on the Laurent form
bool preserves_kernel(const Kernel& k, const GroupElement& g);

// sum_k c_k(x,t) y^k
struct YRat {
  std::map<int, RatFunc> c;
  void add(int k, const RatFunc& v);
  bool is_zero() const { return c.empty(); }
  std::string str() const;
  friend bool operator==(const YRat& u, const YRat& v) { return u.c == v.c; }
};

struct OrbitSum {
  int N = 0;
  std::vector<GroupElement> elements;
  std::vector<GQ> coeffs;
  bool group_finite = false;
  bool section_free = false;
  std::vector<std::string> leftover;  // unknowns whose coefficients do not cancel
  YRat rhs_numerator;                 // the orbit sum equals rhs_numerator / K
  LaurentPoly clear;                  // L(x) clearing denominators of the substitutions
  BiSeries cleared;                   // L(x) * sum_g coeff_g * g(x y F) mod t^N
  bool verified = false;              // K * cleared == L * rhs_numerator mod t^N
  std::string json() const;
};

// coefficients default to (-1)^(word length)
OrbitSum orbit_sum(const WalkModel& m, const CoeffTable& tab, const std::vector<GQ>& coeffs = {});

}  // namespace lw
