#pragma once

#include <map>
#include <optional>
#include <string>

#include "latwalk/laurent.hpp"

namespace lw {

constexpr int kDefaultOrder = 16;

enum class Region { Pos, Neg, Zero, NonNeg, LeNegM };

// Truncated series in t^(1/d) with Laurent polynomial coefficients in x.
// A term with key k stands for t^(k/d); keys >= trunc_ are unknown (O(t^(trunc_/d))).
class TSeries {
 public:
  static constexpr int kInf = 1 << 28;

  TSeries() : TSeries(kDefaultOrder) {}
  explicit TSeries(int N) : d_(1), trunc_(N) {}
  static TSeries exact(const LaurentPoly& c);
  static TSeries constant(const LaurentPoly& c, int N);
  // c * x^xe * t^(tn/td) mod t^N
  static TSeries monomial(const GQ& c, int xe, int tn, int td, int N);
  static TSeries from_units(int d, int trunc_units, std::map<int, LaurentPoly> terms);

  int denom() const { return d_; }
  int trunc_units() const { return trunc_; }
  bool is_exact() const { return trunc_ >= kInf / 2; }
  mpq_class trunc() const;
  std::optional<mpq_class> valuation() const;
  std::optional<int> valuation_units() const;
  const std::map<int, LaurentPoly>& terms() const { return t_; }
  LaurentPoly coeff(const mpq_class& e) const;
  LaurentPoly coeff_units(int k) const;
  bool is_zero() const { return t_.empty(); }
  // true when every coefficient is free of x
  bool is_x_constant() const;
  // true when no coefficient has a positive (resp. negative) x exponent
  bool x_nonpositive() const;
  bool x_nonnegative() const;
  std::optional<int> x_min() const;
  std::optional<int> x_max() const;

  TSeries with_denom(int d) const;
  TSeries truncated(const mpq_class& N) const;
  TSeries truncated(int N) const { return truncated(mpq_class(N)); }
  TSeries simplified() const;  // smallest denominator

  TSeries operator-() const;
  TSeries& operator+=(const TSeries& o);
  TSeries& operator-=(const TSeries& o);
  TSeries& operator*=(const GQ& s);
  TSeries& operator*=(const LaurentPoly& p);
  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
  friend TSeries operator*(const TSeries& a, const TSeries& b);
  friend TSeries operator*(TSeries a, const GQ& s) { return a *= s; }
  friend TSeries operator*(const GQ& s, TSeries a) { return a *= s; }
  friend TSeries operator*(TSeries a, const LaurentPoly& p) { return a *= p; }
  friend TSeries operator*(const LaurentPoly& p, TSeries a) { return a *= p; }
  TSeries& operator*=(const TSeries& o) { return *this = *this * o; }

  TSeries inv() const;
  // divide every coefficient exactly by a Laurent polynomial; nullopt if some division is inexact
  std::optional<TSeries> div_exact(const LaurentPoly& p) const;
  TSeries sqrt() const;
  TSeries pow(int n) const;

  TSeries mul_t(const mpq_class& e) const;
  TSeries mul_x(int k) const;
  TSeries invert_x() const;
  // substitute x = c * x (c nonzero)
  TSeries scale_x(const GQ& c) const;
  TSeries derivative_x() const;
  TSeries eval_x(const GQ& x) const;
  // substitute x by a series that is constant in x; the series must be a polynomial in x
  TSeries eval_x(const TSeries& rho) const;

  // exact equality on the common known range
  bool equals_mod(const TSeries& o) const;
  // zero below t^N (requires trunc >= N)
  bool is_zero_mod(const mpq_class& N) const;
  // smallest exponent with a nonzero coefficient below the truncation, if any
  std::optional<mpq_class> first_nonzero() const;

  std::string str() const;
  std::string json() const;
  static TSeries parse(const std::string& s);

 private:
  int d_;
  int trunc_;
  std::map<int, LaurentPoly> t_;
  void add_coeff(int k, const LaurentPoly& c);
  void clip();
  friend void unify(TSeries& a, TSeries& b);
};

void unify(TSeries& a, TSeries& b);

TSeries series_add(const TSeries& a, const TSeries& b);
TSeries series_mul(const TSeries& a, const TSeries& b);

TSeries extract_part(const TSeries& f, Region r, int m = 0);

enum class PoleKind { Simple, ValueAt, Double };

// F(rho) with F a series in 1/x; rho constant in x
TSeries value_at_pole(const TSeries& F, const TSeries& rho);
// rho * F'(rho), derivative taken in the variable 1/x
TSeries weight_at_pole(const TSeries& F, const TSeries& rho);
// geometric expansion of 1/(1 - rho x)^k; needs positive valuation of rho or an x cap
TSeries geometric(const TSeries& rho, int k, int N, std::optional<int> xcap = std::nullopt);
// non-negative part of F(1/x)/(1-rho x)^e; value_at returns the x^0 part F(rho)
TSeries pos_part_at_pole(const TSeries& F, const TSeries& rho, PoleKind kind,
                         std::optional<int> xcap = std::nullopt);

}  // namespace lw
