#pragma once

#include <map>
#include <string>

#include "latwalk/tseries.hpp"

namespace lw {

// Series in t (integer exponents) whose coefficients are Laurent polynomials in x and y.
// Stored as t-exponent -> y-exponent -> Laurent polynomial in x.
class BiSeries {
 public:
  using YMap = std::map<int, LaurentPoly>;

  explicit BiSeries(int N = kDefaultOrder) : trunc_(N) {}
  // c * x^a * y^b * t^n
  static BiSeries monomial(const GQ& c, int a, int b, int n, int N);

  int trunc() const { return trunc_; }
  const std::map<int, YMap>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  void add_term(int n, int yexp, const LaurentPoly& c);
  LaurentPoly coeff(int n, int yexp) const;
  // smallest / largest y exponent among stored terms
  std::optional<int> y_min() const;
  std::optional<int> y_max() const;

  BiSeries operator-() const;
  BiSeries& operator+=(const BiSeries& o);
  BiSeries& operator-=(const BiSeries& o);
  friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
  friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

  BiSeries truncated(int N) const;
  BiSeries swap_xy() const;
  // embeds a series in x (integer t exponents) as y-degree 0
  static BiSeries from_x(const TSeries& s);
  // embeds a series whose "x" variable is read as y
  static BiSeries from_y(const TSeries& s);
  bool is_zero_mod(int N) const;

  std::string str() const;

 private:
  int trunc_;
  std::map<int, YMap> t_;
};

enum class SubstMode { Y, YInverse };

// Substitute y = root (mode Y) or 1/y = root (mode YInverse).
TSeries subst_kernel_root(const BiSeries& F, const TSeries& root, SubstMode mode);

}  // namespace lw
