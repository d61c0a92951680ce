#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latwalk/bivar.hpp"
#include "latwalk/tseries.hpp"

namespace lw {

// Reduced quotient of polynomials in (x, t). The denominator's lexicographically
// leading coefficient is 1 and both parts carry only nonnegative powers of x.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(const GQ& c) : num_(c), den_(1) {}
  RatFunc(long c) : RatFunc(GQ(c)) {}
  RatFunc(const BivarPoly& p);
  RatFunc(const BivarPoly& num, const BivarPoly& den);
  static RatFunc x(int e = 1);
  static RatFunc t(int e = 1);

  const BivarPoly& num() const { return num_; }
  const BivarPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  GQ constant_value() const;
  bool is_t_free() const { return num_.is_t_free() && den_.is_t_free(); }
  bool is_x_free() const;

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  RatFunc inv() const;
  RatFunc pow(int n) const;
  RatFunc invert_x() const;
  RatFunc scale_x(const GQ& s) const;
  RatFunc derivative_x() const;
  RatFunc derivative_t() const;
  // substitute x by a rational function
  RatFunc subs_x(const RatFunc& v) const;
  RatFunc subs_x(const GQ& v) const;
  // square root inside Q(i)(x, t) if one exists
  std::optional<RatFunc> sqrt() const;

  std::string str() const;
  static RatFunc parse(const std::string& s);

 private:
  BivarPoly num_, den_;
  struct Raw {};
  RatFunc(const BivarPoly& n, const BivarPoly& d, Raw) : num_(n), den_(d) {}
  friend RatFunc rf_normalize(const BivarPoly& num, const BivarPoly& den);
};

RatFunc rf_normalize(const BivarPoly& num, const BivarPoly& den);
inline RatFunc rf_invert_x(const RatFunc& f) { return f.invert_x(); }

// a + b * sqrt(delta)
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const RatFunc& a, const RatFunc& b, const RatFunc& delta) : a_(a), b_(b), delta_(delta) {}
  static QuadExt rational(const RatFunc& a, const RatFunc& delta) { return QuadExt(a, RatFunc(), delta); }

  const RatFunc& a() const { return a_; }
  const RatFunc& b() const { return b_; }
  const RatFunc& delta() const { return delta_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  QuadExt operator-() const { return QuadExt(-a_, -b_, delta_); }
  friend QuadExt operator+(const QuadExt& u, const QuadExt& v);
  friend QuadExt operator-(const QuadExt& u, const QuadExt& v);
  friend QuadExt operator*(const QuadExt& u, const QuadExt& v);
  friend QuadExt operator*(const QuadExt& u, const RatFunc& s);
  friend QuadExt operator/(const QuadExt& u, const QuadExt& v);
  friend bool operator==(const QuadExt& u, const QuadExt& v) { return u.a_ == v.a_ && u.b_ == v.b_; }
  friend bool operator!=(const QuadExt& u, const QuadExt& v) { return !(u == v); }

  QuadExt conj() const { return QuadExt(a_, -b_, delta_); }
  RatFunc norm() const { return a_ * a_ - b_ * b_ * delta_; }
  QuadExt inv() const;
  QuadExt invert_x() const;

  std::string str() const;

 private:
  RatFunc a_, b_, delta_;
  static const RatFunc& common_delta(const QuadExt& u, const QuadExt& v);
};

// Power-series expansion in t. Denominator factors are expanded in nonnegative powers of x;
// when a t-coefficient needs an infinite x expansion, xcap bounds it (exponents <= xcap kept).
TSeries rf_to_series(const RatFunc& f, int N, std::optional<int> xcap = std::nullopt);
TSeries rf_to_series(const QuadExt& f, int N, std::optional<int> xcap = std::nullopt);
// numerator series divided by a polynomial denominator
TSeries series_div_poly(const TSeries& num, const BivarPoly& den, std::optional<int> xcap = std::nullopt);
TSeries poly_to_series(const BivarPoly& p, int N);
// sqrt(delta) under the fixed branch
TSeries sqrt_series(const RatFunc& delta, int N);

enum class SplitMode { Antisymmetric, Symmetric };

struct SplitResult {
  bool ok = false;      // false: an extension of Q(i) is needed
  RatFunc f;            // the split factor (scaled by sqrt(residual) when ok)
  GQ residual = GQ(1);  // constant c with g = c * f(x) f(1/x) before scaling (symmetric mode)
  std::string note;
};

// antisymmetric: g(x) g(1/x) = 1, returns f with g = f(x)/f(1/x)
// symmetric: g(x) = g(1/x), returns m0 with g = m0(x) m0(1/x)
SplitResult multiplicative_split(const RatFunc& g, SplitMode mode);

}  // namespace lw
