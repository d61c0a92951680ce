#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latwalk/laurent.hpp"
#include "latwalk/poly.hpp"

namespace lw {

// Polynomial in x (integer exponents allowed) and t (nonnegative exponents) over Q(i).
class BivarPoly {
 public:
  using Key = std::pair<int, int>;  // (x exponent, t exponent)
  using Map = std::map<Key, GQ>;

  BivarPoly() = default;
  BivarPoly(const GQ& c) { if (!c.is_zero()) c_[{0, 0}] = c; }
  BivarPoly(long c) : BivarPoly(GQ(c)) {}
  static BivarPoly monomial(const GQ& c, int xe, int te);
  static BivarPoly x(int e = 1) { return monomial(GQ(1), e, 0); }
  static BivarPoly t(int e = 1) { return monomial(GQ(1), 0, e); }
  static BivarPoly from_laurent(const LaurentPoly& p, int te = 0);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == Key{0, 0}); }
  bool is_monomial() const { return c_.size() == 1; }
  bool is_t_free() const;
  const Map& terms() const { return c_; }
  GQ coeff(int xe, int te) const;
  void add_term(int xe, int te, const GQ& c);
  int min_x() const;
  int max_x() const;
  int min_t() const;
  int max_t() const;
  // lexicographically leading term: highest x, then highest t
  std::pair<Key, GQ> lead() const;
  // coefficient of t^te as a Laurent polynomial in x
  LaurentPoly t_coeff(int te) const;
  // coefficient of x^xe as a polynomial in t
  PolyQ x_coeff(int xe) const;

  BivarPoly operator-() const;
  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly& operator*=(const GQ& s);
  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(BivarPoly a, const GQ& s) { return a *= s; }
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const BivarPoly& a, const BivarPoly& b) { return !(a == b); }

  BivarPoly pow(int n) const;
  BivarPoly shift_x(int k) const;
  BivarPoly invert_x() const;  // x -> 1/x, exponents negated
  BivarPoly scale_x(const GQ& s) const;  // x -> s x
  BivarPoly derivative_x() const;
  BivarPoly derivative_t() const;
  BivarPoly subs_x(const BivarPoly& v) const;  // nonnegative x exponents only
  GQ eval(const GQ& x, const GQ& t) const;
  BivarPoly eval_x(const GQ& x) const;  // result in t only
  std::optional<BivarPoly> exact_div(const BivarPoly& d) const;
  std::optional<BivarPoly> sqrt_exact() const;
  // gcd of all coefficients up to units is trivial over a field; this returns the
  // gcd in Q(i)[t] of the x-coefficients
  PolyQ t_content() const;

  std::string str() const;

 private:
  Map c_;
};

BivarPoly bivar_gcd(const BivarPoly& a, const BivarPoly& b);

BivarPoly poly_in_t(const PolyQ& p);
BivarPoly poly_in_x(const PolyQ& p);
// univariate view in x; requires t-free
PolyQ as_poly_x(const BivarPoly& p);

}  // namespace lw
