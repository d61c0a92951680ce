#pragma once

#include <map>
#include <optional>
#include <string>

#include "latwalk/gq.hpp"

namespace lw {

// Sparse Laurent polynomial in x over Q(i).
class LaurentPoly {
 public:
  using Map = std::map<int, GQ>;

  LaurentPoly() = default;
  LaurentPoly(const GQ& c) { if (!c.is_zero()) c_[0] = c; }
  LaurentPoly(long c) : LaurentPoly(GQ(c)) {}
  static LaurentPoly monomial(const GQ& c, int e);
  static LaurentPoly x(int e = 1) { return monomial(GQ(1), e); }

  bool is_zero() const { return c_.empty(); }
  bool is_monomial() const { return c_.size() == 1; }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && c_.begin()->first == 0); }
  int min_exp() const;
  int max_exp() const;
  size_t size() const { return c_.size(); }
  GQ coeff(int e) const;
  void add_term(int e, const GQ& c);
  const Map& terms() const { return c_; }

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const GQ& s);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const GQ& s) { return a *= s; }
  friend LaurentPoly operator*(const GQ& s, LaurentPoly a) { return a *= s; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly shift(int k) const;
  LaurentPoly invert_x() const;
  LaurentPoly derivative() const;
  LaurentPoly pow(int n) const;
  GQ eval(const GQ& x) const;
  // keep exponents e with lo <= e <= hi
  LaurentPoly window(int lo, int hi) const;
  std::optional<LaurentPoly> exact_div(const LaurentPoly& d) const;

  std::string str(const char* var = "x") const;

 private:
  Map c_;
};

}  // namespace lw
