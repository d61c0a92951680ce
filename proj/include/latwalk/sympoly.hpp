#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "latwalk/ratfunc.hpp"
#include "latwalk/tseries.hpp"

namespace lw {

// exponents of named symbols; absent means 0
using SymMono = std::map<std::string, int>;

// Polynomial in named symbols with coefficients in Q(i)(x, t).
class SymPoly {
 public:
  using Map = std::map<SymMono, RatFunc>;

  SymPoly() = default;
  SymPoly(const RatFunc& c);
  SymPoly(long c) : SymPoly(RatFunc(c)) {}
  static SymPoly sym(const std::string& name, int e = 1);
  static SymPoly term(const SymMono& m, const RatFunc& c);

  const Map& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  std::set<std::string> symbols() const;
  int degree(const std::string& s) const;
  // coefficient of s^k as a polynomial in the remaining symbols
  SymPoly coeff(const std::string& s, int k) const;
  RatFunc coeff(const SymMono& m) const;

  SymPoly operator-() const;
  SymPoly& operator+=(const SymPoly& o);
  SymPoly& operator-=(const SymPoly& o);
  SymPoly& operator*=(const RatFunc& s);
  friend SymPoly operator+(SymPoly a, const SymPoly& b) { return a += b; }
  friend SymPoly operator-(SymPoly a, const SymPoly& b) { return a -= b; }
  friend SymPoly operator*(const SymPoly& a, const SymPoly& b);
  friend SymPoly operator*(SymPoly a, const RatFunc& s) { return a *= s; }
  friend SymPoly operator*(const RatFunc& s, SymPoly a) { return a *= s; }
  friend bool operator==(const SymPoly& a, const SymPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const SymPoly& a, const SymPoly& b) { return !(a == b); }

  SymPoly pow(int n) const;
  SymPoly derivative(const std::string& s) const;
  // d/dx of the coefficients, symbols held fixed
  SymPoly derivative_x() const;
  SymPoly subs(const std::string& s, const SymPoly& v) const;
  SymPoly rename(const std::map<std::string, std::string>& names) const;
  SymPoly map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const;
  SymPoly filter(const std::function<bool(const SymMono&)>& keep) const;

  std::string str() const;
  // integers, x, t, i or I (imaginary unit), identifiers as symbols, + - * / ^ and parentheses;
  // divisors and negative powers must be symbol-free
  static SymPoly parse(const std::string& s);

 private:
  Map c_;
  void add(const SymMono& m, const RatFunc& c);
};

std::string mono_str(const SymMono& m);

// Unknown series in nonnegative powers of x, each with the least exponent that can occur.
// Derived symbol names:
//   ~G        G(1/x)
//   G[k]      [x^k] G
//   G@i#n     sum_l [x^l]G binom(l, n) i^l   (G@-i#n likewise at -i); G@i#0 = G(i)
// Every other name is a scalar series in t.
struct SeriesSpace {
  std::map<std::string, int> valuation;

  bool is_series(const std::string& s) const { return valuation.count(s) > 0; }
  bool is_reflected(const std::string& s) const;
  std::string base(const std::string& s) const;
};

std::string reflected_symbol(const std::string& g);
std::string coeff_symbol(const std::string& g, int k);
// sign +1 for the point i, -1 for -i
std::string point_symbol(const std::string& g, int sign, int n);

enum class Side { None, X, Xbar, Mixed };
Side side_of(const SymMono& m, const SeriesSpace& sp);

// x -> 1/x on coefficients, G <-> ~G on symbols
SymPoly reflect(const SymPoly& p, const SeriesSpace& sp);

// Coefficient r(x, t) = t^-b x^-a N(x, t) / D(x) with D | (1 + x^2)^k, written as a Laurent
// polynomial in x plus principal parts c / (1 - rho x)^j at rho = +-i. All Laurent series are
// taken in the annulus just inside |x| = 1, so 1/(1 - rho x) expands in nonnegative powers.
struct CoeffSplit {
  std::map<int, RatFunc> laurent;                  // exponent -> coefficient in t
  std::map<std::pair<int, int>, RatFunc> poles;    // (sign of rho, j) -> coefficient in t
  RatFunc recombine() const;
};
CoeffSplit split_coefficient(const RatFunc& r);

enum class Part { Neg, Zero, Pos };
// [x^<], [x^0], [x^>] of a polynomial in which no monomial mixes x-side and reflected series.
// New scalars G[k], G@+-i#n appear; throws MathError on mixed monomials or on coefficients
// with denominators other than t^b x^a D(x), D | (1 + x^2)^k.
SymPoly part(const SymPoly& p, Part which, const SeriesSpace& sp);

// [x^<]E + ([x^<]E)(1/x) + [x^0]E with the mixed monomials kept whole. The mixed part must be
// invariant under reflection and have Laurent polynomial coefficients.
SymPoly reflected_sum(const SymPoly& E, const SeriesSpace& sp);

struct SymBinding {
  std::map<std::string, TSeries> series;   // x-side series
  std::map<std::string, TSeries> scalars;
  // resolves ~G, G[k], G@+-i#n from the series; throws MathError for unbound names
  TSeries value(const std::string& name) const;
};

struct Evaluation {
  TSeries value;      // P times clear, expanded in t
  PolyQ clear;        // polynomial in x clearing the t-free denominators
  bool vanishes(int N) const;
  // first t-order (in units of t, rounded down) where the value is nonzero
  std::optional<mpq_class> first_failure() const { return value.first_nonzero(); }
};
// P(x, t) with symbols bound. Denominator factors free of t are cleared first, so the value
// vanishes exactly when P does.
Evaluation evaluate(const SymPoly& P, const SymBinding& b, int N);

}  // namespace lw
