#include <algorithm>
#include <random>

#include "doctest.h"
#include "latwalk/catalytic.hpp"

using namespace lw;

namespace {

SymPoly S(const char* s) { return SymPoly::parse(s); }
RatFunc R(const char* s) { return RatFunc::parse(s); }

// x - c t^e as a series in t with polynomial coefficients in x
TSeries linear_factor(const GQ& c, int e, int K) {
  std::map<int, LaurentPoly> m;
  m[0] = LaurentPoly::x(1);
  m[e] -= LaurentPoly(c);
  return TSeries::from_units(1, K, m);
}

std::vector<mpq_class> exponents_with_multiplicity(const PuiseuxLeading& p) {
  std::vector<mpq_class> out(p.zero_roots, mpq_class(-1));
  for (const auto& s : p.segments)
    for (int k = 0; k < s.count; ++k) out.push_back(s.exponent);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("solvable k against the binomial expansion of (1 + s)^n") {
  for (int n = 2; n <= 10; ++n) {
    // (1 + s)^n: even powers give the second case in k = s^2, odd powers the first
    PolyQ one_s = PolyQ(std::vector<GQ>{GQ(1), GQ(1)}).pow(n);
    std::vector<GQ> even, odd;
    for (int m = 0; m <= n; ++m) (m % 2 ? odd : even).push_back(one_s.coeff(m));
    SolvableK sk = solvable_k(n);
    REQUIRE(sk.rows.size() == 2);
    CHECK(sk.rows[0].poly == PolyQ(odd));
    CHECK(sk.rows[1].poly == PolyQ(even));
    for (const auto& row : sk.rows) {
      for (size_t i = 0; i < row.k_roots.size(); ++i) {
        CHECK(row.poly.eval(row.k_roots[i]).is_zero());
        CHECK(row.lambdas[i] == (GQ(1) - row.k_roots[i]).inv());
      }
      int deg = static_cast<int>(row.k_roots.size());
      for (const auto& f : row.other_factors) deg += f.degree();
      CHECK(deg == row.poly.degree());
    }
    CHECK(sk.reciprocal.has_value() == (n % 2 == 1));
    if (n % 2) CHECK(*sk.reciprocal);
  }
}

TEST_CASE("solvable k small cases") {
  SolvableK s3 = solvable_k(3);
  CHECK(s3.rows[0].equation == 2);
  CHECK(s3.rows[0].k_roots == std::vector<GQ>{GQ(-3)});
  CHECK(s3.rows[0].lambdas == std::vector<GQ>{GQ::frac(1, 4)});
  CHECK(s3.rows[1].equation == 4);
  CHECK(s3.rows[1].k_roots == std::vector<GQ>{GQ::frac(-1, 3)});
  // 1/(1 - k) at k = -1/3
  CHECK(s3.rows[1].lambdas == std::vector<GQ>{GQ::frac(3, 4)});
  SolvableK s2 = solvable_k(2);
  CHECK(s2.rows[1].equation == 3);
  CHECK(s2.rows[1].k_roots == std::vector<GQ>{GQ(-1)});
  CHECK(s2.rows[1].lambdas == std::vector<GQ>{GQ::frac(1, 2)});
  CHECK_THROWS_AS(solvable_k(1), MathError);
  CHECK(s3.text().find("k=-3 lambda=1/4") != std::string::npos);
  CHECK(s3.csv().rfind("equation,n,separation,poly,k,lambda\n", 0) == 0);
}

TEST_CASE("Newton polygon leading exponents") {
  {
    // x - t
    PuiseuxLeading p = newton_puiseux_leading(x_coefficients(linear_factor(GQ(1), 1, 6)));
    REQUIRE(p.segments.size() == 1);
    CHECK(p.segments[0].exponent == 1);
    CHECK(p.segments[0].count == 1);
    CHECK(p.segments[0].rational_roots == std::vector<GQ>{GQ(1)});
  }
  {
    // x^3 - (1 + 2x^2 + x^4) t^2
    TSeries s = rf_to_series(R("x^3 - (1 + 2*x^2 + x^4)*t^2"), 6);
    PuiseuxLeading p = newton_puiseux_leading(x_coefficients(s));
    CHECK(p.small_roots() == 3);
    REQUIRE(!p.segments.empty());
    CHECK(p.segments[0].exponent == mpq_class(2, 3));
    CHECK(p.segments[0].edge == PolyQ(std::vector<GQ>{GQ(-1), GQ(0), GQ(0), GQ(1)}));
  }
  CHECK_THROWS_AS(newton_puiseux_leading({TSeries::exact(LaurentPoly()).truncated(5)}), MathError);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> ex(0, 4), co(1, 5);
  for (int trial = 0; trial < 40; ++trial) {
    const int K = 30;
    int n = 1 + trial % 5;
    TSeries prod = TSeries::exact(LaurentPoly(1)).truncated(K);
    std::vector<mpq_class> want;
    for (int i = 0; i < n; ++i) {
      int e = ex(rng);
      prod = prod * linear_factor(GQ(co(rng)), e, K);
      want.push_back(e);
    }
    std::sort(want.begin(), want.end());
    CHECK(exponents_with_multiplicity(newton_puiseux_leading(x_coefficients(prod))) == want);
  }
}

TEST_CASE("power reduction and proportionality") {
  SymPoly p = S("a^5 + a^2*b + a");
  SymPoly r = reduce_power(p, "a", 2, S("b + 1"));
  // a^5 = a (b + 1)^2, a^2 b = (b + 1) b
  CHECK(r == S("a*(b+1)^2 + (b+1)*b + a"));
  auto f = proportional_factor(S("a + x*b"), S("(a + x*b)*t/(1+x)"));
  REQUIRE(f);
  CHECK(*f == R("t/(1+x)"));
  CHECK_FALSE(proportional_factor(S("a + b"), S("a - b")));
}

TEST_CASE("automorphism offset") {
  RatFunc m0 = RatFunc(GQ::frac(1, 2));
  for (const char* c : {"1/(1+x^2)", "x/t", "(x^3 - 1)/(t^2*x)"}) {
    RatFunc c1 = R(c);
    RatFunc f = automorphism_offset(c1, m0);
    CHECK(f.invert_x() - m0 * f == c1);
  }
  // m0 = 1: f(1/x) - f(x) is antisymmetric, so a symmetric right side has no solution
  CHECK_THROWS_AS(automorphism_offset(R("x + 1/x"), RatFunc(1)), MathError);
  CHECK(automorphism_offset(RatFunc(), RatFunc(1)).is_zero());
}

TEST_CASE("separated cubic with B = 0") {
  SeparatedInput in;
  in.A = S("G");
  in.delta = R("1 - 4*t^2*(x + 1/x)");
  in.m0 = RatFunc(GQ::frac(1, 2));
  in.space = SeriesSpace{{{"G", 0}}};
  in.catalytic = "G";
  SeparatedCubic sc = derive_separated_cubic(in);
  // (G~ - G/2)^2 keeps only G[0] after the reflected sum
  CHECK(sc.C4() == SymPoly::sym("G[0]", 2) * RatFunc(GQ::frac(3, 4)));
  for (const auto& s : sc.wC5.symbols()) CHECK(!in.space.is_series(s));
  CHECK(sc.cubic.degree() == 3);
  CHECK(sc.cubic.scalars == std::vector<std::string>{"G[0]"});

  SeparatedInput bad = in;
  bad.m0 = RatFunc(GQ::frac(1, 3));
  CHECK_THROWS_AS(derive_separated_cubic(bad), MathError);
  bad = in;
  bad.A = S("~G");
  CHECK_THROWS_AS(derive_separated_cubic(bad), MathError);
}

TEST_CASE("nondegeneracy refuses a double root") {
  // (x0 - t x)^2 with x0 = t x: d/dx0 P vanishes identically on the data
  SeriesSpace sp{{{"f", 0}}};
  CatalyticEquation eq = make_catalytic("double", "f", S("(f - t*x)^2"), sp);
  SymBinding b;
  b.series["f"] = TSeries::from_units(1, 8, {{1, LaurentPoly::x(1)}});
  CHECK(residual_report(eq.poly, b, 8).ok);
  NondegeneracyReport r = jacobian_nondegeneracy(eq, b, 8);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("catalytic equation serialization") {
  CatalyticEquation eq = make_catalytic("e", "f", S("f^2*B1 + x*f - t"), SeriesSpace{{{"f", 0}}});
  CHECK(eq.degree() == 2);
  CHECK(eq.scalars == std::vector<std::string>{"B1"});
  CHECK(eq.json().find("\"catalytic\":\"f\"") != std::string::npos);
  CHECK(eq.csv().rfind("power,monomial,coefficient\n", 0) == 0);
  ResidualReport r;
  r.N = 3;
  r.first_failure = mpq_class(2);
  CHECK(r.json() == "{\"N\":3,\"first_failure\":\"2\",\"ok\":false}");
}
