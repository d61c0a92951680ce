#include <random>

#include "doctest.h"
#include "latwalk/sympoly.hpp"

using namespace lw;

namespace {

RatFunc R(const char* s) { return RatFunc::parse(s); }
SymPoly S(const char* s) { return SymPoly::parse(s); }

// series with polynomial coefficients in x: sum_k t^k c_k(x), exponents >= v
TSeries random_series(std::mt19937& rng, int v, int N) {
  std::uniform_int_distribution<int> coef(-4, 4), ex(v, v + 3);
  std::map<int, LaurentPoly> m;
  for (int k = 0; k < N; ++k) {
    LaurentPoly p;
    for (int j = 0; j < 3; ++j) p.add_term(ex(rng) + k / 2, GQ(coef(rng)));
    if (!p.is_zero()) m[k] = p;
  }
  return TSeries::from_units(1, N, std::move(m));
}

// reference part of r(x) * M, with r expanded in nonnegative powers of x up to xcap
TSeries reference_part(const RatFunc& r, const TSeries& M, Region reg, int N) {
  TSeries e = rf_to_series(r, N + 4, 60) * M;
  return extract_part(e, reg).truncated(N);
}

}  // namespace

TEST_CASE("symbolic polynomial arithmetic and parsing") {
  SymPoly a = S("(A + x)^2 - A^2 - 2*x*A");
  CHECK(a == SymPoly(RatFunc::x(2)));
  CHECK(S("A*B - B*A").is_zero());
  SymPoly p = S("3*A^2*B/(1+x^2) + t*B - I");
  CHECK(p.degree("A") == 2);
  CHECK(p.coeff("A", 2) == SymPoly(R("3/(1+x^2)")) * SymPoly::sym("B"));
  CHECK(p.derivative("A") == S("6*A*B/(1+x^2)"));
  CHECK(p.subs("A", S("x")).subs("B", S("1")) == SymPoly(R("3*x^2/(1+x^2) + t") - RatFunc(GQ::I())));
  CHECK(S("2^-2") == SymPoly(RatFunc(GQ::frac(1, 4))));
  CHECK_THROWS_AS(S("1/A"), MathError);
  CHECK_THROWS_AS(S("A^-1"), MathError);
  CHECK_THROWS_AS(S("(A + 1"), MathError);
  CHECK(p.rename({{"A", "C"}}).degree("C") == 2);
}

TEST_CASE("coefficient splitting recombines") {
  for (const char* s : {"1/(1+x^2)", "x^3/(t*(1+x^2)^2)", "(x^2+t)/(x^3*(1+x^2))", "1/x^2 + t",
                        "(t^2*x^5 - 3*x + 1)/(t^3*x*(x^2+1)^3)", "i*x/(x - i)^2", "x^4"}) {
    RatFunc r = R(s);
    CoeffSplit cs = split_coefficient(r);
    CHECK_MESSAGE(cs.recombine() == r, s);
  }
  CoeffSplit c = split_coefficient(R("1/(1+x^2)"));
  // 1/(1+x^2) = (1/2)/(1-ix) + (1/2)/(1+ix)
  CHECK(c.laurent.empty());
  CHECK(c.poles.at({1, 1}) == RatFunc(GQ::frac(1, 2)));
  CHECK(c.poles.at({-1, 1}) == RatFunc(GQ::frac(1, 2)));
  CHECK_THROWS_AS(split_coefficient(R("1/(1-x)")), MathError);
  CHECK_THROWS_AS(split_coefficient(R("1/(1-t*x)")), MathError);
}

TEST_CASE("part extraction agrees with series arithmetic") {
  const int N = 7;
  std::mt19937 rng(7);
  SeriesSpace sp{{{"G", 0}, {"H", 1}}};
  const char* coeffs[] = {"x/(1+x^2)^2 + x^3 + 1/x", "(1 + t*x)/(x^2*(1+x^2))", "t/x^3 + 2", "x^2/(x^2+1)"};
  for (int trial = 0; trial < 6; ++trial) {
    SymBinding b;
    b.series["G"] = random_series(rng, 0, N);
    b.series["H"] = random_series(rng, 1, N);
    for (const char* cs : coeffs) {
      RatFunc r = R(cs);
      struct Case {
        SymMono m;
        TSeries M;
      };
      TSeries G = b.series["G"], H = b.series["H"];
      std::vector<Case> cases = {{{{"~G", 1}}, G.invert_x()},
                                 {{{"~G", 1}, {"~H", 1}}, G.invert_x() * H.invert_x()},
                                 {{{"~H", 2}}, (H * H).invert_x()},
                                 {{{"G", 1}}, G},
                                 {{{"G", 1}, {"H", 1}}, G * H},
                                 {{}, TSeries::exact(LaurentPoly(1))}};
      for (const auto& c : cases) {
        SymPoly p = SymPoly::term(c.m, r);
        for (Part w : {Part::Neg, Part::Zero}) {
          Region reg = w == Part::Neg ? Region::Neg : Region::Zero;
          Evaluation ev = evaluate(part(p, w, sp), b, N);
          LaurentPoly L;
          for (int k = 0; k <= ev.clear.degree(); ++k) L.add_term(k, ev.clear.coeff(k));
          TSeries want = reference_part(r, c.M, reg, N) * L;
          CHECK_MESSAGE((ev.value - want).is_zero_mod(N - 2), cs << " " << mono_str(c.m));
        }
      }
    }
  }
}

TEST_CASE("mixed monomials and reflected sums") {
  SeriesSpace sp{{{"G", 0}}};
  CHECK_THROWS_AS(part(S("G*~G"), Part::Zero, sp), MathError);
  // G(x) + G(1/x) is symmetric: its reflected sum is itself
  SymPoly e = S("G*~G*(x + 1/x)");
  CHECK(reflected_sum(e, sp) == e);
  CHECK_THROWS_AS(reflected_sum(S("G*~G*x"), sp), MathError);
  // a symmetric Laurent expression: x*G(x) + (1/x)*G(1/x)
  SymPoly s = S("x*G") + reflect(S("x*G"), sp);
  SymBinding b;
  std::mt19937 rng(3);
  b.series["G"] = random_series(rng, 0, 6);
  CHECK((evaluate(reflected_sum(s, sp), b, 6).value - evaluate(s, b, 6).value).is_zero_mod(6));
}

TEST_CASE("derived symbols resolve from the bound series") {
  SymBinding b;
  // G = 1 + 2x + 3x^2 t
  b.series["G"] = TSeries::from_units(1, 4, {{0, LaurentPoly(1) + LaurentPoly::monomial(GQ(2), 1)},
                                             {1, LaurentPoly::monomial(GQ(3), 2)}});
  CHECK(b.value("G[1]").coeff_units(0) == LaurentPoly(2));
  CHECK(b.value("G[2]").coeff_units(1) == LaurentPoly(3));
  // G(i) = 1 + 2i - 3t
  TSeries gi = b.value("G@i#0");
  CHECK(gi.coeff_units(0) == LaurentPoly(GQ(1, 2)));
  CHECK(gi.coeff_units(1) == LaurentPoly(GQ(-3)));
  // E_1 G(-i) = 2(-i) + 3*2*(-1) t
  TSeries g1 = b.value("G@-i#1");
  CHECK(g1.coeff_units(0) == LaurentPoly(GQ(0, -2)));
  CHECK(g1.coeff_units(1) == LaurentPoly(GQ(-6)));
  CHECK(b.value("~G").coeff_units(0) == LaurentPoly(1) + LaurentPoly::monomial(GQ(2), -1));
  CHECK_THROWS_AS(b.value("K"), MathError);
}
