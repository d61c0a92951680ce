#include "doctest.h"
#include "latwalk/biseries.hpp"

using namespace lw;

TEST_CASE("difference of squares") {
  TSeries a = TSeries::constant(1, 16) + TSeries::monomial(1, 1, 1, 1, 16);
  TSeries b = TSeries::constant(1, 16) - TSeries::monomial(1, 1, 1, 1, 16);
  TSeries p = a * b;
  CHECK(p.str() == "1 * x^0 * t^(0/1) + -1 * x^2 * t^(2/1) + O(t^(16/1))");
  CHECK(TSeries::parse(p.str()).equals_mod(p));
  CHECK(TSeries::parse(p.json()).equals_mod(p));
}

TEST_CASE("sqrt of discriminant") {
  LaurentPoly s = LaurentPoly::x(1) + LaurentPoly::x(-1);
  TSeries D = TSeries::constant(1, 16) - TSeries::monomial(4, 0, 2, 1, 16) * s;
  TSeries r = D.sqrt();
  CHECK((r * r).equals_mod(D));
  CHECK(r.coeff(2) == LaurentPoly(-2) * s);
  CHECK(r.coeff(4) == LaurentPoly(-2) * s * s);
  TSeries Y0 = ((TSeries::constant(1, 16) - r) * GQ::frac(1, 2)).mul_t(-1).div_exact(s).value();
  CHECK(Y0.coeff(1) == LaurentPoly(1));
  CHECK(Y0.coeff(3) == s);
}
