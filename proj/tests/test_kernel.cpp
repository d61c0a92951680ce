#include "doctest.h"
#include "latwalk/kernel.hpp"

using namespace lw;

namespace {

LaurentPoly sym() { return LaurentPoly::x(1) + LaurentPoly::x(-1); }

}  // namespace

TEST_CASE("kernels of the registered models") {
  Kernel k3 = build_kernel(three_quadrant_model());
  CHECK(k3.A == sym());
  CHECK(k3.B.is_zero());
  CHECK(k3.C == LaurentPoly(1));
  CHECK(k3.delta() == RatFunc::parse("1 - 4*t^2*(x + xb)"));
  Kernel k4 = build_kernel(outside_quadrant_model());
  CHECK(k4.A == LaurentPoly(1));
  CHECK(k4.B == sym());
  // forbidden and weighted steps do not enter the kernel
  CHECK(build_kernel(three_quadrant_model(GQ(5))).str() == k3.str());
  WalkModel big = quarter_model();
  big.steps.push_back({2, 0});
  CHECK_THROWS_AS(build_kernel(big), ConfigError);
}

TEST_CASE("kernel roots") {
  const int N = 16;
  KernelRoots r = kernel_roots(build_kernel(three_quadrant_model()), N);
  CHECK(r.root_ok);
  CHECK(r.product_ok);
  CHECK(r.sum_ok);
  LaurentPoly s = sym();
  TSeries expect(9);
  expect += TSeries::monomial(1, 0, 1, 1, 9);
  expect += TSeries::exact(s).mul_t(3).truncated(9);
  expect += (TSeries::exact(s * s) * GQ(2)).mul_t(5).truncated(9);
  expect += (TSeries::exact(s * s * s) * GQ(5)).mul_t(7).truncated(9);
  CHECK(r.Y0.truncated(9).equals_mod(expect));
  CHECK(r.Y0.truncated(9).trunc() == 9);
  CHECK(r.product == RatFunc::parse("1/(x + xb)"));
  CHECK(r.sum == RatFunc::parse("1/(t*(x + xb))"));
  // Y0 Y1 = 1/(x+xbar): Y0 * (t(x+xbar) Y1) = t
  CHECK((r.Y0 * r.tAY1 - TSeries::monomial(1, 0, 1, 1, N)).is_zero_mod(N));
  CHECK((*r.Y1inv - r.Y0 * s).is_zero_mod(N));
  // the exact form expands to the same series
  CHECK(rf_to_series(r.Y0_exact, N).equals_mod(r.Y0));

  KernelRoots o = kernel_roots(build_kernel(outside_quadrant_model()), 12);
  CHECK(o.root_ok);
  CHECK(o.product == RatFunc(1));
  TSeries e4(4);
  e4 += TSeries::monomial(1, 0, 1, 1, 4);
  e4 += TSeries::exact(s).mul_t(2).truncated(4);
  e4 += TSeries::exact(s * s + LaurentPoly(1)).mul_t(3).truncated(4);
  CHECK(o.Y0.truncated(4).equals_mod(e4));
  CHECK((o.Y0 * *o.Y1inv - TSeries::constant(1, 12)).is_zero_mod(12) == false);
  CHECK((*o.Y1inv - o.Y0).is_zero_mod(12));

  for (const auto& name : registered_models()) {
    Kernel k = build_kernel(model_by_name(name));
    KernelRoots kr = kernel_roots(k, 10);
    CHECK(subst_kernel_root(k.biseries(11), kernel_roots(k, 11).Y0, SubstMode::Y).is_zero_mod(10));
    CHECK(kr.sum_ok);
  }
}

TEST_CASE("walk groups") {
  Kernel k3 = build_kernel(three_quadrant_model());
  GroupReport g = walk_group(k3);
  REQUIRE(g.closed);
  CHECK(g.elements.size() == 4);
  CHECK(g.elements[0].str() == "(x, y)");
  for (const auto& e : g.elements) CHECK(preserves_kernel(k3, e));
  bool found = false;
  for (const auto& e : g.elements)
    if (e.ex == 1 && e.ey == -1 && e.ry == RatFunc::parse("1/(x + xb)")) found = true;
  CHECK(found);

  GroupReport g4 = walk_group(build_kernel(outside_quadrant_model()));
  REQUIRE(g4.closed);
  std::vector<std::string> names;
  for (const auto& e : g4.elements) names.push_back(e.str());
  std::sort(names.begin(), names.end());
  CHECK(names == std::vector<std::string>{"(1/x, 1/y)", "(1/x, y)", "(x, 1/y)", "(x, y)"});

  // a cap below the orbit size is reported
  CHECK_FALSE(walk_group(k3, 3).closed);
  // steps {x, y, xbar ybar} give an order-6 group
  WalkModel tandem;
  tandem.steps = {{1, 0}, {0, 1}, {-1, -1}};
  GroupReport g6 = walk_group(build_kernel(tandem));
  CHECK(g6.closed);
  CHECK(g6.elements.size() == 6);
  int mono = 0;
  for (const auto& e : g6.elements) {
    CHECK(preserves_kernel(build_kernel(tandem), e));
    mono += e.monomial ? 1 : 0;
  }
  CHECK(mono < 6);
  CHECK_THROWS_AS(orbit_sum(tandem, dp_enumerate(tandem, 3)), MathError);
  // the Gessel steps give an order-8 group
  WalkModel gessel;
  gessel.steps = {{1, 0}, {-1, 0}, {1, 1}, {-1, -1}};
  GroupReport g8 = walk_group(build_kernel(gessel));
  CHECK(g8.closed);
  CHECK(g8.elements.size() == 8);
}

TEST_CASE("orbit sums") {
  // (x-1)(x+1)(x^2 y^2 - x + y^2) / (x (x^2+1) y), written by powers of y
  YRat paper;
  RatFunc pre = RatFunc::parse("(x-1)*(x+1)/(x*(x^2+1))");
  paper.add(1, pre * RatFunc::parse("x^2 + 1"));
  paper.add(-1, pre * RatFunc::parse("-x"));

  for (const char* name : {"three-quadrant-nenws", "quarter-nenws"}) {
    WalkModel m = model_by_name(name);
    OrbitSum os = orbit_sum(m, dp_enumerate(m, 9));
    CHECK(os.section_free);
    CHECK(os.verified);
    CHECK(os.rhs_numerator == paper);
  }
  // the weight on the boundary step does not spoil section-freeness
  WalkModel w = three_quadrant_model(GQ(7));
  OrbitSum ow = orbit_sum(w, dp_enumerate(w, 7));
  CHECK(ow.section_free);
  CHECK(ow.verified);

  WalkModel o = outside_quadrant_model();
  OrbitSum oo = orbit_sum(o, dp_enumerate(o, 11));
  CHECK(oo.section_free);
  CHECK(oo.rhs_numerator.is_zero());
  CHECK(oo.cleared.is_zero_mod(12));
  CHECK(oo.verified);

  // non-alternating coefficients leave unknowns behind
  OrbitSum bad = orbit_sum(o, dp_enumerate(o, 5), {GQ(1), GQ(1), GQ(1), GQ(1)});
  CHECK_FALSE(bad.section_free);
  CHECK_FALSE(bad.leftover.empty());
}

TEST_CASE("y^1 part of the three-quadrant orbit sum") {
  // x(Hn(xbar)+Hp(x)) - [x -> 1/x] + xbar(x+xbar)Hp_{-2}(xbar) - x(x+xbar)Hp_{-2}(x) = (x - xbar) Y0 / t
  const int N = 12;
  WalkModel m = three_quadrant_model();
  CoeffTable tab = dp_enumerate(m, N + 1);
  TSeries h0 = section(m, tab, SectionSpec::Hp()) + section(m, tab, SectionSpec::Hn());
  TSeries hp2 = section(m, tab, SectionSpec::Hp(-2));
  LaurentPoly s = sym();
  TSeries lhs = h0.mul_x(1) - h0.invert_x().mul_x(-1) + hp2.invert_x() * (s * LaurentPoly::x(-1)) -
                hp2 * (s * LaurentPoly::x(1));
  TSeries Y0 = kernel_roots(build_kernel(m), N + 2).Y0;
  TSeries rhs = (Y0 * (LaurentPoly::x(1) - LaurentPoly::x(-1))).mul_t(-1);
  CHECK((lhs - rhs).is_zero_mod(N));
}
