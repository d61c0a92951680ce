#include <functional>

#include "doctest.h"
#include "latwalk/walk.hpp"

using namespace lw;

TEST_CASE("first steps") {
  for (const auto& name : registered_models()) {
    WalkModel m = model_by_name(name);
    CoeffTable t = dp_enumerate(m, 1);
    CHECK(t.get(m.i0, m.j0, 0) == GQ(1));
    int total = 0;
    for (const auto& e : t.entries())
      if (e.n == 1) total += static_cast<int>(e.count.re.get_num().get_si());
    int allowed = 0;
    for (const auto& s : m.steps) allowed += m.step_weight(m.i0, m.j0, s).is_zero() ? 0 : 1;
    CHECK(total == allowed);
  }
  // the outside model sees all four steps from (-1,-1)
  CHECK(dp_enumerate(outside_quadrant_model(), 1).entries().size() == 5);
}

TEST_CASE("dp agrees with depth-first enumeration") {
  std::vector<WalkModel> ms = {three_quadrant_model(), three_quadrant_model(GQ(0)), three_quadrant_model(GQ(2)),
                               three_quadrant_model(GQ(1, 1)), quarter_model(), outside_quadrant_model()};
  for (const auto& m : ms) CHECK(dp_enumerate(m, 8) == dfs_enumerate(m, 8));
}

TEST_CASE("region invariance") {
  for (const auto& name : registered_models()) {
    WalkModel m = model_by_name(name);
    for (const auto& e : dp_enumerate(m, 10).entries()) CHECK(m.in_region(e.i, e.j));
  }
  WalkModel o = outside_quadrant_model();
  auto t = dp_enumerate(o, 6);
  CHECK(t.get(0, -1, 1) == GQ(1));
  CHECK(t.get(0, 0, 2) == GQ(2));
  CHECK(t.get(0, 0, 3) == GQ(0));
}

TEST_CASE("functional equations vanish") {
  for (const auto& name : registered_models()) {
    WalkModel m = model_by_name(name);
    CoeffTable t = dp_enumerate(m, 11);
    BiSeries r = equation_residual(m, t);
    CHECK(r.trunc() == 12);
    CHECK(r.is_zero_mod(12));
    CHECK((kernel_biseries(m, 12) * full_series(t) - boundary_rhs_generic(m, t)).is_zero_mod(12));
  }
  for (GQ p : {GQ(0), GQ(3), GQ::frac(1, 2)}) {
    WalkModel m = three_quadrant_model(p);
    CoeffTable t = dp_enumerate(m, 11);
    CHECK(equation_residual(m, t).is_zero_mod(12));
    CHECK(upper_half_residual(t, p).is_zero_mod(12));
    CHECK(fourth_quadrant_residual(t).is_zero_mod(12));
  }
  // a wrong weight is detected
  CoeffTable t = dp_enumerate(three_quadrant_model(GQ(2)), 8);
  CHECK_FALSE(upper_half_residual(t, GQ(1)).is_zero_mod(9));
}

TEST_CASE("sections") {
  WalkModel m = three_quadrant_model();
  CoeffTable t = dp_enumerate(m, 9);
  TSeries hp1 = section(m, t, SectionSpec::Hp(-1));
  CHECK(hp1.trunc() == 10);
  CHECK(hp1.x_nonnegative());
  CHECK(section(m, t, SectionSpec::Hn()).x_nonpositive());
  CHECK(section(m, t, SectionSpec::point(0, -1)).coeff(1) == LaurentPoly(1));
  CHECK(section(m, t, SectionSpec::point(50, 50)).is_zero());
  CHECK_THROWS_AS(section(m, t, SectionSpec::point(-1, -1)), ConfigError);
  CHECK_THROWS_AS(section(quarter_model(), t, SectionSpec::Hn()), ConfigError);
  CHECK(SectionSpec::parse("Hp_-1").line == -1);
  CHECK(SectionSpec::parse("F_0,-1").j == -1);
  CHECK(SectionSpec::parse(SectionSpec::Vn(2).str()).kind == SectionKind::VerticalNeg);
}

TEST_CASE("weight linearity") {
  // count paths by how often they use the weighted step, then compare with the DP at several weights
  const int N = 7;
  WalkModel base = three_quadrant_model();
  std::map<std::tuple<int, int, int, int>, long> uses;  // (i, j, n, k) -> count
  std::function<void(int, int, int, int)> go = [&](int i, int j, int n, int k) {
    uses[{i, j, n, k}] += 1;
    if (n == N) return;
    for (const auto& s : base.steps) {
      if (base.step_weight(i, j, s).is_zero()) continue;
      bool special = i == 0 && j == -1 && s == Step{-1, 1};
      go(i + s.dx, j + s.dy, n + 1, k + (special ? 1 : 0));
    }
  };
  go(0, 0, 0, 0);
  for (GQ c : {GQ(2), GQ::frac(-1, 3), GQ(0, 1)}) {
    CoeffTable t = dp_enumerate(three_quadrant_model(c), N);
    std::map<std::tuple<int, int, int>, GQ> expect;
    for (const auto& [key, cnt] : uses) {
      auto [i, j, n, k] = key;
      expect[{i, j, n}] += GQ(cnt) * c.pow(k);
    }
    bool ok = true;
    for (const auto& [key, v] : expect) {
      auto [i, j, n] = key;
      if (t.get(i, j, n) != v) ok = false;
    }
    for (const auto& e : t.entries())
      if (!expect.count({e.i, e.j, e.n})) ok = false;
    CHECK(ok);
  }
}

TEST_CASE("model config round trip") {
  for (const auto& name : registered_models()) {
    WalkModel m = model_by_name(name);
    WalkModel r = model_from_json(model_to_json(m));
    CHECK(dp_enumerate(r, 6) == dp_enumerate(m, 6));
  }
  WalkModel w = three_quadrant_model(GQ::frac(2, 3));
  CHECK(dp_enumerate(model_from_json(model_to_json(w)), 6) == dp_enumerate(w, 6));
  CHECK_THROWS_AS(model_from_json("{\"steps\":[[2,0]],\"region\":\"quarter\"}"), ConfigError);
  CHECK_THROWS_AS(model_from_json("{\"steps\":[[1,0]],\"region\":\"octant\"}"), ConfigError);
  CHECK_THROWS_AS(model_from_json("{\"steps\":[[1,0]],\"region\":\"quarter\",\"start\":[-1,0]}"), ConfigError);
  CHECK_THROWS_AS(model_from_json("not json"), ConfigError);
  CHECK(PosPred::parse("i=0,j>=0").str() == "i=0,j>=0");
}

TEST_CASE("table export") {
  CoeffTable t = dp_enumerate(quarter_model(), 2);
  std::string csv = t.csv();
  CHECK(csv.rfind("i,j,n,count\n0,0,0,1\n", 0) == 0);
  CHECK(t.json().find("\"max_n\":2") != std::string::npos);
}
