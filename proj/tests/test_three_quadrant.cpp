#include "doctest.h"
#include "latwalk/kernel.hpp"
#include "latwalk/three_quadrant.hpp"
#include "latwalk/walk.hpp"

using namespace lw;

namespace {

const tq::Data& data12() {
  static const tq::Data d = tq::data(12);
  return d;
}

const tq::DerivationReport& derivation() {
  static const tq::DerivationReport r = tq::derive_catalytic();
  return r;
}

bool series_free(const SymPoly& p) {
  SeriesSpace sp = tq::space();
  for (const auto& s : p.symbols())
    if (sp.is_series(s) || sp.is_reflected(s)) return false;
  return true;
}

}  // namespace

TEST_CASE("three-quadrant displays on enumerated data") {
  const auto& d = data12();
  CHECK(residual_report(tq::quadratic_method_1(), d.b, 12).ok);
  tq::PolyFinalReport r = tq::verify_poly_final(d);
  CHECK(r.poly_final.ok);
  CHECK(r.fm1.ok);
  CHECK(r.hn.ok);
  CHECK(r.hp.ok);
  CHECK_FALSE(r.hn_printed.ok);
  CHECK(r.ok());
  CHECK(residual_report(tq::Hn_alg(), d.b, 12).ok);
}

TEST_CASE("perturbing F_{0,-1} breaks the catalytic equation early") {
  tq::Data d = data12();
  TSeries f01 = d.b.value("Hp_-1[0]");
  d.b.scalars["Hp_-1[0]"] = f01 + TSeries::monomial(GQ(1), 0, 3, 1, f01.trunc_units());
  ResidualReport r = residual_report(tq::poly_final(), d.b, 12);
  CHECK_FALSE(r.ok);
  REQUIRE(r.first_failure);
  CHECK(*r.first_failure <= 6);
}

TEST_CASE("delta of the displays is the kernel discriminant") {
  Kernel k = build_kernel(three_quadrant_model(GQ(1)));
  CHECK(k.delta() == RatFunc::parse("1 - 4*t^2*x - 4*t^2/x"));
}

TEST_CASE("cubic derived from the displayed relation") {
  const auto& r = derivation();
  REQUIRE(r.from_display);
  CHECK_FALSE(r.printed_A_holds);
  CHECK(r.c4_matches_display);
  CHECK(r.poly_final_proportional);
  CHECK(series_free(r.from_display->wC4));
  CHECK(series_free(r.from_display->wC5));
  CHECK(r.from_display->check(data12().b, 12, "sqrtDelta").ok());
}

TEST_CASE("cubic derived from the assembled system") {
  const auto& r = derivation();
  REQUIRE(r.from_system);
  CHECK(r.offset_matches);
  CHECK(series_free(r.from_system->wC4));
  CHECK(series_free(r.from_system->wC5));
  CHECK(r.from_system->check(data12().b, 12, "sqrtDelta").ok());
}

TEST_CASE("scaled forms") {
  const auto& r = derivation();
  CHECK(r.polyproof1_matches);
  CHECK(r.polyproof2_matches);
  CHECK(r.polyproof_dx_matches);
  CHECK_FALSE(r.polyproof1_printed_matches);
  CHECK_FALSE(r.polyproof_dx_printed_matches);
  CHECK(residual_report(tq::polyproof1(), data12().b, 12).ok);
  CHECK(tq::unscale(tq::polyproof1()) == -tq::poly_final());
}

TEST_CASE("second eigenvector route") {
  tq::SRouteReport s = tq::s_route(data12());
  CHECK(s.eigen_ok);
  CHECK(s.offset_matches);
  CHECK(s.relation.ok);
  CHECK(s.cubic.ok);
  CHECK(s.definition_vs_eliminated.ok);
  CHECK_FALSE(s.definition_printed.ok);
  CHECK(s.sx_display.ok);
  CHECK(s.hn_alg.ok);
}

TEST_CASE("Jacobian leading orders") {
  tq::JacobianReport j = tq::jacobian(data12());
  CHECK(j.dx0_matches);
  CHECK(j.block_matches);
  CHECK(j.polyproof2_roots.small_roots() == 3);
  REQUIRE(j.nd.root_exponent);
  CHECK(*j.nd.root_exponent == mpq_class(2, 3));
  CHECK(j.nd.root_count == 3);
  REQUIRE(j.nd.block_exponent);
  CHECK(*j.nd.block_exponent == mpq_class(8, 3));
  CHECK(j.nd.block_leading == PolyQ(std::vector<GQ>{GQ(-9)}));
  CHECK(j.nd.scalar_ok);
  CHECK(j.nd.ok);
}
