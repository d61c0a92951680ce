#include "latwalk/three_quadrant.hpp"

#include "json.hpp"
#include "latwalk/crbvp.hpp"
#include "latwalk/kernel.hpp"
#include "latwalk/walk.hpp"

namespace lw::tq {

namespace {

const char* kD = "(4*t^2*x^2+4*t^2-x)";

std::string with_D(std::string s) {
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    bool word_before = i > 0 && (std::isalnum(static_cast<unsigned char>(s[i - 1])) || s[i - 1] == '_');
    bool word_after = i + 1 < s.size() && (std::isalnum(static_cast<unsigned char>(s[i + 1])) || s[i + 1] == '_');
    if (s[i] == 'D' && !word_before && !word_after)
      out += kD;
    else
      out += s[i];
  }
  return out;
}

RatFunc R(const char* s) { return RatFunc::parse(s); }

RatFunc delta() { return R("1 - 4*t^2*x - 4*t^2/x"); }

nlohmann::json rj(const ResidualReport& r) { return nlohmann::json::parse(r.json()); }

}  // namespace

SeriesSpace space() { return SeriesSpace{{{"Hp_-1", 0}, {"Hp", 0}, {"Hn", 1}, {"PR", 1}}}; }

const std::map<std::string, std::string>& names() {
  static const std::map<std::string, std::string> n = {
      {"H", "Hp_-1"},       {"Ht", "~Hp_-1"},          {"F01", "Hp_-1[0]"}, {"F10", "F_-1,0"},
      {"Hi", "Hp_-1@i#0"},  {"Hmi", "Hp_-1@-i#0"},     {"Hn", "Hn"},        {"Hnt", "~Hn"},
      {"Hp", "Hp"},         {"Hpt", "~Hp"},            {"PR", "PR"},        {"PRt", "~PR"},
      {"sD", "sqrtDelta"},  {"Sx", "Sx"},              {"f", "Hp_-1"}};
  return n;
}

SymPoly display(const std::string& text) { return SymPoly::parse(with_D(text)).rename(names()); }

Data data(int N) {
  const int M = N + 8;
  WalkModel m = three_quadrant_model(GQ(1));
  CoeffTable tab = dp_enumerate(m, M - 1);
  Data d;
  d.N = N;
  d.b.series["Hp_-1"] = section(m, tab, SectionSpec::Hp(-1)).truncated(M);
  d.b.series["Hp"] = section(m, tab, SectionSpec::Hp(0)).truncated(M);
  d.b.series["Hn"] = section(m, tab, SectionSpec::Hn(0)).invert_x().truncated(M);
  TSeries Y0 = kernel_roots(build_kernel(m), M).Y0;
  d.b.series["PR"] = extract_part(Y0 * (LaurentPoly::x(1) - LaurentPoly::x(-1)), Region::Pos).truncated(M);
  d.b.scalars["F_-1,0"] = section(m, tab, SectionSpec::point(-1, 0)).truncated(M);
  TSeries sd = sqrt_series(delta(), M);
  d.b.scalars["sqrtDelta"] = sd;
  d.b.scalars["Sx"] = sd * LaurentPoly::x(1);
  d.b = scaled_binding(d.b);
  return d;
}

SymBinding scaled_binding(const SymBinding& b) {
  SymBinding out = b;
  TSeries hi = b.value("Hp_-1@i#0"), hmi = b.value("Hp_-1@-i#0");
  TSeries B1 = (hi + hmi) * LaurentPoly(GQ::frac(1, 2));
  TSeries B2 = (hi - hmi) * LaurentPoly(GQ(0, mpq_class(-1, 2)));
  TSeries B3 = (B1 * B1 + B2 * B2).mul_t(1) - B2;
  TSeries B4 = b.value("Hp_-1[0]").mul_t(2) - B3 * LaurentPoly(GQ::frac(1, 2));
  out.scalars["B1"] = B1;
  out.scalars["B2"] = B2;
  out.scalars["B3"] = B3;
  out.scalars["B4"] = B4;
  return out;
}

// ---------------------------------------------------------------- displays

SymPoly HL() { return display("t^2*F10 - 3*t^2/x*Hn - t*PR + 1/(x^2+1)"); }
SymPoly HR() { return display("-2*t/x*Ht + t*x*H - 1/(x^2+1)"); }
SymPoly quadratic_method_1() { return HL() + SymPoly::sym("sqrtDelta") * HR(); }
SymPoly A() { return display("x*H + (1+2*x^2)/(3*t*(1+x^2))"); }
SymPoly A_printed() { return display("x*(H + (1+2*x^2)/(3*t*(1+x^2)))"); }

SymPoly poly2_C4() {
  return -display(
      "t^2*x*F10^2/D - x*F10/D - 2*t*x*F01/D - Hmi*x^2/(t*(x^2+1)*D) - Hi*x^2/(t*(x^2+1)*D)"
      " - (t^2*x^6 - t^2*x^4 - t^2*x^2 + t^2 - x^5 - x^3 - x)/(3*t^2*(x^2+1)^2*D)");
}

SymPoly Fm1() { return display("F10^2 - (2*t*F10 + 2*Hmi*Hi*t - i*Hmi + i*Hi)/(2*t^3)"); }

SymPoly poly_final() {
  return display(
      "t^2*x^2*(x^2+1)*H^3*D + t*x*(2*x^2+1)*H^2*D"
      " + H*(-2*t^3*x*(x^2+1)*F01 + Hmi*Hi*t^2*(x^2+1)*x - 1/2*Hmi*i*t*(x^2-2*i*x+1)*x"
      "      + 1/2*Hi*i*t*(x^2+2*i*x+1)*x + 5*t^2*x^4 + 6*t^2*x^2 + t^2 - x^3)"
      " - t^2*(x^2+1)*F01 + Hmi*Hi*t*x^2 + t*x*(x^2+1) - 1/2*Hmi*i*(x-i)*x + 1/2*Hi*i*(x+i)*x");
}

namespace {
const char* kHn = "Hn + x/(3*t)*PR - x/3*F10 - 1/(3*t^%d*(x+1/x)) - 1/(3*t)*Sx*(-2/x*Ht + x*H - 1/(t*(x^2+1)))";
std::string with_power(const char* fmt, int k) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, k);
  return buf;
}
}  // namespace

SymPoly Hn_reconstruction() { return display(with_power(kHn, 2)); }
SymPoly Hn_reconstruction_printed() { return display(with_power(kHn, 1)); }

SymPoly Hp_reconstruction() {
  return display(
      "Hp - (-F10/(3*x) + H/(2*t) + PR/(3*t*x) + 1/(6*t^2*x*(x^2+1))"
      " + Sx*(-Ht/(3*t*x^3) + H/(6*t*x) - 1/(6*t^2*x^2*(x^2+1))))");
}

SymPoly Hn_alg() {
  return display(
      "F10 - 2*x*Hnt - Hn/x - PR/t + x^2/(t^2*(x^2+1))"
      " + Sx*(-F10/x + Hn/x^2 - 2*Hp + PR/(t*x) - x/(t^2*(x^2+1)))");
}

SymPoly S_definition() { return display("Hn/x + PR/(3*t) - F10/3 - 1/(3*t^2*(x^2+1))"); }
SymPoly S_definition_printed() { return display("Hn/x + PR/(3*t) - F10/3 - 1/(3*t^3*(x+1/x))"); }
SymPoly S_eliminated() { return display("2*Hn/(3*x) + 2*x/3*Hp - x/(3*t)*H - 1/(3*t^2*(x^2+1))"); }

SymPoly sx(const SymPoly& S) {
  SymPoly p = display(
      "2*St + S - Sx*(-2*F10/(3*x) - 2*(3*t^2*(x^2+1)*Hp + x)/(3*t^2*(x^2+1)) + 2*PR/(3*t*x) + S/x)");
  return p.subs("S", S).subs("St", reflect(S, space()));
}

namespace {
const char* kP1Tail = " - (t*(x^2+1)*f + x)*(t*x^2*f^2*(4*t^2*(x^2+1)-x) + x*f*(4*t^2*(x^2+1)-x) + t*(x^2+1))";
const char* kDxTail =
    " - B3*x + 2*B4*(f*(3*t*x^2+t)+x)"
    " + t^2*x*(x*(5*x^2+3) - 8*t^2*(3*x^4+4*x^2+1))*f^3"
    " + 2*t*(-2*t^2*(10*x^4+9*x^2+1) + 4*x^3 + x)*f^2"
    " + x*(3*x - 4*t^2*(5*x^2+3))*f - t*(3*x^2+1)";
}  // namespace

SymPoly polyproof1() {
  return display(std::string("B1*x*(2*t*x*f+1) - 1/2*B3*(x^2-1) + B4*(x^2+1)*(2*t*x*f+1)") + kP1Tail);
}
SymPoly polyproof1_printed() {
  return display(std::string("B1*x*(2*t*f+1) - 1/2*B3*(x^2-1) + B4*(x^2+1)*(2*t*f+1)") + kP1Tail);
}

SymPoly polyproof2() {
  return display(
      "2*B1*t*x^2 + 2*B4*t*(x^2+1)*x - 3*t^2*x^2*(x^2+1)*(4*t^2*(x^2+1)-x)*f^2"
      " - 2*t*x*(2*x^2+1)*(4*t^2*(x^2+1)-x)*f - t^2*(5*x^4+6*x^2+1) + x^3");
}

SymPoly polyproof_dx() { return display(std::string("B1*(4*t*x*f+1)") + kDxTail); }
SymPoly polyproof_dx_printed() { return display(std::string("B1*x*(4*t*f+1)") + kDxTail); }

SymPoly unscale(const SymPoly& p) {
  SymPoly B1 = display("(Hi + Hmi)/2"), B2 = display("(Hi - Hmi)/(2*i)");
  SymPoly B3 = SymPoly(RatFunc::t()) * (B1 * B1 + B2 * B2) - B2;
  SymPoly B4 = SymPoly(RatFunc::t(2)) * display("F01") - B3 * RatFunc(GQ::frac(1, 2));
  return p.subs("B4", B4).subs("B3", B3).subs("B2", B2).subs("B1", B1);
}

// ---------------------------------------------------------------- checks

std::string PolyFinalReport::json() const {
  nlohmann::json j;
  j["N"] = N;
  j["poly_final"] = rj(poly_final);
  j["fm1"] = rj(fm1);
  j["hn"] = rj(hn);
  j["hp"] = rj(hp);
  j["hn_printed"] = rj(hn_printed);
  j["ok"] = ok();
  return j.dump();
}

PolyFinalReport verify_poly_final(const Data& d) {
  PolyFinalReport r;
  r.N = d.N;
  r.poly_final = residual_report(poly_final(), d.b, d.N);
  r.fm1 = residual_report(Fm1(), d.b, d.N);
  r.hn = residual_report(Hn_reconstruction(), d.b, d.N);
  r.hp = residual_report(Hp_reconstruction(), d.b, d.N);
  r.hn_printed = residual_report(Hn_reconstruction_printed(), d.b, d.N);
  return r;
}

std::string DerivationReport::json() const {
  nlohmann::json j;
  j["from_display"] = from_display ? nlohmann::json::parse(from_display->json()) : nlohmann::json(nullptr);
  j["from_system"] = from_system ? nlohmann::json::parse(from_system->json()) : nlohmann::json(nullptr);
  j["offset_matches"] = offset_matches;
  j["printed_A_holds"] = printed_A_holds;
  j["c4_matches_display"] = c4_matches_display;
  j["poly_final_proportional"] = poly_final_proportional;
  j["poly_final_factor"] = poly_final_factor ? nlohmann::json(poly_final_factor->str()) : nlohmann::json(nullptr);
  j["polyproof1_matches"] = polyproof1_matches;
  j["polyproof2_matches"] = polyproof2_matches;
  j["polyproof_dx_matches"] = polyproof_dx_matches;
  j["polyproof1_printed_matches"] = polyproof1_printed_matches;
  j["polyproof_dx_printed_matches"] = polyproof_dx_printed_matches;
  j["note"] = note;
  return j.dump();
}

DerivationReport derive_catalytic() {
  DerivationReport r;
  const RatFunc D = delta();
  const RatFunc half = RatFunc(GQ::frac(1, 2));
  const SeriesSpace sp = space();

  // HR = -2t (A~ - A/2) identically; the printed form of A does not satisfy it
  SymPoly lin = HR() + SymPoly(RatFunc(2) * RatFunc::t()) * (reflect(A(), sp) - A() * half);
  SymPoly lin_printed =
      HR() + SymPoly(RatFunc(2) * RatFunc::t()) * (reflect(A_printed(), sp) - A_printed() * half);
  r.printed_A_holds = lin_printed.is_zero();

  SeparatedInput in;
  in.A = A();
  in.B = HL() * (RatFunc(2) * RatFunc::t() * D).inv();
  in.delta = D;
  in.m0 = half;
  in.space = sp;
  in.catalytic = "Hp_-1";
  in.weight = D;
  if (!lin.is_zero()) {
    r.note = "HR is not -2t(A~ - A/2)";
    return r;
  }
  r.from_display = derive_separated_cubic(in);

  // [x^1] Hn is F_{-1,0}
  const std::map<std::string, std::string> coeff_names = {{"Hn[1]", "F_-1,0"}};
  SymPoly C4 = r.from_display->C4().rename(coeff_names);
  r.c4_matches_display = C4 == poly2_C4();

  SymPoly fm1_value = SymPoly::sym("F_-1,0", 2) - Fm1();
  SymPoly cubic = reduce_power(r.from_display->cubic.poly.rename(coeff_names), "F_-1,0", 2, fm1_value);
  r.poly_final_factor = proportional_factor(poly_final(), cubic);
  r.poly_final_proportional = r.poly_final_factor.has_value();

  SymPoly p1 = polyproof1();
  r.polyproof1_matches = proportional_factor(poly_final(), unscale(p1)).has_value();
  r.polyproof2_matches = proportional_factor(p1.derivative("Hp_-1"), polyproof2()).has_value();
  r.polyproof_dx_matches = proportional_factor(p1.derivative_x(), polyproof_dx()).has_value();
  r.polyproof1_printed_matches = proportional_factor(poly_final(), unscale(polyproof1_printed())).has_value();
  r.polyproof_dx_printed_matches = proportional_factor(p1.derivative_x(), polyproof_dx_printed()).has_value();

  CRBVP c = assemble_three_quadrant(GQ(1));
  RatVec v = {RatFunc(), RatFunc::x(), RatFunc()};
  EigenCombination ec = eigen_combination(c, v, half);
  r.offset_matches = ec.offset == SymPoly(R("(1+2*x^2)/(3*t*(1+x^2))"));
  r.from_system = derive_separated_cubic(separated_from_crbvp(c, v, half, "Hp_-1"));
  return r;
}

std::string SRouteReport::json() const {
  nlohmann::json j;
  j["eigen_ok"] = eigen_ok;
  j["offset_matches"] = offset_matches;
  j["definition_vs_eliminated"] = rj(definition_vs_eliminated);
  j["definition_printed"] = rj(definition_printed);
  j["relation"] = rj(relation);
  j["cubic"] = rj(cubic);
  j["sx_display"] = rj(sx_display);
  j["hn_alg"] = rj(hn_alg);
  j["ok"] = ok();
  return j.dump();
}

SRouteReport s_route(const Data& d) {
  SRouteReport r;
  CRBVP c = assemble_three_quadrant(GQ(1));
  RatVec v = {R("2*x/3"), R("-x/(3*t)"), R("2/(3*x)")};
  RatFunc m0 = RatFunc(GQ::frac(-1, 2));
  EigenCombination ec;
  try {
    ec = eigen_combination(c, v, m0);
    r.eigen_ok = true;
  } catch (const MathError&) {
    return r;
  }
  r.offset_matches = ec.offset == SymPoly(R("-1/(3*t^2*(x^2+1))"));
  SeparatedCubic sc = derive_separated_cubic(separated_from_crbvp(c, v, m0, "Hn"));
  auto chk = sc.check(d.b, d.N, "sqrtDelta");
  r.relation = chk.relation;
  r.cubic = chk.cubic;
  r.definition_vs_eliminated = residual_report(S_definition() - S_eliminated(), d.b, d.N);
  r.definition_printed = residual_report(S_definition_printed() - S_eliminated(), d.b, d.N);
  r.sx_display = residual_report(sx(S_eliminated()), d.b, d.N);
  r.hn_alg = residual_report(Hn_alg(), d.b, d.N);
  return r;
}

std::string JacobianReport::json() const {
  nlohmann::json j;
  j["nondegeneracy"] = nlohmann::json::parse(nd.json());
  j["polyproof2_roots"] = nlohmann::json::parse(polyproof2_roots.json());
  j["block_matches"] = block_matches;
  j["dx0_matches"] = dx0_matches;
  return j.dump();
}

JacobianReport jacobian(const Data& d) {
  JacobianReport r;
  CatalyticEquation eq = make_catalytic("polyproof 1", "Hp_-1", polyproof1(), space());
  r.nd = jacobian_nondegeneracy(eq, d.b, d.N);
  TSeries p2 = evaluate(polyproof2(), d.b, d.N).value.truncated(d.N);
  r.polyproof2_roots = newton_puiseux_leading(x_coefficients(p2));
  TSeries want_block = rf_to_series(R("-9*x^4 + 24*(x^3 + x^5)*t^2"), d.N);
  r.block_matches = (r.nd.block - want_block).is_zero_mod(4);
  TSeries want_dx0 = rf_to_series(R("x^3 - (1 + 2*x^2 + x^4)*t^2"), d.N);
  r.dx0_matches = (p2 - want_dx0).is_zero_mod(4);
  return r;
}

}  // namespace lw::tq
