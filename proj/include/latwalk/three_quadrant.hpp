#pragma once

#include <map>
#include <string>
#include <vector>

#include "latwalk/catalytic.hpp"

namespace lw {

// Walks in three quadrants with steps NE, NW, S and weight p = 1, written through the sections
//   Hp_-1 = sum_{i>=0} F_{i,-1} x^i,  Hp = sum_{i>=0} F_{i,0} x^i,  Hn = sum_{i>=1} F_{-i,0} x^i
// and PR = [x^>]((x - 1/x) Y0), with Y0 the small kernel root.
namespace tq {

SeriesSpace space();

// Symbols of the displayed relations, in parse syntax:
//   H = Hp_-1(x), Ht = Hp_-1(1/x), F01 = F_{0,-1}, F10 = F_{-1,0}, Hi = Hp_-1(i), Hmi = Hp_-1(-i),
//   Hn, Hnt = Hn(1/x), Hp, PR, sD = sqrt(delta), Sx = x sqrt(delta), B1..B4, f (scaled form)
// Each is renamed to the engine symbols of space().
SymPoly display(const std::string& text);
const std::map<std::string, std::string>& names();

// enumerated data mod t^N, every symbol of the displays bound
struct Data {
  int N = 0;
  SymBinding b;
};
Data data(int N);

// ---- displayed relations (engine symbols)
SymPoly HL();
SymPoly HR();
SymPoly quadratic_method_1();   // HL + sqrt(delta) HR
SymPoly A();                    // x H + (1 + 2x^2) / (3t(1 + x^2))
SymPoly A_printed();            // x (H + (1 + 2x^2) / (3t(1 + x^2)))
SymPoly poly2_C4();             // C4 read off the cyclotomic display: A^2 - A A~ + A~^2 = C4
SymPoly Fm1();                  // F10^2 - (...)
SymPoly poly_final();
SymPoly Hn_reconstruction();  // constant term 1/(3t^2(x + 1/x))
SymPoly Hn_reconstruction_printed();  // constant term as displayed, 1/(3t(x + 1/x))
SymPoly Hp_reconstruction();
SymPoly Hn_alg();               // linear relation in Hn, Hn~, Hp, PR
// Hn/x + PR/(3t) - F10/3 - 1/(3t^2(x^2 + 1)); the displayed constant is 1/(3t^3(x + 1/x))
SymPoly S_definition();
SymPoly S_definition_printed();
SymPoly S_eliminated();         // 2Hn/(3x) + 2x/3 Hp - x/(3t) H - 1/(3t^2(x^2 + 1))
SymPoly sx(const SymPoly& S);   // the displayed relation for S, both sides moved left

// scaled variables
// in f, B1, B3, B4, with the factors (2 t x f + 1); the display has (2 t f + 1)
SymPoly polyproof1();
SymPoly polyproof1_printed();
SymPoly polyproof2();
// d/dx of polyproof1; the display has B1 x (4 t f + 1) for B1 (4 t x f + 1)
SymPoly polyproof_dx();
SymPoly polyproof_dx_printed();
// B3 -> t(B1^2 + B2^2) - B2, B4 -> t^2 F01 - B3/2, f -> H, then B1 +- i B2 -> Hp_-1(+-i)
SymPoly unscale(const SymPoly& p);
// substitute the scaled scalars in terms of bound data (B1, B2 real and imaginary parts of Hp_-1(i))
SymBinding scaled_binding(const SymBinding& b);

// ---- checks

struct PolyFinalReport {
  int N = 0;
  ResidualReport poly_final, fm1, hn, hp;
  ResidualReport hn_printed;
  bool ok() const { return poly_final.ok && fm1.ok && hn.ok && hp.ok; }
  std::string json() const;
};
// catalytic equation, the F_{-1,0} relation and both reconstructions on the data
PolyFinalReport verify_poly_final(const Data& d);

struct DerivationReport {
  // cubic from the displayed relation HL = -sqrt(delta) HR
  std::optional<SeparatedCubic> from_display;
  // cubic from the assembled system and the eigenvector (0, x, 0)
  std::optional<SeparatedCubic> from_system;
  bool offset_matches = false;       // system offset equals (1 + 2x^2)/(3t(1 + x^2))
  bool printed_A_holds = false;      // the displayed x(H + ...) form satisfies the relation
  bool c4_matches_display = false;   // derived C4 equals the cyclotomic display after renaming
  bool poly_final_proportional = false;  // cubic after F10^2 reduction is a multiple of poly final
  std::optional<RatFunc> poly_final_factor;
  bool polyproof1_matches = false;   // unscaled polyproof 1 equals poly final up to a factor
  bool polyproof2_matches = false;   // polyproof 2 is d/df of polyproof 1
  bool polyproof_dx_matches = false;  // d/dx of polyproof 1
  bool polyproof1_printed_matches = false;
  bool polyproof_dx_printed_matches = false;
  std::string note;
  std::string json() const;
};
DerivationReport derive_catalytic();

struct SRouteReport {
  bool eigen_ok = false;     // v(1/x) P0(x) = m0 v(x) for v = (2x/3, -x/(3t), 2/(3x)), m0 = -1/2
  bool offset_matches = false;  // offset -1/(3t^2(x^2 + 1))
  ResidualReport definition_vs_eliminated;  // the two forms of S agree on data
  ResidualReport definition_printed;        // the displayed definition against the eliminated form
  ResidualReport relation;    // derived separated relation on data
  ResidualReport cubic;       // derived cubic on data
  ResidualReport sx_display;  // displayed relation for S on data
  ResidualReport hn_alg;      // displayed linear relation on data
  bool ok() const { return eigen_ok && offset_matches && relation.ok && cubic.ok; }
  std::string json() const;
};
SRouteReport s_route(const Data& d);

// Nondegeneracy of polyproof 1 on data together with the displayed leading forms
struct JacobianReport {
  NondegeneracyReport nd;
  PuiseuxLeading polyproof2_roots;  // of polyproof 2 on data
  bool block_matches = false;       // block = -9X^4 + 24(X^3 + X^5)t^2 + O(t^4)
  bool dx0_matches = false;         // d/dx0 P = x^3 - (1 + 2x^2 + x^4)t^2 + O(t^4)
  std::string json() const;
};
JacobianReport jacobian(const Data& d);

}  // namespace tq
}  // namespace lw
