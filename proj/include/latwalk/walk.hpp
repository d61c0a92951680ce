#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latwalk/biseries.hpp"
#include "latwalk/gq.hpp"
#include "latwalk/tseries.hpp"

namespace lw {

struct Step {
  int dx = 0, dy = 0;
  friend bool operator==(const Step& a, const Step& b) { return a.dx == b.dx && a.dy == b.dy; }
  friend bool operator<(const Step& a, const Step& b) { return a.dx != b.dx ? a.dx < b.dx : a.dy < b.dy; }
};

enum class Cone { Quarter, ThreeQuadrant, UpperHalf, LowerHalf, FourthQuadrant, WholePlane };

std::string cone_name(Cone c);
Cone parse_cone(const std::string& s);
bool cone_contains(Cone c, int i, int j);

// Conjunction of bounds on i and j, written like "i=0,j>=0" or "i>=0,j=0".
struct PosPred {
  std::optional<int> i_lo, i_hi, j_lo, j_hi;
  bool matches(int i, int j) const;
  std::string str() const;
  static PosPred parse(const std::string& s);
};

struct SpecialStep {
  int i = 0, j = 0;
  Step step;
  GQ weight;
};

struct ForbiddenStep {
  PosPred where;
  Step step;
};

struct WalkModel {
  std::string name;
  std::vector<Step> steps;
  Cone region = Cone::Quarter;
  int i0 = 0, j0 = 0;
  std::vector<SpecialStep> special;
  std::vector<ForbiddenStep> forbidden;

  bool in_region(int i, int j) const { return cone_contains(region, i, j); }
  // weight of taking s from (i,j); zero when the step is not allowed there
  GQ step_weight(int i, int j, const Step& s) const;
  // throws ConfigError when an invariant is violated
  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

WalkModel three_quadrant_model(const GQ& p = GQ(1));
WalkModel quarter_model();
WalkModel outside_quadrant_model();
std::vector<std::string> registered_models();
// registered name lookup; p only affects the three-quadrant model
WalkModel model_by_name(const std::string& name, const GQ& p = GQ(1));

WalkModel model_from_json(const std::string& text);
std::string model_to_json(const WalkModel& m);

// Weighted counts f_{i,j,n} on a dense grid around the start.
class CoeffTable {
 public:
  CoeffTable(int max_n, int i0, int j0);
  int max_n() const { return max_n_; }
  int radius() const { return R_; }
  int i0() const { return i0_; }
  int j0() const { return j0_; }
  // zero outside the stored grid
  GQ get(int i, int j, int n) const;
  void set(int i, int j, int n, const GQ& v);
  void add(int i, int j, int n, const GQ& v);
  bool in_grid(int i, int j) const;

  struct Entry {
    int i, j, n;
    GQ count;
  };
  // nonzero entries ordered by n, then i, then j
  std::vector<Entry> entries() const;
  std::string csv() const;
  std::string json() const;
  friend bool operator==(const CoeffTable& a, const CoeffTable& b);

 private:
  int max_n_, i0_, j0_, R_, W_;
  std::vector<std::vector<GQ>> g_;
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>((i - i0_ + R_) * W_ + (j - j0_ + R_)); }
};

CoeffTable dp_enumerate(const WalkModel& m, int N);
// literal depth-first enumeration of step sequences; exponential, meant for small N
CoeffTable dfs_enumerate(const WalkModel& m, int N);

enum class SectionKind { HorizontalPos, HorizontalNeg, VerticalPos, VerticalNeg, Point };

// Hp_a(x) = sum_{i>=0} f_{i,a} x^i, Hn_a = sum_{i<0} f_{i,a} x^i (negative powers),
// Vp_a(y), Vn_a(y) likewise along the column i=a, Point = F_{i,j}.
// Vertical sections return series whose x variable stands for y.
struct SectionSpec {
  SectionKind kind = SectionKind::HorizontalPos;
  int line = 0;
  int i = 0, j = 0;
  static SectionSpec Hp(int a = 0) { return {SectionKind::HorizontalPos, a, 0, 0}; }
  static SectionSpec Hn(int a = 0) { return {SectionKind::HorizontalNeg, a, 0, 0}; }
  static SectionSpec Vp(int a = 0) { return {SectionKind::VerticalPos, a, 0, 0}; }
  static SectionSpec Vn(int a = 0) { return {SectionKind::VerticalNeg, a, 0, 0}; }
  static SectionSpec point(int i, int j) { return {SectionKind::Point, 0, i, j}; }
  std::string str() const;
  static SectionSpec parse(const std::string& s);
};

// series mod t^(max_n+1)
TSeries section(const WalkModel& m, const CoeffTable& tab, const SectionSpec& spec);
// F(x,y) restricted by a position filter (all positions when empty)
BiSeries full_series(const CoeffTable& tab, const std::function<bool(int, int)>& keep = nullptr);

// K(x,y) = 1 - t S(x,y) as an exact BiSeries
BiSeries kernel_biseries(const WalkModel& m, int N);

// c * t^tpow * x^a * y^b * G, G a section read as a function of x (horizontal), y (vertical)
// or a constant (point)
struct EquationTerm {
  GQ coeff;
  int tpow = 0, a = 0, b = 0;
  SectionSpec sec;
};

struct Monomial {
  GQ coeff;
  int a = 0, b = 0;
};

// K F = sum(start) + sum(terms)
struct FunctionalEquation {
  std::vector<Monomial> start;
  std::vector<EquationTerm> terms;
  std::string str() const;
};

// boundary decomposition of a registered model (nullopt for other models)
std::optional<FunctionalEquation> registered_equation(const WalkModel& m);
// weight on the up-left step out of (0,-1) in a three-quadrant model
GQ three_quadrant_weight(const WalkModel& m);

// K F minus the right-hand side of the model's functional equation, built from sections.
// Registered models use their hand-derived boundary decompositions; other models go
// through boundary_rhs_generic.
BiSeries equation_residual(const WalkModel& m, const CoeffTable& tab);
BiSeries boundary_rhs(const WalkModel& m, const CoeffTable& tab);
BiSeries boundary_rhs_generic(const WalkModel& m, const CoeffTable& tab);

// Partial generating functions of the three-quadrant model: U over j>=0 and V over i>=0, j<0,
// with residuals of their kernel equations.
BiSeries upper_half_residual(const CoeffTable& tab, const GQ& p);
BiSeries fourth_quadrant_residual(const CoeffTable& tab);

}  // namespace lw
