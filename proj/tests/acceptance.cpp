// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero when a criterion fails,
// except for the failures listed as known discrepancies.
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "latwalk/birkhoff.hpp"
#include "latwalk/catalytic.hpp"
#include "latwalk/crbvp.hpp"
#include "latwalk/kernel.hpp"
#include "latwalk/three_quadrant.hpp"
#include "latwalk/walk.hpp"
#include "properties.hpp"

using namespace lw;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
  bool known = false;  // failure explained by a documented discrepancy
};

RatFunc P(const char* s) { return RatFunc::parse(s); }

RatVec rv(std::vector<const char*> v) {
  RatVec out;
  for (const char* s : v) out.push_back(P(s));
  return out;
}

bool all_zero_mod(const std::vector<TSeries>& v, int N) {
  for (const auto& s : v)
    if (!s.is_zero_mod(N)) return false;
  return true;
}

bool proportional(const SeparableRelation& a, const SeparableRelation& b) {
  RatVec va = a.at_inv, vb = b.at_inv;
  va.insert(va.end(), a.at_x.begin(), a.at_x.end());
  vb.insert(vb.end(), b.at_x.begin(), b.at_x.end());
  auto k = proportionality(va, vb);
  if (!k || k->is_zero()) return false;
  for (const auto& [s, q] : a.rest) {
    auto it = b.rest.find(s);
    if (it == b.rest.end() || !(q * *k == it->second)) return false;
  }
  return a.rest.size() == b.rest.size();
}

std::string yn(bool b) { return b ? "yes" : "no"; }

std::string residual_str(const ResidualReport& r) {
  return r.ok ? "0 mod t^" + std::to_string(r.N)
              : "fails at t^" + (r.first_failure ? r.first_failure->get_str() : std::string("?"));
}

QuadExt exact_Y0(const Kernel& k) {
  return QuadExt((RatFunc(1) - RatFunc::t() * k.B_rf()) / (RatFunc(2) * RatFunc::t() * k.A_rf()),
                 -(RatFunc(1) / (RatFunc(2) * RatFunc::t() * k.A_rf())), k.delta());
}

Verdict kernel_roots_criterion() {
  const int N = 16;
  KernelRoots r = kernel_roots(build_kernel(three_quadrant_model()), N);
  TSeries expect = rf_to_series(P("t + t^3*(x^2+1)/x + 2*t^5*(x^2+1)^2/x^2 + 5*t^7*(x^2+1)^3/x^3"), 9);
  bool y0 = r.Y0.truncated(9).equals_mod(expect) && r.Y0.trunc() >= 9;
  bool prod = r.product == P("1/(x + xb)") && r.product_ok;
  bool sum = r.sum == P("1/(t*(x + xb))") && r.sum_ok;
  // Y0 (t(x + 1/x) Y1) = t as series
  bool series = (r.Y0 * r.tAY1 - TSeries::monomial(1, 0, 1, 1, N)).is_zero_mod(N) && r.root_ok;
  return {y0 && prod && sum && series, "Y0 through t^8 " + yn(y0) + ", Y0 Y1 = 1/(x+1/x) " + yn(prod) +
                                           ", Y0 + Y1 = 1/(t(x+1/x)) " + yn(sum) + ", mod t^16 " + yn(series)};
}

Verdict functional_equations_criterion() {
  bool eq = true, oracle = true;
  for (const char* name : {"three-quadrant-nenws", "outside-quadrant"}) {
    WalkModel m = model_by_name(name);
    eq = eq && equation_residual(m, dp_enumerate(m, 11)).is_zero_mod(12);
  }
  for (const auto& name : registered_models()) {
    WalkModel m = model_by_name(name);
    oracle = oracle && dp_enumerate(m, 8) == dfs_enumerate(m, 8);
  }
  return {eq && oracle, "residuals 0 mod t^12 " + yn(eq) + ", DP = depth-first for n <= 8 " + yn(oracle)};
}

Verdict orbit_sum_criterion() {
  YRat expect;
  RatFunc pre = P("(x-1)*(x+1)/(x*(x^2+1))");
  expect.add(1, pre * P("x^2 + 1"));
  expect.add(-1, pre * P("-x"));
  bool ok = true;
  std::string d;
  for (const char* name : {"three-quadrant-nenws", "quarter-nenws"}) {
    WalkModel m = model_by_name(name);
    OrbitSum os = orbit_sum(m, dp_enumerate(m, 9));
    bool b = os.section_free && os.verified && os.rhs_numerator == expect;
    ok = ok && b;
    d += std::string(name) + " " + yn(b) + ", ";
  }
  WalkModel o = outside_quadrant_model();
  OrbitSum oo = orbit_sum(o, dp_enumerate(o, 11));
  bool zero = oo.verified && oo.rhs_numerator.is_zero() && oo.cleared.is_zero_mod(12);
  return {ok && zero, d + "outside-quadrant sum 0 mod t^12 " + yn(zero)};
}

Verdict automorphism_criterion() {
  const int N = 12;
  bool ok = true;
  std::string d;
  for (const CRBVP& c : {assemble_three_quadrant(), assemble_outside_quadrant()}) {
    WalkModel m = c.unknowns.size() == 3 ? three_quadrant_model() : outside_quadrant_model();
    Binding b = bind_sections(m, dp_enumerate(m, N - 1), c.unknowns);
    AutomorphismReport a = check_automorphism(c, &b, N);
    bool sys = all_zero_mod(system_residual(c, b), N);
    ok = ok && a.ok() && sys;
    d += c.name + ": au1 " + yn(a.au1) + " au2 " + yn(a.au2) + " C-solvability " +
         yn(a.solvable_exact && a.solvable_series.value_or(false)) + "; ";
  }
  d.resize(d.size() - 2);
  return {ok, d};
}

Verdict eigen_criterion() {
  CRBVP c3 = assemble_three_quadrant();
  RatVec w = rv({"-2*xb^2", "xb^2/t", "1"}) * c3.P1;
  bool null3 = is_zero_vec(w);

  CRBVP co = assemble_outside_quadrant();
  EigenReport eo = eigen_classify(co);
  std::multiset<std::string> lam, mu;
  for (const auto& l : eo.lambdas()) lam.insert(l.str());
  for (const auto& m : eo.mus()) mu.insert(m.str());
  std::string m4 = P("3*x^2/(4*(t*(x-1)^2-x)*(t*(x+1)^2-x))").str();
  bool lam_ok = lam == std::multiset<std::string>{"1", "1", "1/4", "1/4"};
  bool mu_ok = mu == std::multiset<std::string>{"0", "0", m4, m4};
  bool pairing = true;
  for (const CRBVP* c : {&c3, &co})
    for (const auto& p : eigen_classify(*c).pairs) pairing = pairing && p.pairing_ok && p.lambda + p.mu * c->delta == RatFunc(1);
  return {null3 && lam_ok && mu_ok && pairing, "v P1 = 0 " + yn(null3) + ", eigenvalues {1,1,1/4,1/4} " + yn(lam_ok) +
                                                   ", P1 eigenvalues " + yn(mu_ok) + ", lambda + mu delta = 1 " +
                                                   yn(pairing)};
}

Verdict separable_criterion() {
  // coefficients carry t^-2: data mod t^14 certifies the relation mod t^12
  const int N = 14, K = 12;
  WalkModel m = three_quadrant_model();
  CRBVP c = assemble_three_quadrant();
  Binding b = bind_sections(m, dp_enumerate(m, N - 1), c.unknowns);
  SeparableRelation r = balanced_null_vector(c, left_null_basis(c.P1)[0]);
  SeparableRelation shown;
  shown.unknowns = c.unknowns;
  shown.at_inv = rv({"2*t*xb", "-xb", "-t*x"});
  shown.at_x = rv({"-2*t*x", "x", "t*xb"});
  shown.rest["1"] = exact_Y0(build_kernel(m)) * P("x - xb");
  bool form = proportional(r, shown);
  bool rel = separable_residual(r, b).is_zero_mod(K);
  auto [pos, neg] = split_residuals(split_relation(r, N), b);
  bool split = pos.is_zero_mod(K) && neg.is_zero_mod(K);
  return {form && rel && split,
          "coefficients as displayed " + yn(form) + ", relation 0 mod t^12 " + yn(rel) + ", PR/NR parts " + yn(split)};
}

Verdict catalytic_criterion(const tq::Data& d) {
  tq::PolyFinalReport r = tq::verify_poly_final(d);
  // reconstructions are required mod t^10
  bool hn = r.hn.ok || (r.hn.first_failure && *r.hn.first_failure >= 10);
  bool hp = r.hp.ok || (r.hp.first_failure && *r.hp.first_failure >= 10);
  bool ok = r.poly_final.ok && r.fm1.ok && hn && hp;
  return {ok, "poly final " + residual_str(r.poly_final) + ", F_{-1,0} relation " + residual_str(r.fm1) +
                  ", Hn " + residual_str(r.hn) + " (constant 1/(3t^2(x+1/x)); the 1/(3t(x+1/x)) form " +
                  residual_str(r.hn_printed) + "), Hp " + residual_str(r.hp)};
}

Verdict classifier_criterion() {
  SolvableK s3 = solvable_k(3);
  bool first = s3.rows.size() == 2 && s3.rows[0].lambdas == std::vector<GQ>{GQ::frac(1, 4)};
  bool second = s3.rows.size() == 2 && s3.rows[1].lambdas == std::vector<GQ>{GQ::frac(-3, 4)};
  std::string got = s3.rows.size() == 2 && !s3.rows[1].lambdas.empty() ? s3.rows[1].lambdas[0].str() : "none";
  bool recip = true;
  for (int n = 3; n <= 9; n += 2) {
    SolvableK s = solvable_k(n);
    recip = recip && s.reciprocal && *s.reciprocal;
  }
  Verdict v{first && second && recip,
            "n=3 first case lambda=1/4 " + yn(first) + ", second case expected -3/4, derived " + got +
                " (k=-1/3, lambda=1/(1-k)), reciprocal pairing n<=9 " + yn(recip)};
  // the only failing sub-check is the expected -3/4 against the derived 3/4
  v.known = !v.pass && first && recip && got == "3/4";
  if (v.known) v.detail += "; known discrepancy";
  return v;
}

Verdict nondegeneracy_criterion(const tq::Data& d) {
  tq::JacobianReport j = tq::jacobian(d);
  bool block = j.block_matches && j.nd.block_exponent && *j.nd.block_exponent == mpq_class(8, 3);
  bool roots = j.polyproof2_roots.small_roots() == 3 && !j.polyproof2_roots.segments.empty() &&
               j.polyproof2_roots.segments[0].exponent == mpq_class(2, 3);
  return {block && roots && j.nd.ok, "2x2 block -9X^4 + 24(X^3+X^5)t^2 " + yn(j.block_matches) + ", exponent 8/3 " +
                                         yn(block) + ", 3 roots of exponent 2/3 " + yn(roots) +
                                         ", nondegenerate " + yn(j.nd.ok)};
}

Verdict birkhoff_criterion() {
  std::mt19937 rng(5150);
  std::uniform_int_distribution<int> coef(-3, 3), ex(-2, 2);
  const int iters = 6;
  int runs = 0, fails = 0;
  for (int n : {2, 3})
    for (int trial = 0; trial < 20; ++trial) {
      SeriesMatrix th(n, std::vector<TSeries>(n));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          LaurentPoly p;
          for (int k = 0; k < 3; ++k) p.add_term(ex(rng), GQ(coef(rng)));
          TSeries e = TSeries::exact(p).mul_t(1);
          if (i == j) e += TSeries::exact(LaurentPoly(1));
          th[i][j] = e.truncated(iters + 2);
        }
      ++runs;
      try {
        BirkhoffResult r = birkhoff_factor(th, 0, iters);
        SeriesMatrix LT = series_mat_mul(r.Lambda, th);
        bool ok = r.ok && r.detZ0_unit && r.residual_valuation >= iters;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) ok = ok && (LT[i][j] - r.Z[i][j].mul_x(-r.m)).is_zero_mod(iters);
        if (!ok) ++fails;
      } catch (const MathError&) {
        ++fails;
      }
    }
  return {fails == 0, std::to_string(runs) + " random 2x2 and 3x3 matrices, " + std::to_string(fails) + " failures"};
}

Verdict property_criterion() {
  struct Suite {
    const char* name;
    props::Outcome o;
  };
  std::vector<Suite> s = {{"ring laws", props::ring_laws(1000, 101)},
                          {"partition", props::partition_identity(1000, 102)},
                          {"pole parts", props::pole_part_identities(1200, 103)},
                          {"multiplicative split", props::multiplicative_split_recomposition(1000, 104)}};
  bool ok = true;
  std::string d;
  for (const auto& x : s) {
    ok = ok && x.o.ok() && x.o.cases >= 1000;
    d += std::string(x.name) + " " + std::to_string(x.o.cases - x.o.failures) + "/" + std::to_string(x.o.cases) + ", ";
    if (!x.o.ok()) d += "(" + x.o.first + ") ";
  }
  d.resize(d.size() - 2);
  return {ok, d};
}

}  // namespace

int main() {
  const tq::Data d = tq::data(12);
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"kernel roots", kernel_roots_criterion},
      {"functional equations", functional_equations_criterion},
      {"orbit sums", orbit_sum_criterion},
      {"automorphism identities", automorphism_criterion},
      {"null and eigen structure", eigen_criterion},
      {"separable equation", separable_criterion},
      {"catalytic equation", [&] { return catalytic_criterion(d); }},
      {"integrability classifier", classifier_criterion},
      {"nondegeneracy", [&] { return nondegeneracy_criterion(d); }},
      {"Birkhoff factorization", birkhoff_criterion},
      {"property suites", property_criterion},
  };
  int unexpected = 0, known = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    std::printf("%2zu %-26s %s  %s\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
    if (!v.pass) (v.known ? known : unexpected)++;
  }
  std::printf("%d unexpected failure(s), %d known discrepancy(ies)\n", unexpected, known);
  return unexpected == 0 ? 0 : 1;
}
