#include "latwalk/kernel.hpp"

#include <algorithm>
#include <cstdlib>

#include "json.hpp"

namespace lw {

namespace {

RatFunc rf_of(const LaurentPoly& p) { return RatFunc(BivarPoly::from_laurent(p)); }

RatFunc rf_xpow(int k) { return k >= 0 ? RatFunc::x(k) : RatFunc::x(-k).inv(); }

// sx^k * x^(ex k)
RatFunc X_pow(const GroupElement& g, int k) { return RatFunc(g.sx.pow(k)) * rf_xpow(g.ex * k); }

RatFunc ry_pow(const GroupElement& g, int k) { return k >= 0 ? g.ry.pow(k) : g.ry.inv().pow(-k); }

TSeries tpoly(const LaurentPoly& p, int k) { return TSeries::exact(p).mul_t(k); }

}  // namespace

BiSeries Kernel::biseries(int N) const {
  BiSeries K = BiSeries::monomial(GQ(1), 0, 0, 0, N);
  for (const auto& s : steps) K -= BiSeries::monomial(GQ(1), s.dx, s.dy, 1, N);
  return K;
}

RatFunc Kernel::A_rf() const { return rf_of(A); }
RatFunc Kernel::B_rf() const { return rf_of(B); }
RatFunc Kernel::C_rf() const { return rf_of(C); }

RatFunc Kernel::delta() const {
  RatFunc u = RatFunc(1) - RatFunc::t() * B_rf();
  return u * u - RatFunc(4) * RatFunc::t(2) * A_rf() * C_rf();
}

std::string Kernel::str() const {
  std::string s;
  for (const auto& st : steps) {
    std::string m;
    if (st.dx == 1) m = "x";
    if (st.dx == -1) m = "xbar";
    if (st.dy) m += std::string(m.empty() ? "" : "*") + (st.dy == 1 ? "y" : "ybar");
    s += (s.empty() ? "" : " + ") + m;
  }
  return "1 - t*(" + s + ")";
}

Kernel build_kernel(const WalkModel& m) {
  Kernel k;
  if (m.steps.empty()) throw ConfigError("model has no steps");
  for (const auto& s : m.steps) {
    if (s.dx < -1 || s.dx > 1 || s.dy < -1 || s.dy > 1 || (s.dx == 0 && s.dy == 0))
      throw ConfigError("step set is not small");
    LaurentPoly mx = LaurentPoly::x(s.dx), my = LaurentPoly::x(s.dy);
    (s.dy == 1 ? k.A : s.dy == 0 ? k.B : k.C) += mx;
    (s.dx == 1 ? k.a : s.dx == 0 ? k.b : k.c) += my;
  }
  k.steps = m.steps;
  return k;
}

KernelRoots kernel_roots(const Kernel& k, int N) {
  if (k.A.is_zero() || k.C.is_zero()) throw MathError("kernel has no root analytic at t = 0");
  KernelRoots r;
  r.N = N;
  int M = N + 2;
  TSeries one_tb = TSeries::exact(LaurentPoly(1)) - tpoly(k.B, 1);
  TSeries D = (one_tb * one_tb - tpoly(k.A * k.C * GQ(4), 2)).truncated(M);
  TSeries sq = D.sqrt();
  auto y0 = ((one_tb - sq) * GQ::frac(1, 2)).mul_t(-1).div_exact(k.A);
  if (!y0) throw MathError("kernel root does not have Laurent coefficients");
  TSeries Y0 = *y0;  // mod t^(N+1)
  r.Y0 = Y0.truncated(N);
  r.tAY1 = ((one_tb + sq) * GQ::frac(1, 2)).truncated(N);
  if (k.C.is_monomial()) r.Y1inv = (Y0 * k.A).div_exact(k.C).value().truncated(N);
  r.product = k.C_rf() / k.A_rf();
  r.sum = (RatFunc(1) - RatFunc::t() * k.B_rf()) / (RatFunc::t() * k.A_rf());
  RatFunc twotA = RatFunc(2) * RatFunc::t() * k.A_rf();
  r.Y0_exact = QuadExt((RatFunc(1) - RatFunc::t() * k.B_rf()) / twotA, -twotA.inv(), k.delta());

  r.root_ok = subst_kernel_root(k.biseries(N + 1), Y0, SubstMode::Y).is_zero_mod(N);
  r.product_ok = (Y0 * r.tAY1 - tpoly(k.C, 1)).is_zero_mod(N);
  r.sum_ok = (Y0 * tpoly(k.A, 1) + r.tAY1 - one_tb).is_zero_mod(N);
  return r;
}

// group

namespace {

std::string with_y(std::string s) {
  std::replace(s.begin(), s.end(), 't', 'y');
  return s;
}

RatFunc rf_pow(const RatFunc& f, int k) { return k >= 0 ? f.pow(k) : f.inv().pow(-k); }

// Laurent polynomial in y placed in the second slot
RatFunc rf_of_y(const LaurentPoly& p) {
  RatFunc r;
  for (const auto& [e, c] : p.terms()) r += RatFunc(c) * rf_pow(RatFunc::t(), e);
  return r;
}

RatFunc subs_y_poly(const BivarPoly& p, const RatFunc& v) {
  RatFunc r;
  if (p.is_zero()) return r;
  for (int k = p.min_t(); k <= p.max_t(); ++k) {
    LaurentPoly c = p.t_coeff(k);
    if (!c.is_zero()) r += rf_of(c) * rf_pow(v, k);
  }
  return r;
}

RatFunc subs_y(const RatFunc& f, const RatFunc& v) { return subs_y_poly(f.num(), v) / subs_y_poly(f.den(), v); }

void detect_monomial(GroupElement& g) {
  g.monomial = false;
  const BivarPoly& xn = g.X.num();
  const BivarPoly& xd = g.X.den();
  if (!g.X.is_t_free() || !xn.is_monomial() || !xd.is_monomial()) return;
  int e = xn.lead().first.first - xd.lead().first.first;
  if (e != 1 && e != -1) return;
  for (int ey : {1, -1}) {
    RatFunc r = g.Y * rf_pow(RatFunc::t(), -ey);
    if (r.is_t_free()) {
      g.sx = xn.lead().second / xd.lead().second;
      g.ex = e;
      g.ry = r;
      g.ey = ey;
      g.monomial = true;
      return;
    }
  }
}

}  // namespace

std::string GroupElement::x_str() const {
  if (!monomial) return with_y(X.str());
  std::string c = sx.is_one() ? "" : "(" + sx.str() + ")*";
  if (ex == 1) return c + "x";
  return c + "1/x";
}

std::string GroupElement::y_str() const {
  if (!monomial) return with_y(Y.str());
  bool unit = ry == RatFunc(1);
  if (ey == 1) return unit ? "y" : "(" + ry.str() + ")*y";
  return unit ? "1/y" : "(" + ry.str() + ")/y";
}

GroupReport walk_group(const Kernel& k, int cap) {
  GroupReport rep;
  if (k.a.is_zero() || k.c.is_zero() || k.A.is_zero() || k.C.is_zero()) {
    rep.note = "kernel is not quadratic in both variables";
    return rep;
  }
  // phi: x -> c(y)/(a(y) x), psi: y -> C(x)/(A(x) y)
  RatFunc xs = rf_of_y(k.c) / (rf_of_y(k.a) * RatFunc::x());
  RatFunc ys = k.C_rf() / (k.A_rf() * RatFunc::t());

  auto apply = [&](const GroupElement& g, bool phi) {
    GroupElement h;
    h.X = phi ? g.X.subs_x(xs) : subs_y(g.X, ys);
    h.Y = phi ? g.Y.subs_x(xs) : subs_y(g.Y, ys);
    h.length = g.length + 1;
    const char* w = phi ? "phi" : "psi";
    h.word = g.word.empty() ? w : g.word + "." + w;
    detect_monomial(h);
    return h;
  };

  rep.elements.push_back(GroupElement{});
  for (size_t q = 0; q < rep.elements.size(); ++q) {
    for (bool phi : {true, false}) {
      GroupElement h = apply(rep.elements[q], phi);
      if (std::find(rep.elements.begin(), rep.elements.end(), h) != rep.elements.end()) continue;
      if (static_cast<int>(rep.elements.size()) >= cap) {
        rep.note = "orbit exceeds cap " + std::to_string(cap);
        return rep;
      }
      rep.elements.push_back(h);
    }
  }
  rep.closed = true;
  return rep;
}

bool preserves_kernel(const Kernel& k, const GroupElement& g) {
  RatFunc s0, s1;
  for (const auto& st : k.steps) {
    s0 += rf_pow(RatFunc::x(), st.dx) * rf_pow(RatFunc::t(), st.dy);
    s1 += rf_pow(g.X, st.dx) * rf_pow(g.Y, st.dy);
  }
  return s0 == s1;
}

// orbit sums

void YRat::add(int k, const RatFunc& v) {
  auto it = c.find(k);
  if (it == c.end()) {
    if (!v.is_zero()) c.emplace(k, v);
    return;
  }
  it->second += v;
  if (it->second.is_zero()) c.erase(it);
}

std::string YRat::str() const {
  if (c.empty()) return "0";
  std::string s;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    if (!s.empty()) s += " + ";
    s += "(" + it->second.str() + ")";
    if (it->first) s += "*y^" + std::to_string(it->first);
  }
  return s;
}

namespace {

LaurentPoly laurent_of(const BivarPoly& p) {
  if (!p.is_t_free()) throw MathError("substitution depends on t");
  return p.t_coeff(0);
}

}  // namespace

OrbitSum orbit_sum(const WalkModel& m, const CoeffTable& tab, const std::vector<GQ>& coeffs) {
  OrbitSum os;
  os.N = tab.max_n() + 1;
  Kernel k = build_kernel(m);
  GroupReport grp = walk_group(k);
  if (!grp.closed) throw MathError("walk group is not finite within the cap: " + grp.note);
  for (const auto& g : grp.elements)
    if (!g.monomial) throw MathError("orbit sums need substitutions of the form (s x^{+-1}, r(x) y^{+-1})");
  os.group_finite = true;
  os.elements = grp.elements;
  if (!coeffs.empty() && coeffs.size() != os.elements.size())
    throw MathError("orbit sum needs one coefficient per group element");
  for (size_t q = 0; q < os.elements.size(); ++q)
    os.coeffs.push_back(coeffs.empty() ? GQ(os.elements[q].length % 2 ? -1 : 1) : coeffs[q]);

  auto eq = registered_equation(m);
  std::vector<Monomial> start = eq ? eq->start : std::vector<Monomial>{{GQ(1), m.i0, m.j0}};

  // section-freeness: the boundary unknowns must cancel after substitution
  if (eq) {
    std::map<std::string, YRat> by_unknown;
    for (size_t q = 0; q < os.elements.size(); ++q) {
      const auto& g = os.elements[q];
      for (const auto& term : eq->terms) {
        RatFunc c = RatFunc(os.coeffs[q] * term.coeff) * RatFunc::t(term.tpow) * X_pow(g, term.a + 1) *
                    ry_pow(g, term.b + 1);
        std::string arg;
        if (term.sec.kind == SectionKind::HorizontalPos || term.sec.kind == SectionKind::HorizontalNeg) arg = g.x_str();
        if (term.sec.kind == SectionKind::VerticalPos || term.sec.kind == SectionKind::VerticalNeg) arg = g.y_str();
        by_unknown[term.sec.str() + "(" + arg + ")"].add(g.ey * (term.b + 1), c);
      }
    }
    for (const auto& [name, v] : by_unknown)
      if (!v.is_zero()) os.leftover.push_back(name);
    os.section_free = os.leftover.empty();
  } else {
    os.leftover.push_back("no boundary decomposition for this model");
  }

  for (size_t q = 0; q < os.elements.size(); ++q) {
    const auto& g = os.elements[q];
    for (const auto& s : start)
      os.rhs_numerator.add(g.ey * (s.b + 1), RatFunc(os.coeffs[q] * s.coeff) * X_pow(g, s.a + 1) * ry_pow(g, s.b + 1));
  }

  // clear the denominators of ry^k for |k| <= M
  int M = std::abs(tab.j0()) + tab.radius() + 1;
  for (const auto& s : start) M = std::max(M, std::abs(s.b + 1));
  std::vector<RatFunc> classes;
  std::vector<LaurentPoly> P, Q;
  std::vector<int> cls(os.elements.size(), -1);
  for (size_t q = 0; q < os.elements.size(); ++q) {
    const RatFunc& ry = os.elements[q].ry;
    if (ry.is_constant()) continue;
    auto it = std::find(classes.begin(), classes.end(), ry);
    if (it == classes.end()) {
      classes.push_back(ry);
      P.push_back(laurent_of(ry.num()));
      Q.push_back(laurent_of(ry.den()));
      cls[q] = static_cast<int>(classes.size()) - 1;
    } else {
      cls[q] = static_cast<int>(it - classes.begin());
    }
  }
  os.clear = LaurentPoly(1);
  for (size_t c = 0; c < classes.size(); ++c) os.clear = os.clear * (P[c] * Q[c]).pow(M);

  auto make_ypow = [&](size_t q) {
    std::map<int, LaurentPoly> cache;
    const auto& g = os.elements[q];
    LaurentPoly base(1);
    for (size_t c = 0; c < classes.size(); ++c)
      if (static_cast<int>(c) != cls[q]) base = base * (P[c] * Q[c]).pow(M);
    GQ rconst = g.ry.is_constant() ? g.ry.constant_value() : GQ(1);
    return [=](int kk) mutable -> const LaurentPoly& {
      auto it = cache.find(kk);
      if (it != cache.end()) return it->second;
      if (std::abs(kk) > M) throw MathError("orbit sum clearing exponent too small");
      LaurentPoly v = cls[q] < 0 ? base * rconst.pow(kk)
                                 : base * P[cls[q]].pow(kk + M) * Q[cls[q]].pow(M - kk);
      return cache.emplace(kk, v).first->second;
    };
  };

  os.cleared = BiSeries(os.N);
  BiSeries rhs(os.N);
  auto entries = tab.entries();
  for (size_t q = 0; q < os.elements.size(); ++q) {
    const auto& g = os.elements[q];
    auto ypow = make_ypow(q);
    for (const auto& e : entries) {
      GQ c = os.coeffs[q] * e.count * g.sx.pow(e.i + 1);
      os.cleared.add_term(e.n, g.ey * (e.j + 1), LaurentPoly::monomial(c, g.ex * (e.i + 1)) * ypow(e.j + 1));
    }
    for (const auto& s : start) {
      GQ c = os.coeffs[q] * s.coeff * g.sx.pow(s.a + 1);
      rhs.add_term(0, g.ey * (s.b + 1), LaurentPoly::monomial(c, g.ex * (s.a + 1)) * ypow(s.b + 1));
    }
  }
  os.verified = os.section_free && (k.biseries(os.N) * os.cleared - rhs).is_zero_mod(os.N);
  return os;
}

std::string OrbitSum::json() const {
  nlohmann::json j;
  j["order"] = N;
  j["elements"] = nlohmann::json::array();
  for (size_t q = 0; q < elements.size(); ++q)
    j["elements"].push_back({{"map", elements[q].str()}, {"word", elements[q].word}, {"coeff", coeffs[q].str()}});
  j["group_finite"] = group_finite;
  j["section_free"] = section_free;
  j["leftover"] = leftover;
  j["rhs"] = section_free ? nlohmann::json("(" + rhs_numerator.str() + ") / K(x,y)") : nlohmann::json(nullptr);
  j["verified"] = verified;
  return j.dump(2);
}

}  // namespace lw
