#include "latwalk/crbvp.hpp"

#include <algorithm>
#include <set>

#include "json.hpp"
#include "latwalk/factor.hpp"
#include "latwalk/kernel.hpp"

namespace lw {

namespace {

const RatFunc kX = RatFunc::x();
const RatFunc kXb = RatFunc::x(-1);
const RatFunc kT = RatFunc::t();

QuadExt rq(const RatFunc& r, const RatFunc& delta) { return QuadExt::rational(r, delta); }

QuadExt root_Y0(const Kernel& k) {
  RatFunc A = k.A_rf(), B = k.B_rf();
  RatFunc den = RatFunc(2) * kT * A;
  return QuadExt((RatFunc(1) - kT * B) / den, -(RatFunc(1) / den), k.delta());
}

QuadVec zeros(int n, const RatFunc& delta) { return QuadVec(static_cast<size_t>(n), rq(RatFunc(), delta)); }

QuadVec invert_x(const QuadVec& v) {
  QuadVec w;
  for (const auto& e : v) w.push_back(e.invert_x());
  return w;
}

QuadExt dot(const RatVec& v, const QuadVec& w) {
  QuadExt s;
  for (size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero() && !w[k].is_zero()) s = s + w[k] * v[k];
  return s;
}

int work_order(int N) { return N + 4; }

TSeries series_of(const QuadExt& q, int N) { return rf_to_series(q, work_order(N)); }
TSeries series_of(const RatFunc& r, int N) { return rf_to_series(r, work_order(N)); }

// coefficient of x^i in each t-coefficient
TSeries x_coeff(const TSeries& s, int i) {
  std::map<int, LaurentPoly> m;
  for (const auto& [k, c] : s.terms()) {
    GQ v = c.coeff(i);
    if (!v.is_zero()) m[k] = LaurentPoly(v);
  }
  return TSeries::from_units(s.denom(), s.trunc_units(), std::move(m));
}

TSeries x_window(const TSeries& s, int lo, int hi) {
  std::map<int, LaurentPoly> m;
  for (const auto& [k, c] : s.terms()) {
    LaurentPoly w = c.window(lo, hi);
    if (!w.is_zero()) m[k] = w;
  }
  return TSeries::from_units(s.denom(), s.trunc_units(), std::move(m));
}

constexpr int kXInf = 1 << 20;

bool is_negative_label(const std::string& label) {
  if (label.size() < 2) return false;
  return label.compare(0, 2, "Hn") == 0 || label.compare(0, 2, "Vn") == 0;
}

BivarPoly bivar_lcm(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly g = bivar_gcd(a, b);
  return a * *b.exact_div(g);
}

nlohmann::json rat_vec_json(const RatVec& v) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& e : v) j.push_back(e.str());
  return j;
}

nlohmann::json matrix_json(const RatMatrix& m) {
  nlohmann::json j = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) j.push_back(rat_vec_json(m.row(i)));
  return j;
}

}  // namespace

// ---------------------------------------------------------------- systems

std::vector<std::string> CRBVP::scalar_labels() const {
  std::vector<std::string> out;
  for (const auto& [s, v] : C) out.push_back(s);
  return out;
}

std::string CRBVP::json() const {
  nlohmann::json j;
  j["name"] = name;
  j["n"] = n;
  j["p"] = p.str();
  j["unknowns"] = unknowns;
  j["delta"] = delta.str();
  j["P0"] = matrix_json(P0);
  j["P1"] = matrix_json(P1);
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [s, v] : C) {
    nlohmann::json col = nlohmann::json::array();
    for (const auto& e : v) col.push_back(e.str());
    c[s] = col;
  }
  j["C"] = c;
  return j.dump();
}

LinearRelation LinearRelation::swapped() const {
  LinearRelation r;
  r.at_inv = invert_x(at_x);
  r.at_x = invert_x(at_inv);
  for (const auto& [s, v] : rest) r.rest[s] = v.invert_x();
  return r;
}

std::string LinearRelation::str(const std::vector<std::string>& names) const {
  std::string s;
  auto add = [&](const QuadExt& c, const std::string& what) {
    if (c.is_zero()) return;
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")" + what;
  };
  for (size_t k = 0; k < names.size(); ++k) add(at_inv[k], "*" + names[k] + "(1/x)");
  for (size_t k = 0; k < names.size(); ++k) add(at_x[k], "*" + names[k] + "(x)");
  for (const auto& [l, c] : rest) add(c, l == "1" ? "" : "*" + l);
  return (s.empty() ? "0" : s) + " = 0";
}

CRBVP assemble_from_relations(const std::string& name, const std::vector<std::string>& unknowns, const RatFunc& delta,
                              const std::vector<LinearRelation>& rels) {
  int n = static_cast<int>(unknowns.size());
  if (static_cast<int>(rels.size()) != n) throw MathError("need one relation per unknown");
  QuadMatrix A(n, n), B(n, n);
  std::set<std::string> labels;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rels[i].at_inv.size()) != n || static_cast<int>(rels[i].at_x.size()) != n)
      throw MathError("relation length mismatch");
    for (int j = 0; j < n; ++j) {
      A(i, j) = rels[i].at_inv[j];
      B(i, j) = rels[i].at_x[j];
    }
    for (const auto& [s, v] : rels[i].rest) labels.insert(s);
  }
  QuadMatrix Ai = A.inverse();
  QuadMatrix M = Ai * B;
  CRBVP c;
  c.name = name;
  c.n = n;
  c.unknowns = unknowns;
  c.delta = delta;
  c.P0 = rational_part(M) * RatFunc(-1);
  c.P1 = sqrt_part(M) * RatFunc(-1);
  for (const auto& s : labels) {
    QuadVec col = zeros(n, delta);
    for (int i = 0; i < n; ++i) {
      auto it = rels[i].rest.find(s);
      if (it != rels[i].rest.end()) col[i] = it->second;
    }
    QuadVec v = Ai * col;
    bool nz = false;
    for (auto& e : v) {
      e = -e;
      nz = nz || !e.is_zero();
    }
    if (nz) c.C[s] = v;
  }
  return c;
}

std::vector<LinearRelation> three_quadrant_relations(const GQ& p) {
  Kernel k = build_kernel(three_quadrant_model(p));
  RatFunc d = k.delta();
  QuadExt Y0 = root_Y0(k);
  QuadExt tY0inv = Y0.inv() * kT;
  QuadExt z = rq(RatFunc(), d);
  // upper half plane at y = Y0
  LinearRelation e1;
  e1.at_inv = {z, z, -tY0inv};
  e1.at_x = {-tY0inv, rq(kT * (kX + kXb), d), z};
  e1.rest["1"] = rq(RatFunc(1), d);
  RatFunc fc = -(kT * kXb * RatFunc(GQ(1) - p));
  if (!fc.is_zero()) e1.rest["F_0,-1"] = rq(fc, d);
  // fourth quadrant at 1/y = (x + 1/x) Y0, combined with its image under x -> 1/x
  LinearRelation e3;
  e3.at_inv = {Y0 * kXb, rq(-kXb, d), z};
  e3.at_x = {-(Y0 * kX), rq(kX, d), z};
  return {e1, e1.swapped(), e3};
}

std::vector<LinearRelation> outside_quadrant_relations() {
  Kernel k = build_kernel(outside_quadrant_model());
  RatFunc d = k.delta();
  QuadExt Y0 = root_Y0(k);
  QuadExt Y0i = Y0.inv();
  QuadExt z = rq(RatFunc(), d);
  RatFunc t2 = kT * kT, t3 = t2 * kT;
  // order (Hn_-1, Hp_-1, Hn, Hp)
  LinearRelation lower;  // lower half plane at 1/y = Y0
  lower.at_inv = {rq(-kT, d), z, Y0 * kT, z};
  lower.at_x = {z, rq(-kT, d), z, z};
  lower.rest["1"] = Y0 * kXb;
  LinearRelation second;  // second quadrant at (1/x, Y0) and (x, Y0)
  second.at_inv = {rq(-t2, d), z, Y0i * t2, z};
  second.at_x = {rq(t2, d), z, -(Y0i * t2), z};
  LinearRelation first;  // first quadrant pair with Vp_{-1}(Y0) removed through the second quadrant
  RatFunc xm = kX - kXb;
  first.at_inv = {rq(t3 * xm, d), rq(-(t3 * kXb), d), -(Y0i * (t3 * xm)), Y0i * (t3 * kXb)};
  first.at_x = {z, rq(t3 * kX, d), z, -(Y0i * (t3 * kX))};
  return {lower, lower.swapped(), second, first};
}

CRBVP assemble_three_quadrant(const GQ& p) {
  Kernel k = build_kernel(three_quadrant_model(p));
  CRBVP c = assemble_from_relations("three-quadrant-nenws", {"Hp", "Hp_-1", "Hn"}, k.delta(), three_quadrant_relations(p));
  c.p = p;
  return c;
}

CRBVP assemble_outside_quadrant() {
  Kernel k = build_kernel(outside_quadrant_model());
  return assemble_from_relations("outside-quadrant", {"Hn_-1", "Hp_-1", "Hn", "Hp"}, k.delta(), outside_quadrant_relations());
}

// ---------------------------------------------------------------- data

TSeries Binding::at_x(const std::string& label) const {
  auto it = H.find(label);
  if (it == H.end()) throw ConfigError("unbound unknown " + label);
  return it->second;
}

TSeries Binding::at_inv(const std::string& label) const { return at_x(label).invert_x(); }

TSeries Binding::scalar(const std::string& label) const {
  if (label == "1") return TSeries::exact(LaurentPoly(1));
  auto it = scalars.find(label);
  if (it == scalars.end()) throw ConfigError("unbound scalar " + label);
  return it->second;
}

Binding bind_sections(const WalkModel& m, const CoeffTable& tab, const std::vector<std::string>& unknowns,
                      const std::vector<std::string>& scalars) {
  Binding b;
  b.N = tab.max_n() + 1;
  for (const auto& u : unknowns) {
    TSeries s = section(m, tab, SectionSpec::parse(u));
    b.H[u] = is_negative_label(u) ? s.invert_x() : s;
  }
  for (const auto& s : scalars)
    if (s != "1") b.scalars[s] = section(m, tab, SectionSpec::parse(s));
  return b;
}

TSeries relation_residual(const LinearRelation& r, const std::vector<std::string>& unknowns, const Binding& b) {
  TSeries acc = TSeries::exact(LaurentPoly());
  for (size_t k = 0; k < unknowns.size(); ++k) {
    if (!r.at_inv[k].is_zero()) acc += series_of(r.at_inv[k], b.N) * b.at_inv(unknowns[k]);
    if (!r.at_x[k].is_zero()) acc += series_of(r.at_x[k], b.N) * b.at_x(unknowns[k]);
  }
  for (const auto& [s, c] : r.rest)
    if (!c.is_zero()) acc += series_of(c, b.N) * b.scalar(s);
  return acc;
}

std::vector<TSeries> system_residual(const CRBVP& c, const Binding& b) {
  QuadMatrix M = c.M();
  std::vector<TSeries> out;
  for (int i = 0; i < c.n; ++i) {
    TSeries acc = b.at_inv(c.unknowns[i]);
    for (int j = 0; j < c.n; ++j)
      if (!M(i, j).is_zero()) acc -= series_of(M(i, j), b.N) * b.at_x(c.unknowns[j]);
    for (const auto& [s, v] : c.C)
      if (!v[i].is_zero()) acc -= series_of(v[i], b.N) * b.scalar(s);
    out.push_back(acc);
  }
  return out;
}

// ---------------------------------------------------------------- automorphism

std::string AutomorphismReport::json() const {
  nlohmann::json j;
  j["delta_symmetric"] = delta_symmetric;
  j["au1"] = au1;
  j["au2"] = au2;
  j["solvable_exact"] = solvable_exact;
  j["solvable_series"] = solvable_series ? nlohmann::json(*solvable_series) : nlohmann::json(nullptr);
  j["order"] = order;
  auto cells = [](const std::vector<std::pair<int, int>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (auto [i, k] : v) a.push_back({i, k});
    return a;
  };
  j["au1_bad"] = cells(au1_bad);
  j["au2_bad"] = cells(au2_bad);
  j["c_bad"] = c_bad;
  j["ok"] = ok();
  return j.dump();
}

AutomorphismReport check_automorphism(const CRBVP& c, const Binding* data, int N) {
  AutomorphismReport rep;
  rep.order = N;
  rep.delta_symmetric = c.delta == c.delta.invert_x();
  RatMatrix P0b = c.P0.invert_x(), P1b = c.P1.invert_x();
  RatMatrix a1 = c.P0 * P0b + (c.P1 * P1b) * c.delta - RatMatrix::identity(c.n);
  RatMatrix a2 = c.P0 * P1b + c.P1 * P0b;
  for (int i = 0; i < c.n; ++i)
    for (int j = 0; j < c.n; ++j) {
      if (!a1(i, j).is_zero()) rep.au1_bad.push_back({i, j});
      if (!a2(i, j).is_zero()) rep.au2_bad.push_back({i, j});
    }
  rep.au1 = rep.au1_bad.empty();
  rep.au2 = rep.au2_bad.empty();
  QuadMatrix Mb = c.M().invert_x();
  for (const auto& [s, v] : c.C) {
    QuadVec r = Mb * v;
    QuadVec vb = invert_x(v);
    for (int i = 0; i < c.n; ++i)
      if (!(r[i] + vb[i]).is_zero()) rep.c_bad.push_back(s + "[" + std::to_string(i) + "]");
  }
  rep.solvable_exact = rep.c_bad.empty();
  if (data) {
    bool ok = true;
    for (int i = 0; i < c.n && ok; ++i) {
      TSeries acc = TSeries::exact(LaurentPoly());
      for (const auto& [s, v] : c.C) {
        TSeries comp = series_of(v[i].invert_x(), N);
        for (int j = 0; j < c.n; ++j)
          if (!Mb(i, j).is_zero() && !v[j].is_zero()) comp += series_of(Mb(i, j), N) * series_of(v[j], N);
        acc += comp * data->scalar(s);
      }
      ok = acc.is_zero_mod(N);
    }
    rep.solvable_series = ok;
  }
  return rep;
}

std::vector<RatVec> left_null_basis(const RatMatrix& P) { return P.left_null_basis(); }

// ---------------------------------------------------------------- eigen analysis

std::string tag_name(EigenTag t) {
  switch (t) {
    case EigenTag::NullOfP1: return "null-of-P1";
    case EigenTag::Unit: return "unit";
    case EigenTag::DoubleRational: return "double-rational";
    case EigenTag::Jordan: return "jordan";
    case EigenTag::GaloisPair: return "galois-pair";
    case EigenTag::Unclassified: return "unclassified";
  }
  return "unclassified";
}

std::vector<RatFunc> EigenReport::lambdas() const {
  std::vector<RatFunc> out;
  for (const auto& p : pairs)
    for (int k = 0; k < p.alg_mult; ++k) out.push_back(p.lambda);
  return out;
}

std::vector<RatFunc> EigenReport::mus() const {
  std::vector<RatFunc> out;
  for (const auto& p : pairs)
    for (int k = 0; k < p.alg_mult; ++k) out.push_back(p.mu);
  return out;
}

std::string EigenReport::json() const {
  nlohmann::json j;
  j["char_poly"] = poly_str(char_poly);
  j["char_poly_P1"] = char_poly_P1.is_zero() ? nlohmann::json(nullptr) : nlohmann::json(poly_str(char_poly_P1));
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& p : pairs) {
    nlohmann::json e;
    e["lambda"] = p.lambda.str();
    e["mu"] = p.mu.str();
    e["alg_mult"] = p.alg_mult;
    e["geo_mult"] = p.geo_mult;
    e["symmetric"] = p.symmetric;
    e["pairing_ok"] = p.pairing_ok;
    e["tag"] = tag_name(p.tag);
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : p.left) vs.push_back(rat_vec_json(v));
    e["left"] = vs;
    ev.push_back(e);
  }
  for (const auto& g : galois) ev.push_back({{"factor", g}, {"tag", tag_name(EigenTag::GaloisPair)}});
  j["eigen"] = ev;
  j["double_quarter"] = double_quarter;
  return j.dump();
}

namespace {

void add_root(std::vector<std::pair<RatFunc, int>>& roots, const RatFunc& r, int mult) {
  for (auto& [v, m] : roots)
    if (v == r) {
      m += mult;
      return;
    }
  roots.push_back({r, mult});
}

PolyR lift(const PolyQ& p) {
  std::vector<RatFunc> c;
  for (const auto& v : p.coeffs()) c.push_back(RatFunc(v));
  return PolyR(c);
}

// roots of one square-free factor; irreducible or unresolved pieces go to the report
void resolve_factor(const PolyR& f, int mult, std::vector<std::pair<RatFunc, int>>& roots, EigenReport& rep) {
  if (f.degree() <= 0) return;
  bool constant = true;
  for (const auto& c : f.coeffs()) constant = constant && c.is_constant();
  if (constant) {
    std::vector<GQ> cq;
    for (const auto& c : f.coeffs()) cq.push_back(c.is_zero() ? GQ() : c.constant_value());
    for (const auto& g : factor_gq(PolyQ(cq))) {
      int m = mult * g.mult;
      if (g.f.degree() == 1) {
        add_root(roots, RatFunc(-g.f.coeff(0) / g.f.coeff(1)), m);
        rep.factors.push_back({lift(g.f), m, false, RatFunc()});
      } else {
        RatFunc disc;
        if (g.f.degree() == 2) disc = RatFunc(g.f.coeff(1) * g.f.coeff(1) - GQ(4) * g.f.coeff(0) * g.f.coeff(2));
        rep.factors.push_back({lift(g.f), m, true, disc});
        rep.galois.push_back("(" + poly_str(lift(g.f)) + ")^" + std::to_string(m));
      }
    }
    return;
  }
  PolyR h = f.monic();
  if (h.degree() == 1) {
    add_root(roots, -h.coeff(0), mult);
    rep.factors.push_back({h, mult, false, RatFunc()});
    return;
  }
  if (h.degree() == 2) {
    RatFunc disc = h.coeff(1) * h.coeff(1) - RatFunc(4) * h.coeff(0);
    if (auto s = disc.sqrt()) {
      add_root(roots, (-h.coeff(1) + *s) / RatFunc(2), mult);
      add_root(roots, (-h.coeff(1) - *s) / RatFunc(2), mult);
      rep.factors.push_back({PolyR({(h.coeff(1) - *s) / RatFunc(2), RatFunc(1)}), mult, false, RatFunc()});
      rep.factors.push_back({PolyR({(h.coeff(1) + *s) / RatFunc(2), RatFunc(1)}), mult, false, RatFunc()});
    } else {
      rep.factors.push_back({h, mult, true, disc});
      rep.galois.push_back("(" + poly_str(h) + ")^" + std::to_string(mult));
    }
    return;
  }
  // constant roots of a higher-degree factor, found through a specialization
  GQ xs = GQ::frac(3, 7), ts = GQ::frac(1, 11);
  std::vector<GQ> cs;
  for (const auto& c : h.coeffs()) cs.push_back(c.num().eval(xs, ts) / c.den().eval(xs, ts));
  for (const auto& r : gaussian_rational_roots(PolyQ(cs))) {
    if (!h.eval(RatFunc(r)).is_zero()) continue;
    add_root(roots, RatFunc(r), mult);
    rep.factors.push_back({PolyR({RatFunc(-r), RatFunc(1)}), mult, false, RatFunc()});
    h = h.divmod(PolyR({RatFunc(-r), RatFunc(1)})).first;
  }
  if (h.degree() == 2) {
    resolve_factor(h, mult, roots, rep);
  } else if (h.degree() > 0) {
    rep.factors.push_back({h, mult, false, RatFunc()});
    rep.galois.push_back("unclassified (" + poly_str(h) + ")^" + std::to_string(mult));
  }
}

}  // namespace

EigenReport eigen_structure(const RatMatrix& M0, const RatMatrix* P1, const RatFunc* delta) {
  EigenReport rep;
  int n = M0.rows();
  rep.char_poly = char_poly(M0);
  RatMatrix M1;
  if (P1) {
    M1 = (*P1) * P1->invert_x();
    rep.char_poly_P1 = char_poly(M1);
  }
  std::vector<std::pair<RatFunc, int>> roots;
  for (const auto& [f, mult] : square_free(rep.char_poly)) resolve_factor(f, mult, roots, rep);
  for (const auto& [lam, mult] : roots) {
    Eigenpair e;
    e.lambda = lam;
    e.alg_mult = mult;
    e.symmetric = lam == lam.invert_x();
    RatMatrix A = M0 - RatMatrix::identity(n) * lam;
    e.left = A.left_null_basis();
    e.geo_mult = static_cast<int>(e.left.size());
    if (P1 && delta) {
      e.mu = (RatFunc(1) - lam) / *delta;
      bool ok = true;
      for (const auto& v : e.left) {
        RatVec w = v * M1;
        for (size_t k = 0; k < v.size() && ok; ++k) ok = w[k] == v[k] * e.mu;
      }
      e.pairing_ok = ok && lam + e.mu * *delta == RatFunc(1);
    }
    if (e.geo_mult < e.alg_mult)
      e.tag = EigenTag::Jordan;
    else if (lam == RatFunc(1))
      e.tag = EigenTag::NullOfP1;
    else if (e.alg_mult >= 2)
      e.tag = EigenTag::DoubleRational;
    else
      e.tag = EigenTag::Unit;
    if (lam == RatFunc(GQ::frac(1, 4)) && mult == 2) rep.double_quarter = true;
    rep.pairs.push_back(std::move(e));
  }
  return rep;
}

EigenReport eigen_classify(const CRBVP& c) {
  return eigen_structure(c.P0 * c.P0.invert_x(), &c.P1, &c.delta);
}

// ---------------------------------------------------------------- separable relations

LinearRelation SeparableRelation::as_linear() const {
  LinearRelation r;
  RatFunc d;
  for (const auto& [s, q] : rest)
    if (!q.b().is_zero()) d = q.delta();
  for (const auto& c : at_inv) r.at_inv.push_back(rq(c, d));
  for (const auto& c : at_x) r.at_x.push_back(rq(c, d));
  r.rest = rest;
  return r;
}

std::string SeparableRelation::str() const { return as_linear().str(unknowns); }

std::string SeparableRelation::json() const {
  nlohmann::json j;
  j["unknowns"] = unknowns;
  j["at_inv"] = rat_vec_json(at_inv);
  j["at_x"] = rat_vec_json(at_x);
  nlohmann::json r = nlohmann::json::object();
  for (const auto& [s, q] : rest) r[s] = q.str();
  j["rest"] = r;
  j["v"] = rat_vec_json(v);
  j["k"] = k.str();
  j["f"] = f.str();
  j["separable"] = separable;
  return j.dump();
}

SeparableRelation SeparableRelation::normalized() const {
  BivarPoly D(1);
  for (const auto* vec : {&at_inv, &at_x})
    for (const auto& c : *vec)
      if (!c.is_zero()) D = bivar_lcm(D, c.den());
  SeparableRelation r = *this;
  RatFunc Dr(D);
  for (auto* vec : {&r.at_inv, &r.at_x})
    for (auto& c : *vec) c = c * Dr;
  for (auto& [s, q] : r.rest) q = q * Dr;
  BivarPoly G;
  for (const auto* vec : {&r.at_inv, &r.at_x})
    for (const auto& c : *vec)
      if (!c.is_zero()) G = G.is_zero() ? c.num() : bivar_gcd(G, c.num());
  if (!G.is_zero() && !G.is_constant()) {
    RatFunc Gi = RatFunc(G).inv();
    for (auto* vec : {&r.at_inv, &r.at_x})
      for (auto& c : *vec) c = c * Gi;
    for (auto& [s, q] : r.rest) q = q * Gi;
  }
  return r;
}

SeparableRelation null_relation(const CRBVP& c, const RatVec& v) {
  if (static_cast<int>(v.size()) != c.n) throw MathError("vector length mismatch");
  if (!is_zero_vec(v * c.P1)) throw MathError("vector does not annihilate P1");
  SeparableRelation r;
  r.unknowns = c.unknowns;
  r.v = v;
  r.at_inv = v;
  for (const auto& e : v * c.P0) r.at_x.push_back(-e);
  for (const auto& [s, col] : c.C) {
    QuadExt q = -dot(v, col);
    if (!q.is_zero()) r.rest[s] = q;
  }
  auto k = proportionality(invert_x(v), v * c.P0);
  r.k = k ? *k : RatFunc();
  r.f = RatFunc(1);
  r.separable = true;
  return r;
}

SeparableRelation balanced_null_vector(const CRBVP& c, const RatVec& v) {
  if (!is_zero_vec(v * c.P1)) throw MathError("vector does not annihilate P1");
  auto k = proportionality(invert_x(v), v * c.P0);
  if (!k || k->is_zero()) throw MathError("v P0(x) is not proportional to v(1/x)");
  if (*k * k->invert_x() != RatFunc(1)) throw MathError("k(x) k(1/x) != 1: the system does not conform");
  SplitResult sp = multiplicative_split(*k, SplitMode::Antisymmetric);
  if (!sp.ok) throw MathError("balancing k requires an extension: " + sp.note);
  RatFunc fb = sp.f.invert_x();
  RatVec vl;
  for (const auto& e : v) vl.push_back(e * fb);
  SeparableRelation r = null_relation(c, vl);
  for (size_t i = 0; i < vl.size(); ++i)
    if (r.at_x[i] != -vl[i].invert_x()) throw MathError("internal: balanced vector does not satisfy v_L P0 = v_L(1/x)");
  r.k = *k;
  r.f = sp.f;
  return r;
}

SeparableRelation combine_relations(const std::vector<SeparableRelation>& rels, const std::vector<RatFunc>& w) {
  if (rels.empty() || rels.size() != w.size()) throw MathError("combine_relations: size mismatch");
  SeparableRelation r;
  r.unknowns = rels[0].unknowns;
  size_t n = r.unknowns.size();
  r.at_inv.assign(n, RatFunc());
  r.at_x.assign(n, RatFunc());
  r.v.assign(n, RatFunc());
  for (size_t k = 0; k < rels.size(); ++k) {
    for (size_t i = 0; i < n; ++i) {
      r.at_inv[i] += rels[k].at_inv[i] * w[k];
      r.at_x[i] += rels[k].at_x[i] * w[k];
      if (rels[k].v.size() == n) r.v[i] += rels[k].v[i] * w[k];
    }
    for (const auto& [s, q] : rels[k].rest) {
      auto it = r.rest.find(s);
      QuadExt add = q * w[k];
      if (it == r.rest.end())
        r.rest[s] = add;
      else
        it->second = it->second + add;
    }
  }
  for (auto it = r.rest.begin(); it != r.rest.end();) it = it->second.is_zero() ? r.rest.erase(it) : std::next(it);
  r.separable = true;
  return r;
}

// ---------------------------------------------------------------- positive / negative split

namespace {

std::string boundary_str(const std::vector<BoundaryTerm>& bt) {
  std::string s;
  for (const auto& b : bt) {
    if (!s.empty()) s += " + ";
    s += "(" + b.coeff.str() + ")*[x^" + std::to_string(b.i) + "]" + b.label;
  }
  return s;
}

}  // namespace

std::string SplitRelation::pos_str() const {
  std::string s;
  for (size_t k = 0; k < rel.unknowns.size(); ++k)
    if (!rel.at_x[k].is_zero()) s += (s.empty() ? "" : " + ") + ("(" + rel.at_x[k].str() + ")*" + rel.unknowns[k] + "(x)");
  std::string b = boundary_str(pos_boundary);
  if (!b.empty()) s += " + " + b;
  for (const auto& [l, v] : PR) s += " + PR[" + l + "]" + (l == "1" ? "" : "*" + l);
  return s + " = 0";
}

std::string SplitRelation::neg_str() const {
  std::string s;
  for (size_t k = 0; k < rel.unknowns.size(); ++k)
    if (!rel.at_inv[k].is_zero()) s += (s.empty() ? "" : " + ") + ("(" + rel.at_inv[k].str() + ")*" + rel.unknowns[k] + "(1/x)");
  std::string b = boundary_str(neg_boundary);
  if (!b.empty()) s += " + " + b;
  for (const auto& [l, v] : NR) s += " + NR[" + l + "]" + (l == "1" ? "" : "*" + l);
  return s + " = 0";
}

SplitRelation split_relation(const SeparableRelation& r0, int N) {
  SplitRelation s;
  s.rel = r0.normalized();
  s.N = N;
  const auto& rel = s.rel;
  for (size_t k = 0; k < rel.unknowns.size(); ++k) {
    const std::string& u = rel.unknowns[k];
    int i0 = is_negative_label(u) ? 1 : 0;
    // unknown coefficients are polynomials after normalization
    auto visit = [&](const RatFunc& c, bool inv) {
      if (c.is_zero()) return;
      if (!c.den().is_constant()) throw MathError("split_relation: coefficient is not a polynomial");
      GQ dc = c.den().coeff(0, 0);
      std::map<int, BivarPoly> byx;
      for (const auto& [key, v] : c.num().terms()) byx[key.first].add_term(0, key.second, v / dc);
      for (const auto& [j, cj] : byx) {
        RatFunc cr(cj);
        if (!inv) {
          // c_j x^j h_i x^i crosses to x^{<=0} when i + j <= 0
          for (int i = i0; i + j <= 0; ++i) {
            RatFunc term = cr * RatFunc::x(j + i);
            s.pos_boundary.push_back({-term, u, i, false});
            if (i + j < 0) s.neg_boundary.push_back({term, u, i, false});
          }
        } else {
          // c_j x^j h_i x^{-i}
          for (int i = i0; i <= j; ++i) {
            RatFunc term = cr * RatFunc::x(j - i);
            s.neg_boundary.push_back({-term, u, i, true});
            if (j - i > 0) s.pos_boundary.push_back({term, u, i, true});
          }
        }
      }
    };
    visit(rel.at_x[k], false);
    visit(rel.at_inv[k], true);
  }
  for (const auto& [l, q] : rel.rest) {
    TSeries ser = series_of(q, N);
    s.PR[l] = x_window(ser, 1, kXInf);
    s.NR[l] = x_window(ser, -kXInf, -1);
  }
  return s;
}

TSeries separable_residual(const SeparableRelation& r, const Binding& b) { return relation_residual(r.as_linear(), r.unknowns, b); }

std::pair<TSeries, TSeries> split_residuals(const SplitRelation& s, const Binding& b) {
  const auto& rel = s.rel;
  TSeries pos = TSeries::exact(LaurentPoly()), neg = TSeries::exact(LaurentPoly());
  for (size_t k = 0; k < rel.unknowns.size(); ++k) {
    if (!rel.at_x[k].is_zero()) pos += series_of(rel.at_x[k], b.N) * b.at_x(rel.unknowns[k]);
    if (!rel.at_inv[k].is_zero()) neg += series_of(rel.at_inv[k], b.N) * b.at_inv(rel.unknowns[k]);
  }
  auto bterm = [&](const BoundaryTerm& t) { return series_of(t.coeff, b.N) * x_coeff(b.at_x(t.label), t.i); };
  for (const auto& t : s.pos_boundary) pos += bterm(t);
  for (const auto& t : s.neg_boundary) neg += bterm(t);
  for (const auto& [l, v] : s.PR) pos += v * b.scalar(l);
  for (const auto& [l, v] : s.NR) neg += v * b.scalar(l);
  return {pos, neg};
}

// ---------------------------------------------------------------- symmetric eigenvectors

SymmetricEigvector symmetric_eigvector(const CRBVP& c, const RatFunc& lambda, const RatVec& seed) {
  if (lambda != lambda.invert_x()) throw MathError("symmetric_eigvector: lambda(x) != lambda(1/x)");
  SplitResult sp = multiplicative_split(lambda, SplitMode::Symmetric);
  if (!sp.ok) throw MathError("symmetric_eigvector: split of lambda needs an extension: " + sp.note);
  RatMatrix P0b = c.P0.invert_x();
  RatVec w = seed * (P0b * c.P0);
  for (size_t k = 0; k < seed.size(); ++k)
    if (w[k] != seed[k] * lambda) throw MathError("symmetric_eigvector: seed is not a left eigenvector of P0(1/x)P0(x)");
  SymmetricEigvector out;
  out.m0 = sp.f;
  RatVec tail = invert_x(seed) * c.P0;
  RatFunc mi = sp.f.inv();
  for (size_t k = 0; k < seed.size(); ++k) out.v.push_back(seed[k] + tail[k] * mi);
  RatVec lhs = out.v * P0b;
  RatVec vb = invert_x(out.v);
  RatFunc m0b = sp.f.invert_x();
  out.ok = true;
  for (size_t k = 0; k < lhs.size(); ++k) out.ok = out.ok && lhs[k] == vb[k] * m0b;
  return out;
}

// ---------------------------------------------------------------- Galois pairs

BiQuad operator+(const BiQuad& p, const BiQuad& q) { return {p.u + q.u, p.w + q.w, p.D}; }
BiQuad operator-(const BiQuad& p, const BiQuad& q) { return {p.u - q.u, p.w - q.w, p.D}; }
BiQuad operator*(const BiQuad& p, const BiQuad& q) {
  QuadExt ww = p.w * q.w;
  return {p.u * q.u + ww * p.D, p.u * q.w + p.w * q.u, p.D};
}

std::string ConjugateProduct::json() const {
  nlohmann::json j;
  j["f"] = f.str();
  j["g"] = g.str();
  j["F"] = F.str();
  j["G"] = G.str();
  j["S"] = S.str();
  j["A0"] = matrix_json(A0);
  j["A1"] = matrix_json(A1);
  return j.dump();
}

ConjugateProduct conjugate_product(const GaloisData& g) {
  RatFunc det = g.s * g.s - g.d * g.r * g.r;
  if (det.is_zero()) throw MathError("conjugate_product: s^2 - d r^2 = 0");
  ConjugateProduct cp;
  cp.f = (g.s * g.J3 - g.r * g.d * g.J4) / det;
  cp.g = (g.s * g.J4 - g.r * g.J3) / det;
  cp.F = g.a * cp.f + g.b * cp.g * g.d - g.J1;
  cp.G = g.a * cp.g + g.b * cp.f - g.J2;
  cp.S = QuadExt(g.a * g.a + g.s * g.s * g.D - g.d * (g.b * g.b + g.r * g.r * g.D),
                 RatFunc(2) * (g.a * g.s - g.d * g.b * g.r), g.D);
  cp.A0 = RatMatrix({{g.a, g.b * g.d}, {g.b, g.a}});
  cp.A1 = RatMatrix({{g.s, g.r * g.d}, {g.r, g.s}});
  return cp;
}

namespace {

BiQuad bq(const RatFunc& a, const RatFunc& b, const GaloisData& g) {
  return {QuadExt(a, b, g.d), QuadExt(RatFunc(), RatFunc(), g.d), g.D};
}

// regroup u + w sqrt(D) as U1 + U2 sqrt(d) with U1, U2 over sqrt(D)
std::pair<QuadExt, QuadExt> regroup(const BiQuad& z) {
  return {QuadExt(z.u.a(), z.w.a(), z.D), QuadExt(z.u.b(), z.w.b(), z.D)};
}

}  // namespace

bool product_relation_holds(const GaloisData& g, const ConjugateProduct& cp, const RatFunc& R, const RatFunc& I) {
  BiQuad m{QuadExt(g.a, g.b, g.d), QuadExt(g.s, g.r, g.d), g.D};
  BiQuad J{QuadExt(g.J1, g.J2, g.d), QuadExt(g.J3, g.J4, g.d), g.D};
  BiQuad img = m * bq(R, I, g) + J;  // R~ + I~ sqrt(d)
  BiQuad lhs = img + bq(cp.F, cp.G, g);
  BiQuad rhs = m * bq(R + cp.f, I + cp.g, g);
  if (!(lhs == rhs)) return false;
  auto [U1, U2] = regroup(lhs);
  QuadExt nl = U1 * U1 - U2 * U2 * g.d;
  RatFunc Rf = R + cp.f, Ig = I + cp.g;
  QuadExt nr = cp.S * (Rf * Rf - Ig * Ig * g.d);
  return nl == nr;
}

bool product_relation_series(const GaloisData& g, const ConjugateProduct& cp, const RatFunc& R, const RatFunc& I, int N) {
  BiQuad m{QuadExt(g.a, g.b, g.d), QuadExt(g.s, g.r, g.d), g.D};
  BiQuad J{QuadExt(g.J1, g.J2, g.d), QuadExt(g.J3, g.J4, g.d), g.D};
  BiQuad lhs = m * bq(R, I, g) + J + bq(cp.F, cp.G, g);
  auto [U1, U2] = regroup(lhs);
  RatFunc Rf = R + cp.f, Ig = I + cp.g;
  // poles in t cost orders in products; expand deep enough to cover squares
  int pole = 0;
  for (const RatFunc* r : std::initializer_list<const RatFunc*>{&U1.a(), &U1.b(), &U2.a(), &U2.b(), &Rf, &Ig, &g.d, &cp.S.a(), &cp.S.b()})
    if (!r->is_zero()) pole = std::max(pole, r->den().min_t() - r->num().min_t());
  int W = N + 3 * pole;
  TSeries u1 = rf_to_series(U1, W), u2 = rf_to_series(U2, W), d = rf_to_series(g.d, W);
  TSeries left = u1 * u1 - d * u2 * u2;
  TSeries rf = rf_to_series(Rf, W), ig = rf_to_series(Ig, W);
  TSeries right = rf_to_series(cp.S, W) * (rf * rf - d * ig * ig);
  return (left - right).is_zero_mod(N);
}

}  // namespace lw
