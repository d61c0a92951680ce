#include "latwalk/catalytic.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "latwalk/factor.hpp"
#include "latwalk/matrix.hpp"

namespace lw {

using nlohmann::json;

namespace {

bool series_free(const SymPoly& p, const SeriesSpace& sp) {
  for (const auto& s : p.symbols())
    if (sp.is_series(s) || sp.is_reflected(s)) return false;
  return true;
}

bool splittable(const SymPoly& p) {
  try {
    for (const auto& [m, c] : p.terms()) split_coefficient(c);
  } catch (const MathError&) {
    return false;
  }
  return true;
}

json poly_json(const SymPoly& p) {
  json j = json::array();
  for (const auto& [m, c] : p.terms()) j.push_back({{"monomial", mono_str(m)}, {"coefficient", c.str()}});
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"') r += '"';
    r += ch;
  }
  return r + "\"";
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

mpz_class binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// leading t-coefficient of a series that is constant in x
GQ lead_constant(const TSeries& s, const mpq_class& v) {
  LaurentPoly c = s.coeff(v);
  if (!c.is_constant()) throw MathError("coefficient depends on x where a constant was expected");
  return c.coeff(0);
}

}  // namespace

// ---------------------------------------------------------------- equations

CatalyticEquation make_catalytic(const std::string& label, const std::string& catalytic, const SymPoly& poly,
                                 const SeriesSpace& space) {
  CatalyticEquation e;
  e.label = label;
  e.catalytic = catalytic;
  e.poly = poly;
  e.space = space;
  for (const auto& s : poly.symbols())
    if (s != catalytic) e.scalars.push_back(s);
  return e;
}

std::string CatalyticEquation::json() const {
  nlohmann::json j;
  j["label"] = label;
  j["catalytic"] = catalytic;
  j["degree"] = degree();
  j["scalars"] = scalars;
  nlohmann::json cs = nlohmann::json::object();
  for (int k = 0; k <= degree(); ++k) cs[std::to_string(k)] = poly_json(coeff(k));
  j["coefficients"] = cs;
  return j.dump();
}

std::string CatalyticEquation::csv() const {
  std::string out = "power,monomial,coefficient\n";
  for (int k = 0; k <= degree(); ++k) {
    SymPoly ck = coeff(k);
    for (const auto& [m, c] : ck.terms())
      out += std::to_string(k) + "," + csv_field(mono_str(m)) + "," + csv_field(c.str()) + "\n";
  }
  return out;
}

std::string ResidualReport::json() const {
  nlohmann::json j;
  j["N"] = N;
  j["ok"] = ok;
  j["first_failure"] = first_failure ? nlohmann::json(q_str(*first_failure)) : nlohmann::json(nullptr);
  return j.dump();
}

ResidualReport residual_report(const SymPoly& P, const SymBinding& b, int N) {
  ResidualReport r;
  r.N = N;
  Evaluation ev = evaluate(P, b, N);
  r.ok = ev.vanishes(N);
  if (!r.ok) {
    r.first_failure = ev.first_failure();
    if (!r.first_failure) r.first_failure = ev.value.trunc();
  }
  return r;
}

SymPoly reduce_power(const SymPoly& p, const std::string& s, int d, const SymPoly& value) {
  if (d < 1) throw MathError("reduction degree must be positive");
  std::map<int, SymPoly> powers;
  SymPoly r;
  for (const auto& [m, c] : p.terms()) {
    auto it = m.find(s);
    int e = it == m.end() ? 0 : it->second;
    if (e < d) {
      r += SymPoly::term(m, c);
      continue;
    }
    SymMono rest = m;
    rest.erase(s);
    if (e % d) rest[s] = e % d;
    int q = e / d;
    if (!powers.count(q)) powers[q] = value.pow(q);
    r += SymPoly::term(rest, c) * powers[q];
  }
  return r;
}

std::optional<RatFunc> proportional_factor(const SymPoly& p, const SymPoly& q) {
  if (p.is_zero()) return q.is_zero() ? std::optional<RatFunc>(RatFunc(1)) : std::nullopt;
  const auto& [m, c] = *p.terms().begin();
  RatFunc r = q.coeff(m) / c;
  if (p * r != q) return std::nullopt;
  return r;
}

// ---------------------------------------------------------------- separated relations

RatFunc automorphism_offset(const RatFunc& c1, const RatFunc& m0) {
  RatFunc m0t = m0.invert_x();
  RatFunc den = RatFunc(1) - m0 * m0t;
  if (den.is_zero()) {
    if (c1.is_zero()) return RatFunc();
    throw MathError("offset equation f(1/x) - m0 f(x) = C1 has no rational solution");
  }
  RatFunc f = (c1.invert_x() + m0t * c1) / den;
  if (f.invert_x() - m0 * f != c1) throw MathError("offset equation has no rational solution");
  return f;
}

SeriesSpace crbvp_space(const CRBVP& c) {
  SeriesSpace sp;
  for (const auto& u : c.unknowns) {
    bool neg = u.size() >= 2 && (u.compare(0, 2, "Hn") == 0 || u.compare(0, 2, "Vn") == 0);
    sp.valuation[u] = neg ? 1 : 0;
  }
  return sp;
}

EigenCombination eigen_combination(const CRBVP& c, const RatVec& v, const RatFunc& m0) {
  if (static_cast<int>(v.size()) != c.n) throw MathError("vector length does not match the system");
  RatVec vt = invert_x(v);
  RatVec lhs = vt * c.P0;
  for (int j = 0; j < c.n; ++j)
    if (lhs[j] != m0 * v[j]) throw MathError("v(1/x) P0(x) is not m0(x) v(x)");
  EigenCombination out;
  for (int j = 0; j < c.n; ++j) out.vH += SymPoly::sym(c.unknowns[j]) * v[j];
  for (const auto& [s, vec] : c.C) {
    RatFunc c1;
    for (int j = 0; j < c.n; ++j) c1 -= vt[j] * vec[j].a();
    RatFunc f = automorphism_offset(c1, m0);
    out.offset += (s == "1" ? SymPoly(1) : SymPoly::sym(s)) * f;
  }
  return out;
}

SeparatedInput separated_from_crbvp(const CRBVP& c, const RatVec& v, const RatFunc& m0, const std::string& catalytic) {
  EigenCombination ec = eigen_combination(c, v, m0);
  SeparatedInput in;
  in.A = ec.vH + ec.offset;
  RatVec vt = invert_x(v);
  RatVec w = vt * c.P1;
  for (int j = 0; j < c.n; ++j) in.B += SymPoly::sym(c.unknowns[j]) * w[j];
  for (const auto& [s, vec] : c.C) {
    RatFunc c2;
    for (int j = 0; j < c.n; ++j) c2 += vt[j] * vec[j].b();
    in.B += (s == "1" ? SymPoly(1) : SymPoly::sym(s)) * c2;
  }
  in.delta = c.delta;
  in.m0 = m0;
  in.space = crbvp_space(c);
  in.catalytic = catalytic;
  return in;
}

SeparatedCubic derive_separated_cubic(const SeparatedInput& in) {
  const SeriesSpace& sp = in.space;
  if (!in.m0.is_constant()) throw MathError("m0 must be the constant 1/2 or -1/2");
  GQ m0 = in.m0.constant_value();
  int sigma;
  if (m0 == GQ::frac(1, 2))
    sigma = 1;
  else if (m0 == GQ::frac(-1, 2))
    sigma = -1;
  else
    throw MathError("m0 = " + m0.str() + " is not +-1/2");
  for (const SymPoly* p : {&in.A, &in.B})
    for (const auto& [m, c] : p->terms())
      if (side_of(m, sp) == Side::Xbar || side_of(m, sp) == Side::Mixed)
        throw MathError("A and B must contain only series in x");
  if (!sp.is_series(in.catalytic)) throw MathError("catalytic symbol " + in.catalytic + " is not a series");

  SymPoly A = in.A, At = reflect(A, sp);
  SymPoly diff = At - A * in.m0;
  SymPoly diff2 = diff * diff, B2d = in.B * in.B * in.delta;

  SeparatedCubic out;
  out.input = in;
  out.sigma = sigma;
  std::optional<SymPoly> E;
  std::vector<RatFunc> candidates;
  if (in.weight)
    candidates.push_back(*in.weight);
  else
    for (int j = 0; j <= 3; ++j) candidates.push_back(in.delta.pow(j));
  for (const auto& w : candidates) {
    if (w.invert_x() != w) throw MathError("weight is not symmetric under x -> 1/x");
    SymPoly e = diff2 * w - B2d * w;
    if (splittable(e)) {
      out.weight = w;
      E = e;
      break;
    }
  }
  if (!E) throw MathError("no weight brings the squared relation to splittable coefficients");
  const RatFunc& w = out.weight;

  SymPoly R = reflected_sum(*E, sp);
  SymPoly s = SymPoly(RatFunc(sigma));
  SymPoly cyc = A * A - s * A * At + At * At;
  out.wC4 = cyc * w - R;
  if (!series_free(out.wC4, sp)) throw MathError("series do not drop out of C4");
  out.quadratic = cyc * w - out.wC4;

  SymPoly A3 = A * A * A, At3 = At * At * At;
  SymPoly E3 = (A3 + s * At3) * w - out.wC4 * (A + s * At);
  SymPoly pos = part(E3, Part::Pos, sp);
  out.wC5 = A3 * w - out.wC4 * A - pos;
  if (!series_free(out.wC5, sp)) throw MathError("series do not drop out of C5");
  out.cubic = make_catalytic("cubic", in.catalytic, A3 * w - out.wC4 * A - out.wC5, sp);
  return out;
}

SeparatedCubic::Check SeparatedCubic::check(const SymBinding& b, int N, const std::string& sqrt_symbol) const {
  Check c;
  const SymPoly& A = input.A;
  SymPoly rel = reflect(A, input.space) - A * input.m0 - SymPoly::sym(sqrt_symbol) * input.B;
  c.relation = residual_report(rel, b, N);
  c.quadratic = residual_report(quadratic, b, N);
  c.cubic = residual_report(cubic.poly, b, N);
  return c;
}

std::string SeparatedCubic::json() const {
  nlohmann::json j;
  j["weight"] = weight.str();
  j["sigma"] = sigma;
  j["m0"] = input.m0.str();
  j["A"] = poly_json(input.A);
  j["B"] = poly_json(input.B);
  j["wC4"] = poly_json(wC4);
  j["wC5"] = poly_json(wC5);
  j["cubic"] = nlohmann::json::parse(cubic.json());
  return j.dump();
}

std::string SeparatedCubic::csv() const {
  std::string out = "term,monomial,coefficient\n";
  for (const auto& [name, p] : {std::pair<const char*, const SymPoly*>{"C4", &wC4}, {"C5", &wC5}})
    for (const auto& [m, c] : p->terms())
      out += std::string(name) + "," + csv_field(mono_str(m)) + "," + csv_field((c / weight).str()) + "\n";
  return out;
}

// ---------------------------------------------------------------- Newton polygon

int PuiseuxLeading::total() const {
  int n = zero_roots;
  for (const auto& s : segments) n += s.count;
  return n;
}

int PuiseuxLeading::small_roots() const {
  int n = zero_roots;
  for (const auto& s : segments)
    if (s.exponent > 0) n += s.count;
  return n;
}

std::string PuiseuxLeading::json() const {
  nlohmann::json j;
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& [k, v] : points) pts.push_back({k, q_str(v)});
  j["points"] = pts;
  j["zero_roots"] = zero_roots;
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : segments) {
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : s.rational_roots) roots.push_back(r.str());
    std::vector<std::string> edge;
    for (const auto& c : s.edge.coeffs()) edge.push_back(c.str());
    segs.push_back({{"exponent", q_str(s.exponent)},
                    {"count", s.count},
                    {"from", s.from},
                    {"to", s.to},
                    {"edge", edge},
                    {"rational_roots", roots}});
  }
  j["segments"] = segs;
  j["small_roots"] = small_roots();
  return j.dump();
}

std::vector<TSeries> x_coefficients(const TSeries& s) {
  std::map<int, std::map<int, LaurentPoly>> by;
  for (const auto& [u, c] : s.terms())
    for (const auto& [e, a] : c.terms()) {
      if (e < 0) throw MathError("series has negative powers of x");
      by[e][u] = LaurentPoly(a);
    }
  int D = by.empty() ? 0 : by.rbegin()->first;
  std::vector<TSeries> out;
  for (int k = 0; k <= D; ++k) out.push_back(TSeries::from_units(s.denom(), s.trunc_units(), by[k]));
  return out;
}

PuiseuxLeading newton_puiseux_leading(const std::vector<TSeries>& coefficients) {
  PuiseuxLeading out;
  for (size_t k = 0; k < coefficients.size(); ++k) {
    const TSeries& c = coefficients[k];
    if (!c.is_x_constant()) throw MathError("Newton polygon coefficients must be free of x");
    if (auto v = c.first_nonzero()) out.points.emplace_back(static_cast<int>(k), *v);
  }
  if (out.points.empty()) throw MathError("Newton polygon of the zero polynomial");
  out.zero_roots = out.points.front().first;
  std::vector<std::pair<int, mpq_class>> hull;
  for (const auto& p : out.points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      mpq_class cross = mpq_class(b.first - a.first) * (p.second - a.second) - (b.second - a.second) * (p.first - a.first);
      if (cross > 0) break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  for (size_t h = 0; h + 1 < hull.size(); ++h) {
    const auto& [k1, v1] = hull[h];
    const auto& [k2, v2] = hull[h + 1];
    PuiseuxSegment s;
    mpq_class slope = (v2 - v1) / (k2 - k1);
    s.exponent = -slope;
    s.count = k2 - k1;
    s.from = k1;
    s.to = k2;
    std::vector<GQ> e(k2 - k1 + 1);
    for (const auto& [k, v] : out.points)
      if (k >= k1 && k <= k2 && v - v1 == slope * (k - k1)) e[k - k1] = lead_constant(coefficients[k], v);
    s.edge = PolyQ(e);
    for (const auto& r : gaussian_rational_roots(s.edge))
      if (!r.is_zero()) s.rational_roots.push_back(r);
    out.segments.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------- nondegeneracy

std::string NondegeneracyReport::json() const {
  nlohmann::json j;
  j["N"] = N;
  j["roots"] = nlohmann::json::parse(roots.json());
  j["root_exponent"] = root_exponent ? nlohmann::json(q_str(*root_exponent)) : nlohmann::json(nullptr);
  j["root_count"] = root_count;
  j["block_exponent"] = block_exponent ? nlohmann::json(q_str(*block_exponent)) : nlohmann::json(nullptr);
  std::vector<std::string> bl;
  for (const auto& c : block_leading.coeffs()) bl.push_back(c.str());
  j["block_leading"] = bl;
  j["block_ok"] = block_ok;
  j["scalar_exponent"] = scalar_exponent ? nlohmann::json(q_str(*scalar_exponent)) : nlohmann::json(nullptr);
  j["scalar_leading"] = scalar_leading.str();
  j["scalar_ok"] = scalar_ok;
  j["ok"] = ok;
  j["note"] = note;
  return j.dump();
}

namespace {

// complete homogeneous symmetric functions of the roots of a monic polynomial, h_0..h_m
std::vector<GQ> complete_homogeneous(const PolyQ& monic, int m) {
  int k = monic.degree();
  std::vector<GQ> e(k + 1);
  for (int j = 0; j <= k; ++j) e[j] = (j % 2 ? GQ(-1) : GQ(1)) * monic.coeff(k - j);
  std::vector<GQ> h(m + 1);
  h[0] = GQ(1);
  for (int n = 1; n <= m; ++n)
    for (int j = 1; j <= std::min(n, k); ++j) h[n] += (j % 2 ? GQ(1) : GQ(-1)) * e[j] * h[n - j];
  return h;
}

// det[c_i^{K_m}] / V(c) via Jacobi-Trudi
GQ schur_at_roots(const std::vector<int>& K, const std::vector<GQ>& h) {
  int k = static_cast<int>(K.size());
  std::vector<int> lambda(k);
  for (int m = 0; m < k; ++m) lambda[m] = K[k - 1 - m] - (k - 1 - m);
  std::vector<std::vector<GQ>> J(k, std::vector<GQ>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int idx = lambda[i] - i + j;
      J[i][j] = idx < 0 ? GQ() : h.at(idx);
    }
  return cofactor_det(J, GQ());
}

bool next_combination(std::vector<int>& K, int D) {
  int k = static_cast<int>(K.size());
  for (int i = k - 1; i >= 0; --i)
    if (K[i] < D - (k - 1 - i)) {
      ++K[i];
      for (int j = i + 1; j < k; ++j) K[j] = K[j - 1] + 1;
      return true;
    }
  return false;
}

}  // namespace

NondegeneracyReport jacobian_nondegeneracy(const CatalyticEquation& eq, const SymBinding& b, int N) {
  NondegeneracyReport r;
  r.N = N;
  const std::string& f = eq.catalytic;
  SymPoly Px0 = eq.poly.derivative(f);
  TSeries d0 = evaluate(Px0, b, N).value.truncated(N);
  if (d0.is_zero()) {
    r.note = "d/dx0 P vanishes on the data";
    return r;
  }
  r.roots = newton_puiseux_leading(x_coefficients(d0));
  const PuiseuxSegment* seg = nullptr;
  for (const auto& s : r.roots.segments)
    if (s.exponent > 0) {
      if (seg) {
        r.note = "small roots of d/dx0 P have several leading exponents";
        return r;
      }
      seg = &s;
    }
  if (!seg || r.roots.zero_roots) {
    r.note = "d/dx0 P has no nonzero small roots";
    return r;
  }
  const mpq_class e = seg->exponent;
  r.root_exponent = e;
  r.root_count = seg->count;
  r.edge = seg->edge;
  const int k = static_cast<int>(eq.scalars.size());
  if (r.root_count != k) {
    r.note = std::to_string(r.root_count) + " small roots for " + std::to_string(k) + " scalar unknowns";
    return r;
  }
  PolyQ E = seg->edge.monic();
  if (poly_gcd(E, E.derivative()).degree() > 0) {
    r.note = "edge polynomial has repeated roots";
    return r;
  }

  // 2x2 blocks
  SymPoly Pff = Px0.derivative(f), Pfx = Px0.derivative_x(), Pxx = eq.poly.derivative_x().derivative_x();
  r.block = evaluate(Pff * Pxx - Pfx * Pfx, b, N).value.truncated(N);
  {
    std::optional<mpq_class> best;
    std::map<int, GQ> lead;
    for (const auto& [u, c] : r.block.terms())
      for (const auto& [xe, a] : c.terms()) {
        mpq_class ord = mpq_class(u, r.block.denom()) + e * xe;
        ord.canonicalize();
        if (!best || ord < *best) {
          best = ord;
          lead.clear();
        }
        if (ord == *best) lead[xe] += a;
      }
    if (!best) {
      r.note = "the 2x2 block vanishes to all computed orders";
      return r;
    }
    if (*best >= r.block.trunc()) {
      r.note = "the 2x2 block is not known to its leading order";
      return r;
    }
    int lo = lead.begin()->first;
    std::vector<GQ> v(lead.rbegin()->first - lo + 1);
    for (const auto& [xe, a] : lead) v[xe - lo] = a;
    r.block_exponent = best;
    r.block_leading = PolyQ(v);
    r.block_ok = !r.block_leading.is_zero() && poly_gcd(r.block_leading, E).degree() == 0;
  }

  // scalar block by Cauchy-Binet over the x-coefficients of the columns
  {
    std::vector<std::vector<TSeries>> cols;
    int D = 0;
    mpq_class trunc_min = mpq_class(TSeries::kInf);
    for (const auto& s : eq.scalars) {
      TSeries g = evaluate(eq.poly.derivative(s), b, N).value.truncated(N);
      cols.push_back(x_coefficients(g));
      D = std::max(D, static_cast<int>(cols.back().size()) - 1);
      if (g.trunc() < trunc_min) trunc_min = g.trunc();
    }
    for (auto& c : cols) c.resize(D + 1, TSeries::exact(LaurentPoly()).truncated(trunc_min));
    std::vector<GQ> h = complete_homogeneous(E, D + k);
    std::vector<int> K(k);
    for (int m = 0; m < k; ++m) K[m] = m;
    std::optional<mpq_class> best;
    GQ lead;
    mpq_class floor = trunc_min + e * mpq_class((k - 1) * (k - 2) / 2 + D + 1);
    if (k <= D + 1) {
      do {
        std::vector<std::vector<TSeries>> M(k, std::vector<TSeries>(k));
        int sum = 0;
        for (int m = 0; m < k; ++m) {
          sum += K[m];
          for (int j = 0; j < k; ++j) M[m][j] = cols[j][K[m]];
        }
        TSeries det = cofactor_det(M, TSeries::exact(LaurentPoly()));
        auto v = det.first_nonzero();
        if (!v) {
          mpq_class fl = det.trunc() + e * sum;
          if (fl < floor) floor = fl;
          continue;
        }
        mpq_class ord = *v + e * sum;
        GQ c = lead_constant(det, *v) * schur_at_roots(K, h);
        if (!best || ord < *best) {
          best = ord;
          lead = GQ();
        }
        if (ord == *best) lead += c;
      } while (next_combination(K, D));
    }
    if (!best || *best >= floor) {
      r.note = "scalar block not determined to leading order";
    } else {
      r.scalar_exponent = best;
      r.scalar_leading = lead;
      r.scalar_ok = !lead.is_zero();
      if (!r.scalar_ok) r.note = "scalar block cancels at leading order";
    }
  }
  r.ok = r.block_ok && r.scalar_ok;
  if (!r.block_ok && r.note.empty()) r.note = "2x2 block vanishes at a root of the edge polynomial";
  return r;
}

// ---------------------------------------------------------------- solvable k

namespace {

// sum_j binom(n, top - 2j) k^j over top - 2j >= 0
PolyQ binomial_sum(int n, int top) {
  std::vector<GQ> c;
  for (int j = 0; top - 2 * j >= 0; ++j) c.push_back(GQ(mpq_class(binom(n, top - 2 * j))));
  return PolyQ(c);
}

std::string poly_k_str(const PolyQ& p) {
  std::string s;
  for (int j = 0; j <= p.degree(); ++j) {
    if (p.coeff(j).is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += p.coeff(j).str();
    if (j == 1) s += "*k";
    if (j > 1) s += "*k^" + std::to_string(j);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

SolvableK solvable_k(int n) {
  if (n < 2) throw MathError("solvable_k needs n >= 2");
  SolvableK out;
  out.n = n;
  bool even = n % 2 == 0;
  for (int sep : {1, 2}) {
    SolvableKRow row;
    row.separation = sep;
    row.equation = sep == 1 ? (even ? 1 : 2) : (even ? 3 : 4);
    row.poly = binomial_sum(n, sep == 1 ? n - 1 : n);
    for (const auto& fac : factor_gq(row.poly)) {
      if (fac.f.degree() == 1) {
        GQ k = -fac.f.coeff(0);
        row.k_roots.push_back(k);
        row.lambdas.push_back((GQ(1) - k).inv());
      } else if (fac.f.degree() > 1) {
        row.other_factors.push_back(fac.f);
      }
    }
    std::sort(row.k_roots.begin(), row.k_roots.end(), [](const GQ& a, const GQ& b) { return a.cmp(b) < 0; });
    row.lambdas.clear();
    for (const auto& k : row.k_roots) row.lambdas.push_back((GQ(1) - k).inv());
    out.rows.push_back(std::move(row));
  }
  if (!even) out.reciprocal = out.rows[1].poly.monic() == out.rows[0].poly.reversed().monic();
  return out;
}

std::string SolvableK::json() const {
  nlohmann::json j;
  j["n"] = n;
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows) {
    std::vector<std::string> ks, ls, of;
    for (const auto& k : r.k_roots) ks.push_back(k.str());
    for (const auto& l : r.lambdas) ls.push_back(l.str());
    for (const auto& f : r.other_factors) of.push_back(poly_k_str(f));
    rs.push_back({{"equation", r.equation},
                  {"separation", r.separation},
                  {"poly", poly_k_str(r.poly)},
                  {"k", ks},
                  {"lambda", ls},
                  {"other_factors", of}});
  }
  j["rows"] = rs;
  j["reciprocal"] = reciprocal ? nlohmann::json(*reciprocal) : nlohmann::json(nullptr);
  return j.dump();
}

std::string SolvableK::csv() const {
  std::string out = "equation,n,separation,poly,k,lambda\n";
  for (const auto& r : rows) {
    std::string ks, ls;
    for (size_t i = 0; i < r.k_roots.size(); ++i) {
      ks += (i ? ";" : "") + r.k_roots[i].str();
      ls += (i ? ";" : "") + r.lambdas[i].str();
    }
    for (const auto& f : r.other_factors) ks += std::string(ks.empty() ? "" : ";") + "root of " + poly_k_str(f);
    out += std::to_string(r.equation) + "," + std::to_string(n) + "," + std::to_string(r.separation) + "," +
           csv_field(poly_k_str(r.poly)) + "," + csv_field(ks) + "," + csv_field(ls) + "\n";
  }
  return out;
}

std::string SolvableK::text() const {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "eq " << r.equation << "  n=" << n << "  separation " << r.separation << "  " << poly_k_str(r.poly) << " = 0";
    for (size_t i = 0; i < r.k_roots.size(); ++i) os << "  k=" << r.k_roots[i].str() << " lambda=" << r.lambdas[i].str();
    for (const auto& f : r.other_factors) os << "  [" << poly_k_str(f) << "]";
    os << "\n";
  }
  if (reciprocal) os << "reciprocal pairing: " << (*reciprocal ? "yes" : "no") << "\n";
  return os.str();
}

}  // namespace lw
