#include "latwalk/walk.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lw {

using nlohmann::json;

std::string cone_name(Cone c) {
  switch (c) {
    case Cone::Quarter: return "quarter";
    case Cone::ThreeQuadrant: return "three-quadrant";
    case Cone::UpperHalf: return "upper-half";
    case Cone::LowerHalf: return "lower-half";
    case Cone::FourthQuadrant: return "fourth-quadrant";
    case Cone::WholePlane: return "whole-plane";
  }
  return "?";
}

Cone parse_cone(const std::string& s) {
  for (Cone c : {Cone::Quarter, Cone::ThreeQuadrant, Cone::UpperHalf, Cone::LowerHalf, Cone::FourthQuadrant,
                 Cone::WholePlane})
    if (cone_name(c) == s) return c;
  throw ConfigError("unknown region tag: " + s);
}

bool cone_contains(Cone c, int i, int j) {
  switch (c) {
    case Cone::Quarter: return i >= 0 && j >= 0;
    case Cone::ThreeQuadrant: return i >= 0 || j >= 0;
    case Cone::UpperHalf: return j >= 0;
    case Cone::LowerHalf: return j < 0;
    case Cone::FourthQuadrant: return i >= 0 && j < 0;
    case Cone::WholePlane: return true;
  }
  return false;
}

bool PosPred::matches(int i, int j) const {
  if (i_lo && i < *i_lo) return false;
  if (i_hi && i > *i_hi) return false;
  if (j_lo && j < *j_lo) return false;
  if (j_hi && j > *j_hi) return false;
  return true;
}

namespace {

std::string bound_str(const char* v, const std::optional<int>& lo, const std::optional<int>& hi) {
  std::string s(v);
  if (lo && hi && *lo == *hi) return s + "=" + std::to_string(*lo);
  std::string out;
  if (lo) out += s + ">=" + std::to_string(*lo);
  if (hi) out += (out.empty() ? "" : ",") + s + "<=" + std::to_string(*hi);
  return out;
}

}  // namespace

std::string PosPred::str() const {
  std::string a = bound_str("i", i_lo, i_hi), b = bound_str("j", j_lo, j_hi);
  if (a.empty()) return b.empty() ? "any" : b;
  return b.empty() ? a : a + "," + b;
}

PosPred PosPred::parse(const std::string& s) {
  PosPred p;
  if (s == "any" || s.empty()) return p;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
    if (part.size() < 3 || (part[0] != 'i' && part[0] != 'j')) throw ConfigError("bad position predicate: " + s);
    auto& lo = part[0] == 'i' ? p.i_lo : p.j_lo;
    auto& hi = part[0] == 'i' ? p.i_hi : p.j_hi;
    std::string op, num;
    size_t k = 1;
    while (k < part.size() && std::string("<>=").find(part[k]) != std::string::npos) op += part[k++];
    num = part.substr(k);
    char* end = nullptr;
    long v = std::strtol(num.c_str(), &end, 10);
    if (num.empty() || *end) throw ConfigError("bad position predicate: " + s);
    int n = static_cast<int>(v);
    if (op == "=" || op == "==") lo = hi = n;
    else if (op == ">=") lo = n;
    else if (op == ">") lo = n + 1;
    else if (op == "<=") hi = n;
    else if (op == "<") hi = n - 1;
    else throw ConfigError("bad position predicate: " + s);
  }
  return p;
}

GQ WalkModel::step_weight(int i, int j, const Step& s) const {
  if (!in_region(i + s.dx, j + s.dy)) return GQ(0);
  for (const auto& f : forbidden)
    if (f.step == s && f.where.matches(i, j)) return GQ(0);
  for (const auto& sp : special)
    if (sp.step == s && sp.i == i && sp.j == j) return sp.weight;
  return GQ(1);
}

void WalkModel::validate() const {
  if (steps.empty()) throw ConfigError("model has no steps");
  std::set<Step> seen;
  for (const auto& s : steps) {
    if (s.dx < -1 || s.dx > 1 || s.dy < -1 || s.dy > 1 || (s.dx == 0 && s.dy == 0))
      throw ConfigError("steps must be small and nonzero");
    if (!seen.insert(s).second) throw ConfigError("duplicate step");
  }
  if (!in_region(i0, j0)) throw ConfigError("start outside region");
  for (const auto& sp : special) {
    if (sp.weight.is_zero()) throw ConfigError("special step weight must be nonzero");
    if (!seen.count(sp.step)) throw ConfigError("special step is not in the step set");
  }
  for (const auto& f : forbidden)
    if (!seen.count(f.step)) throw ConfigError("forbidden step is not in the step set");
}

WalkModel three_quadrant_model(const GQ& p) {
  WalkModel m;
  m.name = "three-quadrant-nenws";
  m.steps = {{1, 1}, {-1, 1}, {0, -1}};
  m.region = Cone::ThreeQuadrant;
  // p = 0 removes the step altogether
  if (p.is_zero()) m.forbidden.push_back({PosPred::parse("i=0,j=-1"), {-1, 1}});
  else if (!p.is_one()) m.special.push_back({0, -1, {-1, 1}, p});
  return m;
}

WalkModel quarter_model() {
  WalkModel m;
  m.name = "quarter-nenws";
  m.steps = {{1, 1}, {-1, 1}, {0, -1}};
  m.region = Cone::Quarter;
  return m;
}

WalkModel outside_quadrant_model() {
  WalkModel m;
  m.name = "outside-quadrant";
  m.steps = {{-1, 0}, {1, 0}, {0, 1}, {0, -1}};
  m.region = Cone::WholePlane;
  m.i0 = m.j0 = -1;
  m.forbidden.push_back({PosPred::parse("i=0,j>=0"), {-1, 0}});
  m.forbidden.push_back({PosPred::parse("i>=0,j=0"), {0, -1}});
  return m;
}

std::vector<std::string> registered_models() { return {"three-quadrant-nenws", "outside-quadrant", "quarter-nenws"}; }

WalkModel model_by_name(const std::string& name, const GQ& p) {
  if (name == "three-quadrant-nenws") return three_quadrant_model(p);
  if (name == "outside-quadrant") return outside_quadrant_model();
  if (name == "quarter-nenws") return quarter_model();
  throw ConfigError("unknown model: " + name);
}

namespace {

Step step_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("a step is a pair [dx, dy]");
  return {j[0].get<int>(), j[1].get<int>()};
}

GQ weight_from(const json& j) {
  if (j.is_number_integer()) return GQ(j.get<long>());
  if (j.is_string()) return GQ::parse(j.get<std::string>());
  throw ConfigError("weight must be an integer or a string");
}

}  // namespace

WalkModel model_from_json(const std::string& text) {
  WalkModel m;
  try {
    json j = json::parse(text);
    m.name = j.value("name", std::string("custom"));
    for (const auto& s : j.at("steps")) m.steps.push_back(step_from(s));
    m.region = parse_cone(j.at("region").get<std::string>());
    if (j.contains("start")) {
      m.i0 = j["start"].at(0).get<int>();
      m.j0 = j["start"].at(1).get<int>();
    }
    if (j.contains("special"))
      for (const auto& s : j["special"])
        m.special.push_back({s.at("from").at(0).get<int>(), s.at("from").at(1).get<int>(), step_from(s.at("step")),
                             weight_from(s.at("weight"))});
    if (j.contains("forbidden"))
      for (const auto& f : j["forbidden"])
        m.forbidden.push_back({PosPred::parse(f.at("where").get<std::string>()), step_from(f.at("step"))});
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  } catch (const MathError& e) {
    throw ConfigError(std::string("model config: ") + e.what());
  }
  m.validate();
  return m;
}

std::string model_to_json(const WalkModel& m) {
  json j;
  j["name"] = m.name;
  j["steps"] = json::array();
  for (const auto& s : m.steps) j["steps"].push_back({s.dx, s.dy});
  j["region"] = cone_name(m.region);
  j["start"] = {m.i0, m.j0};
  j["special"] = json::array();
  for (const auto& s : m.special)
    j["special"].push_back({{"from", {s.i, s.j}}, {"step", {s.step.dx, s.step.dy}}, {"weight", s.weight.str()}});
  j["forbidden"] = json::array();
  for (const auto& f : m.forbidden)
    j["forbidden"].push_back({{"where", f.where.str()}, {"step", {f.step.dx, f.step.dy}}});
  return j.dump(2);
}

// CoeffTable

CoeffTable::CoeffTable(int max_n, int i0, int j0)
    : max_n_(max_n), i0_(i0), j0_(j0), R_(std::max(max_n, 0)), W_(2 * R_ + 1) {
  g_.assign(static_cast<size_t>(max_n_ + 1), std::vector<GQ>(static_cast<size_t>(W_) * W_));
}

bool CoeffTable::in_grid(int i, int j) const { return std::abs(i - i0_) <= R_ && std::abs(j - j0_) <= R_; }

GQ CoeffTable::get(int i, int j, int n) const {
  if (n < 0 || n > max_n_ || !in_grid(i, j)) return GQ(0);
  return g_[n][idx(i, j)];
}

void CoeffTable::set(int i, int j, int n, const GQ& v) {
  if (n < 0 || n > max_n_ || !in_grid(i, j)) throw MathError("table position out of range");
  g_[n][idx(i, j)] = v;
}

void CoeffTable::add(int i, int j, int n, const GQ& v) {
  if (n < 0 || n > max_n_ || !in_grid(i, j)) throw MathError("table position out of range");
  g_[n][idx(i, j)] += v;
}

std::vector<CoeffTable::Entry> CoeffTable::entries() const {
  std::vector<Entry> out;
  for (int n = 0; n <= max_n_; ++n)
    for (int i = i0_ - R_; i <= i0_ + R_; ++i)
      for (int j = j0_ - R_; j <= j0_ + R_; ++j) {
        const GQ& v = g_[n][idx(i, j)];
        if (!v.is_zero()) out.push_back({i, j, n, v});
      }
  return out;
}

std::string CoeffTable::csv() const {
  std::string s = "i,j,n,count\n";
  for (const auto& e : entries())
    s += std::to_string(e.i) + "," + std::to_string(e.j) + "," + std::to_string(e.n) + "," + e.count.str() + "\n";
  return s;
}

std::string CoeffTable::json() const {
  nlohmann::json j;
  j["max_n"] = max_n_;
  j["start"] = {i0_, j0_};
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries()) j["entries"].push_back({e.i, e.j, e.n, e.count.str()});
  return j.dump();
}

bool operator==(const CoeffTable& a, const CoeffTable& b) {
  if (a.max_n_ != b.max_n_) return false;
  auto ea = a.entries(), eb = b.entries();
  if (ea.size() != eb.size()) return false;
  for (size_t k = 0; k < ea.size(); ++k)
    if (ea[k].i != eb[k].i || ea[k].j != eb[k].j || ea[k].n != eb[k].n || ea[k].count != eb[k].count) return false;
  return true;
}

CoeffTable dp_enumerate(const WalkModel& m, int N) {
  if (N < 0) throw MathError("negative walk length");
  CoeffTable tab(N, m.i0, m.j0);
  tab.set(m.i0, m.j0, 0, GQ(1));
  for (int n = 0; n < N; ++n) {
    int r = n;  // positions reachable after n steps lie within distance n of the start
    for (int i = m.i0 - r; i <= m.i0 + r; ++i)
      for (int j = m.j0 - r; j <= m.j0 + r; ++j) {
        GQ c = tab.get(i, j, n);
        if (c.is_zero()) continue;
        for (const auto& s : m.steps) {
          GQ w = m.step_weight(i, j, s);
          if (!w.is_zero()) tab.add(i + s.dx, j + s.dy, n + 1, c * w);
        }
      }
  }
  return tab;
}

namespace {

void dfs(const WalkModel& m, CoeffTable& tab, int i, int j, int n, const GQ& w) {
  tab.add(i, j, n, w);
  if (n == tab.max_n()) return;
  for (const auto& s : m.steps) {
    GQ sw = m.step_weight(i, j, s);
    if (sw.is_zero()) continue;
    dfs(m, tab, i + s.dx, j + s.dy, n + 1, w * sw);
  }
}

}  // namespace

CoeffTable dfs_enumerate(const WalkModel& m, int N) {
  if (N < 0) throw MathError("negative walk length");
  CoeffTable tab(N, m.i0, m.j0);
  dfs(m, tab, m.i0, m.j0, 0, GQ(1));
  return tab;
}

// sections

std::string SectionSpec::str() const {
  auto idx = [&](const char* base) { return line == 0 ? std::string(base) : std::string(base) + "_" + std::to_string(line); };
  switch (kind) {
    case SectionKind::HorizontalPos: return idx("Hp");
    case SectionKind::HorizontalNeg: return idx("Hn");
    case SectionKind::VerticalPos: return idx("Vp");
    case SectionKind::VerticalNeg: return idx("Vn");
    case SectionKind::Point: return "F_" + std::to_string(i) + "," + std::to_string(j);
  }
  return "?";
}

SectionSpec SectionSpec::parse(const std::string& s) {
  auto num = [&](const std::string& t) {
    char* end = nullptr;
    long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || *end) throw ConfigError("bad section: " + s);
    return static_cast<int>(v);
  };
  if (s.rfind("F_", 0) == 0) {
    auto c = s.find(',');
    if (c == std::string::npos) throw ConfigError("bad section: " + s);
    return point(num(s.substr(2, c - 2)), num(s.substr(c + 1)));
  }
  if (s.size() < 2) throw ConfigError("bad section: " + s);
  std::string head = s.substr(0, 2);
  int a = 0;
  if (s.size() > 2) {
    if (s[2] != '_') throw ConfigError("bad section: " + s);
    a = num(s.substr(3));
  }
  if (head == "Hp") return Hp(a);
  if (head == "Hn") return Hn(a);
  if (head == "Vp") return Vp(a);
  if (head == "Vn") return Vn(a);
  throw ConfigError("bad section: " + s);
}

namespace {

// whether some position of the ray lies in the region
bool ray_meets(const WalkModel& m, bool horizontal, int line, bool positive) {
  for (int k : {0, 1, 7, 1000}) {
    int v = positive ? k : -1 - k;
    if (horizontal ? m.in_region(v, line) : m.in_region(line, v)) return true;
  }
  return false;
}

}  // namespace

TSeries section(const WalkModel& m, const CoeffTable& tab, const SectionSpec& spec) {
  int N = tab.max_n() + 1;
  std::map<int, LaurentPoly> terms;
  int lo = tab.i0() - tab.radius() - 1, hi = tab.i0() + tab.radius() + 1;
  int jlo = tab.j0() - tab.radius() - 1, jhi = tab.j0() + tab.radius() + 1;
  auto put = [&](int n, int e, const GQ& c) {
    if (!c.is_zero()) terms[n].add_term(e, c);
  };
  switch (spec.kind) {
    case SectionKind::HorizontalPos:
    case SectionKind::HorizontalNeg: {
      bool pos = spec.kind == SectionKind::HorizontalPos;
      if (!ray_meets(m, true, spec.line, pos)) throw ConfigError("section " + spec.str() + " lies outside the region");
      for (int n = 0; n < N; ++n)
        for (int i = pos ? std::max(lo, 0) : lo; i <= (pos ? hi : std::min(hi, -1)); ++i)
          put(n, i, tab.get(i, spec.line, n));
      break;
    }
    case SectionKind::VerticalPos:
    case SectionKind::VerticalNeg: {
      bool pos = spec.kind == SectionKind::VerticalPos;
      if (!ray_meets(m, false, spec.line, pos)) throw ConfigError("section " + spec.str() + " lies outside the region");
      for (int n = 0; n < N; ++n)
        for (int j = pos ? std::max(jlo, 0) : jlo; j <= (pos ? jhi : std::min(jhi, -1)); ++j)
          put(n, j, tab.get(spec.line, j, n));
      break;
    }
    case SectionKind::Point:
      if (!m.in_region(spec.i, spec.j)) throw ConfigError("point " + spec.str() + " lies outside the region");
      for (int n = 0; n < N; ++n) put(n, 0, tab.get(spec.i, spec.j, n));
      break;
  }
  return TSeries::from_units(1, N, std::move(terms));
}

BiSeries full_series(const CoeffTable& tab, const std::function<bool(int, int)>& keep) {
  BiSeries F(tab.max_n() + 1);
  for (const auto& e : tab.entries())
    if (!keep || keep(e.i, e.j)) F.add_term(e.n, e.j, LaurentPoly::monomial(e.count, e.i));
  return F;
}

BiSeries kernel_biseries(const WalkModel& m, int N) {
  BiSeries K = BiSeries::monomial(GQ(1), 0, 0, 0, N);
  for (const auto& s : m.steps) K -= BiSeries::monomial(GQ(1), s.dx, s.dy, 1, N);
  return K;
}

namespace {

// t^n x^a y^b * G where G is a section in x (horizontal) or in y (vertical)
BiSeries times_section(const TSeries& G, bool in_y, const GQ& c, int a, int b, int n, int N) {
  BiSeries g = in_y ? BiSeries::from_y(G) : BiSeries::from_x(G);
  return BiSeries::monomial(c, a, b, n, N) * g;
}

BiSeries point_term(const CoeffTable& tab, int i, int j, const GQ& c, int a, int b, int n) {
  int N = tab.max_n() + 1;
  BiSeries r(N);
  for (int k = 0; k + n < N; ++k) {
    GQ v = tab.get(i, j, k);
    if (!v.is_zero()) r.add_term(k + n, b, LaurentPoly::monomial(c * v, a));
  }
  return r;
}

}  // namespace

GQ three_quadrant_weight(const WalkModel& m) {
  GQ p(1);
  for (const auto& s : m.special)
    if (s.i == 0 && s.j == -1 && s.step == Step{-1, 1}) p = s.weight;
  for (const auto& f : m.forbidden)
    if (f.step == Step{-1, 1} && f.where.matches(0, -1)) p = GQ(0);
  return p;
}

std::optional<FunctionalEquation> registered_equation(const WalkModel& m) {
  FunctionalEquation e;
  if (m.name == "three-quadrant-nenws" && m.region == Cone::ThreeQuadrant) {
    e.start = {{GQ(1), 0, 0}};
    e.terms = {{GQ(-1), 1, 0, -1, SectionSpec::Hn()},
               {GQ(-1), 1, -1, 1, SectionSpec::Vn()},
               {three_quadrant_weight(m), 1, -1, 0, SectionSpec::point(0, -1)}};
    return e;
  }
  if (m.name == "quarter-nenws" && m.region == Cone::Quarter) {
    e.start = {{GQ(1), 0, 0}};
    e.terms = {{GQ(-1), 1, 0, -1, SectionSpec::Hp()}, {GQ(-1), 1, -1, 1, SectionSpec::Vp()}};
    return e;
  }
  if (m.name == "outside-quadrant" && m.region == Cone::WholePlane) {
    e.start = {{GQ(1), -1, -1}};
    e.terms = {{GQ(-1), 1, -1, 0, SectionSpec::Vp()}, {GQ(-1), 1, 0, -1, SectionSpec::Hp()}};
    return e;
  }
  return std::nullopt;
}

std::string FunctionalEquation::str() const {
  auto mono = [](const GQ& c, int tp, int a, int b) {
    std::string s = "(" + c.str() + ")";
    if (tp) s += "*t^" + std::to_string(tp);
    if (a) s += "*x^" + std::to_string(a);
    if (b) s += "*y^" + std::to_string(b);
    return s;
  };
  std::string s;
  for (const auto& m : start) s += (s.empty() ? "" : " + ") + mono(m.coeff, 0, m.a, m.b);
  for (const auto& t : terms) s += " + " + mono(t.coeff, t.tpow, t.a, t.b) + "*" + t.sec.str();
  return s;
}

BiSeries boundary_rhs(const WalkModel& m, const CoeffTable& tab) {
  auto eq = registered_equation(m);
  if (!eq) return boundary_rhs_generic(m, tab);
  int N = tab.max_n() + 1;
  BiSeries r(N);
  for (const auto& s : eq->start) r += BiSeries::monomial(s.coeff, s.a, s.b, 0, N);
  for (const auto& t : eq->terms) {
    if (t.sec.kind == SectionKind::Point) {
      r += point_term(tab, t.sec.i, t.sec.j, t.coeff, t.a, t.b, t.tpow);
      continue;
    }
    bool in_y = t.sec.kind == SectionKind::VerticalPos || t.sec.kind == SectionKind::VerticalNeg;
    r += times_section(section(m, tab, t.sec), in_y, t.coeff, t.a, t.b, t.tpow, N);
  }
  return r;
}

BiSeries boundary_rhs_generic(const WalkModel& m, const CoeffTable& tab) {
  // start monomial plus the correction t (w - 1) x^{i+dx} y^{j+dy} F_{i,j} at every position
  // where a step is removed or reweighted
  int N = tab.max_n() + 1;
  BiSeries r = BiSeries::monomial(GQ(1), m.i0, m.j0, 0, N);
  for (const auto& e : tab.entries()) {
    if (e.n + 1 >= N) continue;
    for (const auto& s : m.steps) {
      GQ w = m.step_weight(e.i, e.j, s);
      if (w.is_one()) continue;
      r.add_term(e.n + 1, e.j + s.dy, LaurentPoly::monomial((w - GQ(1)) * e.count, e.i + s.dx));
    }
  }
  return r;
}

BiSeries equation_residual(const WalkModel& m, const CoeffTable& tab) {
  int N = tab.max_n() + 1;
  return kernel_biseries(m, N) * full_series(tab) - boundary_rhs(m, tab);
}

BiSeries upper_half_residual(const CoeffTable& tab, const GQ& p) {
  // K U = 1 + t(x+xbar) Hp_{-1}(x) - t(1-p) xbar F_{0,-1} - t ybar Hn(xbar) - t ybar Hp(x)
  WalkModel m = three_quadrant_model(p);
  int N = tab.max_n() + 1;
  BiSeries U = full_series(tab, [](int, int j) { return j >= 0; });
  TSeries hp1 = section(m, tab, SectionSpec::Hp(-1));
  BiSeries rhs = BiSeries::monomial(GQ(1), 0, 0, 0, N);
  rhs += times_section(hp1, false, GQ(1), 1, 0, 1, N);
  rhs += times_section(hp1, false, GQ(1), -1, 0, 1, N);
  rhs -= point_term(tab, 0, -1, GQ(1) - p, -1, 0, 1);
  rhs -= times_section(section(m, tab, SectionSpec::Hn()), false, GQ(1), 0, -1, 1, N);
  rhs -= times_section(section(m, tab, SectionSpec::Hp()), false, GQ(1), 0, -1, 1, N);
  return kernel_biseries(m, N) * U - rhs;
}

BiSeries fourth_quadrant_residual(const CoeffTable& tab) {
  // K V = t ybar Hp(x) - t(x+xbar) Hp_{-1}(x) - t xbar y Vn(ybar) + t xbar F_{0,-1}
  WalkModel m = three_quadrant_model();
  int N = tab.max_n() + 1;
  BiSeries V = full_series(tab, [](int i, int j) { return i >= 0 && j < 0; });
  TSeries hp1 = section(m, tab, SectionSpec::Hp(-1));
  BiSeries rhs = times_section(section(m, tab, SectionSpec::Hp()), false, GQ(1), 0, -1, 1, N);
  rhs -= times_section(hp1, false, GQ(1), 1, 0, 1, N);
  rhs -= times_section(hp1, false, GQ(1), -1, 0, 1, N);
  rhs -= times_section(section(m, tab, SectionSpec::Vn()), true, GQ(1), -1, 1, 1, N);
  rhs += point_term(tab, 0, -1, GQ(1), -1, 0, 1);
  return kernel_biseries(m, N) * V - rhs;
}

}  // namespace lw
