#include "latwalk/tseries.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace lw {

namespace {

int clamp_units(long long v) {
  if (v >= TSeries::kInf / 2) return TSeries::kInf;
  if (v <= -TSeries::kInf / 2) throw MathError("series truncation underflow");
  return static_cast<int>(v);
}

std::string exp_str(int k, int d) {
  mpq_class q(k, d);
  q.canonicalize();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace

TSeries TSeries::exact(const LaurentPoly& c) {
  TSeries r(kInf);
  if (!c.is_zero()) r.t_[0] = c;
  return r;
}

TSeries TSeries::constant(const LaurentPoly& c, int N) {
  TSeries r(N);
  if (!c.is_zero() && N > 0) r.t_[0] = c;
  return r;
}

TSeries TSeries::monomial(const GQ& c, int xe, int tn, int td, int N) {
  if (td <= 0) throw MathError("nonpositive exponent denominator");
  TSeries r(N);
  r.d_ = td;
  r.trunc_ = clamp_units(static_cast<long long>(N) * td);
  if (tn < r.trunc_ && !c.is_zero()) r.t_[tn] = LaurentPoly::monomial(c, xe);
  return r;
}

TSeries TSeries::from_units(int d, int trunc_units, std::map<int, LaurentPoly> terms) {
  if (d <= 0) throw MathError("nonpositive exponent denominator");
  TSeries r(trunc_units);
  r.d_ = d;
  r.t_ = std::move(terms);
  r.clip();
  return r;
}

mpq_class TSeries::trunc() const {
  if (is_exact()) return mpq_class(kInf);
  mpq_class q(trunc_, d_);
  q.canonicalize();
  return q;
}

std::optional<int> TSeries::valuation_units() const {
  if (t_.empty()) return std::nullopt;
  return t_.begin()->first;
}

std::optional<mpq_class> TSeries::valuation() const {
  auto v = valuation_units();
  if (!v) return std::nullopt;
  mpq_class q(*v, d_);
  q.canonicalize();
  return q;
}

std::optional<mpq_class> TSeries::first_nonzero() const { return valuation(); }

LaurentPoly TSeries::coeff_units(int k) const {
  auto it = t_.find(k);
  return it == t_.end() ? LaurentPoly() : it->second;
}

LaurentPoly TSeries::coeff(const mpq_class& e) const {
  mpq_class k = e * d_;
  k.canonicalize();
  if (k.get_den() != 1) return LaurentPoly();
  if (!is_exact() && k >= trunc_) throw MathError("coefficient beyond truncation order");
  return coeff_units(static_cast<int>(k.get_num().get_si()));
}

bool TSeries::is_x_constant() const {
  for (const auto& [k, c] : t_)
    if (!c.is_constant()) return false;
  return true;
}

bool TSeries::x_nonpositive() const {
  for (const auto& [k, c] : t_)
    if (c.max_exp() > 0) return false;
  return true;
}

bool TSeries::x_nonnegative() const {
  for (const auto& [k, c] : t_)
    if (c.min_exp() < 0) return false;
  return true;
}

std::optional<int> TSeries::x_min() const {
  std::optional<int> r;
  for (const auto& [k, c] : t_) r = r ? std::min(*r, c.min_exp()) : c.min_exp();
  return r;
}

std::optional<int> TSeries::x_max() const {
  std::optional<int> r;
  for (const auto& [k, c] : t_) r = r ? std::max(*r, c.max_exp()) : c.max_exp();
  return r;
}

void TSeries::clip() {
  for (auto it = t_.begin(); it != t_.end();) {
    if (it->second.is_zero() || it->first >= trunc_)
      it = t_.erase(it);
    else
      ++it;
  }
}

void TSeries::add_coeff(int k, const LaurentPoly& c) {
  if (k >= trunc_ || c.is_zero()) return;
  auto [it, fresh] = t_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }
}

TSeries TSeries::with_denom(int d) const {
  if (d % d_ != 0) throw MathError("denominator must be a multiple of the current one");
  if (d == d_) return *this;
  int f = d / d_;
  TSeries r(is_exact() ? kInf : clamp_units(static_cast<long long>(trunc_) * f));
  r.d_ = d;
  for (const auto& [k, c] : t_) r.t_.emplace_hint(r.t_.end(), k * f, c);
  return r;
}

void unify(TSeries& a, TSeries& b) {
  if (a.d_ == b.d_) return;
  int l = std::lcm(a.d_, b.d_);
  a = a.with_denom(l);
  b = b.with_denom(l);
}

TSeries TSeries::simplified() const {
  int g = d_;
  if (!is_exact()) g = std::gcd(g, trunc_);
  for (const auto& [k, c] : t_) g = std::gcd(g, k);
  if (g <= 1) return *this;
  TSeries r(is_exact() ? kInf : trunc_ / g);
  r.d_ = d_ / g;
  for (const auto& [k, c] : t_) r.t_.emplace_hint(r.t_.end(), k / g, c);
  return r;
}

TSeries TSeries::truncated(const mpq_class& N) const {
  mpq_class q = N;
  q.canonicalize();
  int nd = std::lcm(d_, static_cast<int>(q.get_den().get_si()));
  TSeries r = with_denom(nd);
  mpq_class u = q * nd;
  r.trunc_ = std::min(r.trunc_, clamp_units(u.get_num().get_si()));
  r.clip();
  return r;
}

TSeries TSeries::operator-() const {
  TSeries r = *this;
  for (auto& [k, c] : r.t_) c = -c;
  return r;
}

TSeries& TSeries::operator+=(const TSeries& o) {
  TSeries b = o;
  unify(*this, b);
  trunc_ = std::min(trunc_, b.trunc_);
  clip();
  for (const auto& [k, c] : b.t_) add_coeff(k, c);
  return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) { return *this += -o; }

TSeries& TSeries::operator*=(const GQ& s) {
  if (s.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, c] : t_) c *= s;
  return *this;
}

TSeries& TSeries::operator*=(const LaurentPoly& p) {
  if (p.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [k, c] : t_) c = c * p;
  return *this;
}

TSeries operator*(const TSeries& a0, const TSeries& b0) {
  TSeries a = a0, b = b0;
  unify(a, b);
  long long va = a.t_.empty() ? a.trunc_ : a.t_.begin()->first;
  long long vb = b.t_.empty() ? b.trunc_ : b.t_.begin()->first;
  long long ta = a.is_exact() ? TSeries::kInf : a.trunc_ + std::min(vb, 0LL);
  long long tb = b.is_exact() ? TSeries::kInf : b.trunc_ + std::min(va, 0LL);
  TSeries r(clamp_units(std::min(ta, tb)));
  r.d_ = a.d_;
  for (const auto& [ka, ca] : a.t_) {
    if (!b.t_.empty() && ka + b.t_.begin()->first >= r.trunc_) break;
    for (const auto& [kb, cb] : b.t_) {
      if (ka + kb >= r.trunc_) break;
      r.add_coeff(ka + kb, ca * cb);
    }
  }
  return r;
}

TSeries series_add(const TSeries& a, const TSeries& b) { return a + b; }
TSeries series_mul(const TSeries& a, const TSeries& b) { return a * b; }

TSeries TSeries::inv() const {
  if (t_.empty()) throw MathError("inverse of zero series");
  if (is_exact()) throw MathError("inverse of an exact series needs a truncation order");
  int v = t_.begin()->first;
  const LaurentPoly& c0 = t_.begin()->second;
  if (!c0.is_monomial()) throw MathError("inverse: leading coefficient is not a Laurent monomial");
  auto [e0, s0] = *c0.terms().begin();
  LaurentPoly c0inv = LaurentPoly::monomial(s0.inv(), -e0);
  int len = trunc_ - v;  // known terms of the normalized series
  std::vector<LaurentPoly> g(len), w(len);
  for (const auto& [k, c] : t_)
    if (k - v < len) g[k - v] = c * c0inv;
  if (len > 0) w[0] = LaurentPoly(1);
  for (int k = 1; k < len; ++k) {
    LaurentPoly s;
    for (int j = 1; j <= k; ++j)
      if (!g[j].is_zero() && !w[k - j].is_zero()) s += g[j] * w[k - j];
    w[k] = -s;
  }
  TSeries r(clamp_units(static_cast<long long>(trunc_) - 2LL * v));
  r.d_ = d_;
  for (int k = 0; k < len; ++k)
    if (!w[k].is_zero()) r.add_coeff(k - v, w[k] * c0inv);
  return r;
}

std::optional<TSeries> TSeries::div_exact(const LaurentPoly& p) const {
  TSeries r = *this;
  for (auto& [k, c] : r.t_) {
    auto q = c.exact_div(p);
    if (!q) return std::nullopt;
    c = *q;
  }
  return r;
}

TSeries TSeries::sqrt() const {
  if (t_.empty()) {
    // sqrt(O(t^N)) = O(t^(N/2))
    TSeries r = with_denom(d_ * 2);
    r.trunc_ = trunc_;
    return r;
  }
  if (is_exact()) throw MathError("square root of an exact series needs a truncation order");
  TSeries f = *this;
  if (f.t_.begin()->first % 2 != 0) f = f.with_denom(d_ * 2);
  int v = f.t_.begin()->first;
  const LaurentPoly& c0 = f.t_.begin()->second;
  if (!c0.is_monomial()) throw MathError("square root: leading coefficient is not a Laurent monomial");
  auto [e0, s0] = *c0.terms().begin();
  if (e0 % 2 != 0) throw MathError("square root: odd x exponent in leading term");
  auto rs = gq_sqrt(s0);
  if (!rs) throw MathError("square root: leading scalar is not a square");
  LaurentPoly c0inv = LaurentPoly::monomial(s0.inv(), -e0);
  LaurentPoly r0 = LaurentPoly::monomial(*rs, e0 / 2);
  int len = f.trunc_ - v;
  std::vector<LaurentPoly> g(len), h(len);
  for (const auto& [k, c] : f.t_)
    if (k - v < len) g[k - v] = c * c0inv;
  if (len > 0) h[0] = LaurentPoly(1);
  GQ half = GQ::frac(1, 2);
  for (int k = 1; k < len; ++k) {
    LaurentPoly s = g[k];
    for (int i = 1; i < k; ++i)
      if (!h[i].is_zero() && !h[k - i].is_zero()) s -= h[i] * h[k - i];
    h[k] = s * half;
  }
  TSeries r(f.trunc_ - v / 2);
  r.d_ = f.d_;
  for (int k = 0; k < len; ++k)
    if (!h[k].is_zero()) r.add_coeff(k + v / 2, h[k] * r0);
  return r;
}

TSeries TSeries::pow(int n) const {
  if (n < 0) return inv().pow(-n);
  TSeries r = TSeries::exact(LaurentPoly(1)).with_denom(d_);
  TSeries b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

TSeries TSeries::mul_t(const mpq_class& e0) const {
  mpq_class e = e0;
  e.canonicalize();
  int nd = std::lcm(d_, static_cast<int>(e.get_den().get_si()));
  TSeries r = with_denom(nd);
  mpq_class s = e * nd;
  int sh = static_cast<int>(s.get_num().get_si());
  TSeries out(r.is_exact() ? kInf : clamp_units(static_cast<long long>(r.trunc_) + sh));
  out.d_ = nd;
  for (const auto& [k, c] : r.t_) out.t_.emplace_hint(out.t_.end(), k + sh, c);
  return out;
}

TSeries TSeries::mul_x(int k) const {
  TSeries r = *this;
  for (auto& [e, c] : r.t_) c = c.shift(k);
  return r;
}

TSeries TSeries::invert_x() const {
  TSeries r = *this;
  for (auto& [e, c] : r.t_) c = c.invert_x();
  return r;
}

TSeries TSeries::scale_x(const GQ& s) const {
  if (s.is_zero()) throw MathError("scale_x by zero");
  TSeries r = *this;
  for (auto& [k, c] : r.t_) {
    LaurentPoly n;
    for (const auto& [e, a] : c.terms()) n.add_term(e, a * s.pow(e));
    c = n;
  }
  return r;
}

TSeries TSeries::derivative_x() const {
  TSeries r = *this;
  for (auto& [k, c] : r.t_) c = c.derivative();
  r.clip();
  return r;
}

TSeries TSeries::eval_x(const GQ& x) const {
  TSeries r = *this;
  for (auto& [k, c] : r.t_) c = LaurentPoly(c.eval(x));
  r.clip();
  return r;
}

TSeries TSeries::eval_x(const TSeries& rho) const {
  if (!rho.is_x_constant()) throw MathError("substituted series must be free of x");
  auto vr = rho.valuation_units();
  if (vr && *vr < 0) throw MathError("substituted series has negative valuation");
  bool neg = false;
  for (const auto& [k, c] : t_)
    if (c.min_exp() < 0) neg = true;
  TSeries rinv;
  if (neg) rinv = rho.inv();
  std::map<int, TSeries> powers;
  auto rpow = [&](int e) -> const TSeries& {
    auto it = powers.find(e);
    if (it != powers.end()) return it->second;
    return powers.emplace(e, e >= 0 ? rho.pow(e) : rinv.pow(-e)).first->second;
  };
  TSeries acc(trunc_);
  acc.d_ = d_;
  if (is_exact()) acc = TSeries::exact(LaurentPoly());
  for (const auto& [k, c] : t_) {
    TSeries inner = TSeries::exact(LaurentPoly());
    for (const auto& [e, a] : c.terms()) inner += rpow(e) * a;
    mpq_class sh(k, d_);
    sh.canonicalize();
    acc += inner.mul_t(sh);
  }
  // the result is never known beyond this series' own precision
  if (!is_exact()) acc = acc.truncated(trunc());
  return acc;
}

bool TSeries::equals_mod(const TSeries& o) const { return (*this - o).is_zero(); }

bool TSeries::is_zero_mod(const mpq_class& N) const {
  if (!is_exact() && trunc() < N) return false;
  return truncated(N).is_zero();
}

std::string TSeries::str() const {
  std::string s;
  bool first = true;
  for (const auto& [k, c] : t_) {
    for (const auto& [e, a] : c.terms()) {
      if (!first) s += " + ";
      first = false;
      s += a.str() + " * x^" + std::to_string(e) + " * t^(" + exp_str(k, d_) + ")";
    }
  }
  if (!is_exact()) {
    if (!first) s += " + ";
    first = false;
    s += "O(t^(" + exp_str(trunc_, d_) + "))";
  }
  if (first) s = "0";
  return s;
}

std::string TSeries::json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : t_)
    for (const auto& [e, a] : c.terms()) terms.push_back({a.str(), e, exp_str(k, d_)});
  nlohmann::json j;
  j["trunc"] = is_exact() ? nlohmann::json(nullptr) : nlohmann::json(exp_str(trunc_, d_));
  j["terms"] = terms;
  return j.dump();
}

namespace {

mpq_class parse_exp(const std::string& s) {
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw MathError("bad exponent: " + s);
  q.canonicalize();
  return q;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

TSeries TSeries::parse(const std::string& text) {
  struct Raw {
    GQ c;
    int xe;
    mpq_class te;
  };
  std::vector<Raw> raws;
  std::optional<mpq_class> order;
  std::string src = trim(text);
  if (src.empty()) throw MathError("empty series text");
  if (src[0] == '{') {
    auto j = nlohmann::json::parse(src);
    if (!j.at("trunc").is_null()) order = parse_exp(j.at("trunc").get<std::string>());
    for (const auto& t : j.at("terms"))
      raws.push_back({GQ::parse(t.at(0).get<std::string>()), t.at(1).get<int>(),
                      parse_exp(t.at(2).get<std::string>())});
  } else if (src != "0") {
    size_t pos = 0;
    while (pos <= src.size()) {
      size_t nx = src.find(" + ", pos);
      std::string tok = trim(src.substr(pos, nx == std::string::npos ? std::string::npos : nx - pos));
      pos = nx == std::string::npos ? src.size() + 1 : nx + 3;
      if (tok.rfind("O(t^(", 0) == 0) {
        size_t close = tok.find(')', 5);
        if (close == std::string::npos) throw MathError("bad order term: " + tok);
        order = parse_exp(tok.substr(5, close - 5));
        continue;
      }
      size_t xp = tok.find(" * x^");
      size_t tp = tok.find(" * t^(");
      if (xp == std::string::npos || tp == std::string::npos || tok.back() != ')')
        throw MathError("bad series term: " + tok);
      GQ c = GQ::parse(tok.substr(0, xp));
      int xe = std::stoi(tok.substr(xp + 5, tp - xp - 5));
      mpq_class te = parse_exp(tok.substr(tp + 6, tok.size() - tp - 7));
      raws.push_back({c, xe, te});
    }
  }
  int d = 1;
  for (const auto& r : raws) d = std::lcm(d, static_cast<int>(r.te.get_den().get_si()));
  if (order) d = std::lcm(d, static_cast<int>(order->get_den().get_si()));
  TSeries s(kInf);
  s.d_ = d;
  if (order) {
    mpq_class u = *order * d;
    s.trunc_ = clamp_units(u.get_num().get_si());
  }
  for (const auto& r : raws) {
    mpq_class u = r.te * d;
    int k = static_cast<int>(u.get_num().get_si());
    if (k >= s.trunc_) throw MathError("term beyond stated truncation order");
    s.add_coeff(k, LaurentPoly::monomial(r.c, r.xe));
  }
  return s;
}

TSeries extract_part(const TSeries& f, Region r, int m) {
  int lo = INT_MIN, hi = INT_MAX;
  switch (r) {
    case Region::Pos: lo = 1; break;
    case Region::Neg: hi = -1; break;
    case Region::Zero: lo = hi = 0; break;
    case Region::NonNeg: lo = 0; break;
    case Region::LeNegM: hi = -m; break;
  }
  std::map<int, LaurentPoly> terms;
  for (const auto& [k, c] : f.terms()) {
    LaurentPoly w = c.window(lo, hi);
    if (!w.is_zero()) terms.emplace_hint(terms.end(), k, w);
  }
  return TSeries::from_units(f.denom(), f.trunc_units(), std::move(terms));
}

TSeries value_at_pole(const TSeries& F, const TSeries& rho) {
  if (!F.x_nonpositive()) throw MathError("pole part: F contains positive powers of x");
  return F.invert_x().eval_x(rho);
}

TSeries weight_at_pole(const TSeries& F, const TSeries& rho) {
  if (!F.x_nonpositive()) throw MathError("pole part: F contains positive powers of x");
  return F.invert_x().derivative_x().mul_x(1).eval_x(rho);
}

TSeries geometric(const TSeries& rho, int k, int N, std::optional<int> xcap) {
  if (!rho.is_x_constant()) throw MathError("pole location must be free of x");
  if (k < 1) throw MathError("pole order must be positive");
  auto v = rho.valuation();
  if (v && *v < 0) throw MathError("pole location has negative valuation");
  int nmax;
  if (xcap) {
    nmax = *xcap;
  } else if (!v) {
    nmax = 0;
  } else if (*v > 0) {
    mpq_class n = mpq_class(N) / *v;
    nmax = static_cast<int>(mpz_class(n.get_num() / n.get_den()).get_si()) + 1;
  } else {
    throw MathError("expansion at a pole of valuation 0 needs an x cap");
  }
  TSeries acc = TSeries::constant(LaurentPoly(1), N);
  acc = acc.truncated(std::min(mpq_class(N), rho.trunc()));
  TSeries rp = acc;
  mpz_class binom = 1;  // C(n+k-1, k-1)
  for (int n = 1; n <= nmax; ++n) {
    rp = rp * rho;
    if (rp.is_zero() && !xcap) break;
    binom = binom * (n + k - 1) / n;
    acc += rp.mul_x(n) * GQ(mpq_class(binom));
  }
  return acc;
}

TSeries pos_part_at_pole(const TSeries& F, const TSeries& rho, PoleKind kind, std::optional<int> xcap) {
  if (!F.x_nonpositive()) throw MathError("pole part: F contains positive powers of x");
  TSeries Fr = value_at_pole(F, rho);
  if (kind == PoleKind::ValueAt) return Fr;
  int N = 0;
  {
    mpq_class n = F.trunc();
    if (rho.trunc() < n) n = rho.trunc();
    N = static_cast<int>(mpz_class(n.get_num() / n.get_den()).get_si());
    if (n.get_den() != 1) ++N;
  }
  TSeries g1 = geometric(rho, 1, N, xcap);
  if (kind == PoleKind::Simple) return Fr * g1;
  TSeries g2 = geometric(rho, 2, N, xcap);
  return Fr * g2 + weight_at_pole(F, rho) * g1;
}

}  // namespace lw
