#include "latwalk/bivar.hpp"

#include <algorithm>
#include <climits>

namespace lw {

BivarPoly BivarPoly::monomial(const GQ& c, int xe, int te) {
  if (te < 0) throw MathError("negative power of t in a polynomial");
  BivarPoly p;
  if (!c.is_zero()) p.c_[{xe, te}] = c;
  return p;
}

BivarPoly BivarPoly::from_laurent(const LaurentPoly& p, int te) {
  BivarPoly r;
  for (const auto& [e, c] : p.terms()) r.add_term(e, te, c);
  return r;
}

bool BivarPoly::is_t_free() const {
  for (const auto& [k, c] : c_)
    if (k.second != 0) return false;
  return true;
}

GQ BivarPoly::coeff(int xe, int te) const {
  auto it = c_.find({xe, te});
  return it == c_.end() ? GQ(0) : it->second;
}

void BivarPoly::add_term(int xe, int te, const GQ& c) {
  if (c.is_zero()) return;
  if (te < 0) throw MathError("negative power of t in a polynomial");
  auto [it, fresh] = c_.try_emplace({xe, te}, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

int BivarPoly::min_x() const {
  if (c_.empty()) throw MathError("degree of zero polynomial");
  return c_.begin()->first.first;
}

int BivarPoly::max_x() const {
  if (c_.empty()) throw MathError("degree of zero polynomial");
  return c_.rbegin()->first.first;
}

int BivarPoly::min_t() const {
  if (c_.empty()) throw MathError("degree of zero polynomial");
  int m = INT_MAX;
  for (const auto& [k, c] : c_) m = std::min(m, k.second);
  return m;
}

int BivarPoly::max_t() const {
  if (c_.empty()) throw MathError("degree of zero polynomial");
  int m = INT_MIN;
  for (const auto& [k, c] : c_) m = std::max(m, k.second);
  return m;
}

std::pair<BivarPoly::Key, GQ> BivarPoly::lead() const {
  if (c_.empty()) throw MathError("leading term of zero polynomial");
  return *c_.rbegin();
}

LaurentPoly BivarPoly::t_coeff(int te) const {
  LaurentPoly r;
  for (const auto& [k, c] : c_)
    if (k.second == te) r.add_term(k.first, c);
  return r;
}

PolyQ BivarPoly::x_coeff(int xe) const {
  std::vector<GQ> v;
  for (auto it = c_.lower_bound({xe, 0}); it != c_.end() && it->first.first == xe; ++it) {
    if (static_cast<int>(v.size()) <= it->first.second) v.resize(it->first.second + 1);
    v[it->first.second] = it->second;
  }
  return PolyQ(std::move(v));
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly r = *this;
  for (auto& [k, c] : r.c_) c = -c;
  return r;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  for (const auto& [k, c] : o.c_) add_term(k.first, k.second, c);
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  for (const auto& [k, c] : o.c_) add_term(k.first, k.second, -c);
  return *this;
}

BivarPoly& BivarPoly::operator*=(const GQ& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [k, c] : c_) c *= s;
  return *this;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly r;
  for (const auto& [ka, ca] : a.c_)
    for (const auto& [kb, cb] : b.c_) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return r;
}

BivarPoly BivarPoly::pow(int n) const {
  if (n < 0) {
    if (!is_monomial()) throw MathError("negative power of a non-monomial polynomial");
    auto [k, c] = *c_.begin();
    if (k.second != 0) throw MathError("negative power of t");
    return monomial(c.pow(n), k.first * n, 0);
  }
  BivarPoly r(1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

BivarPoly BivarPoly::shift_x(int k) const {
  BivarPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), Key{e.first + k, e.second}, c);
  return r;
}

BivarPoly BivarPoly::invert_x() const {
  BivarPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace(Key{-e.first, e.second}, c);
  return r;
}

BivarPoly BivarPoly::scale_x(const GQ& s) const {
  BivarPoly r;
  for (const auto& [e, c] : c_) r.add_term(e.first, e.second, c * s.pow(e.first));
  return r;
}

BivarPoly BivarPoly::derivative_x() const {
  BivarPoly r;
  for (const auto& [e, c] : c_)
    if (e.first != 0) r.add_term(e.first - 1, e.second, c * GQ(e.first));
  return r;
}

BivarPoly BivarPoly::derivative_t() const {
  BivarPoly r;
  for (const auto& [e, c] : c_)
    if (e.second != 0) r.add_term(e.first, e.second - 1, c * GQ(e.second));
  return r;
}

BivarPoly BivarPoly::subs_x(const BivarPoly& v) const {
  if (!c_.empty() && min_x() < 0) throw MathError("subs_x needs nonnegative x exponents");
  BivarPoly r;
  std::map<int, BivarPoly> pw;
  for (const auto& [e, c] : c_) {
    auto it = pw.find(e.first);
    if (it == pw.end()) it = pw.emplace(e.first, v.pow(e.first)).first;
    r += it->second * monomial(c, 0, e.second);
  }
  return r;
}

GQ BivarPoly::eval(const GQ& x, const GQ& t) const {
  GQ s(0);
  for (const auto& [e, c] : c_) s += c * x.pow(e.first) * t.pow(e.second);
  return s;
}

BivarPoly BivarPoly::eval_x(const GQ& x) const {
  BivarPoly r;
  for (const auto& [e, c] : c_) r.add_term(0, e.second, c * x.pow(e.first));
  return r;
}

std::optional<BivarPoly> BivarPoly::exact_div(const BivarPoly& d) const {
  if (d.is_zero()) throw MathError("division by zero polynomial");
  if (is_zero()) return BivarPoly();
  if (d.is_monomial()) {
    auto [k, c] = *d.c_.begin();
    BivarPoly r;
    GQ ci = c.inv();
    for (const auto& [e, a] : c_) {
      if (e.second < k.second) return std::nullopt;
      r.c_.emplace(Key{e.first - k.first, e.second - k.second}, a * ci);
    }
    return r;
  }
  // the quotient lives in a known box of exponents
  int qx_lo = min_x() - d.min_x(), qx_hi = max_x() - d.max_x();
  int qt_lo = min_t() - d.min_t(), qt_hi = max_t() - d.max_t();
  if (qx_lo > qx_hi || qt_lo > qt_hi || qt_lo < 0) return std::nullopt;
  auto [dk, dc] = d.lead();
  GQ dci = dc.inv();
  BivarPoly rem = *this, q;
  while (!rem.is_zero()) {
    auto [rk, rc] = rem.lead();
    int ex = rk.first - dk.first, et = rk.second - dk.second;
    if (ex < qx_lo || ex > qx_hi || et < qt_lo || et > qt_hi) return std::nullopt;
    GQ c = rc * dci;
    q.add_term(ex, et, c);
    for (const auto& [e, a] : d.c_) rem.add_term(e.first + ex, e.second + et, -(c * a));
  }
  return q;
}

std::optional<BivarPoly> BivarPoly::sqrt_exact() const {
  if (is_zero()) return BivarPoly();
  auto [lk, lc] = lead();
  if (lk.first % 2 != 0 || lk.second % 2 != 0) return std::nullopt;
  auto s0 = gq_sqrt(lc);
  if (!s0) return std::nullopt;
  // every term of a square root lies in this box
  int xlo = min_x(), tlo = min_t();
  BivarPoly s = monomial(*s0, lk.first / 2, lk.second / 2);
  GQ inv2 = (*s0 * GQ(2)).inv();
  BivarPoly rem = *this - s * s;
  while (!rem.is_zero()) {
    auto [rk, rc] = rem.lead();
    int ex = rk.first - lk.first / 2, et = rk.second - lk.second / 2;
    bool below_lead = ex < lk.first / 2 || (ex == lk.first / 2 && et < lk.second / 2);
    if (2 * ex < xlo || 2 * et < tlo || !below_lead) return std::nullopt;
    BivarPoly term = monomial(rc * inv2, ex, et);
    rem -= term * (s * GQ(2) + term);
    s += term;
  }
  return s;
}

PolyQ BivarPoly::t_content() const {
  if (is_zero()) return PolyQ();
  PolyQ g;
  int last = INT_MIN;
  for (const auto& [k, c] : c_) {
    if (k.first == last) continue;
    last = k.first;
    g = poly_gcd(g, x_coeff(k.first));
    if (g.degree() == 0) break;
  }
  return g.monic();
}

std::string BivarPoly::str() const {
  if (c_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    const auto& [k, c] = *it;
    GQ a = c;
    bool neg = false;
    if (a.is_real() && sgn(a.re) < 0) {
      neg = true;
      a = -a;
    }
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    std::string mono;
    if (k.first == 1)
      mono = "x";
    else if (k.first != 0)
      mono = "x^" + (k.first < 0 ? "(" + std::to_string(k.first) + ")" : std::to_string(k.first));
    if (k.second != 0) {
      if (!mono.empty()) mono += "*";
      mono += k.second == 1 ? "t" : "t^" + std::to_string(k.second);
    }
    std::string cs = a.is_real() ? a.str() : "(" + a.str() + ")";
    if (mono.empty())
      s += cs;
    else if (a.is_one())
      s += mono;
    else
      s += cs + "*" + mono;
  }
  return s;
}

BivarPoly poly_in_t(const PolyQ& p) {
  BivarPoly r;
  for (int k = 0; k <= p.degree(); ++k) r.add_term(0, k, p.coeff(k));
  return r;
}

BivarPoly poly_in_x(const PolyQ& p) {
  BivarPoly r;
  for (int k = 0; k <= p.degree(); ++k) r.add_term(k, 0, p.coeff(k));
  return r;
}

PolyQ as_poly_x(const BivarPoly& p) {
  if (!p.is_t_free()) throw MathError("polynomial depends on t");
  if (!p.is_zero() && p.min_x() < 0) throw MathError("polynomial has negative x powers");
  std::vector<GQ> v;
  for (const auto& [k, c] : p.terms()) {
    if (static_cast<int>(v.size()) <= k.first) v.resize(k.first + 1);
    v[k.first] = c;
  }
  return PolyQ(std::move(v));
}

namespace {

using XPoly = std::vector<PolyQ>;  // index = x exponent, entries polynomials in t

XPoly to_x(const BivarPoly& p) {
  XPoly v;
  if (p.is_zero()) return v;
  v.resize(p.max_x() + 1);
  for (int e = 0; e <= p.max_x(); ++e) v[e] = p.x_coeff(e);
  return v;
}

BivarPoly from_x(const XPoly& v) {
  BivarPoly r;
  for (size_t e = 0; e < v.size(); ++e)
    for (int k = 0; k <= v[e].degree(); ++k) r.add_term(static_cast<int>(e), k, v[e].coeff(k));
  return r;
}

void trim(XPoly& v) {
  while (!v.empty() && v.back().is_zero()) v.pop_back();
}

PolyQ content(const XPoly& v) {
  PolyQ g;
  for (const auto& c : v) {
    g = poly_gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g.monic();
}

XPoly prim(XPoly v) {
  PolyQ g = content(v);
  if (g.is_zero()) return v;
  for (auto& c : v) c = c.divmod(g).first;
  return v;
}

// pseudo-remainder of a by b in x, coefficients in Q(i)[t]
XPoly prem(XPoly a, const XPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  const PolyQ& lb = b.back();
  trim(a);
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    PolyQ la = a.back();
    for (auto& c : a) c = c * lb;
    for (int k = 0; k <= db; ++k) a[k + da - db] -= la * b[k];
    trim(a);
  }
  return a;
}

// gcd of a(x, t0) and b(x, t0) at a t0 where both leading x-coefficients survive; a constant
// result means the bivariate gcd has no x dependence
bool x_coprime_at_point(const XPoly& A, const XPoly& B) {
  for (long t0 = 2; t0 < 40; ++t0) {
    GQ tv(t0);
    if (A.back().eval(tv).is_zero() || B.back().eval(tv).is_zero()) continue;
    auto spec = [&](const XPoly& v) {
      std::vector<GQ> c;
      for (const auto& e : v) c.push_back(e.eval(tv));
      return PolyQ(std::move(c));
    };
    return poly_gcd(spec(A), spec(B)).degree() == 0;
  }
  return false;
}

}  // namespace

BivarPoly bivar_gcd(const BivarPoly& a0, const BivarPoly& b0) {
  if (a0.is_zero() && b0.is_zero()) return BivarPoly();
  if (a0.is_zero() || b0.is_zero()) {
    BivarPoly g = a0.is_zero() ? b0 : a0;
    return g * g.lead().second.inv();
  }
  int ax = a0.min_x(), bx = b0.min_x();
  BivarPoly a = a0.shift_x(-ax), b = b0.shift_x(-bx);
  XPoly A = to_x(a), B = to_x(b);
  PolyQ g = poly_gcd(content(A), content(B));
  if (A.size() == 1 || B.size() == 1 || x_coprime_at_point(A, B)) {
    BivarPoly r = poly_in_t(g).shift_x(std::min(ax, bx));
    return r * r.lead().second.inv();
  }
  A = prim(A);
  B = prim(B);
  if (A.size() < B.size()) std::swap(A, B);
  while (!B.empty()) {
    XPoly R = prem(A, B);
    A = std::move(B);
    B = prim(std::move(R));
  }
  BivarPoly r = from_x(A) * poly_in_t(g);
  r = r.shift_x(std::min(ax, bx));
  return r * r.lead().second.inv();
}

}  // namespace lw
