#include "latwalk/ratfunc.hpp"

#include <algorithm>
#include <cctype>
#include <climits>

#include "latwalk/factor.hpp"

namespace lw {

RatFunc rf_normalize(const BivarPoly& num0, const BivarPoly& den0) {
  if (den0.is_zero()) throw MathError("zero denominator");
  if (num0.is_zero()) return RatFunc(BivarPoly(), BivarPoly(1), RatFunc::Raw{});
  int s = std::max({0, -num0.min_x(), -den0.min_x()});
  BivarPoly num = num0.shift_x(s), den = den0.shift_x(s);
  if (!den.is_constant()) {
    BivarPoly g = bivar_gcd(num, den);
    if (!g.is_constant()) {
      auto qn = num.exact_div(g), qd = den.exact_div(g);
      if (!qn || !qd) throw MathError("internal: gcd does not divide");
      num = *qn;
      den = *qd;
    }
  }
  GQ li = den.lead().second.inv();
  return RatFunc(num * li, den * li, RatFunc::Raw{});
}

RatFunc::RatFunc(const BivarPoly& p) { *this = rf_normalize(p, BivarPoly(1)); }

RatFunc::RatFunc(const BivarPoly& num, const BivarPoly& den) { *this = rf_normalize(num, den); }

RatFunc RatFunc::x(int e) { return RatFunc(BivarPoly::x(e)); }

RatFunc RatFunc::t(int e) {
  if (e >= 0) return RatFunc(BivarPoly::t(e));
  return RatFunc(BivarPoly(1), BivarPoly::t(-e));
}

GQ RatFunc::constant_value() const {
  if (!is_constant()) throw MathError("rational function is not constant");
  return num_.coeff(0, 0) / den_.coeff(0, 0);
}

bool RatFunc::is_x_free() const {
  for (const auto* p : {&num_, &den_})
    for (const auto& [k, c] : p->terms())
      if (k.first != 0) return false;
  return true;
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Raw{}); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return rf_normalize(a.num_ + b.num_, a.den_);
  return rf_normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.den_.is_constant() && b.den_.is_constant() && a.num_.min_x() >= 0 && b.num_.min_x() >= 0)
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_, RatFunc::Raw{});
  return rf_normalize(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw MathError("division by zero rational function");
  return rf_normalize(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunc RatFunc::inv() const { return RatFunc(1) / *this; }

RatFunc RatFunc::pow(int n) const {
  if (n < 0) return inv().pow(-n);
  return rf_normalize(num_.pow(n), den_.pow(n));
}

RatFunc RatFunc::invert_x() const { return rf_normalize(num_.invert_x(), den_.invert_x()); }

RatFunc RatFunc::scale_x(const GQ& s) const { return rf_normalize(num_.scale_x(s), den_.scale_x(s)); }

RatFunc RatFunc::derivative_x() const {
  return rf_normalize(num_.derivative_x() * den_ - num_ * den_.derivative_x(), den_ * den_);
}

RatFunc RatFunc::derivative_t() const {
  return rf_normalize(num_.derivative_t() * den_ - num_ * den_.derivative_t(), den_ * den_);
}

namespace {

RatFunc poly_subs(const BivarPoly& p, const RatFunc& v) {
  RatFunc acc;
  std::map<int, RatFunc> pw;
  for (const auto& [k, c] : p.terms()) {
    auto it = pw.find(k.first);
    if (it == pw.end()) it = pw.emplace(k.first, v.pow(k.first)).first;
    acc += it->second * RatFunc(BivarPoly::monomial(c, 0, k.second));
  }
  return acc;
}

}  // namespace

RatFunc RatFunc::subs_x(const RatFunc& v) const { return poly_subs(num_, v) / poly_subs(den_, v); }

RatFunc RatFunc::subs_x(const GQ& v) const {
  BivarPoly d = den_.eval_x(v);
  if (d.is_zero()) throw MathError("denominator vanishes at the evaluation point");
  return rf_normalize(num_.eval_x(v), d);
}

std::optional<RatFunc> RatFunc::sqrt() const {
  auto sn = num_.sqrt_exact();
  if (!sn) return std::nullopt;
  auto sd = den_.sqrt_exact();
  if (!sd) return std::nullopt;
  return RatFunc(*sn, *sd);
}

std::string RatFunc::str() const {
  if (den_ == BivarPoly(1)) return num_.str();
  return "(" + num_.str() + ") / (" + den_.str() + ")";
}

namespace {

// expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)* ;
// unary := '-' unary | '+' unary | power ; power := atom ('^' int)?
class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}
  RatFunc run() {
    RatFunc r = expr();
    skip();
    if (p_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  const std::string& s_;
  size_t p_ = 0;

  [[noreturn]] void fail(const std::string& m) {
    throw MathError("parse error at " + std::to_string(p_) + ": " + m + " in '" + s_ + "'");
  }
  void skip() {
    while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
  }
  bool eat(char c) {
    skip();
    if (p_ < s_.size() && s_[p_] == c) {
      ++p_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }
  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*'))
        r = r * unary();
      else if (eat('/'))
        r = r / unary();
      else
        return r;
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  int integer() {
    skip();
    bool paren = eat('(');
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    size_t st = p_;
    while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
    if (st == p_) fail("expected integer exponent");
    int v = std::stoi(s_.substr(st, p_ - st));
    if (paren && !eat(')')) fail("expected ')'");
    return neg ? -v : v;
  }
  RatFunc power() {
    RatFunc a = atom();
    if (eat('^')) a = a.pow(integer());
    return a;
  }
  RatFunc atom() {
    skip();
    if (p_ >= s_.size()) fail("unexpected end");
    char c = s_[p_];
    if (c == '(') {
      ++p_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = p_;
      while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
      return RatFunc(GQ(mpq_class(mpz_class(s_.substr(st, p_ - st)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t st = p_;
      while (p_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[p_]))) ++p_;
      std::string id = s_.substr(st, p_ - st);
      if (id == "x") return RatFunc::x();
      if (id == "t") return RatFunc::t();
      if (id == "i") return RatFunc(GQ::I());
      if (id == "xb" || id == "xbar") return RatFunc::x(-1);
      fail("unknown identifier " + id);
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RatFunc RatFunc::parse(const std::string& s) { return Parser(s).run(); }

const RatFunc& QuadExt::common_delta(const QuadExt& u, const QuadExt& v) {
  if (u.b_.is_zero()) return v.delta_;
  if (v.b_.is_zero()) return u.delta_;
  if (u.delta_ != v.delta_) throw MathError("quadratic extensions with different discriminants");
  return u.delta_;
}

QuadExt operator+(const QuadExt& u, const QuadExt& v) {
  return QuadExt(u.a_ + v.a_, u.b_ + v.b_, QuadExt::common_delta(u, v));
}

QuadExt operator-(const QuadExt& u, const QuadExt& v) {
  return QuadExt(u.a_ - v.a_, u.b_ - v.b_, QuadExt::common_delta(u, v));
}

QuadExt operator*(const QuadExt& u, const QuadExt& v) {
  const RatFunc& d = QuadExt::common_delta(u, v);
  RatFunc bb = u.b_ * v.b_;
  return QuadExt(u.a_ * v.a_ + (bb.is_zero() ? bb : bb * d), u.a_ * v.b_ + u.b_ * v.a_, d);
}

QuadExt operator*(const QuadExt& u, const RatFunc& s) { return QuadExt(u.a_ * s, u.b_ * s, u.delta_); }

QuadExt QuadExt::inv() const {
  RatFunc n = norm();
  if (n.is_zero()) throw MathError("inverse of a zero-norm element");
  RatFunc ni = n.inv();
  return QuadExt(a_ * ni, -b_ * ni, delta_);
}

QuadExt operator/(const QuadExt& u, const QuadExt& v) { return u * v.inv(); }

QuadExt QuadExt::invert_x() const {
  // sqrt(delta) is fixed by x -> 1/x only when delta is
  return QuadExt(a_.invert_x(), b_.invert_x(), delta_.invert_x());
}

std::string QuadExt::str() const {
  if (b_.is_zero()) return a_.str();
  return "(" + a_.str() + ") + (" + b_.str() + ")*sqrt(" + delta_.str() + ")";
}

TSeries poly_to_series(const BivarPoly& p, int N) {
  std::map<int, LaurentPoly> m;
  for (const auto& [k, c] : p.terms())
    if (k.second < N) m[k.second].add_term(k.first, c);
  for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
  return TSeries::from_units(1, N, std::move(m));
}

namespace {

// r / D as a power series in x (D has nonzero lowest coefficient after removing x^m), exponents <= cap
LaurentPoly div_x_series(const LaurentPoly& r, const LaurentPoly& D, int cap) {
  if (r.is_zero()) return r;
  int m = D.min_exp();
  LaurentPoly u = D.shift(-m);
  LaurentPoly w = r.shift(-m);
  GQ u0i = u.coeff(0).inv();
  int du = u.max_exp();
  int lo = w.min_exp();
  std::map<int, GQ> q;
  LaurentPoly out;
  for (int e = lo; e <= cap; ++e) {
    GQ s = w.coeff(e);
    for (int j = 1; j <= du && e - j >= lo; ++j) {
      auto it = q.find(e - j);
      if (it != q.end()) s -= u.coeff(j) * it->second;
    }
    if (!s.is_zero()) {
      GQ qe = s * u0i;
      q[e] = qe;
      out.add_term(e, qe);
    }
  }
  return out;
}

}  // namespace

TSeries series_div_poly(const TSeries& num0, const BivarPoly& den0, std::optional<int> xcap) {
  if (den0.is_zero()) throw MathError("division by zero polynomial");
  TSeries num = num0;
  BivarPoly den = den0;
  if (xcap && den.min_x() != 0) {
    int s = -den.min_x();
    den = den.shift_x(s);
    num = num.mul_x(s);
  }
  int v = den.min_t();
  std::map<int, LaurentPoly> D;
  for (int j = v; j <= den.max_t(); ++j) {
    LaurentPoly c = den.t_coeff(j);
    if (!c.is_zero()) D[j] = c;
  }
  const LaurentPoly& Dv = D.at(v);
  if (num.is_exact() && D.size() > 1) throw MathError("series division by a non-monomial in t needs a truncation order");
  int d = num.denom();
  if (num.is_exact()) {
    auto q = num.div_exact(Dv);
    if (!q) throw MathError("denominator with no admissible expansion");
    return q->mul_t(mpq_class(-v));
  }
  int T = num.trunc_units() - v * d;
  if (num.is_zero()) return TSeries::from_units(d, T, {});
  int k0 = *num.valuation_units() - v * d;
  bool mono = Dv.is_monomial();
  int steps = std::max(0, T - k0);
  long long icap = 0;
  if (xcap) {
    long long loss = static_cast<long long>(std::max(0, Dv.min_exp())) * (steps + 1);
    icap = std::min<long long>(static_cast<long long>(*xcap) + loss, INT_MAX / 4);
  }
  std::map<int, LaurentPoly> q;
  for (int k = k0; k < T; ++k) {
    LaurentPoly r = num.coeff_units(k + v * d);
    for (const auto& [j, Dj] : D) {
      if (j == v) continue;
      auto it = q.find(k - (j - v) * d);
      if (it != q.end()) r -= Dj * it->second;
    }
    if (r.is_zero()) continue;
    LaurentPoly qk;
    if (mono) {
      qk = *r.exact_div(Dv);
    } else if (xcap) {
      qk = div_x_series(r.window(INT_MIN, static_cast<int>(icap)), Dv, static_cast<int>(icap));
    } else {
      auto e = r.exact_div(Dv);
      if (!e) throw MathError("denominator with no admissible expansion (an x cap is required)");
      qk = *e;
    }
    if (!qk.is_zero()) q[k] = qk;
  }
  if (xcap)
    for (auto it = q.begin(); it != q.end();) {
      it->second = it->second.window(INT_MIN, *xcap);
      it = it->second.is_zero() ? q.erase(it) : std::next(it);
    }
  return TSeries::from_units(d, T, std::move(q));
}

TSeries rf_to_series(const RatFunc& f, int N, std::optional<int> xcap) {
  int v = f.den().min_t();
  return series_div_poly(poly_to_series(f.num(), N + v), f.den(), xcap);
}

TSeries sqrt_series(const RatFunc& delta, int N) {
  int v = delta.den().min_t();
  TSeries s = series_div_poly(poly_to_series(delta.num(), N + v), delta.den());
  return s.sqrt();
}

TSeries rf_to_series(const QuadExt& f, int N, std::optional<int> xcap) {
  if (f.b().is_zero()) return rf_to_series(f.a(), N, xcap);
  const BivarPoly& da = f.a().den();
  const BivarPoly& db = f.b().den();
  BivarPoly g = bivar_gcd(da, db);
  BivarPoly Dn = da * *db.exact_div(g);
  BivarPoly A = f.a().num() * *Dn.exact_div(da);
  BivarPoly B = f.b().num() * *Dn.exact_div(db);
  int v = Dn.min_t();
  TSeries num = poly_to_series(A, N + v) + poly_to_series(B, N + v) * sqrt_series(f.delta(), N + v);
  return series_div_poly(num, Dn, xcap);
}

namespace {

RatFunc px(const PolyQ& p) { return RatFunc(poly_in_x(p)); }

SplitResult split_antisymmetric(const RatFunc& g) {
  if (g * g.invert_x() != RatFunc(1)) throw MathError("antisymmetric split: g(x) g(1/x) != 1");
  const BivarPoly& P = g.num();
  const BivarPoly& Q = g.den();
  int a = P.min_x(), b = Q.min_x();
  BivarPoly P0 = P.shift_x(-a), Q0 = Q.shift_x(-b);
  BivarPoly Pstar = P0.invert_x().shift_x(P0.max_x());
  auto cq = Q0.exact_div(Pstar);
  if (!cq || !cq->is_constant()) throw MathError("antisymmetric split: denominator is not a reversal of the numerator");
  GQ c = cq->coeff(0, 0);
  if (c != GQ(1) && c != GQ(-1)) throw MathError("antisymmetric split: unexpected constant");
  int mp = a - b - P0.max_x();
  int q = mp >= 0 ? mp / 2 : -((-mp + 1) / 2);
  int r = mp - 2 * q;
  RatFunc f = RatFunc(P0) * RatFunc::x(q);
  if (r) f *= RatFunc(BivarPoly(1) + BivarPoly::x());
  if (c == GQ(-1)) f *= RatFunc(BivarPoly::x() - BivarPoly(1), BivarPoly::x() + BivarPoly(1));
  if (f / f.invert_x() != g) throw MathError("internal: antisymmetric recomposition failed");
  SplitResult res;
  res.ok = true;
  res.f = f;
  return res;
}

// chooses one factor out of each reciprocal pair; false if a factor is unpaired
bool half_factors(const PolyQ& p, PolyQ& half, std::string& why) {
  half = PolyQ(GQ(1));
  if (p.degree() <= 0) return true;
  auto fs = factor_gq(p);
  std::vector<bool> used(fs.size(), false);
  for (size_t k = 0; k < fs.size(); ++k) {
    if (used[k]) continue;
    const PolyQ& f = fs[k].f;
    PolyQ fr = f.reversed().monic();
    if (fr == f) {
      if (fs[k].mult % 2) {
        why = "self-reciprocal factor with odd multiplicity";
        return false;
      }
      half = half * f.pow(fs[k].mult / 2);
      used[k] = true;
      continue;
    }
    size_t partner = fs.size();
    for (size_t j = k + 1; j < fs.size(); ++j)
      if (!used[j] && fs[j].f == fr && fs[j].mult == fs[k].mult) partner = j;
    if (partner == fs.size()) {
      why = "factor without reciprocal partner";
      return false;
    }
    used[k] = used[partner] = true;
    // representative: roots of larger modulus, ties broken by the constant term
    const PolyQ& g = fs[partner].f;
    int c = ::cmp(f.coeff(0).norm(), g.coeff(0).norm());
    if (c == 0) c = f.coeff(0).cmp(g.coeff(0));
    PolyQ rep = c > 0 ? f : g;
    rep = rep * rep.coeff(0).inv();
    half = half * rep.pow(fs[k].mult);
  }
  return true;
}

SplitResult split_symmetric(const RatFunc& g) {
  if (g.invert_x() != g) throw MathError("symmetric split: g(1/x) != g(x)");
  if (g.is_zero()) throw MathError("symmetric split of zero");
  if (!g.is_t_free()) throw MathError("symmetric split supports functions of x only");
  PolyQ P = as_poly_x(g.num().shift_x(-g.num().min_x()));
  PolyQ Q = as_poly_x(g.den().shift_x(-g.den().min_x()));
  SplitResult res;
  PolyQ hp, hq;
  if (!half_factors(P, hp, res.note) || !half_factors(Q, hq, res.note)) {
    res.ok = false;
    res.f = RatFunc(1);
    return res;
  }
  RatFunc m0 = px(hp) / px(hq);
  RatFunc ratio = g / (m0 * m0.invert_x());
  if (!ratio.is_constant()) throw MathError("internal: symmetric residual is not constant");
  res.residual = ratio.constant_value();
  auto s = gq_sqrt(res.residual);
  if (s) {
    res.ok = true;
    res.f = m0 * RatFunc(*s);
  } else {
    res.ok = false;
    res.f = m0;
    res.note = "residual constant " + res.residual.str() + " is not a square in Q(i)";
  }
  return res;
}

}  // namespace

SplitResult multiplicative_split(const RatFunc& g, SplitMode mode) {
  return mode == SplitMode::Antisymmetric ? split_antisymmetric(g) : split_symmetric(g);
}

}  // namespace lw
