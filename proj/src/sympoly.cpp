#include "latwalk/sympoly.hpp"

#include <cctype>
#include <sstream>

#include "latwalk/matrix.hpp"

namespace lw {

// ---------------------------------------------------------------- SymPoly

SymPoly::SymPoly(const RatFunc& c) {
  if (!c.is_zero()) c_[{}] = c;
}

SymPoly SymPoly::sym(const std::string& name, int e) {
  if (e < 0) throw MathError("negative power of symbol " + name);
  SymMono m;
  if (e > 0) m[name] = e;
  return term(m, RatFunc(1));
}

SymPoly SymPoly::term(const SymMono& m, const RatFunc& c) {
  SymPoly p;
  p.add(m, c);
  return p;
}

void SymPoly::add(const SymMono& m, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = c_.find(m);
  if (it == c_.end()) {
    c_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) c_.erase(it);
}

std::set<std::string> SymPoly::symbols() const {
  std::set<std::string> s;
  for (const auto& [m, c] : c_)
    for (const auto& [n, e] : m) s.insert(n);
  return s;
}

int SymPoly::degree(const std::string& s) const {
  int d = 0;
  for (const auto& [m, c] : c_)
    if (auto it = m.find(s); it != m.end()) d = std::max(d, it->second);
  return d;
}

SymPoly SymPoly::coeff(const std::string& s, int k) const {
  SymPoly r;
  for (const auto& [m, c] : c_) {
    auto it = m.find(s);
    int e = it == m.end() ? 0 : it->second;
    if (e != k) continue;
    SymMono rest = m;
    rest.erase(s);
    r.add(rest, c);
  }
  return r;
}

RatFunc SymPoly::coeff(const SymMono& m) const {
  auto it = c_.find(m);
  return it == c_.end() ? RatFunc() : it->second;
}

SymPoly SymPoly::operator-() const {
  SymPoly r = *this;
  for (auto& [m, c] : r.c_) c = -c;
  return r;
}

SymPoly& SymPoly::operator+=(const SymPoly& o) {
  for (const auto& [m, c] : o.c_) add(m, c);
  return *this;
}

SymPoly& SymPoly::operator-=(const SymPoly& o) {
  for (const auto& [m, c] : o.c_) add(m, -c);
  return *this;
}

SymPoly& SymPoly::operator*=(const RatFunc& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [m, c] : c_) c *= s;
  return *this;
}

SymPoly operator*(const SymPoly& a, const SymPoly& b) {
  SymPoly r;
  for (const auto& [ma, ca] : a.c_)
    for (const auto& [mb, cb] : b.c_) {
      SymMono m = ma;
      for (const auto& [n, e] : mb) m[n] += e;
      r.add(m, ca * cb);
    }
  return r;
}

SymPoly SymPoly::pow(int n) const {
  if (n < 0) throw MathError("negative power of a symbolic polynomial");
  SymPoly r(1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

SymPoly SymPoly::derivative(const std::string& s) const {
  SymPoly r;
  for (const auto& [m, c] : c_) {
    auto it = m.find(s);
    if (it == m.end()) continue;
    SymMono d = m;
    int e = it->second;
    if (e == 1)
      d.erase(s);
    else
      d[s] = e - 1;
    r.add(d, c * RatFunc(e));
  }
  return r;
}

SymPoly SymPoly::derivative_x() const {
  SymPoly r;
  for (const auto& [m, c] : c_) r.add(m, c.derivative_x());
  return r;
}

SymPoly SymPoly::subs(const std::string& s, const SymPoly& v) const {
  std::map<int, SymPoly> powers;
  SymPoly r;
  for (const auto& [m, c] : c_) {
    auto it = m.find(s);
    if (it == m.end()) {
      r.add(m, c);
      continue;
    }
    int e = it->second;
    if (!powers.count(e)) powers[e] = v.pow(e);
    SymMono rest = m;
    rest.erase(s);
    r += term(rest, c) * powers[e];
  }
  return r;
}

SymPoly SymPoly::rename(const std::map<std::string, std::string>& names) const {
  SymPoly r;
  for (const auto& [m, c] : c_) {
    SymMono n;
    for (const auto& [s, e] : m) {
      auto it = names.find(s);
      n[it == names.end() ? s : it->second] += e;
    }
    r.add(n, c);
  }
  return r;
}

SymPoly SymPoly::map_coeffs(const std::function<RatFunc(const RatFunc&)>& f) const {
  SymPoly r;
  for (const auto& [m, c] : c_) r.add(m, f(c));
  return r;
}

SymPoly SymPoly::filter(const std::function<bool(const SymMono&)>& keep) const {
  SymPoly r;
  for (const auto& [m, c] : c_)
    if (keep(m)) r.add(m, c);
  return r;
}

std::string mono_str(const SymMono& m) {
  std::string s;
  for (const auto& [n, e] : m) {
    if (!s.empty()) s += "*";
    s += n;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string SymPoly::str() const {
  if (c_.empty()) return "0";
  std::string s;
  for (const auto& [m, c] : c_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")";
    if (!m.empty()) s += "*" + mono_str(m);
  }
  return s;
}

// ---------------------------------------------------------------- parser

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  SymPoly run() {
    SymPoly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  const std::string& s_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw MathError("parse error at " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static RatFunc scalar_of(const SymPoly& p, const char* what) {
    if (p.is_zero()) return RatFunc();
    if (p.terms().size() != 1 || !p.terms().begin()->first.empty())
      throw MathError(std::string(what) + " must be free of symbols");
    return p.terms().begin()->second;
  }

  SymPoly expr() {
    SymPoly p = term();
    for (;;) {
      if (eat('+'))
        p += term();
      else if (eat('-'))
        p -= term();
      else
        return p;
    }
  }

  SymPoly term() {
    SymPoly p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        RatFunc d = scalar_of(unary(), "divisor");
        if (d.is_zero()) fail("division by zero");
        p *= d.inv();
      } else {
        return p;
      }
    }
  }

  SymPoly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  SymPoly power() {
    SymPoly b = atom();
    if (!eat('^')) return b;
    bool neg = eat('-');
    skip();
    size_t st = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (st == i_) fail("exponent expected");
    int e = std::stoi(s_.substr(st, i_ - st));
    if (!neg) return b.pow(e);
    RatFunc c = scalar_of(b, "base of a negative power");
    if (c.is_zero()) fail("zero to a negative power");
    return SymPoly(c.inv().pow(e));
  }

  SymPoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      SymPoly p = expr();
      if (!eat(')')) fail("')' expected");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return SymPoly(RatFunc(GQ(mpq_class(s_.substr(st, i_ - st)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '~') {
      size_t st = i_++;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string id = s_.substr(st, i_ - st);
      if (id == "x") return SymPoly(RatFunc::x());
      if (id == "t") return SymPoly(RatFunc::t());
      if (id == "I" || id == "i") return SymPoly(RatFunc(GQ::I()));
      return SymPoly::sym(id);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

SymPoly SymPoly::parse(const std::string& s) { return Parser(s).run(); }

// ---------------------------------------------------------------- series space

bool SeriesSpace::is_reflected(const std::string& s) const {
  return !s.empty() && s[0] == '~' && is_series(s.substr(1));
}

std::string SeriesSpace::base(const std::string& s) const { return is_reflected(s) ? s.substr(1) : s; }

std::string reflected_symbol(const std::string& g) { return "~" + g; }
std::string coeff_symbol(const std::string& g, int k) { return g + "[" + std::to_string(k) + "]"; }
std::string point_symbol(const std::string& g, int sign, int n) {
  return g + (sign > 0 ? "@i#" : "@-i#") + std::to_string(n);
}

Side side_of(const SymMono& m, const SeriesSpace& sp) {
  bool x = false, xb = false;
  for (const auto& [n, e] : m) {
    if (sp.is_series(n)) x = true;
    if (sp.is_reflected(n)) xb = true;
  }
  if (x && xb) return Side::Mixed;
  if (x) return Side::X;
  if (xb) return Side::Xbar;
  return Side::None;
}

SymPoly reflect(const SymPoly& p, const SeriesSpace& sp) {
  SymPoly r;
  for (const auto& [m, c] : p.terms()) {
    SymMono n;
    for (const auto& [s, e] : m) {
      if (sp.is_series(s))
        n[reflected_symbol(s)] += e;
      else if (sp.is_reflected(s))
        n[s.substr(1)] += e;
      else
        n[s] += e;
    }
    r += SymPoly::term(n, c.invert_x());
  }
  return r;
}

// ---------------------------------------------------------------- coefficient splitting

namespace {

RatFunc t_poly(const PolyQ& p) { return RatFunc(poly_in_t(p)); }

mpz_class binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

GQ gpow(const GQ& b, long e) { return b.pow(e); }

// a / b as power series in u up to u^(n-1), b[0] != 0
std::vector<RatFunc> series_quotient(const std::vector<RatFunc>& a, const std::vector<GQ>& b, int n) {
  std::vector<RatFunc> q(n);
  GQ b0inv = b.at(0).inv();
  for (int m = 0; m < n; ++m) {
    RatFunc s = m < static_cast<int>(a.size()) ? a[m] : RatFunc();
    for (int j = 1; j <= m && j < static_cast<int>(b.size()); ++j) s -= RatFunc(b[j]) * q[m - j];
    q[m] = s * RatFunc(b0inv);
  }
  return q;
}

}  // namespace

RatFunc CoeffSplit::recombine() const {
  RatFunc r;
  for (const auto& [e, c] : laurent) r += c * RatFunc::x(1).pow(e);
  for (const auto& [k, c] : poles) {
    GQ rho = k.first > 0 ? GQ::I() : -GQ::I();
    RatFunc d = RatFunc(1) - RatFunc(rho) * RatFunc::x();
    r += c / d.pow(k.second);
  }
  return r;
}

CoeffSplit split_coefficient(const RatFunc& r) {
  CoeffSplit out;
  if (r.is_zero()) return out;
  const BivarPoly& num = r.num();
  const BivarPoly& den = r.den();
  int a = den.min_x(), b = den.min_t();
  BivarPoly d0;
  for (const auto& [k, c] : den.terms()) {
    if (k.second != b) throw MathError("coefficient has a denominator depending on t: " + r.str());
    d0.add_term(k.first - a, 0, c);
  }
  PolyQ D = as_poly_x(d0);
  // multiplicities of the roots i and -i
  int kp = 0, km = 0;
  {
    PolyQ rest = D;
    const PolyQ xi(std::vector<GQ>{-GQ::I(), GQ(1)}), xmi(std::vector<GQ>{GQ::I(), GQ(1)});
    while (rest.degree() > 0) {
      auto [q1, r1] = rest.divmod(xi);
      if (r1.is_zero()) {
        rest = q1;
        ++kp;
        continue;
      }
      auto [q2, r2] = rest.divmod(xmi);
      if (r2.is_zero()) {
        rest = q2;
        ++km;
        continue;
      }
      throw MathError("coefficient has poles away from 0 and +-i: " + r.str());
    }
  }
  RatFunc tb = RatFunc::t().pow(b);
  std::vector<RatFunc> nx(std::max(num.max_x(), 0) + 1);
  for (int e = 0; e <= num.max_x(); ++e) {
    PolyQ c = num.x_coeff(e);
    if (!c.is_zero()) nx[e] = t_poly(c) / tb;
  }
  // principal part at x = 0
  if (a > 0) {
    std::vector<GQ> inv(a);
    GQ d0inv = D.coeff(0).inv();
    for (int m = 0; m < a; ++m) {
      GQ s = m == 0 ? GQ(1) : GQ();
      for (int j = 1; j <= m; ++j) s -= D.coeff(j) * inv[m - j];
      inv[m] = s * d0inv;
    }
    std::vector<RatFunc> g(a);
    for (int m = 0; m < a; ++m) {
      for (int j = 0; j <= m && j < static_cast<int>(nx.size()); ++j)
        if (!nx[j].is_zero()) g[m] += nx[j] * RatFunc(inv[m - j]);
      if (!g[m].is_zero()) out.laurent[m - a] += g[m];
    }
    // (N - D g) / x^a
    std::vector<RatFunc> diff = nx;
    diff.resize(std::max<size_t>(nx.size(), a + D.degree() + 1));
    for (int m = 0; m < a; ++m)
      for (int j = 0; j <= D.degree(); ++j)
        if (!g[m].is_zero()) diff[m + j] -= g[m] * RatFunc(D.coeff(j));
    for (int m = 0; m < a; ++m)
      if (!diff[m].is_zero()) throw MathError("principal part at 0 did not cancel");
    nx.assign(diff.begin() + a, diff.end());
  }
  PolyR Np(nx), Dp;
  {
    std::vector<RatFunc> dc;
    for (const auto& c : D.coeffs()) dc.push_back(RatFunc(c));
    Dp = PolyR(dc);
  }
  auto [Q, Rm] = Np.divmod(Dp);
  for (int e = 0; e <= Q.degree(); ++e)
    if (!Q.coeff(e).is_zero()) out.laurent[e] += Q.coeff(e);
  for (auto it = out.laurent.begin(); it != out.laurent.end();)
    it = it->second.is_zero() ? out.laurent.erase(it) : std::next(it);
  if (Rm.is_zero()) return out;
  for (int sgn : {+1, -1}) {
    int k = sgn > 0 ? kp : km;
    if (k == 0) continue;
    GQ x0 = sgn > 0 ? GQ::I() : -GQ::I();
    PolyQ lin(std::vector<GQ>{-x0, GQ(1)}), E = D;
    for (int j = 0; j < k; ++j) E = E.divmod(lin).first;
    // Taylor coefficients at x0
    std::vector<RatFunc> ru(Rm.degree() + 1);
    for (int m = 0; m <= Rm.degree(); ++m)
      for (int e = m; e <= Rm.degree(); ++e)
        if (!Rm.coeff(e).is_zero()) ru[m] += Rm.coeff(e) * RatFunc(GQ(mpq_class(binom(e, m))) * gpow(x0, e - m));
    std::vector<GQ> eu(E.degree() + 1);
    for (int m = 0; m <= E.degree(); ++m)
      for (int e = m; e <= E.degree(); ++e) eu[m] += E.coeff(e) * GQ(mpq_class(binom(e, m))) * gpow(x0, e - m);
    std::vector<RatFunc> h = series_quotient(ru, eu, k);
    GQ rho = x0.inv();
    for (int j = 1; j <= k; ++j) {
      RatFunc c = h[k - j] * RatFunc(gpow(-rho, j));
      if (!c.is_zero()) out.poles[{rho == GQ::I() ? 1 : -1, j}] = c;
    }
  }
  return out;
}

// ---------------------------------------------------------------- part extraction

namespace {

struct TermPieces {
  SymMono scalars;
  std::vector<std::string> factors;  // base names with repetition
  Side side = Side::None;
  int val = 0;
};

TermPieces pieces(const SymMono& m, const SeriesSpace& sp) {
  TermPieces p;
  p.side = side_of(m, sp);
  for (const auto& [n, e] : m) {
    if (sp.is_series(n) || sp.is_reflected(n)) {
      std::string b = sp.base(n);
      for (int k = 0; k < e; ++k) {
        p.factors.push_back(b);
        p.val += sp.valuation.at(b);
      }
    } else {
      p.scalars[n] = e;
    }
  }
  return p;
}

// [x^l] of the product of the factors
SymPoly coeff_of_product(const std::vector<std::string>& f, int l, const SeriesSpace& sp, size_t from = 0) {
  if (from == f.size()) return l == 0 ? SymPoly(1) : SymPoly();
  int rest = 0;
  for (size_t k = from + 1; k < f.size(); ++k) rest += sp.valuation.at(f[k]);
  SymPoly r;
  for (int a = sp.valuation.at(f[from]); a <= l - rest; ++a) {
    SymPoly tail = coeff_of_product(f, l - a, sp, from + 1);
    if (!tail.is_zero()) r += SymPoly::sym(coeff_symbol(f[from], a)) * tail;
  }
  return r;
}

// E_n of the product at rho (Leibniz rule over the factors)
SymPoly point_of_product(const std::vector<std::string>& f, int sign, int n, size_t from = 0) {
  if (from == f.size()) return n == 0 ? SymPoly(1) : SymPoly();
  SymPoly r;
  for (int a = 0; a <= n; ++a) {
    SymPoly tail = point_of_product(f, sign, n - a, from + 1);
    if (!tail.is_zero()) r += SymPoly::sym(point_symbol(f[from], sign, a)) * tail;
  }
  return r;
}

// D_n = sum_l m_l binom(l + n - 1, n) rho^l
SymPoly dpoint(const std::vector<std::string>& f, int sign, int n) {
  if (n == 0) return point_of_product(f, sign, 0);
  SymPoly r;
  for (int q = 1; q <= n; ++q)
    r += point_of_product(f, sign, q) * RatFunc(GQ(mpq_class(binom(n - 1, n - q))));
  return r;
}

RatFunc xpow(int e) { return e >= 0 ? RatFunc::x(e) : RatFunc(1) / RatFunc::x(-e); }

RatFunc geometric_pow(int sign, int j) {
  GQ rho = sign > 0 ? GQ::I() : -GQ::I();
  return RatFunc(1) / (RatFunc(1) - RatFunc(rho) * RatFunc::x()).pow(j);
}

struct Parts {
  SymPoly neg, zero, pos;
};

Parts parts_of_term(const SymMono& m, const RatFunc& r, const SeriesSpace& sp) {
  TermPieces tp = pieces(m, sp);
  if (tp.side == Side::Mixed) throw MathError("part extraction of a mixed monomial " + mono_str(m));
  CoeffSplit cs = split_coefficient(r);
  SymPoly S = SymPoly::term(tp.scalars, RatFunc(1));
  auto mcoef = [&](int l) { return coeff_of_product(tp.factors, l, sp); };
  Parts out;
  SymPoly total = SymPoly::term(m, r);
  if (tp.side != Side::Xbar) {
    for (const auto& [e, c] : cs.laurent) {
      if (e <= 0) out.zero += mcoef(-e) * c;
      for (int l = tp.val; e + l < 0; ++l) out.neg += mcoef(l) * (c * xpow(e + l));
    }
    if (!cs.poles.empty()) {
      SymPoly m0 = mcoef(0);
      for (const auto& [k, c] : cs.poles) out.zero += m0 * c;
    }
    out.neg = out.neg * S;
    out.zero = out.zero * S;
    out.pos = total - out.neg - out.zero;
  } else {
    for (const auto& [e, c] : cs.laurent) {
      if (e >= 0) out.zero += mcoef(e) * c;
      for (int l = tp.val; l < e; ++l) out.pos += mcoef(l) * (c * xpow(e - l));
    }
    for (const auto& [k, c] : cs.poles) {
      int j = k.second;
      for (int q = 0; q < j; ++q) {
        SymPoly d = dpoint(tp.factors, k.first, j - 1 - q) * c;
        out.zero += d;
        out.pos += d * (geometric_pow(k.first, q + 1) - RatFunc(1));
      }
    }
    out.pos = out.pos * S;
    out.zero = out.zero * S;
    out.neg = total - out.pos - out.zero;
  }
  return out;
}

}  // namespace

SymPoly part(const SymPoly& p, Part which, const SeriesSpace& sp) {
  SymPoly r;
  for (const auto& [m, c] : p.terms()) {
    Parts q = parts_of_term(m, c, sp);
    r += which == Part::Neg ? q.neg : which == Part::Zero ? q.zero : q.pos;
  }
  return r;
}

SymPoly reflected_sum(const SymPoly& E, const SeriesSpace& sp) {
  SymPoly mixed, r;
  for (const auto& [m, c] : E.terms()) {
    if (side_of(m, sp) == Side::Mixed) {
      const BivarPoly& d = c.den();
      if (!d.is_monomial()) throw MathError("mixed monomial " + mono_str(m) + " has a non-Laurent coefficient");
      mixed += SymPoly::term(m, c);
      continue;
    }
    Parts q = parts_of_term(m, c, sp);
    r += q.neg + reflect(q.neg, sp) + q.zero;
  }
  if (reflect(mixed, sp) != mixed) throw MathError("mixed part is not invariant under x -> 1/x");
  return r + mixed;
}

// ---------------------------------------------------------------- evaluation

TSeries SymBinding::value(const std::string& name) const {
  if (auto it = scalars.find(name); it != scalars.end()) return it->second;
  if (auto it = series.find(name); it != series.end()) return it->second;
  if (!name.empty() && name[0] == '~') {
    auto it = series.find(name.substr(1));
    if (it == series.end()) throw MathError("unbound series " + name.substr(1));
    return it->second.invert_x();
  }
  if (auto p = name.find('['); p != std::string::npos && name.back() == ']') {
    auto it = series.find(name.substr(0, p));
    if (it == series.end()) throw MathError("unbound series " + name.substr(0, p));
    int k = std::stoi(name.substr(p + 1, name.size() - p - 2));
    std::map<int, LaurentPoly> m;
    for (const auto& [u, c] : it->second.terms())
      if (GQ v = c.coeff(k); !v.is_zero()) m[u] = LaurentPoly(v);
    return TSeries::from_units(it->second.denom(), it->second.trunc_units(), std::move(m));
  }
  if (auto p = name.find('@'); p != std::string::npos) {
    auto it = series.find(name.substr(0, p));
    auto h = name.find('#', p);
    if (it == series.end() || h == std::string::npos) throw MathError("unbound symbol " + name);
    std::string pt = name.substr(p + 1, h - p - 1);
    if (pt != "i" && pt != "-i") throw MathError("unsupported point in " + name);
    GQ rho = pt == "i" ? GQ::I() : -GQ::I();
    int n = std::stoi(name.substr(h + 1));
    std::map<int, LaurentPoly> m;
    for (const auto& [u, c] : it->second.terms()) {
      GQ v;
      for (const auto& [e, a] : c.terms()) {
        if (e < 0) throw MathError("point value of a series with negative powers of x");
        v += a * GQ(mpq_class(binom(e, n))) * gpow(rho, e);
      }
      if (!v.is_zero()) m[u] = LaurentPoly(v);
    }
    return TSeries::from_units(it->second.denom(), it->second.trunc_units(), std::move(m));
  }
  throw MathError("unbound symbol " + name);
}

bool Evaluation::vanishes(int N) const { return value.trunc() >= N && value.is_zero_mod(N); }

namespace {

// the factor of a denominator that is free of t, without powers of x
PolyQ t_free_factor(const BivarPoly& den) {
  PolyQ g;
  bool first = true;
  for (int te = den.min_t(); te <= den.max_t(); ++te) {
    LaurentPoly c = den.t_coeff(te);
    if (c.is_zero()) continue;
    std::vector<GQ> v(c.max_exp() - c.min_exp() + 1);
    for (const auto& [e, a] : c.terms()) v[e - c.min_exp()] = a;
    PolyQ p(v);
    g = first ? p : poly_gcd(g, p);
    first = false;
  }
  if (g.degree() <= 0) return PolyQ(GQ(1));
  while (g.coeff(0).is_zero()) g = g.divmod(PolyQ::var()).first;
  return g.monic();
}

}  // namespace

Evaluation evaluate(const SymPoly& P, const SymBinding& b, int N) {
  Evaluation ev;
  ev.clear = PolyQ(GQ(1));
  int pole = 0;
  for (const auto& [m, c] : P.terms()) {
    PolyQ f = t_free_factor(c.den());
    if (f.degree() > 0) {
      PolyQ g = poly_gcd(ev.clear, f);
      ev.clear = ev.clear * f.divmod(g.monic()).first;
    }
    pole = std::max(pole, c.den().min_t() - c.num().min_t());
  }
  RatFunc L(poly_in_x(ev.clear));
  int W = N + 2 * std::max(pole, 0) + 2;
  std::map<std::string, std::vector<TSeries>> powers;
  auto power = [&](const std::string& s, int e) -> const TSeries& {
    auto& v = powers[s];
    if (v.empty()) v.push_back(b.value(s));
    while (static_cast<int>(v.size()) < e) v.push_back(v.back() * v.front());
    return v[e - 1];
  };
  TSeries acc = TSeries::exact(LaurentPoly());
  for (const auto& [m, c] : P.terms()) {
    TSeries t = rf_to_series(c * L, W);
    for (const auto& [s, e] : m) t = t * power(s, e);
    acc += t;
  }
  ev.value = acc;
  return ev;
}

}  // namespace lw
