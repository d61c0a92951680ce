#include "latwalk/biseries.hpp"

#include <algorithm>

namespace lw {

BiSeries BiSeries::monomial(const GQ& c, int a, int b, int n, int N) {
  BiSeries r(N);
  r.add_term(n, b, LaurentPoly::monomial(c, a));
  return r;
}

void BiSeries::add_term(int n, int yexp, const LaurentPoly& c) {
  if (n >= trunc_ || c.is_zero()) return;
  auto& ym = t_[n];
  auto [it, fresh] = ym.try_emplace(yexp, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) ym.erase(it);
  }
  if (ym.empty()) t_.erase(n);
}

LaurentPoly BiSeries::coeff(int n, int yexp) const {
  auto it = t_.find(n);
  if (it == t_.end()) return LaurentPoly();
  auto jt = it->second.find(yexp);
  return jt == it->second.end() ? LaurentPoly() : jt->second;
}

std::optional<int> BiSeries::y_min() const {
  std::optional<int> r;
  for (const auto& [n, ym] : t_) r = r ? std::min(*r, ym.begin()->first) : ym.begin()->first;
  return r;
}

std::optional<int> BiSeries::y_max() const {
  std::optional<int> r;
  for (const auto& [n, ym] : t_) r = r ? std::max(*r, ym.rbegin()->first) : ym.rbegin()->first;
  return r;
}

BiSeries BiSeries::operator-() const {
  BiSeries r = *this;
  for (auto& [n, ym] : r.t_)
    for (auto& [j, c] : ym) c = -c;
  return r;
}

BiSeries& BiSeries::operator+=(const BiSeries& o) {
  trunc_ = std::min(trunc_, o.trunc_);
  t_.erase(t_.lower_bound(trunc_), t_.end());
  for (const auto& [n, ym] : o.t_)
    for (const auto& [j, c] : ym) add_term(n, j, c);
  return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o) { return *this += -o; }

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  BiSeries r(std::min(a.trunc_, b.trunc_));
  for (const auto& [na, ya] : a.t_)
    for (const auto& [nb, yb] : b.t_) {
      if (na + nb >= r.trunc_) break;
      for (const auto& [ja, ca] : ya)
        for (const auto& [jb, cb] : yb) r.add_term(na + nb, ja + jb, ca * cb);
    }
  return r;
}

BiSeries BiSeries::truncated(int N) const {
  BiSeries r = *this;
  r.trunc_ = std::min(trunc_, N);
  r.t_.erase(r.t_.lower_bound(r.trunc_), r.t_.end());
  return r;
}

BiSeries BiSeries::swap_xy() const {
  BiSeries r(trunc_);
  for (const auto& [n, ym] : t_)
    for (const auto& [j, c] : ym)
      for (const auto& [i, a] : c.terms()) r.add_term(n, i, LaurentPoly::monomial(a, j));
  return r;
}

static int integral_trunc(const TSeries& s) {
  if (s.denom() != 1) throw MathError("bivariate series need integer t exponents");
  return s.is_exact() ? TSeries::kInf : s.trunc_units();
}

BiSeries BiSeries::from_x(const TSeries& s0) {
  TSeries s = s0.simplified();
  BiSeries r(integral_trunc(s));
  for (const auto& [k, c] : s.terms()) r.add_term(k, 0, c);
  return r;
}

BiSeries BiSeries::from_y(const TSeries& s) { return from_x(s).swap_xy(); }

bool BiSeries::is_zero_mod(int N) const {
  if (trunc_ < N) return false;
  return t_.empty() || t_.begin()->first >= N;
}

std::string BiSeries::str() const {
  std::string s;
  for (const auto& [n, ym] : t_)
    for (const auto& [j, c] : ym)
      for (const auto& [i, a] : c.terms()) {
        if (!s.empty()) s += " + ";
        s += a.str() + " * x^" + std::to_string(i) + " * y^" + std::to_string(j) + " * t^(" +
             std::to_string(n) + "/1)";
      }
  if (trunc_ < TSeries::kInf / 2) {
    if (!s.empty()) s += " + ";
    s += "O(t^(" + std::to_string(trunc_) + "/1))";
  }
  return s.empty() ? "0" : s;
}

TSeries subst_kernel_root(const BiSeries& F, const TSeries& root, SubstMode mode) {
  auto jmin_o = F.y_min();
  auto jmax_o = F.y_max();
  mpq_class Ftr(F.trunc());
  if (!jmin_o) {
    TSeries z(F.trunc());
    return z.truncated(std::min(Ftr, root.trunc()));
  }
  int sgn = mode == SubstMode::Y ? 1 : -1;
  // exponents of root that occur
  int emin = std::min(sgn * *jmin_o, sgn * *jmax_o);
  auto v = root.valuation();
  if (!v) {
    if (emin < 0) throw MathError("substitution not well defined: inverse of a zero root");
    v = root.trunc();
  }
  if (*v < 0) throw MathError("substitution not well defined: root has negative valuation");
  // unknown terms of F (t^n, n >= N) can lower the order by at most |emin| * v
  mpq_class cap = Ftr + mpq_class(std::min(emin, 0)) * *v;
  if (cap <= 0) throw MathError("substitution not well defined: unbounded valuation drop");
  TSeries rinv;
  if (emin < 0) rinv = root.inv();
  std::map<int, TSeries> pw;
  auto rpow = [&](int e) -> const TSeries& {
    auto it = pw.find(e);
    if (it != pw.end()) return it->second;
    return pw.emplace(e, e >= 0 ? root.pow(e) : rinv.pow(-e)).first->second;
  };
  TSeries acc = TSeries::exact(LaurentPoly());
  for (const auto& [n, ym] : F.terms())
    for (const auto& [j, c] : ym) acc += (rpow(sgn * j) * c).mul_t(mpq_class(n));
  return acc.truncated(cap);
}

}  // namespace lw
