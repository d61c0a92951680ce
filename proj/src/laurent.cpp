#include "latwalk/laurent.hpp"

#include <vector>

namespace lw {

LaurentPoly LaurentPoly::monomial(const GQ& c, int e) {
  LaurentPoly p;
  if (!c.is_zero()) p.c_[e] = c;
  return p;
}

int LaurentPoly::min_exp() const {
  if (c_.empty()) throw MathError("min_exp of zero polynomial");
  return c_.begin()->first;
}

int LaurentPoly::max_exp() const {
  if (c_.empty()) throw MathError("max_exp of zero polynomial");
  return c_.rbegin()->first;
}

GQ LaurentPoly::coeff(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? GQ(0) : it->second;
}

void LaurentPoly::add_term(int e, const GQ& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = c_.try_emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) c_.erase(it);
  }
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& [e, c] : r.c_) c = -c;
  return r;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const GQ& s) {
  if (s.is_zero()) {
    c_.clear();
    return *this;
  }
  for (auto& [e, c] : c_) c *= s;
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, ca * cb);
  return r;
}

LaurentPoly LaurentPoly::shift(int k) const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), e + k, c);
  return r;
}

LaurentPoly LaurentPoly::invert_x() const {
  LaurentPoly r;
  for (const auto& [e, c] : c_) r.c_.emplace(-e, c);
  return r;
}

LaurentPoly LaurentPoly::derivative() const {
  LaurentPoly r;
  for (const auto& [e, c] : c_)
    if (e != 0) r.c_.emplace(e - 1, c * GQ(e));
  return r;
}

LaurentPoly LaurentPoly::pow(int n) const {
  if (n < 0) {
    if (!is_monomial()) throw MathError("negative power of non-monomial Laurent polynomial");
    auto [e, c] = *c_.begin();
    return monomial(c.pow(n), e * n);
  }
  LaurentPoly r(1), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

GQ LaurentPoly::eval(const GQ& x) const {
  GQ s(0);
  if (c_.empty()) return s;
  if (x.is_zero()) {
    if (min_exp() < 0) throw MathError("evaluation of negative power at 0");
    return coeff(0);
  }
  for (const auto& [e, c] : c_) s += c * x.pow(e);
  return s;
}

LaurentPoly LaurentPoly::window(int lo, int hi) const {
  LaurentPoly r;
  for (auto it = c_.lower_bound(lo); it != c_.end() && it->first <= hi; ++it) r.c_.emplace_hint(r.c_.end(), *it);
  return r;
}

std::optional<LaurentPoly> LaurentPoly::exact_div(const LaurentPoly& d) const {
  if (d.is_zero()) throw MathError("division by zero polynomial");
  if (is_zero()) return LaurentPoly();
  if (d.is_monomial()) {
    auto [e, c] = *d.c_.begin();
    LaurentPoly r = shift(-e);
    return r *= c.inv();
  }
  // polynomial long division from the top
  int dlo = d.min_exp(), dhi = d.max_exp();
  GQ lead_inv = d.coeff(dhi).inv();
  LaurentPoly rem = *this, q;
  while (!rem.is_zero()) {
    int rhi = rem.max_exp();
    if (rhi - dhi < rem.min_exp() - dlo) return std::nullopt;
    GQ c = rem.coeff(rhi) * lead_inv;
    int e = rhi - dhi;
    q.add_term(e, c);
    for (const auto& [de, dc] : d.c_) rem.add_term(de + e, -(c * dc));
  }
  return q;
}

std::string LaurentPoly::str(const char* var) const {
  if (c_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : c_) {
    std::string cs = c.str();
    if (!first) s += " + ";
    first = false;
    s += "(" + cs + ")";
    if (e != 0) s += std::string("*") + var + "^" + std::to_string(e);
  }
  return s;
}

}  // namespace lw
