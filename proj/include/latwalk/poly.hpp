#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latwalk/gq.hpp"

namespace lw {

// Dense univariate polynomial over a field F (low degree first).
template <class F>
class Poly {
 public:
  Poly() = default;
  Poly(const F& c) {
    if (!is_zero_f(c)) c_.push_back(c);
  }
  explicit Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }
  static Poly monomial(const F& c, int e) {
    if (is_zero_f(c)) return Poly();
    std::vector<F> v(e + 1, zero_f());
    v[e] = c;
    return Poly(std::move(v));
  }
  static Poly var() { return monomial(one_f(), 1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const F& lead() const { return c_.back(); }
  F coeff(int e) const { return e >= 0 && e < static_cast<int>(c_.size()) ? c_[e] : zero_f(); }
  const std::vector<F>& coeffs() const { return c_; }
  // smallest exponent with a nonzero coefficient (0 for the zero polynomial)
  int low() const {
    for (size_t k = 0; k < c_.size(); ++k)
      if (!is_zero_f(c_[k])) return static_cast<int>(k);
    return 0;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = zero_f() - c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_f());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] + o.c_[k];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), zero_f());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] = c_[k] - o.c_[k];
    trim();
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, zero_f());
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_f(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        if (!is_zero_f(b.c_[j])) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend Poly operator*(Poly a, const F& s) {
    if (is_zero_f(s)) return Poly();
    for (auto& c : a.c_) c = c * s;
    a.trim();
    return a;
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Euclidean division over the field
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw MathError("polynomial division by zero");
    Poly q, r = *this;
    if (r.degree() < d.degree()) return {q, r};
    std::vector<F> qv(r.degree() - d.degree() + 1, zero_f());
    F li = one_f() / d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int e = r.degree() - d.degree();
      F c = r.lead() * li;
      qv[e] = c;
      for (int k = 0; k <= d.degree(); ++k) r.c_[k + e] = r.c_[k + e] - c * d.c_[k];
      r.c_.pop_back();
      r.trim();
    }
    return {Poly(std::move(qv)), r};
  }
  Poly monic() const {
    if (is_zero()) return *this;
    return *this * (one_f() / lead());
  }
  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<F> v(c_.size() - 1, zero_f());
    for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * F(static_cast<long>(k));
    return Poly(std::move(v));
  }
  F eval(const F& x) const {
    F s = zero_f();
    for (size_t k = c_.size(); k-- > 0;) s = s * x + c_[k];
    return s;
  }
  Poly pow(int n) const {
    Poly r(one_f()), b = *this;
    while (n > 0) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }
  // x^deg * p(1/x)
  Poly reversed() const {
    std::vector<F> v(c_.rbegin(), c_.rend());
    return Poly(std::move(v));
  }

 private:
  std::vector<F> c_;
  static F zero_f() { return F(0L); }
  static F one_f() { return F(1L); }
  static bool is_zero_f(const F& c) { return c.is_zero(); }
  void trim() {
    while (!c_.empty() && is_zero_f(c_.back())) c_.pop_back();
  }
};

template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Yun square-free decomposition: returns (factor, multiplicity) with monic factors.
template <class F>
std::vector<std::pair<Poly<F>, int>> square_free(const Poly<F>& f) {
  std::vector<std::pair<Poly<F>, int>> out;
  if (f.degree() <= 0) return out;
  Poly<F> fp = f.derivative();
  Poly<F> a = poly_gcd(f, fp);
  Poly<F> b = f.divmod(a).first;
  Poly<F> c = fp.divmod(a).first;
  Poly<F> d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    a = poly_gcd(b, d);
    if (a.degree() > 0) out.push_back({a.monic(), i});
    b = b.divmod(a).first;
    c = d.divmod(a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

using PolyQ = Poly<GQ>;

}  // namespace lw
