#include "latwalk/factor.hpp"

#include <algorithm>
#include <cmath>

namespace lw {

namespace {

struct GI {
  mpz_class a, b;
};

const mpz_class kNormCap("100000000");

mpz_class gi_norm(const GI& z) { return z.a * z.a + z.b * z.b; }

bool gi_divides(const GI& w, const GI& z) {
  // z / w = z * conj(w) / N(w)
  mpz_class n = gi_norm(w);
  mpz_class re = z.a * w.a + z.b * w.b;
  mpz_class im = z.b * w.a - z.a * w.b;
  return mpz_divisible_p(re.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(im.get_mpz_t(), n.get_mpz_t());
}

// nearest Gaussian integer quotient z / w
GI gi_round_div(const GI& z, const GI& w) {
  mpz_class n = gi_norm(w);
  mpz_class re = z.a * w.a + z.b * w.b, im = z.b * w.a - z.a * w.b;
  auto nearest = [&](const mpz_class& v) {
    mpz_class q, num = 2 * v + n, den = 2 * n;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  };
  return {nearest(re), nearest(im)};
}

GI gi_gcd(GI a, GI b) {
  while (sgn(b.a) != 0 || sgn(b.b) != 0) {
    GI q = gi_round_div(a, b);
    GI r{a.a - (q.a * b.a - q.b * b.b), a.b - (q.a * b.b + q.b * b.a)};
    a = b;
    b = r;
  }
  return a;
}

GI gi_exact_div(const GI& z, const GI& w) {
  mpz_class n = gi_norm(w);
  mpz_class re = z.a * w.a + z.b * w.b, im = z.b * w.a - z.a * w.b;
  return {re / n, im / n};
}

std::vector<GI> gi_divisors(const GI& z) {
  std::vector<GI> out;
  long nn = gi_norm(z).get_si();
  std::vector<long> ds;
  for (long d = 1; d * d <= nn; ++d) {
    if (nn % d) continue;
    ds.push_back(d);
    if (d != nn / d) ds.push_back(nn / d);
  }
  for (long dd : ds) {
    for (long a = 0; a * a <= dd; ++a) {
      long b2 = dd - a * a;
      long b = static_cast<long>(std::sqrt(static_cast<double>(b2)));
      while (b * b > b2) --b;
      while ((b + 1) * (b + 1) <= b2) ++b;
      if (b * b != b2) continue;
      for (int sa : {1, -1})
        for (int sb : {1, -1}) {
          if ((a == 0 && sa < 0) || (b == 0 && sb < 0)) continue;
          GI w{mpz_class(sa * a), mpz_class(sb * b)};
          if (gi_divides(w, z)) out.push_back(w);
        }
    }
  }
  return out;
}

PolyQ linear(const GQ& r) { return PolyQ(std::vector<GQ>{-r, GQ(1)}); }

}  // namespace

std::vector<GQ> gaussian_rational_roots(const PolyQ& p0) {
  std::vector<GQ> roots;
  if (p0.degree() < 1) return roots;
  PolyQ p = p0;
  if (p.coeff(0).is_zero()) {
    roots.push_back(GQ(0));
    int lo = p.low();
    std::vector<GQ> v(p.coeffs().begin() + lo, p.coeffs().end());
    p = PolyQ(std::move(v));
  }
  auto add_root = [&](const GQ& r) {
    for (const auto& q : roots)
      if (q == r) return;
    roots.push_back(r);
  };
  while (p.degree() >= 1) {
    if (p.degree() == 1) {
      add_root(-p.coeff(0) / p.coeff(1));
      break;
    }
    if (p.degree() == 2) {
      GQ a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
      auto s = gq_sqrt(b * b - GQ(4) * a * c);
      if (s) {
        add_root((-b + *s) / (GQ(2) * a));
        add_root((-b - *s) / (GQ(2) * a));
      }
      break;
    }
    // primitive integral coefficients: clearing denominators of the monic form inflates both ends
    mpz_class L = 1, G = 0;
    for (const auto& c : p.coeffs()) {
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.re.get_den_mpz_t());
      mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), c.im.get_den_mpz_t());
    }
    for (const auto& c : p.coeffs()) {
      mpq_class re = c.re * L, im = c.im * L;
      mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), re.get_num_mpz_t());
      mpz_gcd(G.get_mpz_t(), G.get_mpz_t(), im.get_num_mpz_t());
    }
    auto to_gi = [&](const GQ& c) {
      mpq_class re = c.re * L / G, im = c.im * L / G;
      return GI{re.get_num(), im.get_num()};
    };
    // Gaussian content left over from a complex leading coefficient
    GI content{0, 0};
    for (const auto& c : p.coeffs()) content = gi_gcd(content, to_gi(c));
    GI a0 = gi_exact_div(to_gi(p.coeff(0)), content), an = gi_exact_div(to_gi(p.lead()), content);
    if (gi_norm(a0) > kNormCap || gi_norm(an) > kNormCap) break;
    bool found = false;
    auto us = gi_divisors(a0);
    auto vs = gi_divisors(an);
    for (const auto& v : vs) {
      if (!(sgn(v.a) > 0 && sgn(v.b) >= 0)) continue;
      GQ vq(mpq_class(v.a), mpq_class(v.b));
      for (const auto& u : us) {
        GQ r = GQ(mpq_class(u.a), mpq_class(u.b)) / vq;
        if (p.eval(r).is_zero()) {
          add_root(r);
          p = p.divmod(linear(r)).first;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) break;
  }
  return roots;
}

std::vector<GQFactor> factor_gq(const PolyQ& p, GQ* lead) {
  std::vector<GQFactor> out;
  if (p.is_zero()) throw MathError("factorization of zero polynomial");
  if (lead) *lead = p.lead();
  for (auto& [s0, mult] : square_free(p.monic())) {
    PolyQ s = s0;
    for (const auto& r : gaussian_rational_roots(s)) {
      out.push_back({linear(r), mult, true});
      s = s.divmod(linear(r)).first;
    }
    if (s.degree() >= 1) out.push_back({s.monic(), mult, s.degree() <= 2});
  }
  std::sort(out.begin(), out.end(), [](const GQFactor& a, const GQFactor& b) {
    if (a.f.degree() != b.f.degree()) return a.f.degree() < b.f.degree();
    for (int k = a.f.degree(); k >= 0; --k) {
      int c = a.f.coeff(k).cmp(b.f.coeff(k));
      if (c) return c < 0;
    }
    return a.mult < b.mult;
  });
  return out;
}

}  // namespace lw
