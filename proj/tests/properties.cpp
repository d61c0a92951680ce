#include "properties.hpp"

#include <random>
#include <sstream>

#include "latwalk/ratfunc.hpp"
#include "latwalk/tseries.hpp"

namespace lw::props {

namespace {

using Rng = std::mt19937;

int uniform(Rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }

GQ random_gq(Rng& r, bool complex) {
  mpq_class re(uniform(r, -9, 9), uniform(r, 1, 4));
  re.canonicalize();
  if (!complex || uniform(r, 0, 2) == 0) return GQ(re);
  mpq_class im(uniform(r, -5, 5), uniform(r, 1, 3));
  im.canonicalize();
  return GQ(re, im);
}

// random series with x exponents in [xlo, xhi], t exponents k/d from vmin units up to the truncation
TSeries random_series(Rng& r, int d, int trunc_units, int xlo, int xhi, int vmin, int terms) {
  std::map<int, LaurentPoly> m;
  for (int i = 0; i < terms; ++i) {
    int k = uniform(r, vmin, trunc_units - 1);
    m[k].add_term(uniform(r, xlo, xhi), random_gq(r, true));
  }
  return TSeries::from_units(d, trunc_units, m);
}

// random series with a nonzero x-free constant term, so it is invertible
TSeries random_unit(Rng& r, int d, int trunc_units) {
  TSeries s = random_series(r, d, trunc_units, -2, 2, 1, 5);
  GQ c;
  while (c.is_zero()) c = random_gq(r, true);
  return s + TSeries::constant(LaurentPoly(c), 1).with_denom(d).truncated(mpq_class(trunc_units, d));
}

void record(Outcome& o, bool ok, const std::string& what) {
  ++o.cases;
  if (ok) return;
  if (o.failures++ == 0) o.first = what;
}

// keep only the x exponents in [lo, hi] of every coefficient
TSeries window(const TSeries& f, int lo, int hi) {
  std::map<int, LaurentPoly> m;
  for (const auto& [k, c] : f.terms()) m[k] = c.window(lo, hi);
  return TSeries::from_units(f.denom(), f.trunc_units(), m);
}

std::string random_poly_text(Rng& r, int deg, bool with_t) {
  std::ostringstream os;
  os << "(" << uniform(r, 1, 5);
  for (int e = 1; e <= deg; ++e) {
    int c = uniform(r, -4, 4);
    if (e == deg && c == 0) c = 1;
    os << " + (" << c;
    if (with_t && uniform(r, 0, 2) == 0) os << " + " << uniform(r, -3, 3) << "*t";
    os << ")*x^" << e;
  }
  os << ")";
  return os.str();
}

}  // namespace

Outcome ring_laws(int cases, std::uint32_t seed) {
  Rng r(seed);
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    int d = uniform(r, 1, 3), T = d * uniform(r, 3, 7);
    TSeries a = random_series(r, d, T, -3, 3, 0, 6);
    TSeries b = random_series(r, uniform(r, 1, 2), 2 * uniform(r, 3, 7), -3, 3, 0, 6);
    TSeries c = random_series(r, d, T, -3, 3, 0, 6);
    bool ok = ((a * b) * c).equals_mod(a * (b * c));
    ok = ok && (a * b).equals_mod(b * a);
    ok = ok && (a + b).equals_mod(b + a);
    ok = ok && (a * (b + c)).equals_mod(a * b + a * c);
    ok = ok && ((a + b) + c).equals_mod(a + (b + c));
    ok = ok && (a - a).is_zero_mod(a.trunc());
    TSeries u = random_unit(r, d, T);
    ok = ok && (u * u.inv()).equals_mod(TSeries::exact(LaurentPoly(1)).truncated(u.trunc()));
    TSeries sq = u * u;
    TSeries s = sq.sqrt();
    ok = ok && (s * s).equals_mod(sq);
    std::ostringstream os;
    os << "seed " << seed << " case " << i << ": a = " << a.str() << ", b = " << b.str() << ", c = " << c.str();
    record(o, ok, ok ? "" : os.str());
  }
  return o;
}

Outcome partition_identity(int cases, std::uint32_t seed) {
  Rng r(seed);
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    TSeries f = random_series(r, uniform(r, 1, 3), uniform(r, 3, 12), -6, 6, 0, uniform(r, 0, 12));
    TSeries pos = extract_part(f, Region::Pos), zero = extract_part(f, Region::Zero),
            neg = extract_part(f, Region::Neg);
    bool ok = (pos + zero + neg).equals_mod(f);
    ok = ok && pos.equals_mod(window(f, 1, 1 << 20)) && zero.equals_mod(window(f, 0, 0)) &&
         neg.equals_mod(window(f, -(1 << 20), -1));
    ok = ok && extract_part(f, Region::NonNeg).equals_mod(pos + zero);
    int m = uniform(r, 0, 4);
    ok = ok && extract_part(f, Region::LeNegM, m).equals_mod(window(f, -(1 << 20), -m));
    // extraction is additive
    TSeries g = random_series(r, f.denom(), f.trunc_units(), -6, 6, 0, 6);
    ok = ok && extract_part(f + g, Region::Pos).equals_mod(pos + extract_part(g, Region::Pos));
    record(o, ok, ok ? "" : "seed " + std::to_string(seed) + " case " + std::to_string(i) + ": f = " + f.str());
  }
  return o;
}

Outcome pole_part_identities(int cases, std::uint32_t seed) {
  Rng r(seed);
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    const int N = uniform(r, 3, 8);
    TSeries F = random_series(r, 1, N, -4, 0, 0, uniform(r, 1, 8));
    // rho constant in x with positive valuation
    TSeries rho = random_series(r, 1, N, 0, 0, 1, uniform(r, 1, 3));
    PoleKind kind = static_cast<PoleKind>(i % 3);

    // direct expansion F(1/x) * sum_j w_j rho^j x^j, w_j = 1 (simple) or j + 1 (double)
    TSeries direct = TSeries::exact(LaurentPoly()).truncated(N);
    TSeries rj = TSeries::exact(LaurentPoly(1)).truncated(N);
    for (int j = 0; j < N; ++j) {
      GQ w(kind == PoleKind::Double ? j + 1 : 1);
      direct = direct + F * rj * LaurentPoly::monomial(w, j);
      rj = rj * rho;
    }
    TSeries want = kind == PoleKind::ValueAt ? window(direct, 0, 0) : window(direct, 0, 1 << 20);
    TSeries got = pos_part_at_pole(F, rho, kind);
    bool ok = got.trunc() >= N && got.truncated(N).equals_mod(want.truncated(N));
    std::ostringstream os;
    os << "seed " << seed << " case " << i << " kind " << static_cast<int>(kind) << ": F = " << F.str()
       << ", rho = " << rho.str();
    record(o, ok, ok ? "" : os.str());
  }
  return o;
}

Outcome multiplicative_split_recomposition(int cases, std::uint32_t seed) {
  Rng r(seed);
  Outcome o;
  for (int i = 0; i < cases; ++i) {
    bool ok = false;
    std::string what;
    if (i % 2 == 0) {
      // g = f(x)/f(1/x) with f = x^e p/q
      RatFunc f = RatFunc::x(uniform(r, -2, 2)) * RatFunc::parse(random_poly_text(r, uniform(r, 1, 3), true));
      if (uniform(r, 0, 1)) f = f / RatFunc::parse(random_poly_text(r, uniform(r, 1, 2), false));
      RatFunc g = f / f.invert_x();
      what = "antisymmetric g = " + g.str();
      SplitResult s = multiplicative_split(g, SplitMode::Antisymmetric);
      ok = s.ok && s.f / s.f.invert_x() == g;
    } else {
      // g = c^2 m(x) m(1/x), m a ratio of products of linear factors over Q(i)
      auto linear_product = [&](int n) {
        RatFunc p(1);
        for (int k = 0; k < n; ++k) {
          // bounded height keeps the root search below its coefficient norm cap
          GQ root;
          while (root.is_zero())
          {
            mpq_class re(uniform(r, -3, 3), uniform(r, 1, 2)), im(uniform(r, -2, 2), 2);
            re.canonicalize();
            im.canonicalize();
            root = GQ(re, im);
          }
          p = p * (RatFunc::x() - RatFunc(root));
        }
        return p;
      };
      RatFunc m = linear_product(uniform(r, 1, 3));
      if (uniform(r, 0, 1)) m = m / linear_product(uniform(r, 1, 2));
      GQ c = random_gq(r, true);
      if (c.is_zero()) c = GQ(1);
      RatFunc g = RatFunc(c * c) * m * m.invert_x();
      what = "symmetric g = " + g.str() + " from m = " + m.str();
      try {
        SplitResult s = multiplicative_split(g, SplitMode::Symmetric);
        ok = s.ok && s.f * s.f.invert_x() == g;
        what += " (" + s.note + ")";
      } catch (const MathError& e) {
        what += std::string(" threw ") + e.what();
      }
    }
    record(o, ok, ok ? "" : "seed " + std::to_string(seed) + " case " + std::to_string(i) + ": " + what);
  }
  return o;
}

}  // namespace lw::props
