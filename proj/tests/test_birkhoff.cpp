#include <random>

#include "doctest.h"
#include "latwalk/birkhoff.hpp"
#include "latwalk/kernel.hpp"
#include "latwalk/ratfunc.hpp"

using namespace lw;

namespace {

TSeries one() { return TSeries::exact(LaurentPoly(1)); }

// sum_k c_k u^k for u of positive valuation
TSeries power_sum(const TSeries& u, const std::function<GQ(int)>& c, int N) {
  TSeries acc = TSeries::exact(LaurentPoly()).truncated(N), p = one();
  for (int k = 1; k <= N; ++k) {
    p = p * u;
    acc += p * c(k);
  }
  return acc;
}

TSeries log1p(const TSeries& u, int N) {
  return power_sum(u, [](int k) { return GQ(k % 2 ? 1 : -1) / GQ(k); }, N);
}

TSeries exp0(const TSeries& u, int N) {
  return one() + power_sum(u, [](int k) {
           mpz_class f = 1;
           for (int j = 2; j <= k; ++j) f *= j;
           return GQ(mpq_class(1, f));
         }, N);
}

SeriesMatrix random_near_identity(std::mt19937& rng, int n, int N) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(-2, 2);
  SeriesMatrix a(n, std::vector<TSeries>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      LaurentPoly p;
      for (int k = 0; k < 3; ++k) p.add_term(ex(rng), GQ(coef(rng)));
      TSeries e = TSeries::exact(p).mul_t(1);
      if (i == j) e += one();
      a[i][j] = e.truncated(N);
    }
  return a;
}

bool factorization_holds(const SeriesMatrix& Theta, const BirkhoffResult& r, int N) {
  SeriesMatrix LT = series_mat_mul(r.Lambda, Theta);
  for (size_t i = 0; i < LT.size(); ++i)
    for (size_t j = 0; j < LT.size(); ++j) {
      if (!r.Lambda[i][j].x_nonpositive() || !r.Z[i][j].x_nonnegative()) return false;
      if (!(LT[i][j] - r.Z[i][j].mul_x(-r.m)).is_zero_mod(N)) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("Birkhoff factorization of the identity") {
  SeriesMatrix id(2, std::vector<TSeries>(2, TSeries::exact(LaurentPoly())));
  id[0][0] = id[1][1] = one();
  BirkhoffResult r = birkhoff_factor(id, 0, 5);
  CHECK(r.ok);
  CHECK(r.Lambda[0][0].equals_mod(one()));
  CHECK(r.Z[1][1].equals_mod(one()));
  CHECK(r.Lambda[0][1].is_zero());
  ConstMatrix T = {{GQ(2), GQ(1)}, {GQ(0), GQ(3)}};
  BirkhoffResult rt = birkhoff_factor(id, 0, 5, T);
  CHECK(rt.Lambda[0][1].equals_mod(TSeries::exact(LaurentPoly(1))));
  CHECK(rt.Z[1][1].equals_mod(TSeries::exact(LaurentPoly(3))));
  // m = 2: Lambda = T x^-2, Z = T
  BirkhoffResult rm = birkhoff_factor(id, 2, 5, T);
  CHECK(rm.Lambda[0][0].equals_mod(TSeries::exact(LaurentPoly::monomial(GQ(2), -2))));
  CHECK(rm.Z[0][0].equals_mod(TSeries::exact(LaurentPoly(2))));
  CHECK(rm.ok);

  CHECK_THROWS_AS(birkhoff_factor(id, 0, 5, ConstMatrix{{GQ(1), GQ(1)}, {GQ(1), GQ(1)}}), MathError);
  SeriesMatrix sing = id;
  sing[1][1] = TSeries::exact(LaurentPoly()).truncated(8);
  CHECK_THROWS_AS(birkhoff_factor(sing, 0, 5), MathError);
}

TEST_CASE("Birkhoff factorization of random near-identity matrices") {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 2 + trial % 2, iters = 6;
    SeriesMatrix th = random_near_identity(rng, n, iters + 2);
    for (int m : {0, 1}) {
      BirkhoffResult r = birkhoff_factor(th, m, iters);
      CHECK(r.ok);
      CHECK(r.detZ0_unit);
      CHECK(r.residual_valuation >= iters);
      CHECK(std::is_sorted(r.valuations.begin(), r.valuations.end()));
      CHECK(factorization_holds(th, r, iters));
    }
  }
}

TEST_CASE("scalar case agrees with the log-exp canonical factorization") {
  const int N = 8;
  Kernel k = build_kernel(quarter_model());
  TSeries G = rf_to_series(k.delta(), N);
  BirkhoffResult r = birkhoff_factor({{G}}, 0, N - 1);
  REQUIRE(r.ok);
  TSeries L = log1p(G - one(), N);
  TSeries Gp = exp0(extract_part(L, Region::Pos), N);
  TSeries G0 = exp0(extract_part(L, Region::Zero), N);
  TSeries Gm = exp0(extract_part(L, Region::Neg), N);
  CHECK((Gm * G0 * Gp - G).is_zero_mod(N - 1));
  // Lambda G = Z forces Z = Z(0) G_+ and Lambda G_- G_0 = Z(0)
  TSeries Z0 = extract_part(r.Z[0][0], Region::Zero);
  CHECK((r.Z[0][0] - Z0 * Gp).is_zero_mod(N - 1));
  CHECK((r.Lambda[0][0] * Gm * G0 - Z0).is_zero_mod(N - 1));
}
