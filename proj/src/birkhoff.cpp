#include "latwalk/birkhoff.hpp"

#include <algorithm>
#include <functional>

#include "json.hpp"
#include "latwalk/matrix.hpp"

namespace lw {

namespace {

TSeries zero_series() { return TSeries::exact(LaurentPoly()); }

SeriesMatrix zeros(size_t r, size_t c) { return SeriesMatrix(r, std::vector<TSeries>(c, zero_series())); }

SeriesMatrix map_entries(const SeriesMatrix& a, const std::function<TSeries(const TSeries&)>& f) {
  SeriesMatrix b = a;
  for (auto& row : b)
    for (auto& e : row) e = f(e);
  return b;
}

SeriesMatrix add(const SeriesMatrix& a, const SeriesMatrix& b) {
  SeriesMatrix c = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  return c;
}

bool all_zero(const SeriesMatrix& a) {
  for (const auto& row : a)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

// smallest t-valuation over the entries, in whole powers of t (rounded down); the
// truncation order when everything is zero
int min_valuation(const SeriesMatrix& a) {
  std::optional<mpq_class> v;
  mpq_class tr;
  bool have_tr = false;
  for (const auto& row : a)
    for (const auto& e : row) {
      if (auto ev = e.valuation(); ev && (!v || *ev < *v)) v = ev;
      if (!e.is_exact() && (!have_tr || e.trunc() < tr)) {
        tr = e.trunc();
        have_tr = true;
      }
    }
  mpq_class r = v ? *v : (have_tr ? tr : mpq_class(1 << 20));
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return static_cast<int>(f.get_si());
}

std::vector<std::vector<LaurentPoly>> minor_of(const std::vector<std::vector<LaurentPoly>>& a, size_t r, size_t c) {
  std::vector<std::vector<LaurentPoly>> m;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i == r) continue;
    std::vector<LaurentPoly> row;
    for (size_t j = 0; j < a.size(); ++j)
      if (j != c) row.push_back(a[i][j]);
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

SeriesMatrix series_mat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.empty() || a[0].size() != b.size()) throw MathError("series matrix shape mismatch");
  SeriesMatrix c = zeros(a.size(), b[0].size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) {
        // a zero entry still caps the precision of the row
        if (!a[i][k].is_exact())
          for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k];
        continue;
      }
      for (size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

TSeries series_mat_det(const SeriesMatrix& a) { return cofactor_det(a, zero_series()); }

SeriesMatrix series_mat_inverse(const SeriesMatrix& a) {
  size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw MathError("inverse of a non-square series matrix");
    for (const auto& e : row)
      if (auto v = e.valuation(); v && *v < 0) throw MathError("series matrix has negative powers of t");
  }
  std::vector<std::vector<LaurentPoly>> a0(n, std::vector<LaurentPoly>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a0[i][j] = a[i][j].coeff_units(0);
  LaurentPoly d0 = cofactor_det(a0, LaurentPoly());
  if (!d0.is_monomial()) throw MathError("series matrix is not invertible: det at t = 0 is not a monomial in x");
  SeriesMatrix inv0 = zeros(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      LaurentPoly cof = n == 1 ? LaurentPoly(1) : cofactor_det(minor_of(a0, j, i), LaurentPoly());
      if ((i + j) % 2) cof = -cof;
      inv0[i][j] = TSeries::exact(*cof.exact_div(d0));
    }
  SeriesMatrix rest = map_entries(a, [](const TSeries& e) {
    std::map<int, LaurentPoly> m = e.terms();
    m.erase(0);
    return TSeries::from_units(e.denom(), e.trunc_units(), std::move(m));
  });
  for (const auto& row : rest)
    for (const auto& e : row)
      if (e.is_exact() && !e.is_zero()) throw MathError("series inverse of an exact matrix needs a truncation order");
  SeriesMatrix E = series_mat_mul(inv0, rest);
  SeriesMatrix sum = zeros(n, n), P = zeros(n, n);
  for (size_t i = 0; i < n; ++i) sum[i][i] = P[i][i] = TSeries::exact(LaurentPoly(1));
  // E has positive valuation, so the Neumann series terminates modulo the truncation
  for (int k = 0; k < 1 << 16; ++k) {
    P = map_entries(series_mat_mul(P, E), [](const TSeries& e) { return -e; });
    sum = add(sum, P);
    if (all_zero(P)) break;
  }
  return series_mat_mul(sum, inv0);
}

std::string BirkhoffResult::json() const {
  nlohmann::json j;
  auto mat = [](const SeriesMatrix& a) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& row : a) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& e : row) jr.push_back(e.str());
      r.push_back(jr);
    }
    return r;
  };
  j["m"] = m;
  j["iterations"] = iterations;
  j["valuations"] = valuations;
  j["residual_valuation"] = residual_valuation;
  j["detZ0"] = detZ0.str();
  j["detZ0_unit"] = detZ0_unit;
  j["ok"] = ok;
  j["Lambda"] = mat(Lambda);
  j["Z"] = mat(Z);
  return j.dump();
}

BirkhoffResult birkhoff_factor(const SeriesMatrix& Theta0, int m, int iters, std::optional<ConstMatrix> T) {
  size_t n = Theta0.size();
  if (n == 0) throw MathError("empty matrix");
  if (m < 0) throw MathError("m must be nonnegative");
  if (iters < 1) throw MathError("iters must be positive");
  // precision: one order past the requested residual valuation
  const int W = iters + 1;
  SeriesMatrix Theta = map_entries(Theta0, [&](const TSeries& e) {
    if (!e.is_exact() && e.trunc() < W) throw MathError("Theta is known only to O(t^" + e.trunc().get_str() + ")");
    return e.truncated(W);
  });
  ConstMatrix Tm = T ? *T : ConstMatrix(n, std::vector<GQ>(n, GQ()));
  if (!T)
    for (size_t i = 0; i < n; ++i) Tm[i][i] = GQ(1);
  if (Tm.size() != n) throw MathError("T has the wrong size");
  {
    std::vector<std::vector<LaurentPoly>> tl(n);
    for (size_t i = 0; i < n; ++i) {
      if (Tm[i].size() != n) throw MathError("T has the wrong size");
      for (const auto& v : Tm[i]) tl[i].push_back(LaurentPoly(v));
    }
    if (cofactor_det(tl, LaurentPoly()).is_zero()) throw MathError("det T = 0");
  }
  SeriesMatrix Tx = zeros(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) Tx[i][j] = TSeries::exact(LaurentPoly::monomial(Tm[i][j], -m));

  SeriesMatrix Tinv = series_mat_inverse(Theta);
  auto part = [](const SeriesMatrix& a, Region r, int k) {
    return map_entries(a, [&](const TSeries& e) { return extract_part(e, r, k); });
  };

  BirkhoffResult res;
  res.m = m;
  SeriesMatrix Psi = Tx, LT;
  int stall = 0;
  for (int step = 0;; ++step) {
    SeriesMatrix PT = series_mat_mul(Psi, Tinv);
    SeriesMatrix Gamma = part(PT, Region::Pos, 0);
    res.Lambda = part(PT, Region::LeNegM, 0);
    LT = series_mat_mul(res.Lambda, Theta);
    res.residual = part(LT, Region::LeNegM, m + 1);
    int v = min_valuation(res.residual);
    if (!res.valuations.empty()) {
      if (v < res.valuations.back())
        throw MathError("Birkhoff iteration diverges: residual valuation dropped to " + std::to_string(v));
      stall = v == res.valuations.back() ? stall + 1 : 0;
    }
    res.valuations.push_back(v);
    res.iterations = step + 1;
    if (v >= iters) break;
    if (stall >= 2 || step > 4 * iters + 8)
      throw MathError("Birkhoff iteration stalls at residual valuation " + std::to_string(v));
    Psi = add(Tx, part(series_mat_mul(Gamma, Theta), Region::LeNegM, m + 1));
  }
  res.residual_valuation = res.valuations.back();
  res.Z = map_entries(LT, [&](const TSeries& e) { return extract_part(e.mul_x(m), Region::NonNeg); });
  SeriesMatrix Z0 = map_entries(res.Z, [](const TSeries& e) { return extract_part(e, Region::Zero); });
  res.detZ0 = series_mat_det(Z0);
  auto vu = res.detZ0.valuation_units();
  res.detZ0_unit = vu && *vu == 0;
  res.ok = res.detZ0_unit && res.residual_valuation >= iters;
  return res;
}

}  // namespace lw
