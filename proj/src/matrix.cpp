#include "latwalk/matrix.hpp"

namespace lw {


RatFunc det_cofactor(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("determinant of a non-square matrix");
  if (m.rows() == 0) return RatFunc(1);
  std::vector<std::vector<RatFunc>> a;
  for (int i = 0; i < m.rows(); ++i) a.push_back(m.row(i));
  return cofactor_det(a, RatFunc());
}

PolyR char_poly(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw MathError("characteristic polynomial of a non-square matrix");
  int n = m.rows();
  std::vector<std::vector<PolyR>> a(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      PolyR e(-m(i, j));
      if (i == j) e += PolyR::var();
      a[i].push_back(e);
    }
  if (n == 0) return PolyR(RatFunc(1));
  return cofactor_det(a, PolyR());
}

QuadMatrix combine(const RatMatrix& a, const RatMatrix& b, const RatFunc& delta) {
  QuadMatrix m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = QuadExt(a(i, j), b(i, j), delta);
  return m;
}

RatMatrix rational_part(const QuadMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).a();
  return r;
}

RatMatrix sqrt_part(const QuadMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).b();
  return r;
}

RatVec invert_x(const RatVec& v) {
  RatVec w;
  for (const auto& e : v) w.push_back(e.invert_x());
  return w;
}

bool is_zero_vec(const RatVec& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

std::string vec_str(const RatVec& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + v[k].str();
  return s + ")";
}

std::string poly_str(const PolyR& p, const char* var) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int e = p.degree(); e >= 0; --e) {
    const RatFunc& c = p.coeff(e);
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    std::string cs = "(" + c.str() + ")";
    if (e == 0)
      s += cs;
    else
      s += cs + "*" + var + (e > 1 ? "^" + std::to_string(e) : "");
  }
  return s;
}

std::optional<RatFunc> proportionality(const RatVec& v, const RatVec& w) {
  if (v.size() != w.size()) return std::nullopt;
  std::optional<RatFunc> k;
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) {
      if (!w[i].is_zero()) return std::nullopt;
      continue;
    }
    RatFunc r = w[i] / v[i];
    if (k && *k != r) return std::nullopt;
    k = r;
  }
  return k ? k : std::optional<RatFunc>(RatFunc());
}

}  // namespace lw
