#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latwalk/poly.hpp"
#include "latwalk/ratfunc.hpp"

namespace lw {

template <class F>
struct FieldOps;

template <>
struct FieldOps<RatFunc> {
  static RatFunc zero() { return RatFunc(); }
  static RatFunc one() { return RatFunc(1); }
  static RatFunc invert_x(const RatFunc& a) { return a.invert_x(); }
  static std::string str(const RatFunc& a) { return a.str(); }
};

template <>
struct FieldOps<QuadExt> {
  static QuadExt zero() { return QuadExt(); }
  static QuadExt one() { return QuadExt::rational(RatFunc(1), RatFunc()); }
  static QuadExt invert_x(const QuadExt& a) { return a.invert_x(); }
  static std::string str(const QuadExt& a) { return a.str(); }
};

// Dense matrix over an exact field.
template <class F>
class Matrix {
 public:
  using Ops = FieldOps<F>;
  Matrix() = default;
  Matrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r * c), Ops::zero()) {}
  Matrix(std::vector<std::vector<F>> rows) : r_(static_cast<int>(rows.size())), c_(rows.empty() ? 0 : static_cast<int>(rows[0].size())) {
    for (auto& row : rows) {
      if (static_cast<int>(row.size()) != c_) throw MathError("ragged matrix");
      for (auto& v : row) a_.push_back(std::move(v));
    }
  }
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Ops::one();
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  F& operator()(int i, int j) { return a_[static_cast<size_t>(i * c_ + j)]; }
  const F& operator()(int i, int j) const { return a_[static_cast<size_t>(i * c_ + j)]; }
  std::vector<F> row(int i) const { return std::vector<F>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }
  bool is_zero() const {
    for (const auto& v : a_)
      if (!v.is_zero()) return false;
    return true;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m = a;
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] + b.a_[k];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m = a;
    for (size_t k = 0; k < m.a_.size(); ++k) m.a_[k] = m.a_[k] - b.a_[k];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw MathError("matrix shape mismatch");
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (int j = 0; j < b.c_; ++j)
          if (!b(k, j).is_zero()) m(i, j) = m(i, j) + a(i, k) * b(k, j);
      }
    return m;
  }
  friend Matrix operator*(const Matrix& a, const F& s) {
    Matrix m = a;
    for (auto& v : m.a_) v = v * s;
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  // entrywise x -> 1/x
  Matrix invert_x() const {
    Matrix m = *this;
    for (auto& v : m.a_) v = Ops::invert_x(v);
    return m;
  }

  // row vector times matrix
  friend std::vector<F> operator*(const std::vector<F>& v, const Matrix& m) {
    if (static_cast<int>(v.size()) != m.r_) throw MathError("vector length mismatch");
    std::vector<F> out(static_cast<size_t>(m.c_), Ops::zero());
    for (int i = 0; i < m.r_; ++i) {
      if (v[i].is_zero()) continue;
      for (int j = 0; j < m.c_; ++j)
        if (!m(i, j).is_zero()) out[j] = out[j] + v[i] * m(i, j);
    }
    return out;
  }
  // matrix times column vector
  friend std::vector<F> operator*(const Matrix& m, const std::vector<F>& v) {
    if (static_cast<int>(v.size()) != m.c_) throw MathError("vector length mismatch");
    std::vector<F> out(static_cast<size_t>(m.r_), Ops::zero());
    for (int i = 0; i < m.r_; ++i)
      for (int j = 0; j < m.c_; ++j)
        if (!m(i, j).is_zero() && !v[j].is_zero()) out[i] = out[i] + m(i, j) * v[j];
    return out;
  }

  // reduced row echelon form; returns pivot columns
  std::vector<int> rref() {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < c_ && r < r_; ++c) {
      int p = -1;
      for (int i = r; i < r_; ++i)
        if (!(*this)(i, c).is_zero()) {
          p = i;
          break;
        }
      if (p < 0) continue;
      if (p != r)
        for (int j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(r, j));
      F inv = Ops::one() / (*this)(r, c);
      for (int j = 0; j < c_; ++j) (*this)(r, j) = (*this)(r, j) * inv;
      for (int i = 0; i < r_; ++i) {
        if (i == r || (*this)(i, c).is_zero()) continue;
        F f = (*this)(i, c);
        for (int j = 0; j < c_; ++j)
          if (!(*this)(r, j).is_zero()) (*this)(i, j) = (*this)(i, j) - f * (*this)(r, j);
      }
      piv.push_back(c);
      ++r;
    }
    return piv;
  }

  int rank() const {
    Matrix m = *this;
    return static_cast<int>(m.rref().size());
  }

  // basis of {w : m w = 0}; free coordinates set to 1 one at a time
  std::vector<std::vector<F>> right_null_basis() const {
    Matrix m = *this;
    auto piv = m.rref();
    std::vector<bool> is_piv(static_cast<size_t>(c_), false);
    for (int p : piv) is_piv[p] = true;
    std::vector<std::vector<F>> out;
    for (int f = 0; f < c_; ++f) {
      if (is_piv[f]) continue;
      std::vector<F> w(static_cast<size_t>(c_), Ops::zero());
      w[f] = Ops::one();
      for (size_t k = 0; k < piv.size(); ++k) w[piv[k]] = Ops::zero() - m(static_cast<int>(k), f);
      out.push_back(std::move(w));
    }
    return out;
  }
  // basis of {v : v m = 0}
  std::vector<std::vector<F>> left_null_basis() const { return transpose().right_null_basis(); }

  Matrix inverse() const {
    if (r_ != c_) throw MathError("inverse of a non-square matrix");
    Matrix aug(r_, 2 * c_);
    for (int i = 0; i < r_; ++i) {
      for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = Ops::one();
    }
    auto piv = aug.rref();
    if (static_cast<int>(piv.size()) < r_ || piv[r_ - 1] >= c_) throw MathError("singular matrix");
    Matrix inv(r_, c_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < r_; ++i) {
      s += i ? ", [" : "[";
      for (int j = 0; j < c_; ++j) s += (j ? ", " : "") + Ops::str((*this)(i, j));
      s += "]";
    }
    return s + "]";
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<F> a_;
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw MathError("matrix shape mismatch");
  }
};

using RatMatrix = Matrix<RatFunc>;
using QuadMatrix = Matrix<QuadExt>;
using RatVec = std::vector<RatFunc>;
using QuadVec = std::vector<QuadExt>;

using PolyR = Poly<RatFunc>;

// cofactor expansion along the first row over any commutative ring
template <class R>
R cofactor_det(const std::vector<std::vector<R>>& a, const R& zero) {
  size_t n = a.size();
  if (n == 0) throw MathError("determinant of an empty matrix");
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  R s = zero;
  for (size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<R>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<R> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(std::move(row));
    }
    R term = a[0][j] * cofactor_det(minor, zero);
    s = (j % 2) ? s - term : s + term;
  }
  return s;
}

// determinant by cofactor expansion along the first row
RatFunc det_cofactor(const RatMatrix& m);
// det(lambda Id - m) by cofactor expansion over RatFunc[lambda]
PolyR char_poly(const RatMatrix& m);

// split a + b sqrt(delta) entrywise
QuadMatrix combine(const RatMatrix& a, const RatMatrix& b, const RatFunc& delta);
RatMatrix rational_part(const QuadMatrix& m);
RatMatrix sqrt_part(const QuadMatrix& m);

RatVec invert_x(const RatVec& v);
bool is_zero_vec(const RatVec& v);
std::string vec_str(const RatVec& v);
std::string poly_str(const PolyR& p, const char* var = "lambda");

// v and w proportional; returns w / v when they are
std::optional<RatFunc> proportionality(const RatVec& v, const RatVec& w);

}  // namespace lw
