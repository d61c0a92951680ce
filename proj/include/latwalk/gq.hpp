#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace lw {

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gaussian rational re + im*i; mpq_class keeps both parts canonical.
class GQ {
 public:
  mpq_class re, im;

  GQ() : re(0), im(0) {}
  GQ(long v) : re(v), im(0) {}
  GQ(const mpq_class& r) : re(r), im(0) {}
  GQ(const mpq_class& r, const mpq_class& i) : re(r), im(i) {}
  static GQ frac(long p, long q) { return GQ(mpq_class(p, q)); }
  static GQ I() { return GQ(0, 1); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_one() const { return re == 1 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GQ conj() const { return GQ(re, -im); }
  mpq_class norm() const { return re * re + im * im; }

  GQ operator-() const { return GQ(-re, -im); }
  GQ& operator+=(const GQ& o) { re += o.re; im += o.im; return *this; }
  GQ& operator-=(const GQ& o) { re -= o.re; im -= o.im; return *this; }
  GQ& operator*=(const GQ& o);
  GQ& operator/=(const GQ& o);

  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(GQ a, const GQ& b) { return a *= b; }
  friend GQ operator/(GQ a, const GQ& b) { return a /= b; }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

  GQ inv() const;
  GQ pow(long n) const;

  // total order used only for canonical sorting
  int cmp(const GQ& o) const;

  std::string str() const;
  static GQ parse(const std::string& s);
};

std::optional<mpq_class> rational_sqrt(const mpq_class& q);
// square root in Q(i); branch: positive real part, else positive imaginary part
std::optional<GQ> gq_sqrt(const GQ& z);

std::string mpq_str(const mpq_class& q);

}  // namespace lw
