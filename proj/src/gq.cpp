#include "latwalk/gq.hpp"

#include <cctype>

namespace lw {

GQ& GQ::operator*=(const GQ& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = r;
  im = i;
  return *this;
}

GQ GQ::inv() const {
  if (is_zero()) throw MathError("division by zero in Q(i)");
  mpq_class n = norm();
  return GQ(re / n, -im / n);
}

GQ& GQ::operator/=(const GQ& o) {
  if (o.is_real()) {
    if (sgn(o.re) == 0) throw MathError("division by zero in Q(i)");
    re /= o.re;
    im /= o.re;
    return *this;
  }
  return *this *= o.inv();
}

GQ GQ::pow(long n) const {
  if (n < 0) return inv().pow(-n);
  GQ r(1), b = *this;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

int GQ::cmp(const GQ& o) const {
  int c = ::cmp(re, o.re);
  if (c) return c < 0 ? -1 : 1;
  c = ::cmp(im, o.im);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

std::string GQ::str() const {
  if (sgn(im) == 0) return re.get_str();
  std::string ims = im.get_str() + "*i";
  if (sgn(re) == 0) return ims;
  if (sgn(im) > 0) return re.get_str() + "+" + ims;
  return re.get_str() + ims;
}

namespace {

mpq_class parse_q(const std::string& s) {
  if (s.empty()) throw MathError("empty rational");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw MathError("bad rational: " + s);
  if (sgn(q.get_den()) == 0) throw MathError("zero denominator: " + s);
  q.canonicalize();
  return q;
}

}  // namespace

GQ GQ::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw MathError("empty coefficient");
  bool has_i = s.back() == 'i';
  if (!has_i) return GQ(parse_q(s));
  std::string body = s.substr(0, s.size() - 1);
  if (!body.empty() && body.back() == '*') body.pop_back();
  // split at the last sign that is not the leading one
  size_t cut = std::string::npos;
  for (size_t k = body.size(); k-- > 1;)
    if (body[k] == '+' || body[k] == '-') {
      cut = k;
      break;
    }
  auto imag = [](std::string t) {
    if (t.empty() || t == "+") return mpq_class(1);
    if (t == "-") return mpq_class(-1);
    if (t[0] == '+') t = t.substr(1);
    return parse_q(t);
  };
  if (cut == std::string::npos) return GQ(0, imag(body));
  return GQ(parse_q(body.substr(0, cut)), imag(body.substr(cut)));
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return mpq_class(0);
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return mpq_class(rn, rd);
}

std::optional<GQ> gq_sqrt(const GQ& z) {
  if (z.is_zero()) return GQ(0);
  if (z.is_real()) {
    if (sgn(z.re) > 0) {
      auto r = rational_sqrt(z.re);
      if (!r) return std::nullopt;
      return GQ(*r);
    }
    auto r = rational_sqrt(-z.re);
    if (!r) return std::nullopt;
    return GQ(0, *r);
  }
  // (p+qi)^2 = a+bi: p^2 = (a+|z|)/2, q = b/(2p)
  auto m = rational_sqrt(z.norm());
  if (!m) return std::nullopt;
  auto p = rational_sqrt((z.re + *m) / 2);
  if (!p || sgn(*p) == 0) return std::nullopt;
  mpq_class q = z.im / (2 * *p);
  return GQ(*p, q);
}

}  // namespace lw
