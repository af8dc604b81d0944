#pragma once
#include <string>

#include "qdyn/bigfloat.hpp"

namespace qdyn {

// Complex number as two BigFloats. Both parts must stay finite; routines
// that can overflow check is_finite() and raise NonFinite.
class BigComplex {
public:
  BigFloat re, im;

  BigComplex() = default;
  explicit BigComplex(Prec P) : re(P), im(P) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

  static BigComplex from_double(double r, double i, Prec P) {
    return BigComplex(BigFloat::from_double(r, P), BigFloat::from_double(i, P));
  }
  static BigComplex from_long(long r, long i, Prec P) {
    return BigComplex(BigFloat::from_long(r, P), BigFloat::from_long(i, P));
  }
  static BigComplex from_string(const std::string& r, const std::string& i, Prec P) {
    return BigComplex(BigFloat::from_string(r, P), BigFloat::from_string(i, P));
  }

  Prec precision() const {
    Prec a = re.precision(), b = im.precision();
    return a > b ? a : b;
  }
  BigComplex round_to(Prec P) const { return BigComplex(re.round_to(P), im.round_to(P)); }
  bool is_finite() const { return re.is_finite() && im.is_finite(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re + b.re, a.im + b.im);
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re - b.re, a.im - b.im);
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return BigComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) {
    return BigComplex(a.re * s, a.im * s);
  }
  friend BigComplex operator*(const BigComplex& a, long n) { return BigComplex(a.re * n, a.im * n); }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat d = sqr(b.re) + sqr(b.im);
    return BigComplex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
  }
  friend BigComplex operator/(const BigComplex& a, long n) { return BigComplex(a.re / n, a.im / n); }
  BigComplex operator-() const { return BigComplex(-re, -im); }

  friend bool operator==(const BigComplex& a, const BigComplex& b) { return a.re == b.re && a.im == b.im; }

  friend BigComplex conj(const BigComplex& a) { return BigComplex(a.re, -a.im); }
  friend BigFloat norm2(const BigComplex& a) { return sqr(a.re) + sqr(a.im); }
  friend BigFloat abs(const BigComplex& a) { return hypot(a.re, a.im); }
  friend BigFloat dist(const BigComplex& a, const BigComplex& b) { return abs(a - b); }

  std::string str(int digits) const { return re.str(digits) + (im.sign() < 0 ? " - " : " + ") + abs(im).str(digits) + "i"; }
};

// Principal square root by the exact half-angle construction:
//   u = sqrt((|z| + re)/2),  v = im / (2u)          for re >= 0
//   |v| = sqrt((|z| - re)/2), sign(v) = sign(im), u = im / (2v)   for re < 0
// "Principal" = nonnegative real part; positive imaginary part when the real
// part is zero.
BigComplex csqrt_principal(const BigComplex& z);

// z^n by binary powering at precision P (n may be negative).
BigComplex cpow(const BigComplex& z, long n, Prec P);

} // namespace qdyn
