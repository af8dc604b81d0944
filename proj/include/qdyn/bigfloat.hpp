#pragma once
#include <mpfr.h>

#include <string>
#include <utility>

#include "qdyn/error.hpp"

namespace qdyn {

using Prec = long; // working precision in bits

// RAII wrapper over one mpfr_t. Value semantics: copies preserve the source
// precision exactly; binary operators round to the larger operand precision
// (MPFR_RNDN everywhere). Top-level library routines pin precision by
// rounding their inputs into P-bit working copies first.
class BigFloat {
public:
  BigFloat() { mpfr_init2(v_, 53); mpfr_set_zero(v_, 1); }
  explicit BigFloat(Prec P) { mpfr_init2(v_, P < MPFR_PREC_MIN ? MPFR_PREC_MIN : P); mpfr_set_zero(v_, 1); }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  ~BigFloat() { mpfr_clear(v_); }

  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  static BigFloat from_double(double d, Prec P) {
    BigFloat r(P);
    mpfr_set_d(r.v_, d, MPFR_RNDN);
    return r;
  }
  static BigFloat from_long(long n, Prec P) {
    BigFloat r(P);
    mpfr_set_si(r.v_, n, MPFR_RNDN);
    return r;
  }
  // Parses a decimal literal; throws UsageError on malformed input.
  static BigFloat from_string(const std::string& s, Prec P);
  // 2^e at precision P (exact).
  static BigFloat pow2(long e, Prec P) {
    BigFloat r(P);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }
  static BigFloat pi(Prec P) {
    BigFloat r(P);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  Prec precision() const { return mpfr_get_prec(v_); }
  BigFloat round_to(Prec P) const {
    BigFloat r(P);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_floor() const { return mpfr_get_si(v_, MPFR_RNDD); }

  // Decimal rendering with a fixed significant-digit count ("%.*Re").
  std::string str(int digits) const;
  // Exact round-trip rendering (MPFR chooses enough digits).
  std::string str_exact() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r(opprec(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r(opprec(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r(opprec(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat r(opprec(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  friend BigFloat operator*(const BigFloat& a, long n) {
    BigFloat r(a.precision());
    mpfr_mul_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, long n) {
    BigFloat r(a.precision());
    mpfr_div_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator+(const BigFloat& a, long n) {
    BigFloat r(a.precision());
    mpfr_add_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, long n) {
    BigFloat r(a.precision());
    mpfr_sub_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return !(a == b); }

  friend BigFloat abs(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqrt(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sqr(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sqr(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b) {
    BigFloat r(opprec(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat log(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat cos(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat sin(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat ldexp2(const BigFloat& a, long e) { // a * 2^e, exact
    BigFloat r(a.precision());
    mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
    return r;
  }
  friend BigFloat max(const BigFloat& a, const BigFloat& b) { return a >= b ? a : b; }
  friend BigFloat min(const BigFloat& a, const BigFloat& b) { return a <= b ? a : b; }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

private:
  static Prec opprec(const BigFloat& a, const BigFloat& b) {
    Prec pa = mpfr_get_prec(a.v_), pb = mpfr_get_prec(b.v_);
    return pa > pb ? pa : pb;
  }
  mpfr_t v_;
};

// Number of significant decimal digits carried by P bits, per the output
// contract: ceil(P * 0.3010).
inline int decimal_digits(Prec P) { return static_cast<int>((P * 3010 + 9999) / 10000); }

} // namespace qdyn
