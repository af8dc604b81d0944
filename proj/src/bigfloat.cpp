#include "qdyn/bigfloat.hpp"
#include "qdyn/bigcomplex.hpp"

#include <cstdio>
#include <vector>

namespace qdyn {

const char* err_name(Err e) {
  switch (e) {
    case Err::NoConvergence: return "NoConvergence";
    case Err::DerivativeVanishes: return "DerivativeVanishes";
    case Err::NotPeriodic: return "NotPeriodic";
    case Err::ParabolicOrbit: return "ParabolicOrbit";
    case Err::BranchTie: return "BranchTie";
    case Err::ContractionLost: return "ContractionLost";
    case Err::NotConverged: return "NotConverged";
    case Err::ZeroInput: return "ZeroInput";
    case Err::CapExceeded: return "CapExceeded";
    case Err::DegenerateSolution: return "DegenerateSolution";
    case Err::NotRepelling: return "NotRepelling";
    case Err::OutOfDomain: return "OutOfDomain";
    case Err::EmptyWindow: return "EmptyWindow";
    case Err::AllPointsFiltered: return "AllPointsFiltered";
    case Err::EmptyCloud: return "EmptyCloud";
    case Err::NoRepellingSeed: return "NoRepellingSeed";
    case Err::InconsistentLimit: return "InconsistentLimit";
    case Err::BranchJump: return "BranchJump";
    case Err::PrecisionTooLow: return "PrecisionTooLow";
    case Err::NonFinite: return "NonFinite";
    case Err::UsageError: return "UsageError";
  }
  return "UnknownError";
}

BigFloat BigFloat::from_string(const std::string& s, Prec P) {
  BigFloat r(P);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    fail(Err::UsageError, "malformed decimal literal '" + s + "'");
  return r;
}

std::string BigFloat::str(int digits) const {
  if (digits < 2) digits = 2;
  // size: sign + digit + '.' + digits + 'e' + sign + exponent + NUL
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

std::string BigFloat::str_exact() const {
  // n_digits = 0 lets MPFR pick enough digits for exact round-trip at the
  // same precision.
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
  if (!s) fail(Err::NonFinite, "cannot render non-finite value");
  std::string mant(s);
  mpfr_free_str(s);
  bool neg = !mant.empty() && mant[0] == '-';
  std::string dig = neg ? mant.substr(1) : mant;
  // Format as d.ddd...e(exp-1) so that value = 0.mant * 10^e.
  std::string out = (neg ? "-" : "");
  if (dig.empty()) dig = "0";
  out += dig.substr(0, 1);
  if (dig.size() > 1) out += "." + dig.substr(1);
  out += "e" + std::to_string(static_cast<long>(e) - 1);
  if (is_zero()) return sign() < 0 ? "-0" : "0";
  return out;
}

BigComplex csqrt_principal(const BigComplex& z) {
  Prec P = z.precision();
  if (z.is_zero()) return BigComplex(P);
  BigFloat m = abs(z);
  BigFloat two = BigFloat::from_long(2, P);
  if (z.re.sign() >= 0) {
    BigFloat u = sqrt((m + z.re) / two);
    if (u.is_zero()) { // z.re == 0 and z.im == 0 handled above; can't happen
      return BigComplex(u, sqrt((m - z.re) / two));
    }
    BigFloat v = z.im / (u * two);
    return BigComplex(u, v);
  }
  BigFloat w = sqrt((m - z.re) / two);
  // sign(v) = sign(im); im == 0 with re < 0 gives +i*sqrt(-re) (principal).
  BigFloat v = (z.im.sign() < 0) ? -w : w;
  BigFloat u = z.im / (v * two);
  if (z.im.is_zero()) u = BigFloat(P); // exact zero real part
  return BigComplex(u, v);
}

BigComplex cpow(const BigComplex& z, long n, Prec P) {
  bool inv = n < 0;
  unsigned long e = inv ? static_cast<unsigned long>(-(n + 1)) + 1ul : static_cast<unsigned long>(n);
  BigComplex acc = BigComplex::from_long(1, 0, P);
  BigComplex base = z.round_to(P);
  while (e) {
    if (e & 1ul) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  if (inv) acc = BigComplex::from_long(1, 0, P) / acc;
  return acc;
}

} // namespace qdyn
