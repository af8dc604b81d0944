#include "qdyn/dynamics.hpp"

namespace qdyn {

namespace {

void check_finite(const BigComplex& z, const char* what) {
  if (!z.is_finite()) fail(Err::NonFinite, std::string(what) + " overflowed to a non-finite value");
}

} // namespace

OrbitSegment iterate(const BigComplex& c, const BigComplex& z0, long n, Prec P) {
  if (n < 0) fail(Err::UsageError, "iterate: n must be >= 0");
  OrbitSegment seg;
  seg.c = c.round_to(P);
  seg.z0 = z0.round_to(P);
  seg.points.reserve(static_cast<size_t>(n) + 1);
  BigComplex z = seg.z0;
  seg.points.push_back(z);
  for (long j = 0; j < n; ++j) {
    z = z * z + seg.c;
    check_finite(z, "iterate");
    seg.points.push_back(z);
  }
  return seg;
}

BigComplex iterate_value(const BigComplex& c, const BigComplex& z0, long n, Prec P) {
  BigComplex cc = c.round_to(P);
  BigComplex z = z0.round_to(P);
  for (long j = 0; j < n; ++j) {
    z = z * z + cc;
    check_finite(z, "iterate");
  }
  return z;
}

BigComplex param_derivative(const BigComplex& c, long n, Prec P) {
  if (n < 1) fail(Err::UsageError, "param_derivative: n must be >= 1");
  BigComplex z_out(P), d_out(P);
  critical_orbit_and_derivative(c, n, P, z_out, d_out);
  return d_out;
}

void critical_orbit_and_derivative(const BigComplex& c, long n, Prec P, BigComplex& z_out,
                                   BigComplex& d_out) {
  BigComplex cc = c.round_to(P);
  BigComplex z(P), d(P);
  BigComplex one = BigComplex::from_long(1, 0, P);
  for (long j = 0; j < n; ++j) {
    d = (z * d) * 2l + one;
    z = z * z + cc;
    check_finite(z, "critical orbit");
    check_finite(d, "parameter derivative");
  }
  z_out = z;
  d_out = d;
}

BigComplex newton_periodic(const BigComplex& c, long p, const BigComplex& seed, Prec P) {
  if (p < 1) fail(Err::UsageError, "newton_periodic: p must be >= 1");
  BigComplex cc = c.round_to(P);
  BigComplex z = seed.round_to(P);
  BigFloat conv_tol = BigFloat::pow2(-(P - 16), P);
  BigFloat deriv_tol = BigFloat::pow2(-(P - 16), P);
  BigFloat big = BigFloat::pow2(64, P);
  BigFloat one = BigFloat::from_long(1, P);
  for (int it = 0; it < 200; ++it) {
    if (abs(z) > big) fail(Err::NoConvergence, "newton_periodic: iterate escaped");
    // F(z) = f^p(z) - z, F'(z) = prod 2 w_j - 1
    BigComplex w = z;
    BigComplex dw = BigComplex::from_long(1, 0, P);
    for (long j = 0; j < p; ++j) {
      dw = dw * w * 2l;
      w = w * w + cc;
      check_finite(w, "newton_periodic");
    }
    BigComplex F = w - z;
    BigComplex dF = dw - BigComplex::from_long(1, 0, P);
    if (abs(dF) < deriv_tol) fail(Err::DerivativeVanishes, "newton_periodic: F' ~ 0 at an iterate");
    BigComplex step = F / dF;
    z = z - step;
    if (abs(step) < conv_tol * max(one, abs(z))) return z;
  }
  fail(Err::NoConvergence, "newton_periodic: no convergence after 200 iterations");
}

BigComplex multiplier(const BigComplex& c, const BigComplex& z, long p, Prec P) {
  if (p < 1) fail(Err::UsageError, "multiplier: p must be >= 1");
  BigComplex cc = c.round_to(P);
  BigComplex w = z.round_to(P);
  BigComplex m = BigComplex::from_long(1, 0, P);
  for (long j = 0; j < p; ++j) {
    m = m * w * 2l;
    w = w * w + cc;
    check_finite(w, "multiplier");
  }
  // Orbit must close up to tolerance.
  BigFloat tol = BigFloat::pow2(-(P - 16), P);
  BigFloat one = BigFloat::from_long(1, P);
  if (dist(w, z.round_to(P)) > tol * max(one, abs(z)))
    fail(Err::NotPeriodic, "multiplier: orbit does not close up after p steps");
  return m;
}

BigComplex periodic_point_param_derivative(const BigComplex& c, const BigComplex& z, long p,
                                           Prec P) {
  if (p < 1) fail(Err::UsageError, "periodic_point_param_derivative: p must be >= 1");
  BigComplex cc = c.round_to(P);
  BigComplex zz = z.round_to(P);
  BigComplex w = zz;
  BigComplex e(P);
  BigComplex m = BigComplex::from_long(1, 0, P);
  BigComplex one = BigComplex::from_long(1, 0, P);
  for (long j = 0; j < p; ++j) {
    e = (w * e) * 2l + one;
    m = m * w * 2l;
    w = w * w + cc;
    check_finite(w, "periodic_point_param_derivative");
  }
  BigFloat tol = BigFloat::pow2(-(P - 16), P);
  BigFloat uno = BigFloat::from_long(1, P);
  if (dist(w, zz) > tol * max(uno, abs(zz)))
    fail(Err::NotPeriodic, "periodic_point_param_derivative: point is not periodic of period p");
  BigComplex denom = one - m;
  if (abs(denom) < BigFloat::pow2(-(P / 2), P))
    fail(Err::ParabolicOrbit, "periodic_point_param_derivative: |1 - mu| below tolerance");
  return e / denom;
}

BigComplex inverse_step(const BigComplex& c, const BigComplex& z, const BranchSelector& branch,
                        Prec P, long step) {
  BigComplex w = z.round_to(P) - c.round_to(P);
  BigComplex r = csqrt_principal(w);
  switch (branch.kind) {
    case BranchSelector::Kind::Principal:
      return r;
    case BranchSelector::Kind::SignSequence: {
      if (branch.signs.empty()) fail(Err::UsageError, "inverse_step: empty sign sequence");
      int s = branch.signs[static_cast<size_t>(step) % branch.signs.size()];
      return s >= 0 ? r : -r;
    }
    case BranchSelector::Kind::NearestTo: {
      BigComplex t = branch.target.round_to(P);
      BigFloat dplus = dist(r, t);
      BigFloat dminus = dist(-r, t);
      BigFloat scale = max(max(dplus, dminus), BigFloat::from_long(1, P));
      if (abs(dplus - dminus) < BigFloat::pow2(-(P / 2), P) * scale)
        fail(Err::BranchTie, "inverse_step: NearestTo target equidistant from both roots");
      return dplus < dminus ? r : -r;
    }
  }
  fail(Err::UsageError, "inverse_step: unknown branch selector");
}

} // namespace qdyn
