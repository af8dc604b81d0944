#include "qdyn/misiurewicz.hpp"

namespace qdyn {

namespace {

// G(c) = f_c^(k+p)(0) - f_c^k(0) together with dG/dc, one orbit pass.
void G_and_deriv(const BigComplex& c, long k, long p, Prec P, BigComplex& G, BigComplex& dG) {
  BigComplex z(P), d(P);
  BigComplex one = BigComplex::from_long(1, 0, P);
  BigComplex zk(P), dk(P);
  for (long j = 0; j < k + p; ++j) {
    if (j == k) {
      zk = z;
      dk = d;
    }
    d = (z * d) * 2l + one;
    z = z * z + c;
    if (!z.is_finite()) fail(Err::NonFinite, "solve_misiurewicz: orbit overflow");
  }
  G = z - zk;
  dG = d - dk;
}

BigFloat min_orbit_distance(const BigComplex& z, const std::vector<BigComplex>& O) {
  BigFloat best = dist(z, O[0]);
  for (size_t i = 1; i < O.size(); ++i) best = min(best, dist(z, O[i]));
  return best;
}

} // namespace

MisiurewiczData solve_misiurewicz(long k, long p, const BigComplex& seed, Prec P) {
  if (k < 1 || p < 1) fail(Err::UsageError, "solve_misiurewicz: k and p must be >= 1");
  BigComplex c = seed.round_to(P);
  BigFloat conv_tol = BigFloat::pow2(-(P - 16), P);
  BigFloat one = BigFloat::from_long(1, P);
  BigFloat big = BigFloat::pow2(64, P);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    if (abs(c) > big) fail(Err::NoConvergence, "solve_misiurewicz: iterate escaped");
    BigComplex G(P), dG(P);
    G_and_deriv(c, k, p, P, G, dG);
    if (abs(dG) < BigFloat::pow2(-(P - 16), P))
      fail(Err::DerivativeVanishes, "solve_misiurewicz: dG/dc ~ 0 at an iterate");
    BigComplex step = G / dG;
    c = c - step;
    if (abs(step) < conv_tol * max(one, abs(c))) {
      converged = true;
      break;
    }
  }
  if (!converged) fail(Err::NoConvergence, "solve_misiurewicz: no convergence after 200 iterations");

  // One polishing step, then certify.
  {
    BigComplex G(P), dG(P);
    G_and_deriv(c, k, p, P, G, dG);
    if (!(abs(dG) < BigFloat::pow2(-(P - 16), P))) c = c - G / dG;
  }

  BigFloat min_tol = BigFloat::pow2(-(P - 24), P);

  // Full critical orbit up to k+p.
  OrbitSegment seg = iterate(c, BigComplex(P), k + p, P);
  const std::vector<BigComplex>& z = seg.points;

  // Minimality: G(k', p') must not vanish for any smaller admissible pair.
  for (long kp = 1; kp <= k; ++kp) {
    for (long pp = 1; pp <= p; ++pp) {
      if (p % pp != 0) continue;
      if (kp == k && pp == p) continue;
      BigFloat scale = max(one, abs(z[static_cast<size_t>(kp)]));
      if (dist(z[static_cast<size_t>(kp + pp)], z[static_cast<size_t>(kp)]) < min_tol * scale)
        fail(Err::DegenerateSolution,
             "solve_misiurewicz: root has smaller preperiod/period (k'=" + std::to_string(kp) +
                 ", p'=" + std::to_string(pp) + ")");
    }
  }

  MisiurewiczData data;
  data.c = c;
  data.k = k;
  data.p = p;
  data.precision = P;
  data.residual = dist(z[static_cast<size_t>(k + p)], z[static_cast<size_t>(k)]);

  // Orbit O starting at f^k(0); strict preperiodicity requires 0 not in O.
  for (long i = 0; i < p; ++i) {
    const BigComplex& oi = z[static_cast<size_t>(k + i)];
    if (abs(oi) < min_tol)
      fail(Err::DegenerateSolution, "solve_misiurewicz: 0 lies on the periodic orbit");
    data.O.push_back(oi);
  }

  // Landing time m: least m with dist(f^m(0), O) below tolerance; must be k.
  long m = -1;
  for (long j = 0; j <= k + p; ++j) {
    BigFloat dmin = min_orbit_distance(z[static_cast<size_t>(j)], data.O);
    if (dmin < min_tol * max(one, abs(z[static_cast<size_t>(j)]))) {
      m = j;
      break;
    }
  }
  if (m != k)
    fail(Err::DegenerateSolution, "solve_misiurewicz: landing time m=" + std::to_string(m) +
                                      " differs from preperiod k=" + std::to_string(k));
  data.m = m;

  data.mu = multiplier(c, data.O[0], p, P);
  if (!(abs(data.mu) > one))
    fail(Err::NotRepelling, "solve_misiurewicz: |mu| <= 1");
  data.nu = nu(data, P);
  return data;
}

BigComplex nu(const MisiurewiczData& data, Prec P) {
  BigComplex r = param_derivative(data.c, data.m, P);
  BigComplex q = periodic_point_param_derivative(data.c, data.O[0], data.p, P);
  return r - q;
}

BigComplex nu_central_difference(const MisiurewiczData& data, Prec P) {
  BigFloat h = BigFloat::pow2(-(P / 3), P);
  BigComplex hplus(h, BigFloat(P));
  auto gap = [&](const BigComplex& cc) {
    BigComplex zm = iterate_value(cc, BigComplex(P), data.m, P);
    BigComplex zp = newton_periodic(cc, data.p, data.O[0], P);
    return zm - zp;
  };
  BigComplex gp = gap(data.c.round_to(P) + hplus);
  BigComplex gm = gap(data.c.round_to(P) - hplus);
  return (gp - gm) / BigComplex(h * 2l, BigFloat(P));
}

VerifyReport verify(const MisiurewiczData& data, double tol) {
  VerifyReport rep;
  Prec P = data.precision > 0 ? data.precision : data.c.precision();
  BigFloat tolf = BigFloat::from_double(tol, P);
  BigFloat one = BigFloat::from_long(1, P);
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    rep.items.push_back({name, pass, detail});
    rep.all_pass = rep.all_pass && pass;
  };

  OrbitSegment seg = iterate(data.c, BigComplex(P), data.k + data.p, P);
  const std::vector<BigComplex>& z = seg.points;

  BigFloat res = dist(z[static_cast<size_t>(data.k + data.p)], z[static_cast<size_t>(data.k)]);
  add("preperiodic_closure", res < tolf, "|f^(k+p)(0) - f^k(0)| = " + res.str(8));

  bool minimal = true;
  std::string which;
  for (long kp = 1; kp <= data.k && minimal; ++kp)
    for (long pp = 1; pp <= data.p && minimal; ++pp) {
      if (data.p % pp != 0 || (kp == data.k && pp == data.p)) continue;
      BigFloat r2 = dist(z[static_cast<size_t>(kp + pp)], z[static_cast<size_t>(kp)]);
      if (r2 < tolf) {
        minimal = false;
        which = "(k'=" + std::to_string(kp) + ",p'=" + std::to_string(pp) + ")";
      }
    }
  add("minimality", minimal, minimal ? "no smaller (k',p') closes up" : "closes up at " + which);

  bool zero_free = true;
  for (const auto& o : data.O)
    if (abs(o) < tolf) zero_free = false;
  add("zero_not_in_orbit", zero_free, zero_free ? "0 is strictly preperiodic" : "0 lies on O");

  bool rep_mu = abs(data.mu) > one;
  add("repelling", rep_mu, "|mu| = " + abs(data.mu).str(8));

  bool nu_nonzero = abs(data.nu) > tolf;
  add("nu_nonzero", nu_nonzero, "|nu| = " + abs(data.nu).str(8));

  add("landing_time", data.m == data.k,
      "m = " + std::to_string(data.m) + ", k = " + std::to_string(data.k));

  // Orbit closes up under f^p.
  BigFloat oc = dist(iterate_value(data.c, data.O[0], data.p, P), data.O[0]);
  add("orbit_closure", oc < tolf, "|f^p(O_0) - O_0| = " + oc.str(8));

  return rep;
}

} // namespace qdyn
