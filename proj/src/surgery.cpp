#include "qdyn/surgery.hpp"

#include <cmath>

namespace qdyn {

BigComplex predict_seed(const MisiurewiczData& base, const BigComplex& x, long n, Prec P) {
  return base.c.round_to(P) + x.round_to(P) * cpow(base.mu, -n, P);
}

BigComplex continued_qn(const BackwardOrbit& orbit, long n, const BigComplex& cp, Prec P) {
  if (n < 0 || n > orbit.N()) fail(Err::UsageError, "continued_qn: index out of range");
  if (!orbit.q0.is_zero())
    fail(Err::UsageError, "continued_qn: surgery continuation requires q0 = 0");
  BigComplex c = cp.round_to(P);
  BigComplex z(P); // q_0 = 0 continues to itself
  for (long j = 1; j <= n; ++j) {
    const BigComplex& target = orbit.points[static_cast<size_t>(j)];
    z = inverse_step(c, z, BranchSelector::nearest_to(target), P);
    // Branch fidelity: the continued point must stay nearest to its own
    // stored predecessor among all stored orbit points.
    BigFloat dself = dist(z, target.round_to(P));
    for (size_t s = 0; s < orbit.points.size(); ++s) {
      if (static_cast<long>(s) == j) continue;
      if (dist(z, orbit.points[s].round_to(P)) < dself)
        fail(Err::BranchJump, "continued_qn: step " + std::to_string(j) +
                                  " landed nearer stored point " + std::to_string(s));
    }
  }
  return z;
}

long surgery_min_precision(const MisiurewiczData& base, long n) {
  double l2mu = std::log2(abs(base.mu).to_double());
  return static_cast<long>(std::ceil(2.0 * static_cast<double>(n) * l2mu)) + 96;
}

std::pair<BigComplex, BigFloat> solve_surgery_step(const MisiurewiczData& base,
                                                   const BackwardOrbit& orbit, long n,
                                                   const BigComplex& seed, Prec P) {
  long floor_bits = surgery_min_precision(base, n);
  if (P < floor_bits)
    fail(Err::PrecisionTooLow, "surgery: entry n = " + std::to_string(n) +
                                   " requires P >= 2*n*log2|mu| + 96 = " +
                                   std::to_string(floor_bits) + " bits (got " +
                                   std::to_string(P) + ")");
  long m_track = orbit.m_track;
  auto H = [&](const BigComplex& cp) {
    BigComplex r = iterate_value(cp, BigComplex(P), m_track, P);
    return r - continued_qn(orbit, n, cp, P);
  };
  BigFloat h = BigFloat::pow2(-(P / 3), P);
  BigComplex hstep(h, BigFloat(P));
  BigComplex two_h(h * 2l, BigFloat(P));
  BigFloat conv_tol = BigFloat::pow2(-(P - 16), P);
  BigFloat one = BigFloat::from_long(1, P);
  BigFloat big = BigFloat::pow2(64, P);

  BigComplex c = seed.round_to(P);
  bool converged = false;
  for (int it = 0; it < 200 && !converged; ++it) {
    if (abs(c) > big) fail(Err::NoConvergence, "solve_surgery_step: iterate escaped");
    BigComplex Hc = H(c);
    BigComplex dH = (H(c + hstep) - H(c - hstep)) / two_h;
    if (abs(dH) < BigFloat::pow2(-(P - 16), P))
      fail(Err::DerivativeVanishes, "solve_surgery_step: dH/dc ~ 0");
    BigComplex step = Hc / dH;
    c = c - step;
    if (abs(step) < conv_tol * max(one, abs(c))) converged = true;
  }
  if (!converged)
    fail(Err::NoConvergence, "solve_surgery_step: no convergence after 200 iterations");
  return {c, abs(H(c))};
}

namespace {

// Annulus metric: min over k in {-1,0,1} of |a - b mu^k|.
BigFloat annulus_dist(const BigComplex& a, const BigComplex& b, const BigComplex& mu, Prec P) {
  BigFloat d = dist(a, b);
  d = min(d, dist(a, b * mu));
  d = min(d, dist(a, b / mu));
  return d;
}

} // namespace

SurgerySequence build_sequence(const MisiurewiczData& base, const BackwardOrbit& orbit,
                               long n_from, long n_to, Prec P) {
  long p = base.p;
  long n_start = ((n_from + p - 1) / p) * p; // first multiple of p >= n_from
  if (n_from < 1 || n_start > n_to)
    fail(Err::UsageError, "build_sequence: empty index range [" + std::to_string(n_from) + ", " +
                              std::to_string(n_to) + "] for period " + std::to_string(p));
  if (n_to > orbit.N())
    fail(Err::UsageError, "build_sequence: n_to exceeds the stored backward orbit length");

  SurgerySequence seq;
  seq.base = base;

  BigFloat x_err(P);
  BigComplex x0 = limit_x(orbit, &x_err);
  BigComplex mu = base.mu.round_to(P);
  BigComplex c = base.c.round_to(P);

  BigComplex running_x = x0;
  BigComplex prev_t(P);
  bool have_prev = false;

  for (long n = n_start; n <= n_to; n += p) {
    long cycles = n / p;
    BigComplex predicted = predict_seed(base, running_x, cycles, P);
    BigComplex cn(P);
    BigFloat res(P);
    if (!have_prev) {
      // Bootstrap: 8 seeds on the circle |c' - c| = |x0| |mu|^-cycles, keep
      // the root nearest the predicted parameter.
      BigFloat radius = abs(running_x) * abs(cpow(mu, -cycles, P));
      bool found = false;
      BigFloat best_d(P);
      for (int j = 0; j < 8; ++j) {
        double ang = 2.0 * 3.14159265358979323846 * j / 8.0;
        BigComplex dir = BigComplex::from_double(std::cos(ang), std::sin(ang), P);
        BigComplex seed = c + dir * radius;
        try {
          auto [root, r] = solve_surgery_step(base, orbit, n, seed, P);
          BigFloat d = dist(root, predicted);
          if (!found || d < best_d) {
            found = true;
            best_d = d;
            cn = root;
            res = r;
          }
        } catch (const Error&) {
          // a failed seed is fine as long as one succeeds
        }
      }
      if (!found)
        fail(Err::NoConvergence, "build_sequence: bootstrap failed for n = " + std::to_string(n));
    } else {
      auto [root, r] = solve_surgery_step(base, orbit, n, predicted, P);
      cn = root;
      res = r;
    }
    BigComplex t = (cn - c) * cpow(mu, cycles, P);
    if (have_prev) seq.xError = dist(t, prev_t);
    seq.entries.push_back({n, cn, res, t});
    running_x = t;
    prev_t = t;
    have_prev = true;
  }

  seq.xEstimate = prev_t;
  if (seq.entries.size() == 1) seq.xError = abs(x_err);

  // Cross-check against the backward module's limit: equal in E_mu.
  BigComplex a = reduce_to_annulus(seq.xEstimate, mu, P);
  BigComplex b = reduce_to_annulus(x0, mu, P);
  BigFloat bound = (seq.xError + x_err) * abs(mu) + BigFloat::pow2(-(P / 2), P);
  if (annulus_dist(a, b, mu, P) > bound)
    fail(Err::InconsistentLimit,
         "build_sequence: annulus-reduced t-limit disagrees with limit_x beyond error bounds");
  return seq;
}

bool in_mandelbrot(const BigComplex& c, long maxIter, const BigFloat& bailout, Prec P) {
  if (maxIter < 1) fail(Err::UsageError, "in_mandelbrot: maxIter must be >= 1");
  // Fast path: at double precision the escape test is exact enough for
  // classification windows well above 1e-14; used by grid sampling.
  if (P <= 53) {
    double cr = c.re.to_double(), ci = c.im.to_double();
    double b2 = bailout.to_double();
    b2 *= b2;
    double zr = 0.0, zi = 0.0;
    for (long j = 0; j < maxIter; ++j) {
      double r2 = zr * zr - zi * zi + cr;
      zi = 2.0 * zr * zi + ci;
      zr = r2;
      if (zr * zr + zi * zi > b2) return false;
    }
    return true;
  }
  BigComplex cc = c.round_to(P);
  BigComplex z(P);
  BigFloat b2 = sqr(bailout.round_to(P));
  for (long j = 0; j < maxIter; ++j) {
    z = z * z + cc;
    if (!z.is_finite()) return false;
    if (norm2(z) > b2) return false;
  }
  return true;
}

} // namespace qdyn
