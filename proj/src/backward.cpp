#include "qdyn/backward.hpp"

#include <algorithm>
#include <cmath>

namespace qdyn {

BranchSelector BranchPolicy::selector_for(long step, const MisiurewiczData& data) const {
  switch (kind) {
    case Kind::Principal:
      return BranchSelector::principal();
    case Kind::Signs: {
      if (signs.empty()) fail(Err::UsageError, "branch policy: empty sign schedule");
      return BranchSelector::sign_sequence(signs);
    }
    case Kind::CycleTargets: {
      long p = data.p;
      long idx = ((step - 1 + phase) % p + p) % p;
      return BranchSelector::nearest_to(data.O[static_cast<size_t>(idx)]);
    }
  }
  fail(Err::UsageError, "branch policy: unknown kind");
}

long backward_min_precision(const MisiurewiczData& data, long N) {
  double l2mu = std::log2(abs(data.mu).to_double());
  return static_cast<long>(std::ceil(2.0 * static_cast<double>(N) * l2mu)) + 64;
}

namespace {

BigFloat dist_to_orbit(const BigComplex& z, const std::vector<BigComplex>& O, size_t* idx = nullptr) {
  BigFloat best = dist(z, O[0]);
  size_t bi = 0;
  for (size_t i = 1; i < O.size(); ++i) {
    BigFloat d = dist(z, O[i]);
    if (d < best) {
      best = d;
      bi = i;
    }
  }
  if (idx) *idx = bi;
  return best;
}

} // namespace

BigFloat orbit_separation(const MisiurewiczData& data, Prec P) {
  OrbitSegment seg = iterate(data.c, BigComplex(P), data.m, P);
  BigFloat sep = abs(data.O[0]); // distance to the critical point 0
  for (size_t i = 0; i < data.O.size(); ++i) {
    for (size_t j = i + 1; j < data.O.size(); ++j) sep = min(sep, dist(data.O[i], data.O[j]));
    for (long t = 0; t < data.m; ++t) sep = min(sep, dist(data.O[i], seg.points[static_cast<size_t>(t)]));
  }
  return sep;
}

BackwardOrbit backward_orbit(const MisiurewiczData& data, const BigComplex& q0,
                             const BranchPolicy& policy, long N, Prec P, long q0_itinerary) {
  if (N < 0) fail(Err::UsageError, "backward_orbit: N must be >= 0");
  long floor_bits = backward_min_precision(data, N);
  if (P < floor_bits)
    fail(Err::PrecisionTooLow, "backward: an N-step orbit requires P >= 2*N*log2|mu| + 64 = " +
                                   std::to_string(floor_bits) + " bits (got " + std::to_string(P) +
                                   ")");

  BackwardOrbit orbit;
  orbit.base = data;
  orbit.q0 = q0.round_to(P);
  orbit.q0_itinerary = q0_itinerary;
  orbit.policy = policy;
  orbit.precision = P;

  BigComplex c = data.c.round_to(P);
  std::vector<BigComplex> O;
  O.reserve(data.O.size());
  for (const auto& o : data.O) O.push_back(o.round_to(P));

  orbit.points.reserve(static_cast<size_t>(N) + 1);
  orbit.points.push_back(orbit.q0);

  BigFloat sep = orbit_separation(data, P);
  BigFloat contraction_gate = sep / 4l;
  bool past_burn_in = false;
  BigFloat prev_dist(P);

  BigComplex z = orbit.q0;
  for (long j = 1; j <= N; ++j) {
    BranchSelector sel = policy.selector_for(j, data);
    z = inverse_step(c, z, sel, P, j - 1);
    orbit.points.push_back(z);
    BigFloat d = dist_to_orbit(z, O);
    if (past_burn_in && !(d < prev_dist))
      fail(Err::ContractionLost, "backward_orbit: dist(q_" + std::to_string(j) +
                                     ", O) stopped decreasing");
    if (!past_burn_in && d < contraction_gate) past_burn_in = true;
    prev_dist = d;
  }

  // Tracked cycle point: the one the (indices divisible by p) subsequence
  // approaches.
  long p = data.p;
  long J = (N / p) * p;
  size_t ti = 0;
  dist_to_orbit(orbit.points[static_cast<size_t>(J)], O, &ti);
  orbit.track_index = static_cast<long>(ti);
  orbit.tracked = O[ti];
  orbit.m_track = data.m + orbit.track_index;

  // Scaled tail: one multiplier factor per full cycle.
  BigComplex mu = data.mu.round_to(P);
  BigComplex mupow = BigComplex::from_long(1, 0, P);
  for (long k = 0; k * p <= N; ++k) {
    orbit.scaled.push_back(mupow * (orbit.points[static_cast<size_t>(k * p)] - orbit.tracked));
    mupow = mupow * mu;
  }
  return orbit;
}

BigComplex nu_at_tracked(const BackwardOrbit& orbit, Prec P) {
  BigComplex r = param_derivative(orbit.base.c, orbit.m_track, P);
  BigComplex q = periodic_point_param_derivative(orbit.base.c, orbit.tracked, orbit.base.p, P);
  return r - q;
}

BigComplex limit_x(const BackwardOrbit& orbit, BigFloat* err_out) {
  Prec P = orbit.precision;
  const std::vector<BigComplex>& s = orbit.scaled;
  if (s.size() < 4) fail(Err::NotConverged, "limit_x: fewer than 4 scaled tail terms");
  size_t K = s.size() - 1;
  // Cauchy check on the last few successive differences.
  size_t checks = std::min<size_t>(3, K - 1);
  for (size_t t = 0; t < checks; ++t) {
    BigFloat d1 = dist(s[K - t], s[K - t - 1]);
    BigFloat d0 = dist(s[K - t - 1], s[K - t - 2]);
    if (!(d1 < d0))
      fail(Err::NotConverged, "limit_x: scaled tail not Cauchy (|ds| ratio >= 1 at k=" +
                                  std::to_string(K - t) + ")");
  }
  BigComplex nu_t = nu_at_tracked(orbit, P);
  BigComplex x = s[K] / nu_t;
  BigFloat err = dist(s[K], s[K - 1]) / abs(nu_t);
  if (err_out) *err_out = err;
  if (abs(x) < BigFloat::pow2(-(P - 24), P))
    fail(Err::NotConverged, "limit_x: estimate is numerically zero");
  return x;
}

BigComplex reduce_to_annulus(const BigComplex& z, const BigComplex& mu, Prec P, long* k_out) {
  BigComplex zz = z.round_to(P);
  if (zz.is_zero()) fail(Err::ZeroInput, "reduce_to_annulus: z = 0");
  BigComplex m = mu.round_to(P);
  BigFloat am = abs(m);
  BigFloat one = BigFloat::from_long(1, P);
  if (!(am > one)) fail(Err::UsageError, "reduce_to_annulus: requires |mu| > 1");
  // Initial estimate k ~ -log|z|/log|mu|, then exact adjustment.
  BigFloat lz = log(abs(zz));
  BigFloat lm = log(am);
  long k = (-(lz / lm)).to_long_floor();
  BigComplex w = zz * cpow(m, k, P);
  while (!(abs(w) < am)) {
    w = w / m;
    --k;
  }
  while (abs(w) < one) {
    w = w * m;
    ++k;
  }
  if (k_out) *k_out = k;
  return w;
}

AnnulusCloud sample_limit_set(const MisiurewiczData& data, long depth, long cap, Prec P) {
  if (depth < 0) fail(Err::UsageError, "sample_limit_set: depth must be >= 0");
  if (cap < 1) fail(Err::UsageError, "sample_limit_set: cap must be >= 1");
  if (depth >= 62 || (1L << depth) > cap)
    fail(Err::CapExceeded, "sample_limit_set: preimage tree of 2^" + std::to_string(depth) +
                               " points exceeds cap " + std::to_string(cap));

  BigComplex c = data.c.round_to(P);
  BigComplex P0 = data.O[0].round_to(P);
  BigComplex mu = data.mu.round_to(P);
  BigFloat sep = orbit_separation(data, P);
  BigFloat am = abs(mu);
  BigFloat eps = sep / (am * am); // cut-off radius |mu|^-2 * separation scale
  BigFloat tiny = BigFloat::pow2(-(P - 24), P);

  AnnulusCloud cloud;
  cloud.mu = mu;

  // Depth-first traversal of the preimage tree of 0, contracting branch
  // (child nearer O) first.
  struct Node {
    BigComplex z;
    long level;
  };
  std::vector<Node> stack;
  stack.push_back({BigComplex(P), 0});
  std::vector<BigComplex> O;
  for (const auto& o : data.O) O.push_back(o.round_to(P));

  while (!stack.empty()) {
    Node n = std::move(stack.back());
    stack.pop_back();
    BigFloat d = dist(n.z, P0);
    if (d <= eps && d > tiny) cloud.points.push_back(reduce_to_annulus(n.z - P0, mu, P));
    if (n.level >= depth) continue;
    BigComplex r = csqrt_principal(n.z - c);
    if (r.is_zero()) continue; // branch point: single preimage, outside J generically
    BigComplex a = r, b = -r;
    bool a_first = dist_to_orbit(a, O) <= dist_to_orbit(b, O);
    // Push the contracting branch last so it is expanded first (LIFO).
    if (a_first) {
      stack.push_back({std::move(b), n.level + 1});
      stack.push_back({std::move(a), n.level + 1});
    } else {
      stack.push_back({std::move(a), n.level + 1});
      stack.push_back({std::move(b), n.level + 1});
    }
  }

  // Resolution estimate (double, sorted-window nearest neighbour).
  if (cloud.points.size() >= 2) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(cloud.points.size());
    for (const auto& z : cloud.points) pts.push_back({z.re.to_double(), z.im.to_double()});
    std::sort(pts.begin(), pts.end());
    double worst = 0.0;
    for (size_t i = 0; i < pts.size(); ++i) {
      double best = 1e300;
      size_t lo = i >= 32 ? i - 32 : 0;
      size_t hi = std::min(pts.size(), i + 33);
      for (size_t j = lo; j < hi; ++j) {
        if (j == i) continue;
        double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
        best = std::min(best, std::hypot(dx, dy));
      }
      worst = std::max(worst, best);
    }
    cloud.resolution = worst;
  }
  return cloud;
}

} // namespace qdyn
