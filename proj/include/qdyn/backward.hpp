#pragma once
#include <vector>

#include "qdyn/misiurewicz.hpp"

namespace qdyn {

// Deterministic generating rule for the per-step branch selectors of a
// backward orbit.
struct BranchPolicy {
  enum class Kind {
    CycleTargets, // step j: NearestTo(O[(j-1+phase) mod p])
    Principal,    // principal branch every step
    Signs,        // explicit +-1 schedule, cyclic
  };
  Kind kind = Kind::CycleTargets;
  long phase = 0;
  std::vector<int> signs;

  static BranchPolicy cycle(long phase = 0) {
    BranchPolicy b;
    b.kind = Kind::CycleTargets;
    b.phase = phase;
    return b;
  }
  static BranchPolicy principal() {
    BranchPolicy b;
    b.kind = Kind::Principal;
    return b;
  }
  static BranchPolicy sign_schedule(std::vector<int> s) {
    BranchPolicy b;
    b.kind = Kind::Signs;
    b.signs = std::move(s);
    return b;
  }

  BranchSelector selector_for(long step, const MisiurewiczData& data) const;
};

// Branch-tracked backward orbit q_0, q_1, ... with f(q_{j+1}) = q_j,
// converging to the repelling orbit O. The scaled tail lives on the
// subsequence of indices divisible by p (one multiplier factor per full
// cycle): s_k = mu^k (q_{pk} - tracked), where `tracked` is the orbit point
// that subsequence approaches.
struct BackwardOrbit {
  MisiurewiczData base;
  BigComplex q0;
  long q0_itinerary = 0; // j with f^j(q0) = 0 (0 when q0 = 0)
  BranchPolicy policy;
  std::vector<BigComplex> points; // q_0 ... q_N
  std::vector<BigComplex> scaled; // s_k for k = 0 .. floor(N/p)
  BigComplex tracked;             // cycle point of the k*p subsequence
  long track_index = 0;           // index of tracked in O
  long m_track = 0;               // landing time of tracked = m + track_index
  Prec precision = 0;

  long N() const { return static_cast<long>(points.size()) - 1; }
};

// Precision floor: P >= 2 N log2|mu| + 64, else PrecisionTooLow.
long backward_min_precision(const MisiurewiczData& data, long N);

BackwardOrbit backward_orbit(const MisiurewiczData& data, const BigComplex& q0,
                             const BranchPolicy& policy, long N, Prec P, long q0_itinerary = 0);

// nu evaluated at the orbit's tracked cycle point:
// param_derivative(c, m_track) - periodic_point_param_derivative(c, tracked, p).
BigComplex nu_at_tracked(const BackwardOrbit& orbit, Prec P);

// Tail estimate of x = lim s_k / nu_tracked; err_out (optional) receives the
// bound |s_K - s_(K-1)| / |nu|. NotConverged unless the scaled tail is Cauchy
// (>= 4 terms, final successive-difference ratios < 1).
BigComplex limit_x(const BackwardOrbit& orbit, BigFloat* err_out = nullptr);

// z mu^k for the unique integer k with 1 <= |z mu^k| < |mu|. ZeroInput if
// z = 0. k_out (optional) receives k.
BigComplex reduce_to_annulus(const BigComplex& z, const BigComplex& mu, Prec P,
                             long* k_out = nullptr);

// Finite sample of a subset of E_mu = C*/<mu>, stored as fundamental-annulus
// representatives 1 <= |z| < |mu|. `exps` (when populated) records, per
// point, the exponent k that carried it into the annulus — i.e. the depth of
// the shell it came from.
struct AnnulusCloud {
  BigComplex mu;
  std::vector<BigComplex> points;
  std::vector<long> exps;
  double resolution = 0.0; // declared sampling resolution estimate
};

// Smallest separation scale around the periodic orbit: min distance between
// cycle points and from cycle points to the preperiodic critical orbit
// (for p = 1 the distance from the fixed point to 0 enters instead).
BigFloat orbit_separation(const MisiurewiczData& data, Prec P);

// Samples the asymptotic self-similar limit set: all iterated preimages of 0
// down to `depth` that fall within the cut-off radius of the landing point,
// each reduced to the fundamental annulus. CapExceeded if 2^depth > cap.
AnnulusCloud sample_limit_set(const MisiurewiczData& data, long depth, long cap, Prec P);

} // namespace qdyn
