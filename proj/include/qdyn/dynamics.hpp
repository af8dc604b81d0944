#pragma once
#include <vector>

#include "qdyn/bigcomplex.hpp"

namespace qdyn {

// Forward orbit segment of f_c(z) = z^2 + c.
struct OrbitSegment {
  BigComplex c;
  BigComplex z0;
  std::vector<BigComplex> points; // z0 ... z_n
};

// Resolves the sign ambiguity of a single inverse step.
struct BranchSelector {
  enum class Kind { Principal, NearestTo, SignSequence };
  Kind kind = Kind::Principal;
  BigComplex target;      // NearestTo
  std::vector<int> signs; // SignSequence: +1 principal, -1 negated

  static BranchSelector principal() { return BranchSelector{}; }
  static BranchSelector nearest_to(BigComplex t) {
    BranchSelector b;
    b.kind = Kind::NearestTo;
    b.target = std::move(t);
    return b;
  }
  static BranchSelector sign_sequence(std::vector<int> s) {
    BranchSelector b;
    b.kind = Kind::SignSequence;
    b.signs = std::move(s);
    return b;
  }
};

// All routines compute at precision P: inputs are rounded into P-bit working
// copies and every intermediate is carried at P bits (round-to-nearest).

OrbitSegment iterate(const BigComplex& c, const BigComplex& z0, long n, Prec P);

// Single forward value f_c^n(z0) without storing the orbit.
BigComplex iterate_value(const BigComplex& c, const BigComplex& z0, long n, Prec P);

// d/dc f_c^n(0) via d_{j+1} = 2 z_j d_j + 1, d_0 = 0.
BigComplex param_derivative(const BigComplex& c, long n, Prec P);

// f_c^n(0) and d/dc f_c^n(0) in one pass.
void critical_orbit_and_derivative(const BigComplex& c, long n, Prec P, BigComplex& z_out,
                                   BigComplex& d_out);

// Newton solve of f_c^p(z) = z from seed. Cap 200 iterations; converged when
// |dz| < 2^-(P-16) * max(1,|z|); diverged (NoConvergence) when |z| > 2^64.
BigComplex newton_periodic(const BigComplex& c, long p, const BigComplex& seed, Prec P);

// (f_c^p)'(z) = prod 2 z_j along the orbit of z; NotPeriodic if the orbit of
// z fails to close up after p steps.
BigComplex multiplier(const BigComplex& c, const BigComplex& z, long p, Prec P);

// Parameter derivative of the analytically continued periodic point:
// p'(c) = e_p / (1 - mu), e_{j+1} = 2 zeta_j e_j + 1. ParabolicOrbit if
// |1 - mu| is below tolerance 2^-(P/2).
BigComplex periodic_point_param_derivative(const BigComplex& c, const BigComplex& z, long p, Prec P);

// One inverse step: returns q with q^2 + c = z, branch chosen by the
// selector (SignSequence selectors consume signs[step % size]).
BigComplex inverse_step(const BigComplex& c, const BigComplex& z, const BranchSelector& branch,
                        Prec P, long step = 0);

} // namespace qdyn
