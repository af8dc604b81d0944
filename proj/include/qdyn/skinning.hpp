#pragma once
#include <vector>

#include "qdyn/bigfloat.hpp"

namespace qdyn {

// Real-slice state for the skinning iteration of the critically periodic
// family f(z) = -v z^2 + v. Conceptually the tuple is
//   (w_0 = 0, w_1 = 1, w_2, ..., w_{n-2}, v)
// with the two leading constants implicit; storage holds w_2..w_{n-2}
// followed by v (so n-2 reals in total, just v when n = 3).
struct SkinningState {
  long n = 0;
  std::vector<BigFloat> w; // w[0..n-4] = w_2..w_{n-2}; w.back() = v
  Prec precision = 0;

  const BigFloat& v() const { return w.back(); }
};

// Membership in the invariant slice T: 1 < w_2 < ... < w_{n-2} and v < 0.
// Returns false (never throws) so callers can decide.
bool in_domain(const SkinningState& s);

// One application of the skinning map on the real slice:
//   (0, 1, w_2, ..., w_{n-2}, v) ->
//   (0, 1, sqrt(1-v)/sqrt(-v), sqrt(w_2-v)/sqrt(-v), ...,
//    sqrt(w_{n-3}-v)/sqrt(-v), -sqrt(w_{n-2}-v)/sqrt(-v))
// OutOfDomain if any radicand <= 0 or the output leaves T.
SkinningState sigma(const SkinningState& s);

// Plain fixed-point iteration of sigma from the standard seed
// (w_j = 1 + (j-1)/10, v = -1.4) until the sup-norm change is < tol.
// Cap 10000 iterations.
SkinningState solve_fixed_point(long n, Prec P, const BigFloat& tol);

struct VRow {
  long n;
  BigFloat v;
  BigFloat c; // c = -v^2
};
std::vector<VRow> v_table(long n_min, long n_max, Prec P, const BigFloat& tol);

struct LimitSeries {
  std::vector<BigFloat> s; // s_n = (v_n + sqrt 2) * 4^n, n = 3..n_max
  long n_first = 3;
  BigFloat limit; // Richardson-extrapolated
  BigFloat error; // bound from the last two differences
};

// Precision floor: P >= 4 n_max + 64, else PrecisionTooLow.
LimitSeries limit_series(long n_max, Prec P);

} // namespace qdyn
