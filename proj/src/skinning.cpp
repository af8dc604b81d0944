#include "qdyn/skinning.hpp"

#include "qdyn/error.hpp"

namespace qdyn {

bool in_domain(const SkinningState& s) {
  if (s.n < 3 || s.w.size() != static_cast<size_t>(s.n - 2)) return false;
  if (!(s.v().sign() < 0)) return false;
  Prec P = s.precision;
  BigFloat prev = BigFloat::from_long(1, P);
  for (size_t i = 0; i + 1 < s.w.size(); ++i) { // w_2 .. w_{n-2}
    if (!(s.w[i] > prev)) return false;
    prev = s.w[i];
  }
  return true;
}

SkinningState sigma(const SkinningState& s) {
  if (s.n < 3) fail(Err::UsageError, "sigma: n must be >= 3");
  Prec P = s.precision;
  const BigFloat& v = s.v();
  if (!(v.sign() < 0)) fail(Err::OutOfDomain, "sigma: v must be negative");
  BigFloat rv = sqrt(-v);
  BigFloat one = BigFloat::from_long(1, P);

  // Radicands: (1 - v), (w_2 - v), ..., (w_{n-2} - v); the last output
  // coordinate takes the minus sign.
  SkinningState out;
  out.n = s.n;
  out.precision = P;
  out.w.reserve(s.w.size());
  auto pulled = [&](const BigFloat& x) {
    BigFloat rad = x - v;
    if (!(rad.sign() > 0)) fail(Err::OutOfDomain, "sigma: nonpositive radicand");
    return sqrt(rad) / rv;
  };
  // New w_2 from the implicit w_1 = 1; new w_{j+1} from old w_j.
  out.w.push_back(pulled(one));
  for (size_t i = 0; i + 1 < s.w.size(); ++i) out.w.push_back(pulled(s.w[i]));
  // Last coordinate: v' = -sqrt(w_{n-2} - v)/sqrt(-v). For n = 3 the chain
  // degenerates and w_{n-2} = w_1 = 1, i.e. v' = -sqrt(1-v)/sqrt(-v).
  BigFloat last_w = (s.n == 3) ? one : s.w[s.w.size() - 2];
  BigFloat vnew = -(sqrt(last_w - v) / rv);
  if (s.n == 3) {
    out.w.clear();
    out.w.push_back(vnew);
  } else {
    out.w.back() = vnew;
  }
  if (!in_domain(out)) fail(Err::OutOfDomain, "sigma: output left the invariant slice T");
  return out;
}

SkinningState solve_fixed_point(long n, Prec P, const BigFloat& tol) {
  if (n < 3) fail(Err::UsageError, "solve_fixed_point: n must be >= 3");
  SkinningState s;
  s.n = n;
  s.precision = P;
  // Seed: equally spaced w_j = 1 + (j-1)/10 for j = 2..n-2, v = -1.4.
  for (long j = 2; j <= n - 2; ++j)
    s.w.push_back(BigFloat::from_long(1, P) + BigFloat::from_long(j - 1, P) / 10l);
  s.w.push_back(BigFloat::from_double(-1.4, P));
  if (!in_domain(s)) fail(Err::OutOfDomain, "solve_fixed_point: seed outside T");

  for (int it = 0; it < 10000; ++it) {
    SkinningState next = sigma(s);
    BigFloat delta(P);
    for (size_t i = 0; i < s.w.size(); ++i) delta = max(delta, abs(next.w[i] - s.w[i]));
    s = std::move(next);
    if (delta < tol) return s;
  }
  fail(Err::NoConvergence, "solve_fixed_point: no convergence after 10000 iterations");
}

std::vector<VRow> v_table(long n_min, long n_max, Prec P, const BigFloat& tol) {
  if (n_min < 3 || n_min > n_max) fail(Err::UsageError, "v_table: need 3 <= n_min <= n_max");
  std::vector<VRow> rows;
  for (long n = n_min; n <= n_max; ++n) {
    SkinningState s = solve_fixed_point(n, P, tol);
    VRow r{n, s.v(), -sqr(s.v())};
    rows.push_back(std::move(r));
  }
  return rows;
}

LimitSeries limit_series(long n_max, Prec P) {
  long floor_bits = 4 * n_max + 64;
  if (P < floor_bits)
    fail(Err::PrecisionTooLow, "skinning: limit_series requires P >= 4*n_max + 64 = " +
                                   std::to_string(floor_bits) + " bits (got " + std::to_string(P) +
                                   ")");
  if (n_max < 5) fail(Err::UsageError, "limit_series: n_max must be >= 5");
  BigFloat tol = BigFloat::pow2(-(P - 40), P);
  BigFloat sqrt2 = sqrt(BigFloat::from_long(2, P));
  LimitSeries out;
  out.n_first = 3;
  BigFloat four_n = BigFloat::from_long(64, P); // 4^3
  for (long n = 3; n <= n_max; ++n) {
    SkinningState s = solve_fixed_point(n, P, tol);
    out.s.push_back((s.v() + sqrt2) * four_n);
    four_n = four_n * 4l;
  }
  // One Richardson step assuming geometric error decay; ratio estimated from
  // the last three terms.
  size_t K = out.s.size() - 1;
  BigFloat d1 = out.s[K] - out.s[K - 1];
  BigFloat d0 = out.s[K - 1] - out.s[K - 2];
  if (d0.is_zero()) {
    out.limit = out.s[K];
    out.error = abs(d1);
    return out;
  }
  BigFloat rho = d1 / d0;
  BigFloat one = BigFloat::from_long(1, P);
  if (!(abs(rho) < one)) {
    out.limit = out.s[K];
    out.error = abs(d1);
    return out;
  }
  out.limit = out.s[K] + d1 * rho / (one - rho);
  out.error = abs(d1 * rho / (one - rho)) + abs(d1) * BigFloat::from_double(0.0625, P);
  return out;
}

} // namespace qdyn
