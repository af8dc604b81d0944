#pragma once
#include <string>
#include <vector>

#include "qdyn/dynamics.hpp"

namespace qdyn {

// A certified Misiurewicz parameter: the critical point 0 of f_c is strictly
// preperiodic with preperiod k and period p. The orbit O is stored starting
// at the landing point f_c^m(0); for this family m = k always (asserted at
// construction).
struct MisiurewiczData {
  BigComplex c;
  long k = 0; // preperiod (minimal)
  long p = 0; // period (minimal)
  long m = 0; // landing time: least m with f^m(0) in O (= k)
  std::vector<BigComplex> O; // O[i] = f^(m+i)(0), i = 0..p-1
  BigComplex mu;             // multiplier of O, |mu| > 1
  BigComplex nu;             // r'(0) - p'(0), nonzero
  BigFloat residual;         // |f^(k+p)(0) - f^k(0)| at solve time
  Prec precision = 0;

  const BigComplex& landing() const { return O[0]; }
};

// Newton solve of G(c) = f_c^(k+p)(0) - f_c^k(0) from the seed, followed by
// certification (minimality, strict preperiodicity, repelling multiplier)
// and computation of the derived fields.
MisiurewiczData solve_misiurewicz(long k, long p, const BigComplex& seed, Prec P);

// nu = param_derivative(c, m) - periodic_point_param_derivative(c, f^m(0), p).
BigComplex nu(const MisiurewiczData& data, Prec P);

// Central finite-difference oracle for nu at step h = 2^-(P/3): the gap
// g(c) = f_c^m(0) - z_per(c) differentiated numerically, with z_per the
// Newton-continued periodic point.
BigComplex nu_central_difference(const MisiurewiczData& data, Prec P);

struct VerifyItem {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct VerifyReport {
  std::vector<VerifyItem> items;
  bool all_pass = true;
};

// Re-checks every MisiurewiczData invariant at tolerance tol; failures are
// reported, never thrown.
VerifyReport verify(const MisiurewiczData& data, double tol);

} // namespace qdyn
