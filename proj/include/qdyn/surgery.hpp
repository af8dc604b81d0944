#pragma once
#include <utility>
#include <vector>

#include "qdyn/backward.hpp"

namespace qdyn {

// One solved surgery parameter: c_n makes the critical value land exactly on
// the branch-continued backward point q_n after m_track steps, so the
// critical orbit of c_n is periodic (postcritically finite).
struct SurgeryEntry {
  long n = 0;          // backward-orbit index of the matched point
  BigComplex c_n;
  BigFloat residual;   // |H(c_n)| after Newton
  BigComplex t_n;      // (c_n - c) mu^(n/p), per-cycle convention
};

struct SurgerySequence {
  MisiurewiczData base;
  std::vector<SurgeryEntry> entries;
  BigComplex xEstimate; // tail t_n
  BigFloat xError;      // last successive difference |t_last - t_prev|
};

// Seed for the Newton solve of entry n (n in per-cycle units here):
// c + x mu^-n.
BigComplex predict_seed(const MisiurewiczData& base, const BigComplex& x, long n, Prec P);

// Branch continuation of the stored backward orbit at parameter cp: n inverse
// steps from q_0 = 0, each branch chosen nearest to the stored orbit point.
// BranchJump if a continued point lands nearer a different stored point than
// its own predecessor.
BigComplex continued_qn(const BackwardOrbit& orbit, long n, const BigComplex& cp, Prec P);

// Precision floor for entry n: P >= 2 n log2|mu| + 96, else PrecisionTooLow.
long surgery_min_precision(const MisiurewiczData& base, long n);

// Newton solve of H(c') = f_c'^m_track(0) - q_n(c') = 0 from the seed,
// derivative by central finite differences at step 2^-(P/3). Returns
// (c_n, |H(c_n)|).
std::pair<BigComplex, BigFloat> solve_surgery_step(const MisiurewiczData& base,
                                                   const BackwardOrbit& orbit, long n,
                                                   const BigComplex& seed, Prec P);

// Solves entries for every index n in [n_from, n_to] divisible by p.
// The first entry bootstraps from a seed grid around c + x0 mu^-(n/p) with
// x0 = limit_x(orbit); later entries are seeded by predict_seed with the
// running t estimate. Cross-checks the final t against limit_x (they must
// agree after reduce_to_annulus; InconsistentLimit otherwise).
SurgerySequence build_sequence(const MisiurewiczData& base, const BackwardOrbit& orbit,
                               long n_from, long n_to, Prec P);

// True iff |f_c^j(0)| <= bailout for all j <= maxIter (true is not a
// certificate of membership; false is a certificate of escape).
bool in_mandelbrot(const BigComplex& c, long maxIter, const BigFloat& bailout, Prec P);

} // namespace qdyn
