#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qdyn/backward.hpp"
#include "qdyn/misiurewicz.hpp"

namespace qdyn {

// ---------------------------------------------------------------------------
// Point clouds in the plane
// ---------------------------------------------------------------------------

// Axis-aligned rectangle [x0,x1] x [y0,y1].
struct Rect {
  BigFloat x0, x1, y0, y1;
  bool nondegenerate() const { return x0 < x1 && y0 < y1; }
};

// Finite planar sample with bookkeeping about how it was produced.
//  - resolution: declared spacing floor; no two points of the cloud lie
//    closer than resolution/4 (enforced at construction).
//  - coverage:   empirical mesh estimate (max over points of the distance to
//    its nearest neighbour), as a double; 0 when the cloud has < 2 points.
struct PointCloud {
  std::vector<BigComplex> points;
  std::string source;       // "julia" | "mandelbrot-boundary" | ...
  double resolution = 0.0;  // declared spacing floor
  double coverage = 0.0;    // empirical mesh (max nearest-neighbour gap)
  Prec precision = 0;
  size_t size() const { return points.size(); }
};

// Empirical mesh of a planar sample: max over points of the nearest-neighbour
// distance, estimated in double precision (sorted sweep with a +/- window).
// Returns 0 for clouds with fewer than two points.
double coverage_estimate(const std::vector<BigComplex>& pts);

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

// Sample `count` points of the Julia set J(f_c) by the inverse-iteration
// random walk started at a repelling fixed point (beta when repelling, else
// alpha; NoRepellingSeed when neither is). The walk draws branch signs from
// a 64-bit LCG seeded with seedState, discards a 32-step burn-in, and keeps
// a candidate only when it is at least resolution/4 away from every point
// kept so far (resolution = 16/count).  Deterministic for fixed arguments.
PointCloud sample_julia(const BigComplex& c, long count, std::uint64_t seedState, Prec P);

// Classify the cells of the h-grid on `window` with the in_mandelbrot
// predicate (maxIter iterations, bailout 2) and return the centers of the
// boundary cells — cells whose flag differs from an existing 4-neighbour's.
// Row-major (y outer, x inner) order; EmptyWindow when no cell qualifies.
PointCloud sample_mandelbrot_boundary(const Rect& window, const BigFloat& h, long maxIter, Prec P);

// ---------------------------------------------------------------------------
// Annulus-model images and Hausdorff distances
// ---------------------------------------------------------------------------

// Map a planar cloud near `center` into the annulus model of E_mu:
// keep the points with 0 < |z - center| <= windowRadius, send each to
// reduce_to_annulus(preFactor * (z - center), mu) and record the reduction
// exponent. AllPointsFiltered when nothing survives the window filter.
AnnulusCloud rescale_to_annulus(const PointCloud& cloud, const BigComplex& center,
                                const BigComplex& mu, const BigComplex& preFactor,
                                const BigFloat& windowRadius, Prec P);

// Hausdorff distance between planar clouds (Euclidean metric). Exact in the
// working precision: the accelerated sweep evaluates the same minima as the
// brute-force double loop and returns a bit-identical result.
BigFloat hausdorff(const std::vector<BigComplex>& A, const std::vector<BigComplex>& B);

// Hausdorff distance between annulus clouds for the metric
// d(z, w) = min over k in {-1, 0, 1} of |z - w mu^k|  on representatives.
BigFloat hausdorff_annulus(const AnnulusCloud& A, const AnnulusCloud& B);

// ---------------------------------------------------------------------------
// Tan Lei similarity report
// ---------------------------------------------------------------------------

struct TanLeiParams {
  long depth = 13;               // Julia walk sample size = 2^depth
  long n_from = 4;               // shallowest shell index
  long n_to = 7;                 // deepest shell index (n_from == n_to: cross only)
  double h = 0.0025;             // M-side grid step relative to the window radius
  long maxIter = 0;              // 0: choose 64 + 48 * n_to automatically
  std::uint64_t seedState = 1;   // LCG seed for the Julia walk
};

struct TanLeiReport {
  // Cumulative-zoom self-similarity series: seriesJ[i] pairs n with
  // d_H(B_n, B_{n+1}) in the annulus model of the Julia side; seriesM is the
  // Mandelbrot-side analogue. Empty when n_from == n_to.
  std::vector<std::pair<long, double>> seriesJ;
  std::vector<std::pair<long, double>> seriesM;
  double cross = 0.0;   // d_H(deepest Julia image, deepest Mandelbrot image)
  double resJ = 0.0;    // empirical mesh of the deepest Julia-side image
  double resM = 0.0;    // empirical mesh of the deepest Mandelbrot-side image
  double epsJ = 0.0;    // Julia window radius actually used
  double epsM = 0.0;    // Mandelbrot window radius actually used
  long juliaCount = 0;    // points in the Julia-side zoom cloud
  long boundaryCount = 0; // boundary cells found on the M side
  TanLeiParams params;
  Prec precision = 0;
};

// Quantitative Tan Lei check at a Misiurewicz parameter: build annulus-model
// zooms of J(f_c) around the landing point (preFactor 1) and of the boundary
// of M around c (preFactor nu), with window radii
//   epsJ = |mu|^{-3} * orbit_separation,   epsM = epsJ / |nu|,
// form the cumulative shell images B_n (reduction exponent <= n) for n in
// [n_from, n_to], and measure the successive Hausdorff distances plus the
// cross distance between the deepest images of the two sides.
TanLeiReport tan_lei_report(const MisiurewiczData& data, const TanLeiParams& params, Prec P);

// ---------------------------------------------------------------------------
// Threading
// ---------------------------------------------------------------------------

// Worker-thread count for the grid classification and Hausdorff sweeps
// (default 1; results are independent of the setting).
void set_threads(int n);
int get_threads();

} // namespace qdyn
