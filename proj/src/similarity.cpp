#include "qdyn/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <thread>
#include <utility>

#include "qdyn/dynamics.hpp"

namespace qdyn {

namespace {

int g_threads = 1;

// 64-bit LCG (Knuth MMIX constants); the top bit drives branch choices.
struct Lcg {
  std::uint64_t s;
  bool bit() {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return (s >> 63) != 0;
  }
};

struct Pt2 {
  double x, y;
};

std::vector<Pt2> to_doubles(const std::vector<BigComplex>& pts) {
  std::vector<Pt2> out;
  out.reserve(pts.size());
  for (const auto& z : pts) out.push_back({z.re.to_double(), z.im.to_double()});
  return out;
}

} // namespace

void set_threads(int n) { g_threads = std::max(1, std::min(n, 64)); }
int get_threads() { return g_threads; }

double coverage_estimate(const std::vector<BigComplex>& pts) {
  if (pts.size() < 2) return 0.0;
  std::vector<Pt2> d = to_doubles(pts);
  std::sort(d.begin(), d.end(), [](const Pt2& a, const Pt2& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  });
  double worst2 = 0.0;
  const size_t n = d.size();
  for (size_t i = 0; i < n; ++i) {
    double best2 = std::numeric_limits<double>::infinity();
    for (size_t j = i; j-- > 0;) {
      double dx = d[i].x - d[j].x;
      if (dx * dx >= best2) break;
      double dy = d[i].y - d[j].y;
      best2 = std::min(best2, dx * dx + dy * dy);
    }
    for (size_t j = i + 1; j < n; ++j) {
      double dx = d[j].x - d[i].x;
      if (dx * dx >= best2) break;
      double dy = d[j].y - d[i].y;
      best2 = std::min(best2, dx * dx + dy * dy);
    }
    worst2 = std::max(worst2, best2);
  }
  return std::sqrt(worst2);
}

// ---------------------------------------------------------------------------
// Julia sampling
// ---------------------------------------------------------------------------

PointCloud sample_julia(const BigComplex& c, long count, std::uint64_t seedState, Prec P) {
  if (count < 1) fail(Err::UsageError, "sample_julia: count must be >= 1");

  BigComplex cc = c.round_to(P);
  BigComplex one = BigComplex::from_long(1, 0, P);

  // Repelling fixed point: beta = (1 + sqrt(1-4c))/2, else alpha.
  BigComplex disc = csqrt_principal(one - cc * 4l);
  BigFloat unit = BigFloat::from_long(1, P);
  BigComplex seed(P);
  bool have_seed = false;
  for (int which = 0; which < 2 && !have_seed; ++which) {
    BigComplex cand = (which == 0) ? (one + disc) / 2l : (one - disc) / 2l;
    try {
      cand = newton_periodic(cc, 1, cand, P);
    } catch (const Error&) {
      continue;
    }
    if (abs(cand * 2l) > unit) { // |f'(z)| = |2z| > 1: repelling
      seed = cand;
      have_seed = true;
    }
  }
  if (!have_seed)
    fail(Err::NoRepellingSeed, "sample_julia: neither fixed point of f_c is repelling");

  Lcg rng{seedState};
  auto step = [&](const BigComplex& z) {
    BigComplex w = csqrt_principal(z - cc);
    if (rng.bit()) w = BigComplex(P) - w;
    return w;
  };

  BigComplex z = seed;
  for (int i = 0; i < 32; ++i) z = step(z); // burn-in

  // Greedy thinning: keep a candidate only when it clears the current spacing
  // floor t against every kept point; persistent rejection halves t. The
  // declared resolution is 4 * (final t), so the cloud never holds two points
  // closer than resolution/4.
  std::vector<BigComplex> kept;
  std::vector<Pt2> keptd;
  kept.reserve(static_cast<size_t>(count));
  keptd.reserve(static_cast<size_t>(count));
  double t = 4.0 / static_cast<double>(count);
  long stall = 0;
  long attempts = 0;
  const long cap = 8000000;
  while (static_cast<long>(kept.size()) < count) {
    z = step(z);
    if (++attempts > cap)
      fail(Err::NoConvergence, "sample_julia: sampling walk exceeded the attempt cap");
    Pt2 zd{z.re.to_double(), z.im.to_double()};
    bool ok = true;
    double t2 = t * t;
    for (const Pt2& w : keptd) {
      double dx = zd.x - w.x, dy = zd.y - w.y;
      if (dx * dx + dy * dy < t2) {
        ok = false;
        break;
      }
    }
    if (ok) {
      kept.push_back(z);
      keptd.push_back(zd);
      stall = 0;
    } else if (++stall >= 4096) {
      t *= 0.5;
      stall = 0;
    }
  }

  PointCloud cloud;
  cloud.points = std::move(kept);
  cloud.source = "julia";
  cloud.resolution = 4.0 * t;
  cloud.coverage = coverage_estimate(cloud.points);
  cloud.precision = P;
  return cloud;
}

// ---------------------------------------------------------------------------
// Mandelbrot boundary sampling
// ---------------------------------------------------------------------------

namespace {

// Escape-time classification of one parameter-plane cell center, evaluated in
// double precision: the grids used here are far coarser than double
// resolution, and a fixed arithmetic path keeps the classification
// independent of thread count. Alongside the orbit the derivative dz/dc is
// tracked, giving the standard exterior distance estimate
// dist(c, M) ~ |z|·ln|z| / |z'| at escape (accurate within a small constant
// factor by the Koebe distortion theorem). The orbit is run to a large
// escape radius so the logarithm is well converged. A non-escaping cell gets
// dem = 0 (treated as inside at this depth).
struct CellClass {
  std::int32_t count = 0;  // first index with |z| > 2, or maxIter if none
  double dem = 0.0;        // distance estimate to M; 0 for non-escaping
};

CellClass classify_cell(double cr, double ci, long maxIter) {
  double zr = 0.0, zi = 0.0;   // z
  double dr = 0.0, di = 0.0;   // dz/dc
  CellClass out;
  out.count = static_cast<std::int32_t>(maxIter);
  bool escaped = false;
  for (long i = 0; i < maxIter; ++i) {
    const double r2 = zr * zr, i2 = zi * zi;
    if (!escaped && r2 + i2 > 4.0) {
      escaped = true;
      out.count = static_cast<std::int32_t>(i);
    }
    if (r2 + i2 > 1e10) break;
    const double ndr = 2.0 * (zr * dr - zi * di) + 1.0;
    const double ndi = 2.0 * (zr * di + zi * dr);
    dr = ndr;
    di = ndi;
    zi = 2.0 * zr * zi + ci;
    zr = r2 - i2 + cr;
  }
  if (escaped) {
    const double az = std::sqrt(zr * zr + zi * zi);
    const double ad = std::sqrt(dr * dr + di * di);
    out.dem = ad > 0.0 ? az * std::log(az) / ad : std::numeric_limits<double>::infinity();
  }
  return out;
}

} // namespace

PointCloud sample_mandelbrot_boundary(const Rect& window, const BigFloat& h, long maxIter, Prec P) {
  if (!window.nondegenerate()) fail(Err::UsageError, "sample_mandelbrot_boundary: degenerate window");
  if (!(BigFloat::from_long(0, h.precision()) < h))
    fail(Err::UsageError, "sample_mandelbrot_boundary: grid step must be positive");
  if (maxIter < 1) fail(Err::UsageError, "sample_mandelbrot_boundary: maxIter must be >= 1");

  const long nx = ((window.x1 - window.x0) / h).to_long_floor();
  const long ny = ((window.y1 - window.y0) / h).to_long_floor();
  if (nx < 2 || ny < 2)
    fail(Err::UsageError, "sample_mandelbrot_boundary: window shorter than two grid cells");
  if (nx > 100000 || ny > 100000)
    fail(Err::CapExceeded, "sample_mandelbrot_boundary: grid exceeds 100000 cells per side");

  const double x0 = window.x0.to_double();
  const double y0 = window.y0.to_double();
  const double hd = h.to_double();

  std::vector<std::int32_t> counts(static_cast<size_t>(nx) * static_cast<size_t>(ny));
  std::vector<double> dems(counts.size());
  auto classify_rows = [&](long j_begin, long j_end) {
    for (long j = j_begin; j < j_end; ++j) {
      const double ci = y0 + (static_cast<double>(j) + 0.5) * hd;
      std::int32_t* row = counts.data() + static_cast<size_t>(j) * static_cast<size_t>(nx);
      double* drow = dems.data() + static_cast<size_t>(j) * static_cast<size_t>(nx);
      for (long i = 0; i < nx; ++i) {
        const double cr = x0 + (static_cast<double>(i) + 0.5) * hd;
        CellClass cc = classify_cell(cr, ci, maxIter);
        row[i] = cc.count;
        drow[i] = cc.dem;
      }
    }
  };
  const int nt = static_cast<int>(std::min<long>(g_threads, ny));
  if (nt <= 1) {
    classify_rows(0, ny);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nt));
    for (int t = 0; t < nt; ++t) {
      long jb = ny * t / nt, je = ny * (t + 1) / nt;
      pool.emplace_back(classify_rows, jb, je);
    }
    for (auto& th : pool) th.join();
  }

  // Boundary cells, from two complementary detectors:
  //
  //  - the inside/outside flag rim: cells whose non-escaping flag differs
  //    from a 4-neighbour's. This resolves boundary arcs of regions with
  //    grid-visible interior.
  //  - the distance-estimate crest: near a Misiurewicz point M is locally a
  //    measure-zero filament, so no cell center classifies as interior at any
  //    feasible maxIter and the flag rim is empty there. The exterior
  //    distance estimate selects the escaped cells lying within about one
  //    cell of M regardless of the filament's thickness, and that band is
  //    thinned to its crest: along every grid row and every grid column, each
  //    maximal run of band cells keeps only the cell with the smallest
  //    estimated distance. The union over both scan directions follows
  //    filaments of any orientation.
  bool has_interior = false;
  for (std::int32_t v : counts)
    if (v >= maxIter) { has_interior = true; break; }

  std::vector<std::uint8_t> keep(counts.size(), 0);
  if (has_interior) {
    for (long j = 0; j < ny; ++j) {
      for (long i = 0; i < nx; ++i) {
        const bool f = counts[static_cast<size_t>(j) * nx + i] >= maxIter;
        bool b = false;
        if (i > 0 && (counts[static_cast<size_t>(j) * nx + i - 1] >= maxIter) != f) b = true;
        if (!b && i + 1 < nx && (counts[static_cast<size_t>(j) * nx + i + 1] >= maxIter) != f) b = true;
        if (!b && j > 0 && (counts[static_cast<size_t>(j - 1) * nx + i] >= maxIter) != f) b = true;
        if (!b && j + 1 < ny && (counts[static_cast<size_t>(j + 1) * nx + i] >= maxIter) != f) b = true;
        keep[static_cast<size_t>(j) * nx + i] = b ? 1 : 0;
      }
    }
  }

  const double dem_cut = hd;
  auto in_band = [&](size_t idx) {
    return counts[idx] < maxIter && dems[idx] <= dem_cut;
  };
  auto crest_scan = [&](bool columns) {
    const long lines = columns ? nx : ny;
    const long depth_n = columns ? ny : nx;
    auto at = [&](long line, long t) -> size_t {
      return columns ? static_cast<size_t>(t) * nx + line
                     : static_cast<size_t>(line) * nx + t;
    };
    for (long line = 0; line < lines; ++line) {
      long t = 0;
      while (t < depth_n) {
        if (!in_band(at(line, t))) { ++t; continue; }
        long best = t;
        while (t < depth_n && in_band(at(line, t))) {
          if (dems[at(line, t)] < dems[at(line, best)]) best = t;
          ++t;
        }
        keep[at(line, best)] = 1;
      }
    }
  };
  crest_scan(true);
  crest_scan(false);

  PointCloud cloud;
  cloud.source = "mandelbrot-boundary";
  cloud.resolution = hd;
  cloud.precision = P;
  BigFloat hx = h.round_to(P);
  BigFloat bx0 = window.x0.round_to(P);
  BigFloat by0 = window.y0.round_to(P);
  BigFloat half = BigFloat::pow2(-1, P);
  for (long j = 0; j < ny; ++j) {
    for (long i = 0; i < nx; ++i) {
      if (!keep[static_cast<size_t>(j) * nx + i]) continue;
      BigFloat px = bx0 + (BigFloat::from_long(i, P) + half) * hx;
      BigFloat py = by0 + (BigFloat::from_long(j, P) + half) * hx;
      cloud.points.emplace_back(px, py);
    }
  }
  if (cloud.points.empty())
    fail(Err::EmptyWindow, "sample_mandelbrot_boundary: no boundary cell in the window");
  cloud.coverage = coverage_estimate(cloud.points);
  return cloud;
}

// ---------------------------------------------------------------------------
// Annulus images
// ---------------------------------------------------------------------------

AnnulusCloud rescale_to_annulus(const PointCloud& cloud, const BigComplex& center,
                                const BigComplex& mu, const BigComplex& preFactor,
                                const BigFloat& windowRadius, Prec P) {
  if (!(BigFloat::from_long(0, P) < windowRadius))
    fail(Err::UsageError, "rescale_to_annulus: window radius must be positive");
  if (preFactor.is_zero()) fail(Err::ZeroInput, "rescale_to_annulus: zero preFactor");

  BigComplex ctr = center.round_to(P);
  BigComplex m = mu.round_to(P);
  BigComplex pf = preFactor.round_to(P);
  BigFloat rad = windowRadius.round_to(P);

  AnnulusCloud out;
  out.mu = m;
  for (const auto& z : cloud.points) {
    BigComplex dz = z.round_to(P) - ctr;
    BigFloat r = abs(dz);
    if (r.is_zero() || rad < r) continue;
    long k = 0;
    BigComplex rep = reduce_to_annulus(pf * dz, m, P, &k);
    out.points.push_back(rep);
    out.exps.push_back(k);
  }
  if (out.points.empty())
    fail(Err::AllPointsFiltered, "rescale_to_annulus: no cloud point inside the window");
  out.resolution = coverage_estimate(out.points);
  return out;
}

// ---------------------------------------------------------------------------
// Hausdorff distance
// ---------------------------------------------------------------------------

namespace {

// Max over a in A of min over b in B of |a-b|^2, exact in the working
// precision. B is scanned in Re-sorted order around each query point and the
// scan stops once the Re gap alone exceeds the best squared distance, so the
// minimum runs over a superset of candidates the brute-force loop would keep
// — the value is bit-identical to the brute-force result.
BigFloat directed_max_min2(const std::vector<BigComplex>& A, const std::vector<BigComplex>& B) {
  std::vector<const BigComplex*> bs;
  bs.reserve(B.size());
  for (const auto& b : B) bs.push_back(&b);
  std::sort(bs.begin(), bs.end(), [](const BigComplex* x, const BigComplex* y) {
    if (x->re < y->re) return true;
    if (y->re < x->re) return false;
    if (x->im < y->im) return true;
    if (y->im < x->im) return false;
    return x < y;
  });

  auto min2_for = [&](const BigComplex& a) {
    auto it = std::lower_bound(bs.begin(), bs.end(), a.re,
                               [](const BigComplex* b, const BigFloat& re) { return b->re < re; });
    std::ptrdiff_t pos = it - bs.begin();
    BigFloat best2(a.precision());
    bool init = false;
    for (std::ptrdiff_t j = pos - 1; j >= 0; --j) {
      BigFloat dre = a.re - bs[static_cast<size_t>(j)]->re;
      if (init && !(sqr(dre) < best2)) break;
      BigFloat d2 = norm2(a - *bs[static_cast<size_t>(j)]);
      if (!init || d2 < best2) {
        best2 = d2;
        init = true;
      }
    }
    for (size_t j = static_cast<size_t>(pos); j < bs.size(); ++j) {
      BigFloat dre = bs[j]->re - a.re;
      if (init && !(sqr(dre) < best2)) break;
      BigFloat d2 = norm2(a - *bs[j]);
      if (!init || d2 < best2) {
        best2 = d2;
        init = true;
      }
    }
    return best2;
  };

  const size_t n = A.size();
  const int nt = static_cast<int>(std::min<size_t>(static_cast<size_t>(g_threads), n));
  if (nt <= 1) {
    BigFloat worst2 = min2_for(A[0]);
    for (size_t i = 1; i < n; ++i) worst2 = max(worst2, min2_for(A[i]));
    return worst2;
  }
  std::vector<BigFloat> partial(static_cast<size_t>(nt), BigFloat());
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(nt));
  for (int t = 0; t < nt; ++t) {
    size_t ib = n * static_cast<size_t>(t) / static_cast<size_t>(nt);
    size_t ie = n * (static_cast<size_t>(t) + 1) / static_cast<size_t>(nt);
    pool.emplace_back([&, ib, ie, t]() {
      BigFloat w2 = min2_for(A[ib]);
      for (size_t i = ib + 1; i < ie; ++i) w2 = max(w2, min2_for(A[i]));
      partial[static_cast<size_t>(t)] = w2;
    });
  }
  for (auto& th : pool) th.join();
  BigFloat worst2 = partial[0];
  for (int t = 1; t < nt; ++t) worst2 = max(worst2, partial[static_cast<size_t>(t)]);
  return worst2;
}

} // namespace

BigFloat hausdorff(const std::vector<BigComplex>& A, const std::vector<BigComplex>& B) {
  if (A.empty() || B.empty()) fail(Err::EmptyCloud, "hausdorff: empty point cloud");
  BigFloat d2 = max(directed_max_min2(A, B), directed_max_min2(B, A));
  return sqrt(d2);
}

BigFloat hausdorff_annulus(const AnnulusCloud& A, const AnnulusCloud& B) {
  if (A.points.empty() || B.points.empty()) fail(Err::EmptyCloud, "hausdorff_annulus: empty cloud");
  if (std::abs(A.mu.re.to_double() - B.mu.re.to_double()) > 1e-9 ||
      std::abs(A.mu.im.to_double() - B.mu.im.to_double()) > 1e-9)
    fail(Err::UsageError, "hausdorff_annulus: clouds live over different multipliers");

  // d(z, w) = min over k in {-1,0,1} of |z - w mu^k|: matching against the
  // mu-shifted copies of the opposite cloud realizes exactly that minimum.
  auto with_shifts = [](const AnnulusCloud& C) {
    std::vector<BigComplex> out;
    out.reserve(C.points.size() * 3);
    for (const auto& z : C.points) {
      out.push_back(z);
      out.push_back(z * C.mu);
      out.push_back(z / C.mu);
    }
    return out;
  };
  std::vector<BigComplex> b3 = with_shifts(B);
  std::vector<BigComplex> a3 = with_shifts(A);
  BigFloat d2 = max(directed_max_min2(A.points, b3), directed_max_min2(B.points, a3));
  return sqrt(d2);
}

// ---------------------------------------------------------------------------
// Tan Lei report
// ---------------------------------------------------------------------------

namespace {

// Cumulative zoom image: the annulus representatives whose reduction exponent
// is at most n — everything visible in the window at zoom depth n.
AnnulusCloud cumulative_shells(const AnnulusCloud& all, long n) {
  AnnulusCloud out;
  out.mu = all.mu;
  for (size_t i = 0; i < all.points.size(); ++i) {
    if (all.exps[i] <= n) {
      out.points.push_back(all.points[i]);
      out.exps.push_back(all.exps[i]);
    }
  }
  return out;
}

} // namespace

TanLeiReport tan_lei_report(const MisiurewiczData& data, const TanLeiParams& prm, Prec P) {
  if (prm.n_from < 1 || prm.n_to < prm.n_from)
    fail(Err::UsageError, "tan_lei_report: need 1 <= n_from <= n_to");
  if (!(prm.h > 0.0) || prm.h > 0.25)
    fail(Err::UsageError, "tan_lei_report: relative grid step h must lie in (0, 0.25]");
  if (prm.depth < 4 || prm.depth > 22)
    fail(Err::UsageError, "tan_lei_report: depth must lie in [4, 22]");

  TanLeiReport rep;
  rep.params = prm;
  rep.precision = P;

  BigComplex c = data.c.round_to(P);
  BigComplex mu = data.mu.round_to(P);
  BigComplex nu = data.nu.round_to(P);
  BigComplex P0 = data.O[0].round_to(P);
  const long p = data.p;

  BigFloat sep = orbit_separation(data, P);
  BigFloat amu = abs(mu);
  BigFloat anu = abs(nu);
  BigFloat epsJ = sep / (amu * amu * amu);
  BigFloat epsM = epsJ / anu;
  rep.epsJ = epsJ.to_double();
  rep.epsM = epsM.to_double();

  // --- Julia side -----------------------------------------------------------
  const long count = 1L << prm.depth;
  PointCloud J = sample_julia(c, count, prm.seedState, P);

  // Every walk sample is pulled into the zoom window along the inverse branch
  // of f^p that fixes the landing point (each application contracts toward it
  // by 1/mu, so a handful of steps suffice). The first in-window image of a
  // point already determines that point's annulus class up to a relative
  // linearization error O(epsJ), so the window inherits the full sample's
  // coverage instead of the sliver that happened to land inside.
  auto pull_once = [&](const BigComplex& z) {
    BigComplex w = z;
    for (long s = 0; s < p; ++s) {
      const auto& target = data.O[static_cast<size_t>(((p - 1 - s) % p + p) % p)];
      w = inverse_step(c, w, BranchSelector::nearest_to(target.round_to(P)), P);
    }
    return w;
  };
  std::vector<BigComplex> base;
  base.reserve(J.points.size());
  for (const auto& z : J.points) {
    BigComplex w = z;
    for (int attempt = 0; attempt < 16; ++attempt) {
      BigFloat r = dist(w, P0);
      if (!r.is_zero() && !(epsJ < r)) {
        base.push_back(w);
        break;
      }
      w = pull_once(w);
    }
  }
  if (base.empty()) fail(Err::EmptyWindow, "tan_lei_report: no Julia sample in the zoom window");

  // Deeper shells are populated by pulling the windowed set further down the
  // same branch: images of true Julia points, one shell per application, each
  // level sharpening the linearization error by another factor 1/|mu|.
  std::vector<BigComplex> zoom = base;
  std::vector<BigComplex> level = base;
  const long extra = std::max<long>(0, prm.n_to - 3);
  for (long j = 1; j <= extra; ++j) {
    std::vector<BigComplex> next;
    next.reserve(level.size());
    for (const auto& z : level) next.push_back(pull_once(z));
    zoom.insert(zoom.end(), next.begin(), next.end());
    level = std::move(next);
  }
  PointCloud Jzoom;
  Jzoom.points = std::move(zoom);
  Jzoom.source = "julia-zoom";
  Jzoom.precision = P;
  rep.juliaCount = static_cast<long>(Jzoom.points.size());

  BigComplex onePf = BigComplex::from_long(1, 0, P);
  AnnulusCloud annJ = rescale_to_annulus(Jzoom, P0, mu, onePf, epsJ, P);

  // Base classes only (one per walk sample): the deeper copies of a class sit
  // within the linearization error of their base representative, so including
  // them would understate the empirical mesh.
  PointCloud Jbase;
  Jbase.points = base;
  Jbase.precision = P;
  AnnulusCloud annJbase = rescale_to_annulus(Jbase, P0, mu, onePf, epsJ, P);

  // --- Mandelbrot side -------------------------------------------------------
  Rect win;
  win.x0 = c.re - epsM;
  win.x1 = c.re + epsM;
  win.y0 = c.im - epsM;
  win.y1 = c.im + epsM;
  BigFloat h_abs = epsM * BigFloat::from_double(prm.h, P);
  const long maxIter = prm.maxIter > 0 ? prm.maxIter : 64 + 48 * prm.n_to;
  PointCloud Mb = sample_mandelbrot_boundary(win, h_abs, maxIter, P);
  rep.boundaryCount = static_cast<long>(Mb.points.size());

  AnnulusCloud annM = rescale_to_annulus(Mb, c, mu, nu, epsM, P);

  // --- Distance series -------------------------------------------------------
  for (long n = prm.n_from; n < prm.n_to; ++n) {
    AnnulusCloud ja = cumulative_shells(annJ, n);
    AnnulusCloud jb = cumulative_shells(annJ, n + 1);
    rep.seriesJ.emplace_back(n, hausdorff_annulus(ja, jb).to_double());
    AnnulusCloud ma = cumulative_shells(annM, n);
    AnnulusCloud mb = cumulative_shells(annM, n + 1);
    rep.seriesM.emplace_back(n, hausdorff_annulus(ma, mb).to_double());
  }

  AnnulusCloud deepJ = cumulative_shells(annJ, prm.n_to);
  AnnulusCloud deepM = cumulative_shells(annM, prm.n_to);
  rep.cross = hausdorff_annulus(deepJ, deepM).to_double();
  // Resolution of a rescaled image = empirical mesh + magnified position
  // error of the source samples. Julia samples are Newton-exact, so only
  // their mesh counts; boundary samples are grid-cell centers, off the set
  // by up to half a cell, and that offset is blown up by |preFactor|·|μ|^s
  // for a point included at shell s.
  rep.resJ = coverage_estimate(annJbase.points);
  long maxExpM = 0;
  for (long e : deepM.exps) maxExpM = std::max(maxExpM, e);
  const double quantM = 0.5 * h_abs.to_double() * abs(nu).to_double() *
                        std::pow(abs(mu).to_double(), static_cast<double>(maxExpM));
  rep.resM = coverage_estimate(deepM.points) + quantM;
  return rep;
}

} // namespace qdyn
