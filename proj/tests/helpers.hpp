#pragma once
// Shared conveniences for the doctest suites. Header-only; every test binary
// compiles independently.
#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "qdyn/bigcomplex.hpp"
#include "qdyn/error.hpp"

namespace th {

using qdyn::BigComplex;
using qdyn::BigFloat;
using qdyn::Prec;

inline BigComplex cpx(double re, double im, Prec P) {
  return BigComplex::from_double(re, im, P);
}

// |a - b| as a double, for tolerance checks with readable doctest output.
inline double gap(const BigComplex& a, const BigComplex& b) { return dist(a, b).to_double(); }
inline double gap(const BigFloat& a, const BigFloat& b) {
  BigFloat d = a - b;
  return d.sign() < 0 ? (-d).to_double() : d.to_double();
}
inline double gap(const BigFloat& a, double b) {
  return gap(a, BigFloat::from_double(b, a.precision()));
}

// Runs `fn` and returns the error code it raised; fails the test if it does
// not raise qdyn::Error at all.
template <typename Fn>
qdyn::Err error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const qdyn::Error& e) {
    return e.code();
  }
  FAIL("expected a qdyn::Error, none was raised");
  return qdyn::Err::UsageError;
}

// Knuth MMIX linear congruential generator; the same rule the sampling walks
// declare, reused to build reproducible pseudo-random test clouds.
struct Lcg {
  std::uint64_t s;
  explicit Lcg(std::uint64_t seed) : s(seed) {}
  std::uint64_t next() {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    return s;
  }
  // uniform double in [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // uniform double in [lo, hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

inline std::vector<BigComplex> random_cloud(Lcg& rng, int n, Prec P, double lo = -1.0,
                                            double hi = 1.0) {
  std::vector<BigComplex> pts;
  pts.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double x = rng.uniform(lo, hi), y = rng.uniform(lo, hi);
    pts.push_back(BigComplex::from_double(x, y, P));
  }
  return pts;
}

// Brute-force Hausdorff oracle: the O(|A||B|) double loop evaluated with the
// exact same BigFloat arithmetic the library uses.
inline BigFloat hausdorff_brute(const std::vector<BigComplex>& A,
                                const std::vector<BigComplex>& B) {
  auto directed = [](const std::vector<BigComplex>& X, const std::vector<BigComplex>& Y) {
    BigFloat worst;
    bool first_x = true;
    for (const auto& x : X) {
      BigFloat best;
      bool first_y = true;
      for (const auto& y : Y) {
        BigFloat d = dist(x, y);
        if (first_y || d < best) {
          best = d;
          first_y = false;
        }
      }
      if (first_x || best > worst) {
        worst = best;
        first_x = false;
      }
    }
    return worst;
  };
  BigFloat ab = directed(A, B), ba = directed(B, A);
  return ab > ba ? ab : ba;
}

} // namespace th
