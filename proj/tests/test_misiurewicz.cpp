#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "qdyn/io.hpp"
#include "qdyn/misiurewicz.hpp"

using namespace qdyn;
using th::cpx;
using th::gap;

namespace {
constexpr Prec P = 128;

MisiurewiczData solve_m2(Prec prec = P) {
  return solve_misiurewicz(2, 1, cpx(-1.9, 0, prec), prec);
}
MisiurewiczData solve_i(Prec prec = P) {
  return solve_misiurewicz(2, 2, cpx(0.1, 1.1, prec), prec);
}
} // namespace

TEST_CASE("solve_misiurewicz: c = -2 (k=2, p=1)") {
  MisiurewiczData d = solve_m2();
  CHECK(gap(d.c, cpx(-2, 0, P)) < 1e-30);
  CHECK(d.k == 2);
  CHECK(d.p == 1);
  CHECK(d.m == 2); // landing time computed, equals the preperiod
  REQUIRE(d.O.size() == 1);
  CHECK(gap(d.O[0], cpx(2, 0, P)) < 1e-30);
  CHECK(gap(d.mu, cpx(4, 0, P)) < 1e-30);
  CHECK(d.residual.to_double() < 1e-25);
  // nu = r'(0) - p'(0) = -3 - (-1/3) = -8/3 (signed convention; the
  // magnitude 8/3 is the quoted constant)
  BigFloat eight_thirds = BigFloat::from_long(8, P) / BigFloat::from_long(3, P);
  CHECK(gap(d.nu, BigComplex(-eight_thirds, BigFloat(P))) < 1e-12);
}

TEST_CASE("solve_misiurewicz: c = i (k=2, p=2)") {
  MisiurewiczData d = solve_i();
  CHECK(gap(d.c, cpx(0, 1, P)) < 1e-30);
  CHECK(d.k == 2);
  CHECK(d.p == 2);
  CHECK(d.m == 2);
  REQUIRE(d.O.size() == 2);
  // orbit stored from the landing point f^2(0) = -1+i, then f^3(0) = -i
  CHECK(gap(d.O[0], cpx(-1, 1, P)) < 1e-30);
  CHECK(gap(d.O[1], cpx(0, -1, P)) < 1e-30);
  CHECK(gap(d.mu, cpx(4, 4, P)) < 1e-30);
  // nu = (1+2i) - (1+2i)/5 = (4/5)(1+2i)
  CHECK(gap(d.nu, cpx(0.8, 1.6, P)) < 1e-12);
}

TEST_CASE("solve_misiurewicz: degenerate targets are rejected") {
  // G(c) = f^3(0) - f(0) = c^2 (c+1)^2 has only the superattracting roots
  // 0 and -1; Newton converges to one of them and certification rejects it.
  CHECK(th::error_code_of([] { solve_misiurewicz(1, 2, cpx(0.1, 0.9, P), P); }) ==
        Err::DegenerateSolution);

  // The (2,2) equation also contains c = -2, whose true period is 1;
  // minimality rejects it when approached from a nearby seed.
  CHECK(th::error_code_of([] { solve_misiurewicz(2, 2, cpx(-1.9, 0, P), P); }) ==
        Err::DegenerateSolution);
}

TEST_CASE("brute force: all minimal (2,2) roots are +-i") {
  // f^4(0) - f^2(0) is a degree-8 polynomial in c. Enumerate its roots with
  // double-precision Newton from a seed grid, discard the ones where a
  // smaller (k', p') already closes up, and compare the survivors with the
  // certified solver.
  using C = std::complex<double>;
  auto G = [](C c, C& dG) {
    C z = 0.0, d = 0.0;
    C z2, d2;
    for (int j = 0; j < 4; ++j) {
      if (j == 2) { z2 = z; d2 = d; }
      d = 2.0 * z * d + 1.0;
      z = z * z + c;
    }
    dG = d - d2;
    return z - z2;
  };
  std::vector<C> roots;
  for (int a = 0; a <= 24; ++a)
    for (int b = 0; b <= 24; ++b) {
      C c(-2.5 + 3.5 * a / 24.0, -1.5 + 3.0 * b / 24.0);
      bool ok = false;
      for (int it = 0; it < 80; ++it) {
        C dG;
        C g = G(c, dG);
        if (std::abs(g) < 1e-12) { ok = true; break; }
        if (std::abs(dG) < 1e-14 || std::abs(c) > 10.0) break;
        c -= g / dG;
      }
      if (!ok) continue;
      // Near the triple root 0 the residual gate |G| < 1e-12 already accepts
      // points ~1e-4 away, so cluster with a radius well above that; the true
      // roots are >= 1 apart.
      bool fresh = true;
      for (const C& r : roots)
        if (std::abs(r - c) < 1e-3) { fresh = false; break; }
      if (fresh) roots.push_back(c);
    }
  // the polynomial factors as c^3 (c+1)^2 (c+2) (c^2+1): five distinct roots
  CHECK(roots.size() == 5);

  std::vector<C> minimal;
  for (const C& c : roots) {
    // orbit of 0 in doubles
    C z[5];
    z[0] = 0.0;
    for (int j = 1; j <= 4; ++j) z[j] = z[j - 1] * z[j - 1] + c;
    bool degenerate = false;
    for (int kp = 0; kp <= 2 && !degenerate; ++kp)
      for (int pp = 1; pp <= 2 && !degenerate; ++pp) {
        if (kp == 2 && pp == 2) continue;
        if (std::abs(z[kp + pp] - z[kp]) < 1e-6) degenerate = true;
      }
    if (!degenerate) minimal.push_back(c);
  }
  REQUIRE(minimal.size() == 2); // +-i survive the minimality filter

  for (const C& c : minimal) {
    MisiurewiczData d = solve_misiurewicz(2, 2, cpx(c.real(), c.imag(), P), P);
    CHECK(gap(d.c, cpx(c.real(), c.imag(), P)) < 1e-9);
    CHECK(std::abs(std::abs(c.imag()) - 1.0) < 1e-9); // the roots are +-i
    CHECK(std::abs(c.real()) < 1e-9);
  }
}

TEST_CASE("nu: finite-difference oracle agrees at both worked points") {
  for (const MisiurewiczData& d : {solve_m2(), solve_i()}) {
    BigComplex analytic = nu(d, P);
    BigComplex numeric = nu_central_difference(d, P);
    CHECK(gap(analytic, numeric) <= 1e-6);
    CHECK(gap(analytic, d.nu) < 1e-30);
    CHECK(abs(d.nu).to_double() > 0.1); // nu != 0 (Thurston rigidity)
  }
}

TEST_CASE("verify: certified data passes, doctored data is flagged") {
  MisiurewiczData d = solve_m2();
  VerifyReport ok = verify(d, 1e-20);
  CHECK(ok.all_pass);
  CHECK(ok.items.size() >= 6);

  // Inflating k by the period still closes up, but is no longer minimal.
  MisiurewiczData inflated = d;
  inflated.k += d.p;
  inflated.m += d.p;
  VerifyReport r1 = verify(inflated, 1e-20);
  CHECK_FALSE(r1.all_pass);
  bool minimality_failed = false;
  for (const auto& item : r1.items)
    if (item.name == "minimality" && !item.pass) minimality_failed = true;
  CHECK(minimality_failed);

  // Replacing mu by 0.5 breaks the repelling check.
  MisiurewiczData tame = d;
  tame.mu = cpx(0.5, 0, P);
  VerifyReport r2 = verify(tame, 1e-20);
  CHECK_FALSE(r2.all_pass);
  bool repelling_failed = false;
  for (const auto& item : r2.items)
    if (item.name == "repelling" && !item.pass) repelling_failed = true;
  CHECK(repelling_failed);
}

TEST_CASE("Newton basin stability and precision doubling") {
  MisiurewiczData base = solve_m2();

  // re-solving from a perturbed seed returns the same c
  double tol_basin = std::ldexp(1.0, -(P - 20));
  MisiurewiczData wiggled =
      solve_misiurewicz(2, 1, cpx(-1.9 + 6e-4, 8e-4, P), P);
  CHECK(gap(base.c, wiggled.c) <= tol_basin);

  // doubling P leaves the first P/2 - 16 bits of c unchanged
  MisiurewiczData fine = solve_misiurewicz(2, 1, cpx(-1.9, 0, 2 * P), 2 * P);
  double tol_bits = std::ldexp(1.0, -(P / 2 - 16));
  CHECK(gap(base.c.round_to(2 * P), fine.c) <= tol_bits);

  // same checks at c = i
  MisiurewiczData bi = solve_i();
  MisiurewiczData wi = solve_misiurewicz(2, 2, cpx(0.1 - 7e-4, 1.1 + 5e-4, P), P);
  CHECK(gap(bi.c, wi.c) <= tol_basin);
}

TEST_CASE("serialization: decimal-string record round-trips bit-stably") {
  for (const MisiurewiczData& d : {solve_m2(), solve_i()}) {
    io::json j = io::misiurewicz_to_json(d);
    MisiurewiczData back = io::misiurewicz_from_json(j);
    CHECK(back.k == d.k);
    CHECK(back.p == d.p);
    CHECK(back.m == d.m);
    CHECK(back.precision == d.precision);
    CHECK((back.c.re - d.c.re).is_zero());
    CHECK((back.c.im - d.c.im).is_zero());
    CHECK((back.mu.re - d.mu.re).is_zero());
    CHECK((back.mu.im - d.mu.im).is_zero());
    CHECK((back.nu.re - d.nu.re).is_zero());
    CHECK((back.nu.im - d.nu.im).is_zero());
    REQUIRE(back.O.size() == d.O.size());
    for (size_t i = 0; i < d.O.size(); ++i) {
      CHECK((back.O[i].re - d.O[i].re).is_zero());
      CHECK((back.O[i].im - d.O[i].im).is_zero());
    }
  }
}
