#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "helpers.hpp"

#include <cmath>

#include "qdyn/dynamics.hpp"

using namespace qdyn;
using th::cpx;
using th::gap;

namespace {
constexpr Prec P = 128;
const double kTolP8 = std::ldexp(1.0, -(P - 8));
} // namespace

TEST_CASE("iterate: worked critical orbits") {
  // c = 0: the critical point is fixed.
  OrbitSegment s0 = iterate(BigComplex(P), BigComplex(P), 5, P);
  REQUIRE(s0.points.size() == 6);
  for (const auto& z : s0.points) CHECK(z.is_zero());

  // c = -2: 0, -2, 2, 2 (the postcritical point 2 is fixed).
  OrbitSegment s1 = iterate(BigComplex::from_long(-2, 0, P), BigComplex(P), 3, P);
  REQUIRE(s1.points.size() == 4);
  CHECK(s1.points[0].is_zero());
  CHECK(gap(s1.points[1], cpx(-2, 0, P)) == 0.0);
  CHECK(gap(s1.points[2], cpx(2, 0, P)) == 0.0);
  CHECK(gap(s1.points[3], cpx(2, 0, P)) == 0.0);

  // c = i: 0, i, i-1, -i, i-1 (period-2 tail {i-1, -i}).
  OrbitSegment s2 = iterate(BigComplex::from_long(0, 1, P), BigComplex(P), 4, P);
  REQUIRE(s2.points.size() == 5);
  CHECK(gap(s2.points[1], cpx(0, 1, P)) == 0.0);
  CHECK(gap(s2.points[2], cpx(-1, 1, P)) == 0.0);
  CHECK(gap(s2.points[3], cpx(0, -1, P)) == 0.0);
  CHECK(gap(s2.points[4], cpx(-1, 1, P)) == 0.0);

  // iterate_value agrees with the stored orbit.
  CHECK(gap(iterate_value(BigComplex::from_long(0, 1, P), BigComplex(P), 4, P), s2.points[4]) ==
        0.0);
}

TEST_CASE("iterate: overflow raises NonFinite") {
  // Repeated squaring from |z| = 3 doubles the exponent every step and
  // overflows MPFR's exponent range in well under 100 iterations.
  CHECK(th::error_code_of([] {
          iterate(BigComplex(P), BigComplex::from_long(3, 0, P), 100, P);
        }) == Err::NonFinite);
}

TEST_CASE("iterate: composition invariant") {
  th::Lcg rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    BigComplex c = cpx(rng.uniform(-1, 0.3), rng.uniform(-0.5, 0.5), P);
    BigComplex z0 = cpx(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), P);
    long a = 3, b = 5;
    BigComplex whole = iterate_value(c, z0, a + b, P);
    BigComplex split = iterate_value(c, iterate_value(c, z0, a, P), b, P);
    double scale = 1.0 + abs(whole).to_double();
    CHECK(gap(whole, split) <= kTolP8 * scale);
  }
}

TEST_CASE("param_derivative: closed forms and finite differences") {
  // n = 1: f_c(0) = c, derivative 1 for every c.
  CHECK(gap(param_derivative(cpx(0.7, -0.3, P), 1, P), cpx(1, 0, P)) == 0.0);
  // n = 2: f_c^2(0) = c^2 + c, derivative 2c + 1.
  CHECK(gap(param_derivative(BigComplex::from_long(-2, 0, P), 2, P), cpx(-3, 0, P)) == 0.0);
  CHECK(gap(param_derivative(BigComplex::from_long(0, 1, P), 2, P), cpx(1, 2, P)) == 0.0);

  // Central differences at h = 2^-(P/3) agree to O(h^2) for n <= 12.
  BigComplex c = cpx(0.3, 0.2, P);
  BigFloat h = BigFloat::pow2(-(P / 3), P);
  BigComplex hc(h, BigFloat(P));
  for (long n = 1; n <= 12; ++n) {
    BigComplex pd = param_derivative(c, n, P);
    BigComplex fd = (iterate_value(c + hc, BigComplex(P), n, P) -
                     iterate_value(c - hc, BigComplex(P), n, P)) /
                    BigComplex(h * 2l, BigFloat(P));
    double h2 = std::ldexp(1.0, -2 * (P / 3));
    double scale = 1.0 + abs(pd).to_double();
    CHECK(gap(pd, fd) <= 4096.0 * h2 * scale);
  }

  // critical_orbit_and_derivative returns both quantities in one pass.
  BigComplex z_out(P), d_out(P);
  critical_orbit_and_derivative(c, 9, P, z_out, d_out);
  CHECK(gap(z_out, iterate_value(c, BigComplex(P), 9, P)) == 0.0);
  CHECK(gap(d_out, param_derivative(c, 9, P)) == 0.0);
}

TEST_CASE("newton_periodic: worked examples and failure modes") {
  BigComplex r1 = newton_periodic(BigComplex::from_long(-2, 0, P), 1, cpx(1.9, 0, P), P);
  CHECK(gap(r1, cpx(2, 0, P)) < 1e-30);

  BigComplex r2 = newton_periodic(BigComplex::from_long(0, 1, P), 2, cpx(-1.1, 0.9, P), P);
  CHECK(gap(r2, cpx(-1, 1, P)) < 1e-30);

  BigComplex r3 = newton_periodic(BigComplex(P), 1, cpx(0.2, 0, P), P);
  CHECK(abs(r3).to_double() < 1e-30);

  // F'(z) = 2z - 1 vanishes at the critical seed z = 1/2 for p = 1.
  CHECK(th::error_code_of([] {
          newton_periodic(BigComplex::from_long(1, 0, P), 1, cpx(0.5, 0, P), P);
        }) == Err::DerivativeVanishes);

  // A far-out seed at an escaping parameter diverges.
  CHECK(th::error_code_of([] {
          newton_periodic(BigComplex::from_long(4, 0, P), 1, cpx(1.0e9, 0, P), P);
        }) == Err::NoConvergence);
}

TEST_CASE("multiplier: values, cyclic invariance, NotPeriodic") {
  CHECK(gap(multiplier(BigComplex::from_long(-2, 0, P), cpx(2, 0, P), 1, P), cpx(4, 0, P)) ==
        0.0);
  CHECK(gap(multiplier(BigComplex::from_long(0, 1, P), cpx(-1, 1, P), 2, P), cpx(4, 4, P)) ==
        0.0);
  CHECK(abs(multiplier(BigComplex(P), BigComplex(P), 1, P)).is_zero());

  // Invariance under cyclic rotation: the other point of the c = i two-cycle
  // gives the same multiplier.
  BigComplex mu_a = multiplier(BigComplex::from_long(0, 1, P), cpx(-1, 1, P), 2, P);
  BigComplex mu_b = multiplier(BigComplex::from_long(0, 1, P), cpx(0, -1, P), 2, P);
  CHECK(gap(mu_a, mu_b) <= kTolP8 * (1.0 + abs(mu_a).to_double()));

  // z = 0.5 is not periodic under f_{-2}.
  CHECK(th::error_code_of([] {
          multiplier(BigComplex::from_long(-2, 0, P), cpx(0.5, 0, P), 1, P);
        }) == Err::NotPeriodic);
}

TEST_CASE("periodic_point_param_derivative: values and parabolic rejection") {
  // p(c) = (1+sqrt(1-4c))/2 has derivative -1/3 at c = -2.
  BigComplex d1 = periodic_point_param_derivative(BigComplex::from_long(-2, 0, P), cpx(2, 0, P),
                                                  1, P);
  CHECK(gap(d1, BigComplex(BigFloat::from_long(-1, P) / BigFloat::from_long(3, P),
                           BigFloat(P))) < 1e-35);

  // (2 f_i(z) + 1)/(1 - mu) = (1+2i)/5 at z = -1+i, p = 2.
  BigComplex d2 = periodic_point_param_derivative(BigComplex::from_long(0, 1, P), cpx(-1, 1, P),
                                                  2, P);
  CHECK(gap(d2, BigComplex(BigFloat::from_long(1, P) / BigFloat::from_long(5, P),
                           BigFloat::from_long(2, P) / BigFloat::from_long(5, P))) < 1e-35);

  // mu = 0 at the superattracting fixed point of c = 0: derivative 1/(1-0).
  BigComplex d3 = periodic_point_param_derivative(BigComplex(P), BigComplex(P), 1, P);
  CHECK(gap(d3, cpx(1, 0, P)) < 1e-35);

  // c = 1/4: the fixed point 1/2 has mu = 1 (parabolic), |1 - mu| below the
  // 2^-(P/2) gate.
  CHECK(th::error_code_of([] {
          periodic_point_param_derivative(cpx(0.25, 0, P), cpx(0.5, 0, P), 1, P);
        }) == Err::ParabolicOrbit);
}

TEST_CASE("inverse_step: branches, identity, ties") {
  // c = -2, principal branch: sqrt(0 + 2).
  BigComplex q1 = inverse_step(BigComplex::from_long(-2, 0, P), BigComplex(P),
                               BranchSelector::principal(), P);
  CHECK(gap(q1, BigComplex(sqrt(BigFloat::from_long(2, P)), BigFloat(P))) == 0.0);

  // c = 0, z = 4: the root nearer -1.9 is -2.
  BigComplex q2 = inverse_step(BigComplex(P), BigComplex::from_long(4, 0, P),
                               BranchSelector::nearest_to(cpx(-1.9, 0, P)), P);
  CHECK(gap(q2, cpx(-2, 0, P)) == 0.0);

  // c = i, z = 0: the square root of -i nearer -1+i is -(1-i)/sqrt(2).
  BigComplex q3 = inverse_step(BigComplex::from_long(0, 1, P), BigComplex(P),
                               BranchSelector::nearest_to(cpx(-1, 1, P)), P);
  double r = 1.0 / std::sqrt(2.0);
  CHECK(gap(q3, cpx(-r, r, P)) < 1e-15);
  CHECK(q3.re.sign() < 0);
  CHECK(q3.im.sign() > 0);

  // forward after inverse is the identity
  th::Lcg rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    BigComplex c = cpx(rng.uniform(-1.5, 0.4), rng.uniform(-0.8, 0.8), P);
    BigComplex z = cpx(rng.uniform(-2, 2), rng.uniform(-2, 2), P);
    BigComplex q = inverse_step(c, z, BranchSelector::principal(), P);
    double scale = 1.0 + abs(z).to_double();
    CHECK(gap(q * q + c, z) <= kTolP8 * scale);
  }

  // SignSequence: +1 takes the principal root, -1 its negative, cyclically.
  BigComplex qp = inverse_step(BigComplex::from_long(-2, 0, P), BigComplex(P),
                               BranchSelector::sign_sequence({1, -1}), P, 0);
  BigComplex qm = inverse_step(BigComplex::from_long(-2, 0, P), BigComplex(P),
                               BranchSelector::sign_sequence({1, -1}), P, 1);
  CHECK(gap(qp, -qm) == 0.0);
  CHECK(qp.re.sign() > 0);

  // Equidistant targets are an ill-posed selector: both roots of z = 4 under
  // c = 0 are +-2, equidistant from 0.
  CHECK(th::error_code_of([] {
          inverse_step(BigComplex(P), BigComplex::from_long(4, 0, P),
                       BranchSelector::nearest_to(BigComplex(P)), P);
        }) == Err::BranchTie);
}
