#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ahscat/asymptotics.hpp"
#include "ahscat/error.hpp"
#include "doctest.h"

using namespace ahscat;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("gamma identities") {
  CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(complex_gamma(0.5) - std::sqrt(kPi)) < 1e-14);
  CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-12);
  // |Gamma(1/2 + ib)|^2 = pi / cosh(pi b)
  const cplx g = complex_gamma(cplx(0.5, 1.0));
  CHECK(std::abs(std::norm(g) - kPi / std::cosh(kPi)) < 1e-13);
}

TEST_CASE("gamma recurrence on a pseudo-random grid") {
  std::mt19937 rng(20347);
  std::uniform_real_distribution<double> re(-9.0, 9.0), im(-19.0, 19.0);
  for (int i = 0; i < 50; ++i) {
    cplx w{re(rng), im(rng)};
    if (std::abs(w.imag()) < 0.05) w += cplx(0.0, 0.1);  // keep off the poles
    const cplx lhs = complex_gamma(w + 1.0);
    const cplx rhs = w * complex_gamma(w);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
  }
}

TEST_CASE("gamma reflection accuracy in the left half plane") {
  // Gamma(w) Gamma(1-w) = pi / sin(pi w)
  for (cplx w : {cplx(-2.3, 1.7), cplx(-5.5, -3.0), cplx(0.2, 8.0)}) {
    const cplx prod = complex_gamma(w) * complex_gamma(1.0 - w);
    const cplx expect = kPi / std::sin(kPi * w);
    CHECK(std::abs(prod - expect) < 1e-12 * std::abs(expect));
  }
  CHECK_THROWS_AS(complex_gamma(cplx(0.0, 0.0)), Error);
  CHECK_THROWS_AS(complex_gamma(cplx(-3.0, 0.0)), Error);
}

namespace {

AsymptoticConstants sech_constants(double lambda) {
  AsymptoticConstants c;
  c.lambda = lambda;
  c.A = kPi;
  c.a_minus = c.a_plus = 2.0;
  c.kappa_minus = 1.0;
  c.kappa_plus = -1.0;
  return c;
}

}  // namespace

TEST_CASE("predicted reflection is unimodular on the real axis") {
  const auto c = sech_constants(1.0);
  for (double z : {3.0, 10.0, 25.0, 40.0})
    CHECK(std::abs(std::abs(predicted_L(c, z)) - 1.0) < 1e-13);
  // power-law phase: arg L(2n) - arg L(n) = -(2 lambda / kappa_-) ln 2
  const double d1 = std::arg(predicted_L(c, 14.0)) - std::arg(predicted_L(c, 7.0));
  const double expect = -2.0 * std::log(2.0);
  const double wrapped = d1 - 2.0 * kPi * std::round((d1 - expect) / (2.0 * kPi));
  CHECK(wrapped == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("two-sided forms reduce to the hyperbolic pattern at zero energy") {
  auto c = sech_constants(0.0);
  for (cplx z : {cplx(2.0, 1.0), cplx(0.5, -3.0), cplx(1.0, 4.0)}) {
    CHECK(std::abs(predicted_aL1(c, z) - std::cosh(z * kPi)) <
          1e-10 * std::abs(std::cosh(z * kPi)));
    CHECK(std::abs(predicted_aL3(c, z) - cplx(0, 1) * std::sinh(z * kPi)) <
          1e-10 * std::abs(std::cosh(z * kPi)));
  }
}

TEST_CASE("exact exponential data is fit to machine precision") {
  std::vector<DecaySample> s;
  for (int n = 1; n <= 20; ++n) s.push_back({n, 3.7 * std::exp(-1.234 * n)});
  const auto fit = fit_exponential_decay(s, 1, 20);
  CHECK(fit.rate == doctest::Approx(1.234).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(3.7).epsilon(1e-12));
  CHECK(fit.rms_residual < 1e-12);
  CHECK_THROWS_AS(fit_exponential_decay(s, 1, 3), Error);  // too few points
  s[4].value = 0.0;
  CHECK_THROWS_AS(fit_exponential_decay(s, 1, 20), Error);
}

TEST_CASE("synthetic power-law phase recovers the rate exactly") {
  // L(n) = e^{-2 i lambda ln(n/2) / kappa}, kappa = 0.8, lambda = 1
  const double kappa = 0.8, lambda = 1.0;
  std::vector<ScatteringEntry> entries;
  for (int n = 10; n <= 40; ++n) {
    ScatteringEntry e;
    e.pt = {lambda, cplx(n, 0.0)};
    e.L = std::exp(cplx(0.0, -2.0 * lambda / kappa * std::log(n / 2.0)));
    entries.push_back(e);
  }
  CHECK(recover_kappa_minus(entries) == doctest::Approx(kappa).epsilon(1e-10));
}

TEST_CASE("sparse phase samples are rejected as ambiguous") {
  const double kappa = 0.25, lambda = 1.0;  // fast phase: gaps exceed pi
  std::vector<ScatteringEntry> entries;
  for (int n : {2, 6, 18, 54}) {
    ScatteringEntry e;
    e.pt = {lambda, cplx(n, 0.0)};
    e.L = std::exp(cplx(0.0, -2.0 * lambda / kappa * std::log(n / 2.0)));
    entries.push_back(e);
  }
  CHECK_THROWS_AS(recover_kappa_minus(entries), Error);
}
