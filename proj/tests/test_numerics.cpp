#include <cmath>
#include <numbers>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"
#include "doctest.h"

using namespace ahscat;

TEST_CASE("gauss-kronrod handles smooth integrands") {
  auto f = [](double x) { return std::exp(-x * x); };
  const double v = num::integrate(f, -8.0, 8.0, 1e-13);
  CHECK(std::abs(v - std::sqrt(std::numbers::pi)) < 1e-12);

  const double s = num::integrate([](double x) { return 1.0 / std::cosh(x); },
                                  -40.0, 40.0, 1e-13);
  CHECK(std::abs(s - std::numbers::pi) < 1e-11);
}

TEST_CASE("quadrature reports the failing interval") {
  auto nasty = [](double x) {
    return std::pow(std::abs(x) + 1e-300, -0.9);  // integrable point singularity
  };
  CHECK_THROWS_AS(num::integrate(nasty, -1.0, 1.0, 1e-12, 16), Error);
  try {
    num::integrate(nasty, -1.0, 1.0, 1e-12, 16);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("[") != std::string::npos);
  }
}

TEST_CASE("line fit recovers exact linear data") {
  std::vector<double> x{1, 2, 3, 4, 5, 6}, y;
  for (double xi : x) y.push_back(3.5 - 2.25 * xi);
  const auto fit = num::fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-2.25).epsilon(1e-14));
  CHECK(fit.intercept == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(fit.rms_residual < 1e-13);
}

TEST_CASE("pchip interpolates monotone data monotonically") {
  std::vector<double> x{0, 1, 2, 3, 4, 5};
  std::vector<double> y{0.0, 0.1, 0.15, 2.0, 2.05, 2.1};
  num::Pchip p(x, y);
  double prev = p(0.0);
  for (int i = 1; i <= 500; ++i) {
    const double v = p(5.0 * i / 500.0);
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(p(x[i]) == doctest::Approx(y[i]).epsilon(1e-14));
}

TEST_CASE("quartic roots match analytic factorizations") {
  // (x-1)(x+2)(x-3)(x+4) = x^4 + 2x^3 - 13x^2 - 14x + 24
  const double c[5] = {1, 2, -13, -14, 24};
  auto roots = num::polynomial_roots(c);
  std::vector<double> re;
  for (auto z : roots) {
    CHECK(std::abs(z.imag()) < 1e-12);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(re[1] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(re[2] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(re[3] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("phase unwrapping follows the nearest branch") {
  std::vector<double> raw;
  for (int i = 0; i <= 40; ++i) {
    const double phi = -0.37 * i;  // descending through many branches
    raw.push_back(std::atan2(std::sin(phi), std::cos(phi)));
  }
  const auto un = num::unwrap_phases(raw);
  for (int i = 0; i <= 40; ++i) CHECK(un[i] == doctest::Approx(-0.37 * i).epsilon(1e-12));
}

TEST_CASE("levenberg-marquardt solves a small nonlinear fit") {
  // data from y = 2 exp(-0.7 t) + 0.1
  auto resid = [](const std::vector<double>& p) {
    std::vector<double> r;
    for (int i = 0; i <= 20; ++i) {
      const double t = 0.2 * i;
      const double y = 2.0 * std::exp(-0.7 * t) + 0.1;
      r.push_back(p[0] * std::exp(-p[1] * t) + p[2] - y);
    }
    return r;
  };
  const auto fit = num::levenberg_marquardt(resid, {1.0, 1.0, 0.0});
  CHECK(fit.params[0] == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.params[1] == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(fit.params[2] == doctest::Approx(0.1).epsilon(1e-5));
}
