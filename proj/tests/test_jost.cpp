#include <cmath>
#include <numbers>

#include "ahscat/jost.hpp"
#include "ahscat/liouville.hpp"
#include "ahscat/profile.hpp"
#include "doctest.h"
#include "reference_values.hpp"

using namespace ahscat;

namespace {

double entry_gap(const JostMatrix& jm, const ref::C expected[4]) {
  const double s = std::exp(jm.log_scale);
  const auto f = jm.m.flat();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(f[i] * s - cplx(expected[i])));
  return worst;
}

double descaled_gap(const JostMatrix& a, const JostMatrix& b) {
  const double shift = std::exp(b.log_scale - a.log_scale);
  const auto fa = a.m.flat();
  const auto fb = b.m.flat();
  double worst = 0.0;
  for (int i = 0; i < 4; ++i)
    worst = std::max(worst, std::abs(fa[i] - fb[i] * shift));
  return worst * std::exp(a.log_scale);
}

}  // namespace

TEST_CASE("zero angular momentum collapses to the free solution") {
  const auto p = make_sech_profile();
  for (double lambda : {0.5, 1.0}) {
    for (double x : {-3.0, 0.0, 2.0}) {
      const auto jl = jost_left(p, {lambda, cplx(0.0, 0.0)}, x);
      CHECK(jl.log_scale == 0.0);
      CHECK(std::abs(jl.m.a - std::exp(cplx(0, lambda * x))) < 1e-14);
      CHECK(std::abs(jl.m.d - std::exp(cplx(0, -lambda * x))) < 1e-14);
      CHECK(std::abs(jl.m.b) < 1e-14);
      CHECK(std::abs(jl.m.c) < 1e-14);
      const auto jr = jost_right(p, {lambda, cplx(0.0, 0.0)}, x);
      CHECK(std::abs(jr.m.a - std::exp(cplx(0, lambda * x))) < 1e-14);
      CHECK(std::abs(jr.m.b) < 1e-14);
    }
  }
}

TEST_CASE("zero energy has the hyperbolic closed form") {
  // at lambda = 0 the system integrates to
  //   F_L = cosh(n(A - g(x))) I - i sinh(n(A - g(x))) G1 G2,
  //   F_R = cosh(n g(x)) I + i sinh(n g(x)) G1 G2
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  const double A = map.total_width();
  for (int n : {1, 2}) {
    for (double x : {-1.5, 0.0, 0.8}) {
      const double u = n * (A - map.forward(x));
      const auto jl = jost_left(p, {0.0, cplx(n, 0.0)}, x);
      const double s = std::exp(jl.log_scale);
      CHECK(std::abs(jl.m.a * s - std::cosh(u)) < 1e-9 * std::cosh(u));
      CHECK(std::abs(jl.m.b * s - cplx(0.0, -std::sinh(u))) < 1e-9 * std::cosh(u));
      CHECK(std::abs(jl.m.c * s - cplx(0.0, std::sinh(u))) < 1e-9 * std::cosh(u));
      CHECK(std::abs(jl.m.d * s - std::cosh(u)) < 1e-9 * std::cosh(u));

      const double v = n * map.forward(x);
      const auto jr = jost_right(p, {0.0, cplx(n, 0.0)}, x);
      const double sr = std::exp(jr.log_scale);
      CHECK(std::abs(jr.m.a * sr - std::cosh(v)) < 1e-9 * std::cosh(v));
      CHECK(std::abs(jr.m.b * sr - cplx(0.0, std::sinh(v))) < 1e-9 * std::cosh(v));
    }
  }
}

TEST_CASE("left jost solution matches the frozen reference") {
  const auto p = make_sech_profile();
  const auto jl = jost_left(p, {1.0, cplx(2.0, 0.0)}, 0.0);
  CHECK(entry_gap(jl, ref::sech_fL_n2) < 1e-8);
  CHECK(jl.tail_error < 1e-10);
}

TEST_CASE("determinant stays at unity along the path") {
  const auto p = make_bumped_sech_profile(1.0, 0.5, 0.4);
  for (double x : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
    const auto jl = jost_left(p, {1.0, cplx(3.0, 0.0)}, x);
    CHECK(std::abs(jl.m.det() * std::exp(2.0 * jl.log_scale) - 1.0) < 1e-8);
    const auto jr = jost_right(p, {0.7, cplx(2.0, 1.0)}, x);
    CHECK(std::abs(jr.m.det() * std::exp(2.0 * jr.log_scale) - 1.0) < 1e-8);
  }
}

TEST_CASE("entry growth respects the tail-mass envelope") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  for (double zre : {1.0, 3.0}) {
    for (double x : {-2.0, 0.0, 1.0}) {
      const auto jl = jost_left(p, {1.0, cplx(zre, 0.0)}, x);
      const double bound = 2.0 * std::exp(zre * (map.total_width() - map.forward(x)));
      const double mag = jl.m.max_abs() * std::exp(jl.log_scale);
      CHECK(mag <= bound);
      const auto jr = jost_right(p, {1.0, cplx(zre, 0.0)}, x);
      const double bound_r = 2.0 * std::exp(zre * map.forward(x));
      CHECK(jr.m.max_abs() * std::exp(jr.log_scale) <= bound_r);
    }
  }
}

TEST_CASE("conjugation symmetry of the scheme at real points") {
  const auto p = make_bumped_sech_profile(2.0, 0.5, 0.2);
  const auto jl = jost_left(p, {0.8, cplx(2.0, 0.0)}, 0.3);
  const double scale = jl.m.max_abs();
  CHECK(std::abs(jl.m.d - std::conj(jl.m.a)) < 1e-13 * scale);
  CHECK(std::abs(jl.m.c - std::conj(jl.m.b)) < 1e-13 * scale);
}

TEST_CASE("series oracle: single term at z=0") {
  const auto p = make_sech_profile();
  const auto o = volterra_oracle(p, {0.7, cplx(0.0, 0.0)}, 0.5);
  CHECK(std::abs(o.m.a - std::exp(cplx(0, 0.35))) < 1e-12);
  CHECK(std::abs(o.m.b) < 1e-15);
}

TEST_CASE("series oracle agrees with the integrator") {
  const auto p = make_sech_profile();
  for (double lambda : {0.5, 1.0}) {
    for (int n : {1, 2, 3}) {
      for (double x : {-2.0, 0.0, 2.0}) {
        const SpectralPoint pt{lambda, cplx(n, 0.0)};
        const auto solver = jost_left(p, pt, x);
        const auto oracle = volterra_oracle(p, pt, x);
        CHECK(descaled_gap(oracle, solver) < 1e-6);
      }
    }
  }
}

TEST_CASE("series oracle agrees with the integrator from the right") {
  const auto p = make_sech_profile();
  const SpectralPoint pt{1.0, cplx(2.0, 0.0)};
  const auto solver = jost_right(p, pt, -1.0);
  const auto oracle = volterra_oracle(p, pt, -1.0, 120, 1e-10, Side::right);
  CHECK(descaled_gap(oracle, solver) < 1e-6);
}

TEST_CASE("series partial sums stay inside the exponential envelope") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  for (int n : {1, 2}) {
    for (double x : {-1.0, 0.0, 1.5}) {
      const auto o = volterra_oracle(p, {1.0, cplx(n, 0.0)}, x);
      const double envelope = std::exp(n * (map.total_width() - map.forward(x)));
      CHECK(o.m.max_abs() <= 2.0 * envelope);
    }
  }
}

TEST_CASE("oracle rejects series that would not converge affordably") {
  const auto p = make_sech_profile();
  CHECK_THROWS(volterra_oracle(p, {1.0, cplx(40.0, 0.0)}, 0.0));
}

TEST_CASE("reflected profile swaps the jost systems") {
  // F*_R(x, lambda, n) = F_L(-x, -lambda, -n) for a*(x) = a(-x)
  const auto p = make_bumped_sech_profile(2.0, 0.5, 0.3);
  const auto star = reflect_profile(p);
  const SpectralPoint pt{1.0, cplx(2.0, 0.0)};
  const SpectralPoint mirrored{-1.0, cplx(-2.0, 0.0)};
  for (double x : {-1.0, 0.4}) {
    const auto lhs = jost_right(star, pt, x);
    const auto rhs = jost_left(p, mirrored, -x);
    CHECK(descaled_gap(lhs, rhs) < 1e-8 * std::exp(lhs.log_scale + 1.0));
  }
}
