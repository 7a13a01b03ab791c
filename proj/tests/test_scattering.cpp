#include <cmath>
#include <numbers>
#include <vector>

#include "ahscat/error.hpp"
#include "ahscat/scattering.hpp"
#include "doctest.h"
#include "reference_values.hpp"

using namespace ahscat;

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("transfer matrix is the identity at z = 0") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  for (double lambda : {0.5, 1.0}) {
    const auto tm = transfer_matrix(p, map, {lambda, cplx(0.0, 0.0)});
    CHECK(std::abs(tm.a1 * std::exp(tm.log_scale) - 1.0) < 1e-10);
    CHECK(std::abs(tm.a4 * std::exp(tm.log_scale) - 1.0) < 1e-10);
    CHECK(std::abs(tm.a2) < 1e-10);
    CHECK(std::abs(tm.a3) < 1e-10);
  }
}

TEST_CASE("zero-energy transfer matrix has the hyperbolic closed form") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  for (int n : {1, 2, 3}) {
    const auto tm = transfer_matrix(p, map, {0.0, cplx(n, 0.0)});
    const double s = std::exp(tm.log_scale);
    const double ch = std::cosh(n * kPi), sh = std::sinh(n * kPi);
    CHECK(std::abs(tm.a1 * s - ch) < 1e-8 * ch);
    CHECK(std::abs(tm.a2 * s - cplx(0.0, -sh)) < 1e-8 * ch);
    CHECK(std::abs(tm.a3 * s - cplx(0.0, sh)) < 1e-8 * ch);
    CHECK(std::abs(tm.a4 * s - ch) < 1e-8 * ch);
  }
}

TEST_CASE("transfer matrix matches the frozen reference at lambda=1, n=1") {
  const auto p = make_sech_profile();
  const auto tm = transfer_matrix(p, {1.0, cplx(1.0, 0.0)});
  const double s = std::exp(tm.log_scale);
  CHECK(std::abs(tm.a1 * s - cplx(ref::sech_A_n1[0])) < 1e-9);
  CHECK(std::abs(tm.a2 * s - cplx(ref::sech_A_n1[1])) < 1e-9);
  CHECK(std::abs(tm.a3 * s - cplx(ref::sech_A_n1[2])) < 1e-9);
  CHECK(std::abs(tm.a4 * s - cplx(ref::sech_A_n1[3])) < 1e-9);
  CHECK(tm.matching_residual < 1e-8);
}

TEST_CASE("scattering entries against the frozen reference") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  const auto e11 = scattering_entry(p, map, 1.0, 1.0);
  CHECK(std::abs(e11.T - cplx(ref::sech_T_l1_n1)) < 1e-9);
  CHECK(std::abs(e11.L - cplx(ref::sech_L_l1_n1)) < 1e-9);
  CHECK(std::abs(e11.R - cplx(ref::sech_L_l1_n1)) < 1e-9);  // even profile: R = L
  const auto e52 = scattering_entry(p, map, 0.5, 2.0);
  CHECK(std::abs(e52.T - cplx(ref::sech_T_l05_n2)) < 1e-9);
  CHECK(std::abs(e52.L - cplx(ref::sech_L_l05_n2)) < 1e-9);
  const auto e13 = scattering_entry(p, map, 1.0, 3.0);
  CHECK(std::abs(e13.T - cplx(ref::sech_T_l1_n3)) < 1e-9);
  CHECK(std::abs(e13.L - cplx(ref::sech_L_l1_n3)) < 1e-9);
}

TEST_CASE("zero-energy entries reduce to sech closed forms") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  for (int n = 1; n <= 5; ++n) {
    const auto e = scattering_entry(p, map, 0.0, n);
    CHECK(std::abs(e.T - 1.0 / std::cosh(n * kPi)) < 1e-8);
    CHECK(std::abs(e.L - cplx(0.0, std::tanh(n * kPi))) < 1e-8);
  }
}

TEST_CASE("unitarity holds along a realistic sweep") {
  const auto p = make_bumped_sech_profile(1.0, 0.5, 0.4);
  const auto map = build_liouville(p, 1e-12);
  for (double lambda : {0.5, 1.0}) {
    for (int n = 1; n <= 12; ++n) {
      const auto e = scattering_entry(p, map, lambda, n);
      CHECK(e.unitarity_residual < 1e-8);
    }
  }
}

TEST_CASE("literal transfer-matrix relations at small n") {
  // the absolute form of the normalization relations is representable in
  // doubles only while the entries stay moderate
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  for (int n : {1, 2}) {
    const auto tm = transfer_matrix(p, map, {0.7, cplx(n, 0.0)});
    const double s2 = std::exp(2.0 * tm.log_scale);
    CHECK(std::abs((std::norm(tm.a1) - std::norm(tm.a3)) * s2 - 1.0) < 1e-8);
    CHECK(std::abs((std::norm(tm.a4) - std::norm(tm.a2)) * s2 - 1.0) < 1e-8);
    CHECK(std::abs(tm.a1 * std::conj(tm.a2) - tm.a3 * std::conj(tm.a4)) * s2 <
          1e-8);
    CHECK(std::abs(tm.a1 - std::conj(tm.a4)) < 1e-12 * std::abs(tm.a1));
    CHECK(std::abs(tm.a2 - std::conj(tm.a3)) < 1e-12 * std::abs(tm.a1));
  }
}

TEST_CASE("translation covariance phase law") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  const double lambda = 1.0;
  for (double c : {0.3, kPi / lambda}) {
    const auto shifted = translate_profile(p, c);
    const auto map_s = build_liouville(shifted, 1e-12);
    for (int n : {1, 2, 4}) {
      const auto base = scattering_entry(p, map, lambda, n);
      const auto direct = scattering_entry(shifted, map_s, lambda, n);
      const auto law = translated_s_matrix(base, c);
      CHECK(std::abs(direct.T - law.T) < 1e-8);
      CHECK(std::abs(direct.L - law.L) < 1e-8);
      CHECK(std::abs(direct.R - law.R) < 1e-8);
      CHECK(std::abs(std::abs(direct.L) - std::abs(base.L)) < 1e-8);
    }
  }
  // quarter-period translation rotates L by -i
  const auto base = scattering_entry(p, map, 1.0, 2.0);
  const auto quarter = translated_s_matrix(base, kPi / 4.0);
  CHECK(std::abs(quarter.L - base.L * cplx(0.0, -1.0)) < 1e-14);
}

TEST_CASE("star reflection identity") {
  for (int n : {1, 2}) {
    CHECK(star_reflection_check(make_sech_profile(), 1.0, n) < 1e-8);
  }
  CHECK(star_reflection_check(make_bumped_sech_profile(3.0, 0.5, 0.1), 1.0, 2) <
        1e-8);
  // even profile: the identity also closes on the profile itself
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  const auto plus = scattering_entry(p, map, 1.0, 1.0);
  const auto minus = scattering_entry(p, map, -1.0, 1.0);
  CHECK(std::abs(plus.R + std::conj(minus.L)) < 1e-8);
  CHECK_THROWS_AS(star_reflection_check(p, 1.0, 0), Error);
}

TEST_CASE("zero-energy star identity from the closed form") {
  const auto p = make_bumped_sech_profile(2.0, 0.5, 0.2);
  const auto star = reflect_profile(p);
  const auto map_p = build_liouville(p, 1e-12);
  const auto map_s = build_liouville(star, 1e-12);
  for (int n : {1, 2}) {
    const auto rs = scattering_entry(star, map_s, 0.0, n);
    const auto l = scattering_entry(p, map_p, 0.0, n);
    CHECK(std::abs(rs.R + std::conj(l.L)) < 1e-8);
  }
}

TEST_CASE("operator norms aggregate the supplied channels") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  std::vector<ScatteringEntry> entries;
  for (int n = 1; n <= 10; ++n) entries.push_back(scattering_entry(p, map, 0.0, n));
  const auto norms = operator_norms(entries);
  CHECK(norms.T == doctest::Approx(1.0 / std::cosh(kPi)).epsilon(1e-8));
  CHECK(norms.L <= 1.0 + 1e-8);
  CHECK(norms.T <= 1.0 + 1e-8);
  const auto single = operator_norms(std::span(entries.data(), 1));
  CHECK(single.T == doctest::Approx(std::abs(entries[0].T)));
  CHECK_THROWS_AS(operator_norms(std::span<const ScatteringEntry>{}), Error);
}

TEST_CASE("transmission magnitude decreases in n on sech-class profiles") {
  const auto p = make_sech_profile();
  const auto map = build_liouville(p, 1e-12);
  double prev = 2.0;
  for (int n = 1; n <= 20; ++n) {
    const auto e = scattering_entry(p, map, 1.0, n);
    const double t = std::abs(e.T);
    CHECK(t < prev);
    prev = t;
  }
}
