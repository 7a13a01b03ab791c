#include <cmath>
#include <numbers>

#include "ahscat/error.hpp"
#include "ahscat/inverse.hpp"
#include "ahscat/liouville.hpp"
#include "doctest.h"

using namespace ahscat;

namespace {

const double kPi = std::numbers::pi;

// abscissa where the sech Liouville coordinate reaches X: 2 atan(e^x) = X
double sech_h(double X) { return std::log(std::tan(0.5 * X)); }

// narrow bump whose support starts exactly at x0; the mass sits within
// ~0.09 Liouville units of the onset so the fitted rate tracks 2 g(x0)
PotentialProfile probe_profile(double x0) {
  return make_bumped_sech_profile(x0 + 0.05, 0.05, 1.0);
}

}  // namespace

TEST_CASE("reflection-difference rate tracks the bump onset") {
  const auto base = make_sech_profile();
  const double x0 = sech_h(1.0);
  const auto rep =
      uniqueness_experiment(base, probe_profile(x0), 1.0, 14, Side::left);
  CHECK_FALSE(rep.identical);
  CHECK(std::abs(rep.fitted_rate - 2.0) < 0.2);
  CHECK(rep.implied_cutoff_x <= rep.true_divergence_x + 0.25);
  CHECK(rep.consistent);
  CHECK(std::abs(rep.true_divergence_x - x0) < 0.05);
}

TEST_CASE("moving the bump outward raises the rate") {
  const auto base = make_sech_profile();
  const auto near = uniqueness_experiment(base, probe_profile(sech_h(1.0)), 1.0,
                                          14, Side::left);
  const auto far = uniqueness_experiment(base, probe_profile(sech_h(1.5)), 1.0,
                                         14, Side::left);
  CHECK(far.fitted_rate > near.fitted_rate);
  CHECK(std::abs(far.fitted_rate - 3.0) < 0.3);
}

TEST_CASE("translation by the phase period is invisible") {
  const auto base = make_sech_profile();
  const auto moved = translate_profile(base, kPi / 1.0);
  const auto rep = uniqueness_experiment(base, moved, 1.0, 12, Side::left);
  CHECK(rep.identical);
  CHECK(rep.consistent);
  for (double d : rep.diffs) CHECK(d < 1e-8);
}

TEST_CASE("right-side experiment mirrors the left") {
  const auto base = make_sech_profile();
  const double x0 = sech_h(1.0);
  // support ending at -x0: same distance from the right end by symmetry
  const auto pb = make_bumped_sech_profile(-x0 - 0.05, 0.05, 1.0);
  const auto rep = uniqueness_experiment(base, pb, 1.0, 14, Side::right);
  CHECK(std::abs(rep.fitted_rate - 2.0) < 0.2);
  CHECK(rep.consistent);
  CHECK(rep.implied_cutoff_x >= rep.true_divergence_x - 0.25);
}

TEST_CASE("zero energy is rejected") {
  const auto base = make_sech_profile();
  CHECK_THROWS_AS(
      uniqueness_experiment(base, probe_profile(0.0), 0.0, 12, Side::left),
      Error);
}

TEST_CASE("zero energy reflections are translation blind") {
  // closed form: L(0, n) depends only on the total width, which translations
  // preserve, so the reflection uniqueness statement must fail at lambda = 0
  const auto base = make_sech_profile();
  const auto map_a = build_liouville(base, 1e-12);
  for (double c : {0.4, 1.1}) {
    const auto moved = translate_profile(base, c);
    const auto map_b = build_liouville(moved, 1e-12);
    for (int n : {1, 2, 3}) {
      const auto ea = scattering_entry(base, map_a, 0.0, n);
      const auto eb = scattering_entry(moved, map_b, 0.0, n);
      CHECK(std::abs(ea.L - eb.L) < 1e-8);
    }
  }
}

TEST_CASE("hardy bound for the indicator window") {
  // f = 1 on [1, 2]: transform (e^{-z} - e^{-2z}) / (sqrt(2 pi) z)
  auto f = [](double) { return 1.0; };
  const int ns[] = {2, 4};
  const double zs[] = {1.0, 5.0, 10.0};
  const auto rep = hardy_decay_check(1.0, f, 2.0, ns, zs);
  CHECK(rep.violations == 0);
  CHECK(rep.f_norm == doctest::Approx(1.0).epsilon(1e-10));
  for (const auto& s : rep.samples) {
    const double expect =
        (std::exp(-s.z) - std::exp(-2.0 * s.z)) / (std::sqrt(2.0 * kPi) * s.z);
    CHECK(s.transform_magnitude == doctest::Approx(expect).epsilon(1e-10));
    CHECK(s.margin >= 0.0);
  }
}

TEST_CASE("hardy bound on the zero function is saturated at zero") {
  auto f = [](double) { return 0.0; };
  const int ns[] = {1};
  const double zs[] = {2.0};
  const auto rep = hardy_decay_check(1.0, f, 4.0, ns, zs);
  CHECK(rep.f_norm == 0.0);
  for (const auto& s : rep.samples) {
    CHECK(s.transform_magnitude == 0.0);
    CHECK(s.bound == 0.0);
  }
  CHECK(rep.violations == 0);
}

TEST_CASE("randomized hardy trials never violate the bound") {
  const int ns[] = {1, 3, 7};
  const double zs[] = {1.0, 5.0, 10.0};
  const auto rep = hardy_randomized_trials(1.0, 4.0, 20, 1234u, ns, zs);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_margin >= 0.0);
}

TEST_CASE("transmission experiment on a translated pair") {
  const auto base = make_sech_profile();
  const auto moved = translate_profile(base, 0.7);
  const auto rep = transmission_experiment(base, moved, 1.0, 12);
  CHECK(rep.t_identical);       // translations leave T untouched
  CHECK_FALSE(rep.l_agreement); // reflections pick up the phase
  CHECK_FALSE(rep.curvature_ok_a);  // symmetric rates: 1/k+ + 1/k- = 0
  CHECK(std::abs(rep.sigma_xcorr - 0.7) < 0.02);
  const double period = kPi;
  double gap = rep.sigma_phase - 0.7;
  gap -= period * std::round(gap / period);
  CHECK(std::abs(gap) < 1e-4);
  CHECK(rep.translation_recovered);
  CHECK(rep.verdict.find("not met") != std::string::npos);
}

TEST_CASE("transmission experiment separates genuinely different profiles") {
  const auto base = make_sech_profile();
  const auto other = make_bumped_sech_profile(0.5, 0.5, 0.8);
  const auto rep = transmission_experiment(base, other, 1.0, 12);
  CHECK_FALSE(rep.t_identical);
  CHECK_FALSE(rep.t_hypothesis_met);  // differences decay like the width itself
  CHECK(rep.verdict.find("not met") != std::string::npos);
}

TEST_CASE("identical profiles give the trivial transmission verdict") {
  const auto base = make_sech_profile();
  const auto rep = transmission_experiment(base, base, 1.0, 10);
  CHECK(rep.t_identical);
  CHECK(rep.l_agreement);
  CHECK(rep.sigma_xcorr == doctest::Approx(0.0));
  CHECK(std::abs(rep.sigma_phase) < 1e-10);
}

namespace {

// two-rate variant: a = 2/(e^{-k- x} + e^{-k+ x}) decays like e^{k- x} on the
// left and e^{k+ x} on the right; with k- < |k+|... here k- = 1, k+ = -1/2 the
// curvature combination 1/k+ + 1/k- = -1 is strictly negative
PotentialProfile two_rate_profile() {
  const double km = 1.0, kp = -0.5;
  auto eval = [=](double x) {
    return 2.0 / (std::exp(-km * x) + std::exp(-kp * x));
  };
  auto deriv = [=](double x) {
    const double d = std::exp(-km * x) + std::exp(-kp * x);
    return 2.0 * (km * std::exp(-km * x) + kp * std::exp(-kp * x)) / (d * d);
  };
  return PotentialProfile(eval, deriv, {2.0, km}, {2.0, kp}, 30.0, "two_rate");
}

}  // namespace

TEST_CASE("transmission hypotheses close on an admissible pair") {
  const auto pa = two_rate_profile();
  const double lambda = 1.0;
  const auto pb = translate_profile(pa, kPi / lambda);  // reflections unchanged
  const auto rep = transmission_experiment(pa, pb, lambda, 10);
  CHECK(rep.curvature_ok_a);
  CHECK(rep.curvature_ok_b);
  CHECK(rep.t_identical);
  CHECK(rep.l_agreement);
  CHECK(rep.verdict.find("hypotheses met") != std::string::npos);
  CHECK(std::abs(rep.sigma_xcorr - kPi) < 0.02);
  CHECK(rep.translation_recovered);
}
