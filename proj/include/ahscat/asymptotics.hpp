#pragma once
#include <span>
#include <vector>

#include "ahscat/liouville.hpp"
#include "ahscat/profile.hpp"
#include "ahscat/scattering.hpp"
#include "ahscat/types.hpp"

namespace ahscat {

// complex log-gamma (Lanczos series, reflection for Re w < 1/2) and gamma;
// gamma throws on non-positive-integer poles
cplx log_gamma(cplx w);
cplx complex_gamma(cplx w);

// constants entering the large-z closed forms of the scattering data
struct AsymptoticConstants {
  double lambda = 0.0;
  double A = 0.0;
  double a_minus = 0.0, a_plus = 0.0;
  double kappa_minus = 0.0, kappa_plus = 0.0;

  cplx nu_plus() const { return {0.5, -lambda / kappa_plus}; }
  cplx mu_minus() const { return {0.5, lambda / kappa_minus}; }

  static AsymptoticConstants from_profile(const PotentialProfile& p,
                                          const LiouvilleMap& map, double lambda);
};

// leading large-z closed forms (principal branch of (z/2)^{i mu}, valid in the
// sector |arg z| < pi/2); no O(1/z) correction terms
cplx predicted_T(const AsymptoticConstants& c, cplx z);
cplx predicted_L(const AsymptoticConstants& c, cplx z);
// two-sided forms: away from the real axis they include the subdominant
// e^{-zA} term with the sign(Im z) branch factor
cplx predicted_aL1(const AsymptoticConstants& c, cplx z);
cplx predicted_aL3(const AsymptoticConstants& c, cplx z);

struct DecaySample {
  int n = 0;
  double value = 0.0;  // positive magnitude
};

struct DecayFit {
  double rate = 0.0;       // value ~ C e^{-rate n}
  double intercept = 0.0;  // ln C
  double rms_residual = 0.0;
  int window_lo = 0, window_hi = 0;
  std::size_t count = 0;
};

// least squares on ln(value) against n over n in [window_lo, window_hi]
DecayFit fit_exponential_decay(std::span<const DecaySample> samples,
                               int window_lo, int window_hi);

// slope of unwrapped arg L(lambda, n) against ln n equals -2 lambda / kappa_-;
// entries must be sorted by increasing real n at a common lambda
double recover_kappa_minus(std::span<const ScatteringEntry> entries);

}  // namespace ahscat
