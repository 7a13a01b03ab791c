#pragma once
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ahscat/profile.hpp"
#include "ahscat/scattering.hpp"
#include "ahscat/types.hpp"

namespace ahscat {

struct UniquenessOptions {
  ScatteringOptions scattering;
  int fit_n_min = 3;            // drop the lowest momenta from the rate fit
  double fit_floor = 1e-9;      // drop differences below ~100x solver noise
  double identical_tol = 1e-9;  // all-n threshold for "identical at tolerance"
  double divergence_tol = 1e-8; // pointwise |a - a~| threshold
  double slack = 0.25;          // verdict slack on the implied cutoff (x units)
};

// One local-uniqueness experiment: the reflection difference |L - L~| (or
// |R - R~|) decays like e^{-2nB}; B maps through the Liouville coordinate to
// the abscissa up to which the profiles carry the same reflection data.
struct UniquenessReport {
  Side side = Side::left;
  double lambda = 0.0;
  int n_max = 0;
  std::vector<int> ns;
  std::vector<double> diffs;      // |L - L~| or |R - R~| per n (audit trail)
  bool identical = false;         // every difference under identical_tol
  double fitted_rate = 0.0;
  double implied_B = 0.0;         // fitted_rate / 2
  double implied_cutoff_x = 0.0;  // h(B) for left, h(A - B) for right
  double true_divergence_x = 0.0; // first (left) / last (right) |a-a~| > tol
  int window_lo = 0, window_hi = 0;
  bool consistent = false;
};

UniquenessReport uniqueness_experiment(const PotentialProfile& pa,
                                       const PotentialProfile& pb, double lambda,
                                       int n_max, Side side,
                                       const UniquenessOptions& opts = {});

// Laplace-transform decay: F(z) = (2 pi)^{-1/2} int_B^{b_max} e^{-tz} f(t) dt
// obeys |F(z)| <= |f|_2 e^{-B Re z} / sqrt(4 pi Re z) whenever f is supported
// in [B, b_max].
struct HardySample {
  double z = 0.0;
  double transform_magnitude = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - magnitude, nonnegative when satisfied
};

struct HardyReport {
  double B = 0.0;
  double f_norm = 0.0;
  std::vector<HardySample> samples;
  int violations = 0;
  double worst_margin = 0.0;
};

HardyReport hardy_decay_check(double B, const std::function<double(double)>& f,
                              double b_max, std::span<const int> n_list,
                              std::span<const double> z_list);

// `trials` randomized square-integrable bumps on [B, b_max], all checked
// against the bound at the given points; seeded for reproducibility
HardyReport hardy_randomized_trials(double B, double b_max, int trials,
                                    unsigned seed, std::span<const int> n_list,
                                    std::span<const double> z_list);

struct TransmissionOptions {
  ScatteringOptions scattering;
  int l_agreement_count = 10;   // "finitely many" reflection matches required
  double l_agreement_tol = 1e-8;
  int fit_n_min = 4;
  double rel_floor = 1e-7;      // |T - T~| below this times |T| counts as equal
};

struct TransmissionReport {
  double lambda = 0.0;
  int n_max = 0;
  bool curvature_ok_a = false;  // 1/kappa_+ + 1/kappa_- < 0
  bool curvature_ok_b = false;
  double width_a = 0.0, width_b = 0.0;      // fitted from |T| decay
  bool t_identical = false;                 // |T - T~| at solver noise for all n
  double diff_rate = 0.0;                   // fitted rate of |T - T~|
  bool t_hypothesis_met = false;            // rate > 2 max(width_a, width_b)
  bool l_agreement = false;
  double sigma_phase = 0.0;   // translation from arg(L~/L), mod pi/lambda
  double sigma_xcorr = 0.0;   // translation from profile cross-correlation
  bool translation_recovered = false;
  std::string verdict;
  std::vector<int> ns;
  std::vector<double> t_diffs, l_diffs;
};

TransmissionReport transmission_experiment(const PotentialProfile& pa,
                                           const PotentialProfile& pb,
                                           double lambda, int n_max,
                                           const TransmissionOptions& opts = {});

}  // namespace ahscat
