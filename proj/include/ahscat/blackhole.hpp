#pragma once
#include "ahscat/profile.hpp"

namespace ahscat {

// Reissner-Nordstrom-de Sitter exterior: lapse F(r) = 1 - 2M/r + Q^2/r^2
// - (Lambda/3) r^2 with three simple positive roots r_c < r_- < r_+ and one
// negative root r_n.
struct RNdSParams {
  double M = 1.0;
  double Q = 0.0;
  double Lambda = 0.0;
};

struct HorizonData {
  RNdSParams params;
  double r_n = 0.0, r_c = 0.0, r_minus = 0.0, r_plus = 0.0;
  double kappa_n = 0.0, kappa_c = 0.0, kappa_minus = 0.0, kappa_plus = 0.0;
};

double lapse(const RNdSParams& p, double r);
double lapse_derivative(const RNdSParams& p, double r);

// roots of r^2 F(r) ordered r_n < 0 < r_c < r_minus < r_plus, each polished to
// |F| < 1e-12; surface gravities kappa_j = F'(r_j)/2
HorizonData find_horizons(const RNdSParams& p);

// radial coordinate with dx/dr = 1/F on (r_minus, r_plus):
// x = sum_j ln|r - r_j| / (2 kappa_j) + c
double regge_wheeler(const HorizonData& h, double r, double c);

// integration constant that puts x = 0 at the geometric mean sqrt(r_- r_+)
double centered_rw_constant(const HorizonData& h);

// inverse of regge_wheeler by safeguarded Newton
double radius_from_rw(const HorizonData& h, double x, double c);

// exterior width int_{r_-}^{r_+} dr / (r sqrt(F)) by endpoint-absorbing
// quadrature; equals the total mass of the induced radial potential
double exterior_width(const HorizonData& h, double tol = 1e-12);

// closed-form tail amplitudes of a(x) = sqrt(F(r(x)))/r(x) for the given
// integration constant (left: event horizon, right: cosmological horizon)
double tail_amplitude_minus(const HorizonData& h, double c);
double tail_amplitude_plus(const HorizonData& h, double c);

// the induced radial potential a(x) = sqrt(F(r(x)))/r(x); tail rates are the
// surface gravities, amplitudes fitted on the tail windows.  c defaults to the
// centered convention.
PotentialProfile bh_profile(const RNdSParams& p);
PotentialProfile bh_profile(const RNdSParams& p, double c);

struct RecoveryResult {
  RNdSParams params;
  double residual = 0.0;  // rms of the relative mismatches at the optimum
  bool consistent = false;
};

// nonlinear least squares over (M, Q^2, Lambda) matching the forward-computed
// (A, kappa_-, kappa_+) plus a translation-invariant amplitude combination;
// consistent when the residual lands under `threshold`
RecoveryResult recover_parameters(double A, double kappa_minus, double kappa_plus,
                                  double a_minus, double a_plus,
                                  double threshold = 1e-4);

}  // namespace ahscat
