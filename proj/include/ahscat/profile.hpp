#pragma once
#include <functional>
#include <string>
#include <vector>

namespace ahscat {

// Radial potential a(x) of an asymptotically hyperbolic metric
// dx^2 + a(x)^{-2} dw^2: positive, C^2, integrable, with exponential tails
//   a(x) ~ amplitude_pm * exp(rate_pm * x),  rate_- > 0 > rate_+.
//
// Beyond |x| = cutoff() the profile evaluates the exact tail model, which
// keeps tail integrals and truncation bounds in closed form.
class PotentialProfile {
public:
  struct Tail {
    double amplitude = 0.0;
    double rate = 0.0;
  };

  PotentialProfile() = default;
  PotentialProfile(std::function<double(double)> eval,
                   std::function<double(double)> deriv, Tail left, Tail right,
                   double cutoff, std::string label);

  double operator()(double x) const;
  double derivative(double x) const;

  double a_minus() const { return left_.amplitude; }
  double a_plus() const { return right_.amplitude; }
  double kappa_minus() const { return left_.rate; }
  double kappa_plus() const { return right_.rate; }
  double cutoff() const { return cutoff_; }
  const std::string& label() const { return label_; }

  // exact tail integrals of the model: mass_below needs x <= -cutoff,
  // mass_above needs x >= cutoff
  double tail_mass_below(double x) const;
  double tail_mass_above(double x) const;

private:
  std::function<double(double)> eval_, deriv_;
  Tail left_, right_;
  double cutoff_ = 0.0;
  std::string label_;
};

inline constexpr double kSechCutoff = 12.0;

PotentialProfile make_sech_profile();
// a(x) = amplitude * sech(rate * x)
PotentialProfile make_scaled_sech_profile(double amplitude, double rate);
// sech(x) * (1 + height * bump((x-center)/width)); bump is the smooth unit
// bump exp(1 - 1/(1-u^2)) on |u|<1, so the profile equals sech outside
// [center-width, center+width]
PotentialProfile make_bumped_sech_profile(double center, double width, double height);

enum class ProfileFamily { sech, scaled_sech, bumped_sech, tabulated };
PotentialProfile make_analytic_profile(ProfileFamily family,
                                       const std::vector<double>& params);

// monotone-cubic interpolated table; tails fitted on the outer thirds
PotentialProfile make_tabulated_profile(const std::vector<double>& x,
                                        const std::vector<double>& a);
// two-column text table with header line "# x a", x strictly increasing
PotentialProfile load_tabulated_profile(const std::string& path);

PotentialProfile translate_profile(const PotentialProfile& p, double c);
PotentialProfile reflect_profile(const PotentialProfile& p);

struct TailFit {
  double a_minus = 0.0, kappa_minus = 0.0;
  double a_plus = 0.0, kappa_plus = 0.0;
  double residual_minus = 0.0, residual_plus = 0.0;  // rms of the log fits
};

// log-linear regression of ln a(x) over [lo,hi] (right tail) and [-hi,-lo]
// (left tail); the window must sit inside |x| >= cutoff/2
TailFit fit_asymptotic_constants(const PotentialProfile& p, double window_lo,
                                 double window_hi, double residual_threshold = 1e-2);

}  // namespace ahscat
