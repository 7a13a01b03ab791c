#include "ahscat/profile.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"

namespace ahscat {

namespace {

void check_positive_on_grid(const PotentialProfile& p, double lo, double hi,
                            int samples = 4096) {
  for (int i = 0; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double a = p(x);
    if (!(a > 0.0) || !std::isfinite(a)) {
      std::ostringstream os;
      os << "potential not positive: a(" << x << ") = " << a;
      fail(ErrorKind::invalid_argument, os.str());
    }
  }
}

double bump_shape(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double bump_shape_derivative(double u) {
  if (std::abs(u) >= 1.0) return 0.0;
  const double s = 1.0 - u * u;
  return bump_shape(u) * (-2.0 * u / (s * s));
}

}  // namespace

PotentialProfile::PotentialProfile(std::function<double(double)> eval,
                                   std::function<double(double)> deriv,
                                   Tail left, Tail right, double cutoff,
                                   std::string label)
    : eval_(std::move(eval)),
      deriv_(std::move(deriv)),
      left_(left),
      right_(right),
      cutoff_(cutoff),
      label_(std::move(label)) {
  if (!(cutoff_ > 0)) fail(ErrorKind::invalid_argument, "cutoff must be positive");
  if (!(left_.amplitude > 0) || !(right_.amplitude > 0))
    fail(ErrorKind::invalid_argument, "tail amplitudes must be positive");
  if (!(left_.rate > 0) || !(right_.rate < 0))
    fail(ErrorKind::invalid_argument,
         "tail rates must satisfy rate_minus > 0 > rate_plus");
}

double PotentialProfile::operator()(double x) const {
  if (x < -cutoff_) return left_.amplitude * std::exp(left_.rate * x);
  if (x > cutoff_) return right_.amplitude * std::exp(right_.rate * x);
  return eval_(x);
}

double PotentialProfile::derivative(double x) const {
  if (x < -cutoff_) return left_.rate * left_.amplitude * std::exp(left_.rate * x);
  if (x > cutoff_) return right_.rate * right_.amplitude * std::exp(right_.rate * x);
  return deriv_(x);
}

double PotentialProfile::tail_mass_below(double x) const {
  if (x > -cutoff_)
    fail(ErrorKind::domain, "tail_mass_below requires x <= -cutoff");
  return left_.amplitude * std::exp(left_.rate * x) / left_.rate;
}

double PotentialProfile::tail_mass_above(double x) const {
  if (x < cutoff_) fail(ErrorKind::domain, "tail_mass_above requires x >= cutoff");
  return right_.amplitude * std::exp(right_.rate * x) / (-right_.rate);
}

PotentialProfile make_sech_profile() { return make_scaled_sech_profile(1.0, 1.0); }

PotentialProfile make_scaled_sech_profile(double amplitude, double rate) {
  if (!(amplitude > 0) || !(rate > 0))
    fail(ErrorKind::invalid_argument, "scaled sech needs amplitude > 0, rate > 0");
  auto eval = [=](double x) { return amplitude / std::cosh(rate * x); };
  auto deriv = [=](double x) {
    const double s = 1.0 / std::cosh(rate * x);
    return -amplitude * rate * s * std::tanh(rate * x);
  };
  PotentialProfile::Tail left{2.0 * amplitude, rate};
  PotentialProfile::Tail right{2.0 * amplitude, -rate};
  std::ostringstream label;
  if (amplitude == 1.0 && rate == 1.0)
    label << "sech";
  else
    label << "sech[amp=" << amplitude << ",rate=" << rate << "]";
  PotentialProfile p(eval, deriv, left, right, kSechCutoff / rate, label.str());
  check_positive_on_grid(p, -p.cutoff(), p.cutoff());
  return p;
}

PotentialProfile make_bumped_sech_profile(double center, double width,
                                          double height) {
  if (!(width > 0)) fail(ErrorKind::invalid_argument, "bump width must be positive");
  if (height <= -1.0)
    fail(ErrorKind::invalid_argument, "bump height <= -1 breaks positivity");
  const double cutoff = std::max(kSechCutoff, std::abs(center) + width + 1.0);
  auto eval = [=](double x) {
    return (1.0 + height * bump_shape((x - center) / width)) / std::cosh(x);
  };
  auto deriv = [=](double x) {
    const double u = (x - center) / width;
    const double s = 1.0 / std::cosh(x);
    const double f = 1.0 + height * bump_shape(u);
    return -s * std::tanh(x) * f + s * height * bump_shape_derivative(u) / width;
  };
  std::ostringstream label;
  label << "bumped_sech[c=" << center << ",w=" << width << ",h=" << height << "]";
  PotentialProfile p(eval, deriv, {2.0, 1.0}, {2.0, -1.0}, cutoff, label.str());
  check_positive_on_grid(p, -p.cutoff(), p.cutoff());
  return p;
}

PotentialProfile make_analytic_profile(ProfileFamily family,
                                       const std::vector<double>& params) {
  switch (family) {
    case ProfileFamily::sech:
      return make_sech_profile();
    case ProfileFamily::scaled_sech:
      if (params.size() != 2)
        fail(ErrorKind::invalid_argument, "scaled_sech expects [amplitude, rate]");
      return make_scaled_sech_profile(params[0], params[1]);
    case ProfileFamily::bumped_sech:
      if (params.size() != 3)
        fail(ErrorKind::invalid_argument,
             "bumped_sech expects [center, width, height]");
      return make_bumped_sech_profile(params[0], params[1], params[2]);
    case ProfileFamily::tabulated:
      fail(ErrorKind::invalid_argument,
           "tabulated profiles are built from a table, not parameters");
  }
  fail(ErrorKind::invalid_argument, "unknown profile family");
}

PotentialProfile make_tabulated_profile(const std::vector<double>& x,
                                        const std::vector<double>& a) {
  if (x.size() != a.size() || x.size() < 8)
    fail(ErrorKind::invalid_argument, "tabulated profile needs >= 8 rows");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] > 0.0)) {
      std::ostringstream os;
      os << "tabulated potential not positive at x = " << x[i];
      fail(ErrorKind::invalid_argument, os.str());
    }
  auto interp = std::make_shared<num::Pchip>(x, a);

  // log-linear tail fits over the outer thirds of the table
  auto fit_segment = [&](std::size_t lo, std::size_t hi) {
    std::vector<double> xs(x.begin() + lo, x.begin() + hi);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = std::log(a[lo + i]);
    return num::fit_line(xs, ys);
  };
  const std::size_t n = x.size();
  const auto left = fit_segment(0, n / 3);
  const auto right = fit_segment(n - n / 3, n);
  if (!(left.slope > 0) || !(right.slope < 0))
    fail(ErrorKind::invalid_argument,
         "tabulated profile tails must decay at both ends");

  const double cutoff = std::max(std::abs(x.front()), std::abs(x.back()));
  auto eval = [interp](double t) { return (*interp)(t); };
  auto deriv = [interp](double t) { return interp->derivative(t); };
  PotentialProfile p(eval, deriv, {std::exp(left.intercept), left.slope},
                     {std::exp(right.intercept), right.slope}, cutoff,
                     "tabulated");
  check_positive_on_grid(p, x.front(), x.back());
  return p;
}

PotentialProfile load_tabulated_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open table: " + path);
  std::string header;
  std::getline(in, header);
  if (header.find("#") != 0 || header.find("x") == std::string::npos ||
      header.find("a") == std::string::npos)
    fail(ErrorKind::io, path + ": expected header line '# x a'");
  std::vector<double> xs, as;
  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double x, a;
    if (!(row >> x >> a)) {
      std::ostringstream os;
      os << path << ":" << lineno << ": expected two numeric columns";
      fail(ErrorKind::io, os.str());
    }
    if (!xs.empty() && !(x > xs.back())) {
      std::ostringstream os;
      os << path << ":" << lineno << ": x must strictly increase";
      fail(ErrorKind::io, os.str());
    }
    xs.push_back(x);
    as.push_back(a);
  }
  return make_tabulated_profile(xs, as);
}

PotentialProfile translate_profile(const PotentialProfile& p, double c) {
  auto eval = [p, c](double x) { return p(x + c); };
  auto deriv = [p, c](double x) { return p.derivative(x + c); };
  PotentialProfile::Tail left{p.a_minus() * std::exp(p.kappa_minus() * c),
                              p.kappa_minus()};
  PotentialProfile::Tail right{p.a_plus() * std::exp(p.kappa_plus() * c),
                               p.kappa_plus()};
  std::ostringstream label;
  label << p.label() << "<<" << c;
  return PotentialProfile(eval, deriv, left, right, p.cutoff() + std::abs(c),
                          label.str());
}

PotentialProfile reflect_profile(const PotentialProfile& p) {
  auto eval = [p](double x) { return p(-x); };
  auto deriv = [p](double x) { return -p.derivative(-x); };
  // tails swap sides; rates change sign
  PotentialProfile::Tail left{p.a_plus(), -p.kappa_plus()};
  PotentialProfile::Tail right{p.a_minus(), -p.kappa_minus()};
  return PotentialProfile(eval, deriv, left, right, p.cutoff(),
                          p.label() + "*");
}

TailFit fit_asymptotic_constants(const PotentialProfile& p, double window_lo,
                                 double window_hi, double residual_threshold) {
  if (!(window_hi > window_lo))
    fail(ErrorKind::invalid_argument, "tail fit window is empty");
  if (window_lo < 0.5 * p.cutoff() - 1e-12)
    fail(ErrorKind::invalid_argument,
         "tail fit window must lie inside |x| >= cutoff/2");
  constexpr int kSamples = 64;
  auto fit_side = [&](int sign) {
    std::vector<double> xs(kSamples), ys(kSamples);
    double prev = sign > 0 ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
    (void)prev;
    for (int i = 0; i < kSamples; ++i) {
      const double t = window_lo + (window_hi - window_lo) * i / (kSamples - 1);
      const double x = sign * t;
      const double a = p(x);
      if (!(a > 0)) fail(ErrorKind::numeric, "tail fit hit a non-positive value");
      xs[i] = x;
      ys[i] = std::log(a);
    }
    // sampling moves outward on both sides, so a decaying tail is decreasing
    for (int i = 1; i < kSamples; ++i) {
      if (ys[i] >= ys[i - 1]) {
        std::ostringstream os;
        os << "non-monotone tail near x = " << xs[i];
        fail(ErrorKind::numeric, os.str());
      }
    }
    return num::fit_line(xs, ys);
  };
  const auto right = fit_side(+1);
  const auto left = fit_side(-1);
  if (right.rms_residual > residual_threshold ||
      left.rms_residual > residual_threshold) {
    std::ostringstream os;
    os << "tail fit residual too large (left " << left.rms_residual << ", right "
       << right.rms_residual << ", threshold " << residual_threshold << ")";
    fail(ErrorKind::numeric, os.str());
  }
  TailFit out;
  out.a_minus = std::exp(left.intercept);
  out.kappa_minus = left.slope;
  out.a_plus = std::exp(right.intercept);
  out.kappa_plus = right.slope;
  out.residual_minus = left.rms_residual;
  out.residual_plus = right.rms_residual;
  return out;
}

}  // namespace ahscat
