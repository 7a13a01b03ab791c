#include "ahscat/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"

namespace ahscat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// log(sin(w)) with stable branches for large |Im w|
cplx sin_log(cplx w) {
  const cplx I(0.0, 1.0);
  if (w.imag() > 0.0)
    return -I * (kPi / 2.0) - kLn2 - I * w + std::log(std::exp(2.0 * I * w) - 1.0);
  return -I * (kPi / 2.0) - kLn2 + I * w + std::log(1.0 - std::exp(-2.0 * I * w));
}

bool at_pole(cplx w) {
  if (w.imag() != 0.0) return false;
  const double r = std::round(w.real());
  return r <= 0.0 && std::abs(w.real() - r) < 1e-13;
}

// positive real base raised to a complex exponent
cplx pos_pow(double base, cplx expo) { return std::exp(expo * std::log(base)); }

}  // namespace

cplx log_gamma(cplx w) {
  if (at_pole(w)) fail(ErrorKind::domain, "log_gamma pole at non-positive integer");
  if (w.real() < 0.5)
    return std::log(kPi) - sin_log(kPi * w) - log_gamma(1.0 - w);
  // 14-term Lanczos-type series, g = 671/128
  static const double coef[14] = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   3.39946499848118887e-5,  4.65236289270485756e-5,
      -9.83744753048795646e-5, 1.58088703224912494e-4,  -2.10264441724104883e-4,
      2.17439618115212643e-4,  -1.64318106536763890e-4, 8.44182239838527433e-5,
      -2.61908384015814087e-5, 3.68991826595316234e-6};
  cplx y = w;
  cplx tmp = w + 5.24218750000000000;
  tmp = (w + 0.5) * std::log(tmp) - tmp;
  cplx ser = 0.999999999999997092;
  for (double c : coef) {
    y += 1.0;
    ser += c / y;
  }
  return tmp + std::log(2.5066282746310005 * ser / w);
}

cplx complex_gamma(cplx w) { return std::exp(log_gamma(w)); }

AsymptoticConstants AsymptoticConstants::from_profile(const PotentialProfile& p,
                                                      const LiouvilleMap& map,
                                                      double lambda) {
  AsymptoticConstants c;
  c.lambda = lambda;
  c.A = map.total_width();
  c.a_minus = p.a_minus();
  c.a_plus = p.a_plus();
  c.kappa_minus = p.kappa_minus();
  c.kappa_plus = p.kappa_plus();
  return c;
}

cplx predicted_T(const AsymptoticConstants& c, cplx z) {
  const cplx ikp(0.0, c.lambda / c.kappa_plus);
  const cplx ikm(0.0, c.lambda / c.kappa_minus);
  const cplx pref = 2.0 * kPi * pos_pow(-c.a_plus / c.kappa_plus, ikp) *
                    pos_pow(c.a_minus / c.kappa_minus, -ikm);
  const cplx gam = complex_gamma(0.5 - ikm) * complex_gamma(0.5 + ikp);
  const cplx zpow = std::exp(cplx(0.0, c.lambda * (1.0 / c.kappa_plus -
                                                   1.0 / c.kappa_minus)) *
                             std::log(z / 2.0));
  return pref / gam * zpow * std::exp(-z * c.A);
}

cplx predicted_L(const AsymptoticConstants& c, cplx z) {
  const cplx ikm(0.0, c.lambda / c.kappa_minus);
  const cplx pref = cplx(0.0, 1.0) *
                    pos_pow(c.kappa_minus / c.a_minus, 2.0 * ikm);
  const cplx gam = complex_gamma(0.5 + ikm) / complex_gamma(0.5 - ikm);
  const cplx zpow = std::exp(-2.0 * ikm * std::log(z / 2.0));
  return pref * gam * zpow;
}

cplx predicted_aL1(const AsymptoticConstants& c, cplx z) {
  const cplx ikp(0.0, c.lambda / c.kappa_plus);
  const cplx ikm(0.0, c.lambda / c.kappa_minus);
  const cplx pref = (1.0 / (2.0 * kPi)) *
                    pos_pow(-c.kappa_plus / c.a_plus, ikp) *
                    pos_pow(c.kappa_minus / c.a_minus, -ikm);
  const cplx gam = complex_gamma(0.5 - ikm) * complex_gamma(0.5 + ikp);
  const cplx zpow = std::exp(cplx(0.0, c.lambda * (1.0 / c.kappa_minus -
                                                   1.0 / c.kappa_plus)) *
                             std::log(z / 2.0));
  cplx envelope = std::exp(z * c.A);
  if (z.imag() != 0.0) {
    const double sg = z.imag() > 0.0 ? 1.0 : -1.0;
    envelope += std::exp(-z * c.A) *
                std::exp(-sg * kPi * c.lambda *
                         (1.0 / c.kappa_plus - 1.0 / c.kappa_minus));
  }
  return pref * gam * zpow * envelope;
}

cplx predicted_aL3(const AsymptoticConstants& c, cplx z) {
  const cplx ikp(0.0, c.lambda / c.kappa_plus);
  const cplx ikm(0.0, c.lambda / c.kappa_minus);
  const cplx pref = cplx(0.0, 1.0 / (2.0 * kPi)) *
                    pos_pow(-c.kappa_plus / c.a_plus, ikp) *
                    pos_pow(c.kappa_minus / c.a_minus, ikm);
  const cplx gam = complex_gamma(0.5 + ikm) * complex_gamma(0.5 + ikp);
  const cplx zpow = std::exp(cplx(0.0, -c.lambda * (1.0 / c.kappa_minus +
                                                    1.0 / c.kappa_plus)) *
                             std::log(z / 2.0));
  cplx envelope = std::exp(z * c.A);
  if (z.imag() != 0.0) {
    const double sg = z.imag() > 0.0 ? 1.0 : -1.0;
    envelope += std::exp(-z * c.A) *
                std::exp(cplx(0.0, sg * kPi) *
                         (1.0 + cplx(0.0, c.lambda) * (1.0 / c.kappa_plus +
                                                       1.0 / c.kappa_minus)));
  }
  return pref * gam * zpow * envelope;
}

DecayFit fit_exponential_decay(std::span<const DecaySample> samples,
                               int window_lo, int window_hi) {
  std::vector<double> ns, logs;
  for (const auto& s : samples) {
    if (s.n < window_lo || s.n > window_hi) continue;
    if (!(s.value > 0.0)) {
      std::ostringstream os;
      os << "decay fit needs positive magnitudes; got " << s.value << " at n = "
         << s.n;
      fail(ErrorKind::invalid_argument, os.str());
    }
    ns.push_back(static_cast<double>(s.n));
    logs.push_back(std::log(s.value));
  }
  if (ns.size() < 4)
    fail(ErrorKind::invalid_argument, "decay fit needs >= 4 samples in the window");
  const auto line = num::fit_line(ns, logs);
  DecayFit fit;
  fit.rate = -line.slope;
  fit.intercept = line.intercept;
  fit.rms_residual = line.rms_residual;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  fit.count = ns.size();
  return fit;
}

double recover_kappa_minus(std::span<const ScatteringEntry> entries) {
  if (entries.size() < 4)
    fail(ErrorKind::invalid_argument, "kappa recovery needs >= 4 entries");
  std::vector<double> lognd, raw;
  for (const auto& e : entries) {
    lognd.push_back(std::log(e.pt.z.real()));
    raw.push_back(std::arg(e.L));
  }
  const auto phases = num::unwrap_phases(raw);
  const auto line = num::fit_line(lognd, phases);
  // nearest-branch continuation folds every gap into (-pi, pi]; when even the
  // fitted slope implies steps near pi the branch choice was a guess, so
  // demand a denser grid instead
  for (std::size_t i = 1; i < lognd.size(); ++i)
    if (std::abs(line.slope) * (lognd[i] - lognd[i - 1]) > 0.75 * kPi)
      fail(ErrorKind::numeric,
           "phase unwrapping ambiguous; sample a denser angular-momentum grid");
  const double lambda = entries.front().pt.lambda;
  if (line.slope == 0.0) fail(ErrorKind::numeric, "flat phase; cannot recover rate");
  return -2.0 * lambda / line.slope;
}

}  // namespace ahscat
