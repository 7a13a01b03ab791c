#include "ahscat/jost.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"

namespace ahscat {

namespace {

// The integration runs in the interaction picture W = e^{-i G1 lam x} F:
//   W'(x) = i z a(x) [[0, e^{-2 i lam x}], [-e^{2 i lam x}, 0]] W(x).
// The free phase is exact, the coefficient matrix is trace free (constant
// determinant), and A_L = W_R^{-1} W_L needs no phase factors.
struct WDeriv {
  const PotentialProfile& profile;
  double lambda;
  cplx z;

  Mat2c operator()(double x, const Mat2c& W) const {
    const cplx izax = cplx(0.0, 1.0) * z * profile(x);
    const cplx e = std::exp(cplx(0.0, -2.0 * lambda * x));
    const cplx top = izax * e;
    const cplx bot = -izax * std::conj(e);
    return {top * W.c, top * W.d, bot * W.a, bot * W.b};
  }
};

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640,
                 e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct WState {
  Mat2c W = Mat2c::identity();
  double log_scale = 0.0;
};

// adaptive integration of W starting at x0, capturing the state at each
// requested abscissa; captures must be sorted along the direction of travel
// and the final capture is the end of the integration
void integrate_W(const WDeriv& deriv, double x0, WState& state,
                 const JostOptions& opts, const std::vector<double>& captures,
                 std::vector<WState>& captured) {
  const double dir = (captures.back() >= x0) ? 1.0 : -1.0;
  double x = x0;
  double h = dir * 1e-3;
  std::size_t next_capture = 0;
  Mat2c k1 = deriv(x, state.W);
  long steps = 0;
  while (next_capture < captures.size()) {
    const double x_stop = captures[next_capture];
    if (std::abs(x - x_stop) <= 1e-12 * (1.0 + std::abs(x))) {
      captured.push_back(state);
      ++next_capture;
      continue;
    }
    if (dir * (x + h - x_stop) > 0.0) h = x_stop - x;
    if (++steps > opts.max_steps) {
      std::ostringstream os;
      os << "step budget exhausted near x = " << x << " (step " << h << ")";
      fail(ErrorKind::numeric, os.str());
    }

    const Mat2c& y = state.W;
    Mat2c k2 = deriv(x + c2 * h, y + (h * a21) * k1);
    Mat2c k3 = deriv(x + c3 * h, y + (h * a31) * k1 + (h * a32) * k2);
    Mat2c k4 = deriv(x + c4 * h, y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3);
    Mat2c k5 = deriv(x + c5 * h, y + (h * a51) * k1 + (h * a52) * k2 +
                                      (h * a53) * k3 + (h * a54) * k4);
    Mat2c k6 = deriv(x + h, y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 +
                                (h * a64) * k4 + (h * a65) * k5);
    Mat2c y5 = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
               (h * b6) * k6;
    Mat2c k7 = deriv(x + h, y5);  // FSAL
    Mat2c errm = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 + (h * e5) * k5 +
                 (h * e6) * k6 + (h * e7) * k7;
    const double scale = opts.atol + opts.rtol * std::max(y.max_abs(), y5.max_abs());
    const double err = errm.max_abs() / scale;

    if (err <= 1.0) {
      x += h;
      state.W = y5;
      k1 = k7;
      if (state.W.max_abs() > std::exp(opts.rescale_log)) {
        const double m = state.W.max_abs();
        state.W *= 1.0 / m;
        k1 *= 1.0 / m;
        state.log_scale += std::log(m);
      }
      if (std::abs(x - x_stop) <= 1e-12 * (1.0 + std::abs(x))) {
        captured.push_back(state);
        ++next_capture;
      }
    }
    const double grow = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(grow, 0.2, 5.0);
    if (std::abs(h) < 1e-13) {
      std::ostringstream os;
      os << "step size underflow near x = " << x;
      fail(ErrorKind::numeric, os.str());
    }
  }
}

Mat2c free_phase(double lambda, double x) {
  const cplx p = std::exp(cplx(0.0, lambda * x));
  return {p, 0.0, 0.0, std::conj(p)};
}

}  // namespace

double jost_start_point(const PotentialProfile& profile, const cplx& z,
                        Side side, double tail_tol) {
  const double zmag = std::max(std::abs(z), 1e-6);
  const double target = std::log1p(tail_tol) / zmag;  // required tail mass
  double x;
  if (side == Side::left) {
    // a_+ e^{k x} / (-k) <= target
    const double k = profile.kappa_plus();
    x = std::log(target * (-k) / profile.a_plus()) / k;
  } else {
    const double k = profile.kappa_minus();
    x = std::log(target * k / profile.a_minus()) / k;  // negative abscissa
  }
  return std::max(profile.cutoff(), std::abs(x));
}

std::vector<JostMatrix> jost_multi(const PotentialProfile& profile,
                                   SpectralPoint pt, Side side,
                                   const std::vector<double>& targets,
                                   const JostOptions& opts) {
  if (targets.empty()) fail(ErrorKind::invalid_argument, "no target abscissae");
  for (std::size_t i = 1; i < targets.size(); ++i)
    if (!(targets[i] > targets[i - 1]))
      fail(ErrorKind::invalid_argument, "targets must be sorted ascending");

  const double start_mag = jost_start_point(profile, pt.z, side, opts.tail_tol);
  WDeriv deriv{profile, pt.lambda, pt.z};
  WState state;
  std::vector<WState> captured;
  std::vector<double> caps = targets;
  double x0, tail_err;
  if (side == Side::left) {
    x0 = std::max(start_mag, targets.back());
    std::reverse(caps.begin(), caps.end());  // travel downward
    tail_err = std::expm1(std::abs(pt.z) * profile.tail_mass_above(x0));
  } else {
    x0 = std::min(-start_mag, targets.front());
    tail_err = std::expm1(std::abs(pt.z) * profile.tail_mass_below(x0));
  }
  if (tail_err > 100 * opts.tail_tol + 1e-9) {
    std::ostringstream os;
    os << "free-solution truncation " << tail_err << " exceeds tolerance at x = "
       << x0;
    fail(ErrorKind::numeric, os.str());
  }
  integrate_W(deriv, x0, state, opts, caps, captured);
  if (captured.size() != caps.size())
    fail(ErrorKind::internal, "integration missed a capture point");

  std::vector<JostMatrix> out(targets.size());
  for (std::size_t i = 0; i < caps.size(); ++i) {
    const double x = caps[i];
    const std::size_t slot = (side == Side::left) ? caps.size() - 1 - i : i;
    JostMatrix jm;
    jm.side = side;
    jm.x = x;
    jm.m = free_phase(pt.lambda, x) * captured[i].W;
    jm.log_scale = captured[i].log_scale;
    jm.tail_error = tail_err;
    out[slot] = jm;
  }
  return out;
}

JostMatrix jost_left(const PotentialProfile& profile, SpectralPoint pt, double x,
                     const JostOptions& opts) {
  return jost_multi(profile, pt, Side::left, {x}, opts)[0];
}

JostMatrix jost_right(const PotentialProfile& profile, SpectralPoint pt, double x,
                      const JostOptions& opts) {
  return jost_multi(profile, pt, Side::right, {x}, opts)[0];
}

JostMatrix volterra_oracle(const PotentialProfile& profile, SpectralPoint pt,
                           double x, int max_terms, double tol, Side side,
                           int panels_per_unit) {
  const double mass =
      profile.tail_mass_below(-profile.cutoff()) +
      profile.tail_mass_above(profile.cutoff()) +
      num::integrate([&profile](double t) { return profile(t); },
                     -profile.cutoff(), profile.cutoff(), 1e-8);
  if (std::abs(pt.z) * mass > 40.0)
    fail(ErrorKind::invalid_argument,
         "oracle series too expensive for this |z|; use the ODE solver");

  const double far = jost_start_point(profile, pt.z, side, 1e-11);
  const double lo = (side == Side::left) ? x : -far;
  const double hi = (side == Side::left) ? far : x;
  std::size_t n = static_cast<std::size_t>(
      std::ceil((hi - lo) * panels_per_unit));
  n += n % 2;  // even panel count
  if (n < 64) n = 64;
  const double h = (hi - lo) / static_cast<double>(n);
  const std::size_t nodes = n + 1;

  std::vector<double> av(nodes);
  std::vector<cplx> phase(nodes);  // e^{-i G1 lam y} diagonal entry
  for (std::size_t i = 0; i < nodes; ++i) {
    const double y = lo + h * static_cast<double>(i);
    av[i] = profile(y);
    phase[i] = std::exp(cplx(0.0, -pt.lambda * y));
  }

  // term_0 = free solution
  std::vector<Mat2c> term(nodes), sum(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double y = lo + h * static_cast<double>(i);
    term[i] = free_phase(pt.lambda, y);
    sum[i] = term[i];
  }

  const std::size_t cap_index =
      (side == Side::left) ? 0 : nodes - 1;  // requested x sits at an end node

  auto integrand = [&](std::size_t i) {
    // e^{-i G1 lam y} a(y) G2 term(y):  G2 swaps rows of the phase action
    const Mat2c& t = term[i];
    const cplx pu = phase[i], pl = std::conj(phase[i]);
    return Mat2c{pu * av[i] * t.c, pu * av[i] * t.d, pl * av[i] * t.a,
                 pl * av[i] * t.b};
  };

  std::vector<Mat2c> u(nodes), cum(nodes);
  double term_norm = std::numeric_limits<double>::infinity();
  int k = 0;
  for (; k < max_terms && term_norm > tol; ++k) {
    for (std::size_t i = 0; i < nodes; ++i) u[i] = integrand(i);
    if (side == Side::left) {
      // cum[i] = int_{y_i}^{hi} u dy, composite Simpson anchored at the right
      cum[nodes - 1] = Mat2c{};
      cum[nodes - 2] = (h / 12.0) * (u[nodes - 3] * cplx(-1.0) +
                                     u[nodes - 2] * cplx(8.0) + u[nodes - 1] * cplx(5.0));
      for (std::size_t i = nodes - 2; i-- > 0;)
        cum[i] = cum[i + 2] + (h / 3.0) * (u[i] + cplx(4.0) * u[i + 1] + u[i + 2]);
    } else {
      // cum[i] = int_{lo}^{y_i} u dy, anchored at the left
      cum[0] = Mat2c{};
      cum[1] = (h / 12.0) *
               (u[2] * cplx(-1.0) + u[1] * cplx(8.0) + u[0] * cplx(5.0));
      for (std::size_t i = 2; i < nodes; ++i)
        cum[i] = cum[i - 2] + (h / 3.0) * (u[i] + cplx(4.0) * u[i - 1] + u[i - 2]);
    }
    const cplx iz = cplx(0.0, 1.0) * pt.z;
    const double sign = (side == Side::left) ? -1.0 : 1.0;
    term_norm = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
      const double y = lo + h * static_cast<double>(i);
      const cplx py = std::exp(cplx(0.0, pt.lambda * y));
      // -/+ i z G1 e^{i G1 lam y} cum(y)
      const Mat2c& ci = cum[i];
      Mat2c next{sign * iz * py * ci.a, sign * iz * py * ci.b,
                 -sign * iz * std::conj(py) * ci.c,
                 -sign * iz * std::conj(py) * ci.d};
      term[i] = next;
      sum[i] += next;
      term_norm = std::max(term_norm, next.max_abs());
    }
  }
  if (term_norm > tol) {
    std::ostringstream os;
    os << "series not converged after " << max_terms
       << " terms; last term norm " << term_norm;
    fail(ErrorKind::numeric, os.str());
  }

  JostMatrix jm;
  jm.side = side;
  jm.x = x;
  jm.m = sum[cap_index];
  jm.log_scale = 0.0;
  jm.tail_error = std::expm1(
      std::abs(pt.z) * ((side == Side::left) ? profile.tail_mass_above(hi)
                                             : profile.tail_mass_below(lo)));
  return jm;
}

}  // namespace ahscat
