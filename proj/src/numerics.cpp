#include "ahscat/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "ahscat/error.hpp"

namespace ahscat::num {

namespace {

// Kronrod-15 abscissae (positive half) and weights; Gauss-7 weights embedded
// at the odd Kronrod nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

}  // namespace

QuadResult gk15_panel(const std::function<double(double)>& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(mid);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  QuadResult r;
  r.value = kron * half;
  r.error = std::abs((kron - gauss) * half);
  if (!std::isfinite(r.value) || !std::isfinite(r.error))
    r.error = std::numeric_limits<double>::infinity();
  return r;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_panels) {
  if (!(hi > lo)) {
    if (hi == lo) return 0.0;
    return -integrate(f, hi, lo, abs_tol, max_panels);
  }
  struct Panel {
    double lo, hi, value, error;
  };
  QuadResult whole = gk15_panel(f, lo, hi);
  std::deque<Panel> panels{{lo, hi, whole.value, whole.error}};
  int used = 1;
  for (;;) {
    double total_err = 0.0;  // re-summed; an incremental total cancels badly
    for (const Panel& p : panels) total_err += p.error;
    if (total_err <= abs_tol) break;
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& a, const Panel& b) {
                                    return a.error < b.error;
                                  });
    if (used >= max_panels || worst->hi - worst->lo < 1e-14 * (hi - lo)) {
      std::ostringstream os;
      os << "quadrature failed to converge on [" << worst->lo << ", "
         << worst->hi << "] (error " << worst->error << ", requested "
         << abs_tol << ")";
      fail(ErrorKind::numeric, os.str());
    }
    Panel p = *worst;
    panels.erase(worst);
    const double mid = 0.5 * (p.lo + p.hi);
    QuadResult l = gk15_panel(f, p.lo, mid);
    QuadResult r = gk15_panel(f, mid, p.hi);
    panels.push_back({p.lo, mid, l.value, l.error});
    panels.push_back({mid, p.hi, r.value, r.error});
    ++used;
  }
  double sum = 0.0;
  for (const Panel& p : panels) sum += p.value;
  return sum;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorKind::invalid_argument, "fit_line needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) fail(ErrorKind::invalid_argument, "fit_line: degenerate abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / n);
  fit.count = x.size();
  return fit;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n)
    fail(ErrorKind::invalid_argument, "pchip needs >= 2 matching nodes");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      fail(ErrorKind::invalid_argument, "pchip abscissae must strictly increase");
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }
  m_.assign(n, 0.0);
  // Fritsch-Carlson harmonic-mean slopes keep the interpolant monotone
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] > 0.0) {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m * d0 <= 0.0)
      m = 0.0;
    else if (d0 * d1 < 0.0 && std::abs(m) > 3.0 * std::abs(d0))
      m = 3.0 * d0;
    return m;
  };
  m_[0] = (n == 2) ? d[0] : end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = (n == 2) ? d[0] : end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

std::size_t Pchip::locate(double x) const {
  if (x <= x_.front()) return 0;
  if (x >= x_.back()) return x_.size() - 2;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double Pchip::operator()(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
  return h00 * y_[i] + h * h10 * m_[i] + h01 * y_[i + 1] + h * h11 * m_[i + 1];
}

double Pchip::derivative(double x) const {
  const std::size_t i = locate(x);
  const double h = x_[i + 1] - x_[i];
  const double t = (x - x_[i]) / h;
  const double t2 = t * t;
  const double dh00 = (6 * t2 - 6 * t) / h, dh10 = 3 * t2 - 4 * t + 1;
  const double dh01 = (-6 * t2 + 6 * t) / h, dh11 = 3 * t2 - 2 * t;
  return dh00 * y_[i] + dh10 * m_[i] + dh01 * y_[i + 1] + dh11 * m_[i + 1];
}

namespace {

// solve the (J^T J + mu diag) step of LM by Gaussian elimination with partial
// pivoting; dimensions here are tiny (<= ~6)
std::vector<double> solve_dense(std::vector<std::vector<double>> A,
                                std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(A[i][k]) > std::abs(A[piv][k])) piv = i;
    std::swap(A[k], A[piv]);
    std::swap(b[k], b[piv]);
    if (A[k][k] == 0.0) fail(ErrorKind::numeric, "singular normal equations");
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = A[i][k] / A[k][k];
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  return x;
}

double cost_of(const std::vector<double>& r) {
  double c = 0;
  for (double v : r) c += v * v;
  return 0.5 * c;
}

}  // namespace

LmResult levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residual,
    std::vector<double> initial, const LmOptions& opts) {
  const std::size_t np = initial.size();
  std::vector<double> p = std::move(initial);
  std::vector<double> r = residual(p);
  double cost = cost_of(r);
  double mu = 1e-3;
  LmResult out;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    // forward-difference Jacobian
    std::vector<std::vector<double>> J(r.size(), std::vector<double>(np));
    for (std::size_t j = 0; j < np; ++j) {
      const double h = opts.fd_step * std::max(1.0, std::abs(p[j]));
      std::vector<double> pj = p;
      pj[j] += h;
      std::vector<double> rj = residual(pj);
      if (rj.size() != r.size())
        fail(ErrorKind::internal, "levenberg_marquardt: residual dimension changed");
      for (std::size_t i = 0; i < r.size(); ++i) J[i][j] = (rj[i] - r[i]) / h;
    }
    std::vector<std::vector<double>> JtJ(np, std::vector<double>(np, 0.0));
    std::vector<double> g(np, 0.0);
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < np; ++j) {
        g[j] += J[i][j] * r[i];
        for (std::size_t k = 0; k <= j; ++k) JtJ[j][k] += J[i][j] * J[i][k];
      }
    for (std::size_t j = 0; j < np; ++j)
      for (std::size_t k = j + 1; k < np; ++k) JtJ[j][k] = JtJ[k][j];

    bool stepped = false;
    for (int tries = 0; tries < 25; ++tries) {
      auto Am = JtJ;
      for (std::size_t j = 0; j < np; ++j)
        Am[j][j] += mu * std::max(JtJ[j][j], 1e-12);
      std::vector<double> neg_g(np);
      for (std::size_t j = 0; j < np; ++j) neg_g[j] = -g[j];
      std::vector<double> step;
      try {
        step = solve_dense(Am, neg_g);
      } catch (const Error&) {
        mu *= 10;
        continue;
      }
      std::vector<double> pn = p;
      double step_norm = 0;
      for (std::size_t j = 0; j < np; ++j) {
        pn[j] += step[j];
        step_norm = std::max(step_norm, std::abs(step[j]));
      }
      std::vector<double> rn = residual(pn);
      const double cn = cost_of(rn);
      if (cn < cost) {
        const double improvement = (cost - cn) / std::max(cost, 1e-300);
        p = std::move(pn);
        r = std::move(rn);
        cost = cn;
        mu = std::max(mu * 0.3, 1e-12);
        stepped = true;
        if (improvement < opts.ftol || step_norm < opts.step_tol) {
          out.converged = true;
          it = opts.max_iterations;  // done
        }
        break;
      }
      mu *= 10;
      if (mu > 1e12) break;
    }
    if (!stepped) {
      out.converged = true;  // stuck at a (local) minimum
      break;
    }
    if (it >= opts.max_iterations) break;
  }
  out.params = std::move(p);
  out.rms = std::sqrt(2.0 * cost / static_cast<double>(r.size()));
  out.iterations = it;
  return out;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs) {
  using C = std::complex<double>;
  if (coeffs.size() < 2 || coeffs[0] == 0.0)
    fail(ErrorKind::invalid_argument, "polynomial_roots: need leading coefficient != 0");
  const std::size_t deg = coeffs.size() - 1;
  std::vector<C> monic(deg);
  for (std::size_t i = 0; i < deg; ++i) monic[i] = coeffs[i + 1] / coeffs[0];
  auto eval = [&](C z) {
    C v = 1.0;
    for (std::size_t i = 0; i < deg; ++i) v = v * z + monic[i];
    return v;
  };
  // Durand-Kerner from a non-real, non-root-of-unity seed spiral
  double radius = 0.0;
  for (std::size_t i = 0; i < deg; ++i)
    radius = std::max(radius, std::pow(std::abs(monic[i]), 1.0 / (i + 1.0)));
  radius = std::max(1.0, 2.0 * radius);
  std::vector<C> z(deg);
  const C seed = std::polar(1.0, 0.4);
  for (std::size_t i = 0; i < deg; ++i)
    z[i] = radius * std::pow(seed, static_cast<double>(2 * i + 1));
  for (int it = 0; it < 400; ++it) {
    double moved = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
      C denom = 1.0;
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= (z[i] - z[j]);
      const C delta = eval(z[i]) / denom;
      z[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14 * radius) break;
  }
  // Newton polish against the original (unscaled) polynomial
  auto eval_full = [&](C x) {
    C v = coeffs[0];
    for (std::size_t i = 1; i < coeffs.size(); ++i) v = v * x + coeffs[i];
    return v;
  };
  auto deriv_full = [&](C x) {
    C v = coeffs[0] * static_cast<double>(deg);
    for (std::size_t i = 1; i < deg; ++i)
      v = v * x + coeffs[i] * static_cast<double>(deg - i);
    return v;
  };
  for (auto& root : z)
    for (int it = 0; it < 8; ++it) {
      const C d = deriv_full(root);
      if (std::abs(d) == 0.0) break;
      const C delta = eval_full(root) / d;
      root -= delta;
      if (std::abs(delta) < 1e-16 * (1.0 + std::abs(root))) break;
    }
  return z;
}

std::vector<double> unwrap_phases(std::span<const double> raw) {
  std::vector<double> out(raw.begin(), raw.end());
  constexpr double two_pi = 6.283185307179586476925286766559;
  for (std::size_t i = 1; i < out.size(); ++i) {
    double d = out[i] - out[i - 1];
    d -= two_pi * std::round(d / two_pi);
    out[i] = out[i - 1] + d;
  }
  return out;
}

}  // namespace ahscat::num
