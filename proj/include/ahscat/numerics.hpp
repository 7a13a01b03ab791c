#pragma once
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace ahscat::num {

// ---- adaptive Gauss-Kronrod (7,15) quadrature -------------------------------

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimate
};

// single 15-point Kronrod panel with embedded 7-point Gauss error estimate
QuadResult gk15_panel(const std::function<double(double)>& f, double lo, double hi);

// adaptive bisection to absolute tolerance; throws Error(numeric) carrying the
// subinterval that failed when the panel budget runs out
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol, int max_panels = 4000);

// ---- linear least squares ---------------------------------------------------

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
  std::size_t count = 0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// ---- monotone cubic (Fritsch-Carlson) interpolation -------------------------

class Pchip {
public:
  Pchip() = default;
  Pchip(std::vector<double> x, std::vector<double> y);  // x strictly increasing
  double operator()(double x) const;
  double derivative(double x) const;
  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }

private:
  std::size_t locate(double x) const;
  std::vector<double> x_, y_, m_;  // nodes, values, node slopes
};

// ---- small dense Levenberg-Marquardt ----------------------------------------

struct LmOptions {
  int max_iterations = 200;
  double ftol = 1e-14;       // relative cost improvement stop
  double step_tol = 1e-13;   // parameter step stop
  double fd_step = 1e-6;     // relative forward-difference step
};

struct LmResult {
  std::vector<double> params;
  double rms = 0.0;  // sqrt(mean squared residual) at the optimum
  int iterations = 0;
  bool converged = false;
};

// residual(p) returns the residual vector; dimension must not change
LmResult levenberg_marquardt(
    const std::function<std::vector<double>(const std::vector<double>&)>& residual,
    std::vector<double> initial, const LmOptions& opts = {});

// ---- polynomial roots (Durand-Kerner + Newton polish) ------------------------

// coeffs in decreasing degree, coeffs[0] != 0
std::vector<std::complex<double>> polynomial_roots(std::span<const double> coeffs);

// ---- misc --------------------------------------------------------------------

// cumulative nearest-branch phase continuation; first element keeps its
// principal value
std::vector<double> unwrap_phases(std::span<const double> raw);

// relative gap |a-b| / max(1, |a|, |b|)
inline double rel_gap(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace ahscat::num
