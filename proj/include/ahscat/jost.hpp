#pragma once
#include <vector>

#include "ahscat/profile.hpp"
#include "ahscat/types.hpp"

namespace ahscat {

struct JostOptions {
  double rtol = 1e-12;       // embedded RK relative tolerance
  double atol = 1e-14;
  double tail_tol = 1e-11;   // free-solution truncation target at the start point
  double rescale_log = 20.0; // renormalize entries above e^{rescale_log}
  long max_steps = 400000;
};

// One Jost solution value.  The true matrix is e^{log_scale} * m; log_scale
// compensates the e^{|Re z| int a} entry growth that would overflow doubles.
// tail_error is the reported bound on the o(1) start-point truncation.
struct JostMatrix {
  Side side = Side::left;
  double x = 0.0;
  Mat2c m;
  double log_scale = 0.0;
  double tail_error = 0.0;
};

// solutions of psi' = i G1 (lambda I + z a(x) G2) psi normalized to the free
// solution e^{i G1 lambda x} at +inf (left) / -inf (right);
// G1 = diag(1,-1), G2 = offdiag(1,1)
JostMatrix jost_left(const PotentialProfile& profile, SpectralPoint pt, double x,
                     const JostOptions& opts = {});
JostMatrix jost_right(const PotentialProfile& profile, SpectralPoint pt, double x,
                      const JostOptions& opts = {});

// same solutions, values captured at several x in one integration pass;
// targets must be sorted ascending
std::vector<JostMatrix> jost_multi(const PotentialProfile& profile,
                                   SpectralPoint pt, Side side,
                                   const std::vector<double>& targets,
                                   const JostOptions& opts = {});

// Anti-hallucination oracle for the solver: sums the iterated-integral
// (Neumann) series of the Jost integral equation term by term on a fixed
// composite-Simpson grid.  Entirely independent of the RK path.
JostMatrix volterra_oracle(const PotentialProfile& profile, SpectralPoint pt,
                           double x, int max_terms = 120, double tol = 1e-10,
                           Side side = Side::left, int panels_per_unit = 500);

// start abscissa where the free-solution truncation meets tail_tol
double jost_start_point(const PotentialProfile& profile, const cplx& z,
                        Side side, double tail_tol);

}  // namespace ahscat
