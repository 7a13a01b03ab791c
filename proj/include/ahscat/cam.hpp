#pragma once
#include <span>
#include <string>
#include <vector>

#include "ahscat/liouville.hpp"
#include "ahscat/profile.hpp"
#include "ahscat/scattering.hpp"
#include "ahscat/types.hpp"

namespace ahscat {

// axis-aligned rectangle in the complex angular-momentum plane
struct ComplexBox {
  double re_lo = 0.0, im_lo = 0.0;
  double re_hi = 0.0, im_hi = 0.0;

  double width() const { return re_hi - re_lo; }
  double height() const { return im_hi - im_lo; }
  cplx center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
  double diag() const;
  ComplexBox dilated(double factor) const;
};

struct CamSample {
  cplx z;
  cplx a1, a2, a3, a4;  // true entries are e^{log_scale} * stored
  double log_scale = 0.0;
};

// transfer-matrix entries on a regular grid over the box (nre x nim nodes)
std::vector<CamSample> cam_scan(const PotentialProfile& profile,
                                const LiouvilleMap& map, double lambda,
                                const ComplexBox& box, int nre, int nim,
                                const ScatteringOptions& opts = {});

// max of |a1(z) - conj(a4(zbar))| and |a2(z) - conj(a3(zbar))| after
// de-scaling; the two samples must sit at conjugate nodes
double symmetry_residual(const CamSample& at_z, const CamSample& at_conj);

struct Zero {
  cplx z;
  double residual = 0.0;  // |a3| after the Newton polish, de-scaled
};

struct ZeroSet {
  ComplexBox box;  // possibly dilated from the request
  long winding = 0;
  std::vector<Zero> zeros;
};

struct ZeroSearchOptions {
  ScatteringOptions scattering;
  double boundary_step = 0.25;      // initial boundary sample spacing
  double newton_box_diag = 0.08;    // subdivide until a simple zero fits here
  double residual_target = 1e-8;
  int max_dilations = 3;
};

// zeros of a3(lambda, .) inside the box, certified by matching the boundary
// winding number against the refined zero count; a count mismatch is an error,
// never silently reconciled
ZeroSet find_zeros_a3(const PotentialProfile& profile, const LiouvilleMap& map,
                      double lambda, ComplexBox box,
                      const ZeroSearchOptions& opts = {});

struct LatticeFit {
  double slope = 0.0;              // fitted Im spacing
  double p_estimate = 0.0;         // intercept/slope - 1
  double spacing_residual = 0.0;   // |slope - pi/A| / (pi/A)
  double realpart_residual = 0.0;  // |mean Re - predicted| (absolute)
};

// compares the zero ladder against Im z_n ~ (pi/A)(n + p) with mean real part
// -lambda pi/(2A) (1/kappa_+ + 1/kappa_-); needs >= 4 zeros
LatticeFit zero_lattice_fit(std::span<const Zero> zeros, double A,
                            double kappa_minus, double kappa_plus, double lambda);

}  // namespace ahscat
