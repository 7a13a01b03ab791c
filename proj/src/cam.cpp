#include "ahscat/cam.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"

namespace ahscat {

namespace {

constexpr double kPi = std::numbers::pi;

struct KeyHash {
  std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const {
    return std::hash<std::uint64_t>()(k.first * 0x9e3779b97f4a7c15ull ^ k.second);
  }
};

// memoized a3 evaluator; values are kept de-scaled (the zero ladder lives in
// the strip near the imaginary axis where the entries stay O(1))
class A3Evaluator {
public:
  A3Evaluator(const PotentialProfile& profile, const LiouvilleMap& map,
              double lambda, const ScatteringOptions& opts)
      : profile_(profile), map_(map), lambda_(lambda), opts_(opts) {}

  cplx operator()(cplx z) {
    std::pair<std::uint64_t, std::uint64_t> key;
    static_assert(sizeof(double) == sizeof(std::uint64_t));
    double re = z.real() == 0.0 ? 0.0 : z.real();  // collapse -0.0
    double im = z.imag() == 0.0 ? 0.0 : z.imag();
    std::memcpy(&key.first, &re, sizeof(double));
    std::memcpy(&key.second, &im, sizeof(double));
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const TransferMatrix tm = transfer_matrix(profile_, map_, {lambda_, z}, opts_);
    const double logmag = tm.log_scale + std::log(std::abs(tm.a3));
    if (logmag > 300.0)
      fail(ErrorKind::numeric,
           "a3 too large to de-scale; the search box reaches too far into the "
           "growth region");
    const cplx value = tm.a3 * std::exp(tm.log_scale);
    cache_.emplace(key, value);
    return value;
  }

  std::size_t evaluations() const { return cache_.size(); }

private:
  const PotentialProfile& profile_;
  const LiouvilleMap& map_;
  double lambda_;
  ScatteringOptions opts_;
  std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, cplx, KeyHash> cache_;
};

struct TooCloseToZero {};

// phase increment along a segment, bisecting until each piece turns < pi/2
double phase_sweep(A3Evaluator& f, cplx z0, cplx f0, cplx z1, cplx f1, int depth) {
  if (f0 == cplx(0.0) || f1 == cplx(0.0)) throw TooCloseToZero{};
  const double dphi = std::arg(f1 / f0);
  if (std::abs(dphi) < 0.5 * kPi) return dphi;
  if (depth > 46) throw TooCloseToZero{};
  const cplx zm = 0.5 * (z0 + z1);
  const cplx fm = f(zm);
  return phase_sweep(f, z0, f0, zm, fm, depth + 1) +
         phase_sweep(f, zm, fm, z1, f1, depth + 1);
}

long winding_number(A3Evaluator& f, const ComplexBox& box, double step) {
  const cplx corners[5] = {{box.re_lo, box.im_lo},
                           {box.re_hi, box.im_lo},
                           {box.re_hi, box.im_hi},
                           {box.re_lo, box.im_hi},
                           {box.re_lo, box.im_lo}};
  double total = 0.0;
  for (int e = 0; e < 4; ++e) {
    const cplx za = corners[e], zb = corners[e + 1];
    const int pieces =
        std::max(2, static_cast<int>(std::ceil(std::abs(zb - za) / step)));
    cplx zp = za, fp = f(zp);
    for (int i = 1; i <= pieces; ++i) {
      const cplx zn = za + (zb - za) * (static_cast<double>(i) / pieces);
      const cplx fn = f(zn);
      total += phase_sweep(f, zp, fp, zn, fn, 0);
      zp = zn;
      fp = fn;
    }
  }
  const double w = total / (2.0 * kPi);
  const long rounded = std::lround(w);
  if (std::abs(w - static_cast<double>(rounded)) > 0.05)
    fail(ErrorKind::internal, "boundary phase sweep did not close to a multiple "
                              "of 2 pi");
  return rounded;
}

cplx newton_polish(A3Evaluator& f, cplx z, double target) {
  for (int it = 0; it < 60; ++it) {
    const cplx fz = f(z);
    if (std::abs(fz) < 1e-2 * target && it > 0) break;
    const double h = 1e-6 * (1.0 + std::abs(z));
    const cplx d = (f(z + h) - f(z - h)) / (2.0 * h);
    if (std::abs(d) == 0.0) break;
    const cplx step = fz / d;
    z -= step;
    if (std::abs(step) < 1e-12 * (1.0 + std::abs(z))) break;
  }
  return z;
}

// split coordinate with the boundary as far from zeros as the candidates allow
double choose_split(A3Evaluator& f, double lo, double hi, bool vertical,
                    double other_lo, double other_hi) {
  const double offsets[5] = {0.0, 0.07, -0.07, 0.13, -0.13};
  double best = 0.5 * (lo + hi);
  double best_min = -1.0;
  for (double off : offsets) {
    const double c = 0.5 * (lo + hi) + off * (hi - lo);
    double min_mag = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 8; ++i) {
      const double t = other_lo + (other_hi - other_lo) * i / 8.0;
      const cplx z = vertical ? cplx(c, t) : cplx(t, c);
      min_mag = std::min(min_mag, std::abs(f(z)));
    }
    if (min_mag > best_min) {
      best_min = min_mag;
      best = c;
    }
  }
  return best;
}

void subdivide(A3Evaluator& f, const ComplexBox& box, long winding,
               const ZeroSearchOptions& opts, std::vector<Zero>& out) {
  if (winding == 0) return;
  if (winding < 0)
    fail(ErrorKind::internal, "negative winding number for an analytic function");
  if (box.diag() < opts.newton_box_diag) {
    if (winding > 1) {
      std::ostringstream os;
      os << "unresolved zero cluster (multiplicity " << winding
         << ") near " << box.center();
      fail(ErrorKind::internal, os.str());
    }
    const cplx z = newton_polish(f, box.center(), opts.residual_target);
    out.push_back({z, std::abs(f(z))});
    return;
  }
  ComplexBox lo_box = box, hi_box = box;
  if (box.width() >= box.height()) {
    const double c = choose_split(f, box.re_lo, box.re_hi, true, box.im_lo, box.im_hi);
    lo_box.re_hi = c;
    hi_box.re_lo = c;
  } else {
    const double c = choose_split(f, box.im_lo, box.im_hi, false, box.re_lo, box.re_hi);
    lo_box.im_hi = c;
    hi_box.im_lo = c;
  }
  const long w_lo = winding_number(f, lo_box, opts.boundary_step);
  const long w_hi = winding_number(f, hi_box, opts.boundary_step);
  if (w_lo + w_hi != winding)
    fail(ErrorKind::internal, "winding numbers of sub-boxes do not add up");
  subdivide(f, lo_box, w_lo, opts, out);
  subdivide(f, hi_box, w_hi, opts, out);
}

}  // namespace

double ComplexBox::diag() const { return std::hypot(width(), height()); }

ComplexBox ComplexBox::dilated(double factor) const {
  ComplexBox d = *this;
  const double dw = 0.5 * width() * (factor - 1.0);
  const double dh = 0.5 * height() * (factor - 1.0);
  d.re_lo -= dw;
  d.re_hi += dw;
  d.im_lo -= dh;
  d.im_hi += dh;
  return d;
}

std::vector<CamSample> cam_scan(const PotentialProfile& profile,
                                const LiouvilleMap& map, double lambda,
                                const ComplexBox& box, int nre, int nim,
                                const ScatteringOptions& opts) {
  if (nre < 1 || nim < 1)
    fail(ErrorKind::invalid_argument, "scan resolution must be >= 1");
  std::vector<CamSample> out;
  out.reserve(static_cast<std::size_t>(nre) * nim);
  for (int j = 0; j < nim; ++j) {
    for (int i = 0; i < nre; ++i) {
      const double re =
          nre == 1 ? box.re_lo : box.re_lo + box.width() * i / (nre - 1);
      const double im =
          nim == 1 ? box.im_lo : box.im_lo + box.height() * j / (nim - 1);
      const cplx z(re, im);
      try {
        const TransferMatrix tm = transfer_matrix(profile, map, {lambda, z}, opts);
        out.push_back({z, tm.a1, tm.a2, tm.a3, tm.a4, tm.log_scale});
      } catch (const Error& err) {
        std::ostringstream os;
        os << "scan failed at z = " << z << ": " << err.what();
        fail(err.kind(), os.str());
      }
    }
  }
  return out;
}

double symmetry_residual(const CamSample& at_z, const CamSample& at_conj) {
  if (std::abs(at_z.z - std::conj(at_conj.z)) > 1e-12 * (1.0 + std::abs(at_z.z)))
    fail(ErrorKind::invalid_argument, "samples are not at conjugate nodes");
  const double rescale = std::exp(at_conj.log_scale - at_z.log_scale);
  const double r1 = std::abs(at_z.a1 - std::conj(at_conj.a4) * rescale);
  const double r2 = std::abs(at_z.a2 - std::conj(at_conj.a3) * rescale);
  return std::max(r1, r2) * std::exp(at_z.log_scale);
}

ZeroSet find_zeros_a3(const PotentialProfile& profile, const LiouvilleMap& map,
                      double lambda, ComplexBox box,
                      const ZeroSearchOptions& opts) {
  if (!(box.width() > 0.0) || !(box.height() > 0.0))
    fail(ErrorKind::invalid_argument, "zero search box is empty");
  A3Evaluator f(profile, map, lambda, opts.scattering);

  long winding = 0;
  int dilations = 0;
  for (;; ++dilations) {
    try {
      winding = winding_number(f, box, opts.boundary_step);
      break;
    } catch (const TooCloseToZero&) {
      if (dilations >= opts.max_dilations)
        fail(ErrorKind::numeric,
             "box boundary stays too close to a zero after 3 dilations");
      box = box.dilated(1.01);
    }
  }

  ZeroSet set;
  set.box = box;
  set.winding = winding;
  try {
    subdivide(f, box, winding, opts, set.zeros);
  } catch (const TooCloseToZero&) {
    fail(ErrorKind::internal, "subdivision boundary ran into a zero");
  }

  // dedupe Newton results that converged to the same point
  std::sort(set.zeros.begin(), set.zeros.end(), [](const Zero& a, const Zero& b) {
    return a.z.imag() < b.z.imag();
  });
  for (std::size_t i = 1; i < set.zeros.size(); ++i)
    if (std::abs(set.zeros[i].z - set.zeros[i - 1].z) < 1e-6)
      fail(ErrorKind::internal,
           "two sub-boxes converged to the same zero; count cannot match");

  for (const Zero& zr : set.zeros)
    if (zr.residual > opts.residual_target) {
      std::ostringstream os;
      os << "zero at " << zr.z << " polished only to |a3| = " << zr.residual;
      fail(ErrorKind::numeric, os.str());
    }
  if (static_cast<long>(set.zeros.size()) != winding)
    fail(ErrorKind::internal,
         "argument-principle count does not match the refined zero list");
  return set;
}

LatticeFit zero_lattice_fit(std::span<const Zero> zeros, double A,
                            double kappa_minus, double kappa_plus,
                            double lambda) {
  if (zeros.size() < 4)
    fail(ErrorKind::invalid_argument, "lattice fit needs >= 4 zeros");
  std::vector<const Zero*> sorted;
  for (const Zero& z : zeros) sorted.push_back(&z);
  std::sort(sorted.begin(), sorted.end(), [](const Zero* a, const Zero* b) {
    return a->z.imag() < b->z.imag();
  });
  std::vector<double> idx(sorted.size()), ims(sorted.size());
  double re_mean = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    idx[j] = static_cast<double>(j);
    ims[j] = sorted[j]->z.imag();
    re_mean += sorted[j]->z.real();
  }
  re_mean /= static_cast<double>(sorted.size());
  const auto line = num::fit_line(idx, ims);

  LatticeFit fit;
  fit.slope = line.slope;
  fit.p_estimate = line.intercept / line.slope - 1.0;
  const double spacing = kPi / A;
  fit.spacing_residual = std::abs(line.slope - spacing) / spacing;
  const double re_pred =
      -lambda * kPi / (2.0 * A) * (1.0 / kappa_plus + 1.0 / kappa_minus);
  fit.realpart_residual = std::abs(re_mean - re_pred);
  return fit;
}

}  // namespace ahscat
