#include "ahscat/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"

namespace ahscat {

namespace {

struct ScaledTransfer {
  Mat2c m;
  double log_scale;
};

// A = adj(W_R) W_L at the matching point; det W_R is 1 by construction and is
// treated as exactly 1 (adjugate inverse keeps the Wronskian structure)
ScaledTransfer assemble(const JostMatrix& left, const JostMatrix& right) {
  ScaledTransfer st;
  st.m = right.m.adjugate() * left.m;
  st.log_scale = left.log_scale + right.log_scale;
  return st;
}

bool is_real_point(const SpectralPoint& pt) { return pt.z.imag() == 0.0; }

}  // namespace

TransferMatrix transfer_matrix(const PotentialProfile& profile,
                               const LiouvilleMap& map, SpectralPoint pt,
                               const ScatteringOptions& opts) {
  const double A = map.total_width();
  double xm1 = map.inverse(0.5 * A);
  double xm2 = map.inverse(A / 3.0);
  if (xm2 > xm1) std::swap(xm1, xm2);  // targets ascending

  const std::vector<double> targets =
      (xm1 - xm2 > 1e-9) ? std::vector<double>{xm2, xm1} : std::vector<double>{xm1};
  auto lefts = jost_multi(profile, pt, Side::left, targets, opts.jost);
  auto rights = jost_multi(profile, pt, Side::right, targets, opts.jost);

  ScaledTransfer primary = assemble(lefts.back(), rights.back());
  TransferMatrix tm;
  tm.pt = pt;
  tm.a1 = primary.m.a;
  tm.a2 = primary.m.b;
  tm.a3 = primary.m.c;
  tm.a4 = primary.m.d;
  tm.log_scale = primary.log_scale;

  if (targets.size() == 2) {
    ScaledTransfer check = assemble(lefts.front(), rights.front());
    // compare after aligning the compensation exponents
    const double shift = std::exp(check.log_scale - primary.log_scale);
    const Mat2c diff = primary.m - check.m * cplx(shift);
    const double denom = std::max(1.0, primary.m.max_abs());
    tm.matching_residual = diff.max_abs() / denom;
    if (tm.matching_residual > opts.matching_tol) {
      std::ostringstream os;
      os << "transfer matrix differs between matching points (residual "
         << tm.matching_residual << "): a1 = " << primary.m.a << " vs "
         << check.m.a * shift;
      fail(ErrorKind::numeric, os.str());
    }
  }
  return tm;
}

TransferMatrix transfer_matrix(const PotentialProfile& profile, SpectralPoint pt,
                               const ScatteringOptions& opts) {
  return transfer_matrix(profile, build_liouville(profile), pt, opts);
}

ScatteringEntry s_matrix(const TransferMatrix& tm) {
  const double log_a1 = tm.log_scale + std::log(std::abs(tm.a1));
  if (is_real_point(tm.pt) && log_a1 < std::log1p(-1e-6)) {
    std::ostringstream os;
    os << "|a1| = exp(" << log_a1 << ") < 1 at real z = " << tm.pt.z.real()
       << "; the solver output violates the transfer-matrix normalization";
    fail(ErrorKind::numeric, os.str());
  }
  ScatteringEntry e;
  e.pt = tm.pt;
  e.T = std::exp(-tm.log_scale) / tm.a1;  // compensation survives only in T
  e.L = tm.a3 / tm.a1;
  e.R = -tm.a2 / tm.a1;
  if (is_real_point(tm.pt)) {
    const double t2 = std::norm(e.T);
    e.unitarity_residual = std::max(std::abs(t2 + std::norm(e.L) - 1.0),
                                    std::abs(t2 + std::norm(e.R) - 1.0));
  }
  return e;
}

ScatteringEntry scattering_entry(const PotentialProfile& profile,
                                 const LiouvilleMap& map, double lambda, double n,
                                 const ScatteringOptions& opts) {
  return s_matrix(transfer_matrix(profile, map, {lambda, cplx(n, 0.0)}, opts));
}

ScatteringEntry translated_s_matrix(const ScatteringEntry& entry, double c) {
  ScatteringEntry out = entry;
  const cplx phase = std::exp(cplx(0.0, -2.0 * entry.pt.lambda * c));
  out.L = entry.L * phase;
  out.R = entry.R / phase;
  return out;
}

double star_reflection_check(const PotentialProfile& profile, double lambda,
                             int n, const ScatteringOptions& opts) {
  if (n < 1) fail(ErrorKind::invalid_argument, "angular momentum n must be >= 1");
  const PotentialProfile star = reflect_profile(profile);
  const ScatteringEntry rs =
      s_matrix(transfer_matrix(star, {lambda, cplx(n, 0.0)}, opts));
  const ScatteringEntry l =
      s_matrix(transfer_matrix(profile, {-lambda, cplx(n, 0.0)}, opts));
  return std::abs(rs.R + std::conj(l.L));
}

OperatorNorms operator_norms(std::span<const ScatteringEntry> entries) {
  if (entries.empty())
    fail(ErrorKind::invalid_argument, "operator_norms: empty entry list");
  OperatorNorms n;
  for (const auto& e : entries) {
    n.T = std::max(n.T, std::abs(e.T));
    n.L = std::max(n.L, std::abs(e.L));
    n.R = std::max(n.R, std::abs(e.R));
  }
  return n;
}

}  // namespace ahscat
