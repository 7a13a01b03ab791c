#pragma once
#include <span>
#include <vector>

#include "ahscat/jost.hpp"
#include "ahscat/liouville.hpp"
#include "ahscat/profile.hpp"
#include "ahscat/types.hpp"

namespace ahscat {

// Matrix linking the two Jost bases, F_L = F_R * A, in components
// [[a1, a2], [a3, a4]].  True entries are e^{log_scale} * stored.
struct TransferMatrix {
  cplx a1, a2, a3, a4;
  SpectralPoint pt;
  double log_scale = 0.0;
  double matching_residual = 0.0;  // disagreement between the two matching points
};

struct ScatteringOptions {
  JostOptions jost;
  double matching_tol = 1e-8;
};

TransferMatrix transfer_matrix(const PotentialProfile& profile,
                               const LiouvilleMap& map, SpectralPoint pt,
                               const ScatteringOptions& opts = {});
// convenience overload; builds the Liouville map internally
TransferMatrix transfer_matrix(const PotentialProfile& profile, SpectralPoint pt,
                               const ScatteringOptions& opts = {});

// transmission and reflection amplitudes T = 1/a1, R = -a2/a1, L = a3/a1
struct ScatteringEntry {
  cplx T, L, R;
  SpectralPoint pt;
  double unitarity_residual = 0.0;  // max |.|T|^2+|L or R|^2 - 1.| at real z
};

ScatteringEntry s_matrix(const TransferMatrix& tm);

ScatteringEntry scattering_entry(const PotentialProfile& profile,
                                 const LiouvilleMap& map, double lambda, double n,
                                 const ScatteringOptions& opts = {});

// phase law under a radial translation a(x) -> a(x + c):
// T unchanged, L -> e^{-2 i lambda c} L, R -> e^{2 i lambda c} R
ScatteringEntry translated_s_matrix(const ScatteringEntry& entry, double c);

// |R*(lambda, n) + conj(L(-lambda, n))| where R* belongs to the space-reflected
// profile a*(x) = a(-x); zero for exact solutions
double star_reflection_check(const PotentialProfile& profile, double lambda,
                             int n, const ScatteringOptions& opts = {});

struct OperatorNorms {
  double T = 0.0, L = 0.0, R = 0.0;
};

// sup over the supplied angular momenta of |T|, |L|, |R|
OperatorNorms operator_norms(std::span<const ScatteringEntry> entries);

}  // namespace ahscat
