#pragma once
#include <vector>

#include "ahscat/profile.hpp"
#include "ahscat/types.hpp"

namespace ahscat {

// Change of variable X = g(x) = int_{-inf}^x a(t) dt mapping the line onto
// (0, A), A = int a.  The inverse h = g^{-1} is evaluated by monotone
// interpolation over a stored grid followed by a Newton polish; outside the
// grid both directions use the closed-form tail model.
class LiouvilleMap {
public:
  LiouvilleMap() = default;
  LiouvilleMap(const PotentialProfile& profile, double tol,
               std::vector<double> grid_x, std::vector<double> grid_X,
               double total);

  double total_width() const { return A_; }
  double tolerance() const { return tol_; }
  double forward(double x) const;  // g
  double inverse(double X) const;  // h

  const std::vector<double>& grid_x() const { return grid_x_; }
  const std::vector<double>& grid_X() const { return grid_X_; }

private:
  PotentialProfile profile_;
  double A_ = 0.0;
  double tol_ = 0.0;
  std::vector<double> grid_x_, grid_X_;
};

LiouvilleMap build_liouville(const PotentialProfile& profile, double tol = 1e-12);

// singular Sturm-Liouville potential q(X) = lambda^2 h'(X)^2 - i lambda h''(X)
// on (0, A), evaluated through a(h(X)) and a'(h(X))
cplx sturm_liouville_potential(const LiouvilleMap& map,
                               const PotentialProfile& profile, double lambda,
                               double X);

}  // namespace ahscat
