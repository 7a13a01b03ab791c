#include "ahscat/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ahscat/error.hpp"
#include "ahscat/numerics.hpp"

namespace ahscat {

LiouvilleMap::LiouvilleMap(const PotentialProfile& profile, double tol,
                           std::vector<double> grid_x,
                           std::vector<double> grid_X, double total)
    : profile_(profile),
      A_(total),
      tol_(tol),
      grid_x_(std::move(grid_x)),
      grid_X_(std::move(grid_X)) {}

double LiouvilleMap::forward(double x) const {
  if (x <= grid_x_.front()) return profile_.tail_mass_below(x);
  if (x >= grid_x_.back()) return A_ - profile_.tail_mass_above(x);
  auto it = std::upper_bound(grid_x_.begin(), grid_x_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - grid_x_.begin()) - 1;
  auto f = [this](double t) { return profile_(t); };
  return grid_X_[i] + num::gk15_panel(f, grid_x_[i], x).value;
}

double LiouvilleMap::inverse(double X) const {
  if (!(X > 0.0) || !(X < A_)) {
    std::ostringstream os;
    os << "inverse Liouville argument X = " << X << " outside (0, " << A_ << ")";
    fail(ErrorKind::domain, os.str());
  }
  double x;
  if (X <= grid_X_.front()) {
    // tail model: X = a_- e^{k_- x} / k_-
    x = std::log(X * profile_.kappa_minus() / profile_.a_minus()) /
        profile_.kappa_minus();
    return x;
  }
  if (X >= grid_X_.back()) {
    const double mass = A_ - X;  // = a_+ e^{k_+ x} / (-k_+)
    x = std::log(mass * (-profile_.kappa_plus()) / profile_.a_plus()) /
        profile_.kappa_plus();
    return x;
  }
  auto it = std::upper_bound(grid_X_.begin(), grid_X_.end(), X);
  std::size_t i = static_cast<std::size_t>(it - grid_X_.begin()) - 1;
  const double t = (X - grid_X_[i]) / (grid_X_[i + 1] - grid_X_[i]);
  x = grid_x_[i] + t * (grid_x_[i + 1] - grid_x_[i]);
  // Newton on g(x) - X; a = g' is positive so the iteration is monotone safe
  for (int iter = 0; iter < 60; ++iter) {
    const double r = forward(x) - X;
    const double step = r / profile_(x);
    x -= step;
    if (std::abs(r) <= 2.0 * tol_ && std::abs(step) < 1e-12 * (1.0 + std::abs(x)))
      break;
  }
  return x;
}

LiouvilleMap build_liouville(const PotentialProfile& profile, double tol) {
  if (!(tol > 0)) fail(ErrorKind::invalid_argument, "tolerance must be positive");
  const double cut = profile.cutoff();
  const double spacing = 0.125;
  const std::size_t n = static_cast<std::size_t>(std::ceil(2.0 * cut / spacing)) + 1;
  std::vector<double> xs(n), Xs(n);
  for (std::size_t i = 0; i < n; ++i)
    xs[i] = -cut + 2.0 * cut * static_cast<double>(i) / (n - 1);
  xs.front() = -cut;
  xs.back() = cut;

  auto f = [&profile](double t) { return profile(t); };
  const double panel_tol = tol / static_cast<double>(n);
  Xs[0] = profile.tail_mass_below(-cut);
  for (std::size_t i = 0; i + 1 < n; ++i)
    Xs[i + 1] = Xs[i] + num::integrate(f, xs[i], xs[i + 1], panel_tol, 200);
  const double A = Xs.back() + profile.tail_mass_above(cut);

  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(Xs[i + 1] > Xs[i]))
      fail(ErrorKind::numeric, "cumulative mass not strictly increasing");

  return LiouvilleMap(profile, tol, std::move(xs), std::move(Xs), A);
}

cplx sturm_liouville_potential(const LiouvilleMap& map,
                               const PotentialProfile& profile, double lambda,
                               double X) {
  const double A = map.total_width();
  if (!(X > 0.0) || !(X < A)) {
    std::ostringstream os;
    os << "q(X) is singular at the endpoints; X = " << X << " not in (0, " << A
       << ")";
    fail(ErrorKind::domain, os.str());
  }
  const double x = map.inverse(X);
  const double a = profile(x);
  const double ap = profile.derivative(x);
  // h' = 1/(a o h), h'' = -a' (h')^3; assembled from a and a' directly
  return cplx(lambda * lambda / (a * a), lambda * ap / (a * a * a));
}

}  // namespace ahscat
