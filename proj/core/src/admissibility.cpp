#include "glesim/admissibility.hpp"

#include <cmath>
#include <limits>

#include "glesim/rng.hpp"

namespace glesim {

AdmissibilityGrid AdmissibilityGrid::standard(int d) {
  AdmissibilityGrid g;
  g.d = d;
  const int nr = 40;
  g.radii.resize(nr);
  for (int i = 0; i < nr; ++i)
    g.radii[i] = 0.25 * std::pow(200.0, static_cast<double>(i) / (nr - 1));
  g.directions = d == 1 ? 2 : 16;
  return g;
}

namespace {

std::vector<Eigen::VectorXd> make_directions(const AdmissibilityGrid& grid) {
  std::vector<Eigen::VectorXd> dirs;
  if (grid.d == 1) {
    Eigen::VectorXd plus(1), minus(1);
    plus << 1.0;
    minus << -1.0;
    dirs = {plus, minus};
    return dirs;
  }
  rng::Key key = rng::make_key(0x5eedf00d, 0, rng::Stream::lyapunov_points);
  for (int k = 0; k < grid.directions; ++k) {
    Eigen::VectorXd u(grid.d);
    for (int i = 0; i < grid.d; ++i) u[i] = key.normal(k, i);
    u.normalize();
    dirs.push_back(u);
  }
  return dirs;
}

} // namespace

AdmissibilityReport confining_admissibility(const Potential& potential,
                                            const AdmissibilityGrid& grid) {
  require(!potential.periodic(), ErrorKind::domain,
          "admissibility: potential is periodic, not confining");
  require(grid.radii.size() >= 4, ErrorKind::invalid_argument,
          "admissibility: need >= 4 radii");

  const auto dirs = make_directions(grid);
  const int nr = static_cast<int>(grid.radii.size());

  std::vector<double> v_min(nr, std::numeric_limits<double>::infinity());
  std::vector<double> hess_max(nr, 0.0);
  std::vector<double> poincare_min(nr, std::numeric_limits<double>::infinity());

  // per-point quantities cached for the (sigma, b) grid search
  struct PointData { double vdotq, v, q2; };
  std::vector<PointData> points;

  for (int i = 0; i < nr; ++i) {
    for (const auto& u : dirs) {
      const Eigen::VectorXd q = grid.radii[i] * u;
      const double v = potential.eval(q);
      const Eigen::VectorXd g = potential.grad(q);
      const Eigen::VectorXd h = potential.hess_diag(q);
      v_min[i] = std::min(v_min[i], v);
      hess_max[i] = std::max(hess_max[i], h.norm());
      poincare_min[i] =
          std::min(poincare_min[i], 0.5 * g.squaredNorm() - h.sum());
      points.push_back({g.dot(q), v, q.squaredNorm()});
    }
  }

  AdmissibilityReport rep;

  // confinement: outermost V well above the innermost and increasing tail
  {
    bool tail_increasing = true;
    for (int i = nr / 2; i + 1 < nr; ++i)
      if (v_min[i + 1] <= v_min[i]) tail_increasing = false;
    rep.confining_growth = tail_increasing && v_min[nr - 1] > v_min[0] + 1.0;
  }

  // grid search for sigma, b > 0 with <grad V, q> - sigma V - b |q|^2 >= 0
  {
    double best_margin = -std::numeric_limits<double>::infinity();
    for (double sigma : {0.05, 0.1, 0.25, 0.5, 1.0, 1.5, 2.0}) {
      for (double b : {1e-3, 1e-2, 0.05, 0.1, 0.25, 0.5, 1.0}) {
        double margin = std::numeric_limits<double>::infinity();
        for (const auto& pt : points)
          margin = std::min(margin, pt.vdotq - sigma * pt.v - b * pt.q2);
        if (margin > best_margin) {
          best_margin = margin;
          rep.fitted_sigma = sigma;
          rep.fitted_b = b;
        }
      }
    }
    rep.drift_margin = best_margin;
    rep.drift_inequality = best_margin >= -1e-9;
  }

  // Hessian bound: reject if the norm keeps growing over the outer radii
  {
    rep.hessian_max = 0.0;
    for (int i = 0; i < nr; ++i) rep.hessian_max = std::max(rep.hessian_max, hess_max[i]);
    int growing = 0;
    for (int i = nr / 2; i + 1 < nr; ++i)
      if (hess_max[i + 1] > hess_max[i] * 1.02) ++growing;
    rep.hessian_bounded = growing < (nr - nr / 2 - 1) / 2;
  }

  // Poincare: |grad V|^2/2 - lap V non-decreasing along the outer radii and
  // large at the boundary of the grid
  {
    bool growing = true;
    for (int i = nr / 2; i + 1 < nr; ++i)
      if (poincare_min[i + 1] < poincare_min[i]) growing = false;
    rep.poincare_growth = growing && poincare_min[nr - 1] > poincare_min[nr / 2];
  }

  return rep;
}

} // namespace glesim
