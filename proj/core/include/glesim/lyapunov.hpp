#pragma once

#include <vector>

#include "glesim/model.hpp"

namespace glesim {

// Quadratic-plus-potential Lyapunov candidate for the unit-constant m = d = 1
// system (q' = p, p' = -V'(q) + r, r' = -p - r + sqrt(2) W'):
//
//   G = C_hat + A/2 q^2 + B/2 p^2 + C/2 r^2 + D V(q)
//       + E pq + F qr + H pr + M V'(q) p
//
// The torus form uses A = E = F = M = 0 and needs B > H, C > H and
// C_hat > D * max(-V).
struct LyapunovSpec {
  double C_hat = 2.0;
  double A = 0.0;
  double B = 13.0 / 16.0;
  double C = 5.0 / 8.0;
  double D = 13.0 / 16.0;
  double E = 0.0;
  double F = 0.0;
  double H = 3.0 / 16.0;
  double M = 0.0;
  double a = 0.25;  // drift rate in LG <= -aG + d

  static LyapunovSpec torus_default();
  // grid-searched constants for a quadratic confining potential
  static LyapunovSpec fitted_confining(const Potential& potential);
};

double lyapunov_G(const LyapunovSpec& spec, const Potential& potential,
                  double q, double p, double r);

// closed-form LG from the analytic first derivatives of G
double lyapunov_LG(const LyapunovSpec& spec, const Potential& potential,
                   double q, double p, double r);

struct DriftPoint {
  double q, p, r;
};

struct DriftReport {
  double d_hat = 0.0;          // max over points of LG + aG
  double g_min = 0.0;          // min over points of G
  double fitted_radius = 0.0;  // maxima decrease beyond this radius
  bool radial_decreasing = false;
  bool pass = false;
  std::vector<double> radii;
  std::vector<double> per_radius_max;
};

// Points are grouped into radial shells by |(p,r)| (torus) or |(q,p,r)|
// (confining). PASS means d_hat is finite and the per-radius maxima of
// LG + aG are non-increasing beyond the fitted radius.
DriftReport lyapunov_drift_check(const GleModel& model, const LyapunovSpec& spec,
                                 const std::vector<DriftPoint>& points);

// radial shell sampling covering large |x|; deterministic in seed
std::vector<DriftPoint> lyapunov_sample_points(const GleModel& model,
                                               std::size_t count,
                                               double max_radius,
                                               std::uint64_t seed);

} // namespace glesim
