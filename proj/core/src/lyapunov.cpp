#include "glesim/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "glesim/rng.hpp"

namespace glesim {

LyapunovSpec LyapunovSpec::torus_default() { return LyapunovSpec{}; }

LyapunovSpec LyapunovSpec::fitted_confining(const Potential& potential) {
  require(potential.kind() == PotentialKind::quadratic, ErrorKind::domain,
          "fitted confining Lyapunov constants are implemented for quadratic "
          "potentials");
  const double k = potential.stiffness();
  // search E in (aD/2, H - aB/2) sign window; remaining constants follow the
  // torus choice with D = B and the pq cancellation A = (B - D) k = 0
  for (double a : {0.25, 0.125, 0.0625}) {
    for (double e_frac : {0.5, 0.25, 0.75}) {
      LyapunovSpec s;
      s.a = a;
      s.A = 0.0;
      s.D = s.B;
      const double lo = a * s.D / 2.0, hi = s.H - a * s.B / 2.0;
      if (!(hi > lo)) continue;
      s.E = lo + e_frac * (hi - lo);
      s.C_hat = 1.0;

      // negative definiteness of the quadratic form LG + aG in (q,p,r)
      Eigen::Matrix3d Mq = Eigen::Matrix3d::Zero();
      // LG coefficients for V = k q^2 / 2, F = M = 0, A = 0, D = B:
      //   q^2: -E k + a D k / 2;  p^2: E - H + a B / 2;  r^2: H - C + a C / 2
      //   pq: a E; qr: (E - H k) + a F = E - H k; pr: (B - C - H) + a H
      Mq(0, 0) = -s.E * k + a * s.D * k / 2.0;
      Mq(1, 1) = s.E - s.H + a * s.B / 2.0;
      Mq(2, 2) = s.H - s.C + a * s.C / 2.0;
      Mq(0, 1) = Mq(1, 0) = a * s.E / 2.0;
      Mq(0, 2) = Mq(2, 0) = (s.E - s.H * k) / 2.0;
      Mq(1, 2) = Mq(2, 1) = (s.B - s.C - s.H + a * s.H) / 2.0;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(Mq);
      if (es.eigenvalues().maxCoeff() > -1e-9) continue;

      // G - C_hat positive definite so G >= 1 everywhere
      Eigen::Matrix3d Gq = Eigen::Matrix3d::Zero();
      Gq(0, 0) = s.D * k / 2.0;
      Gq(1, 1) = s.B / 2.0;
      Gq(2, 2) = s.C / 2.0;
      Gq(0, 1) = Gq(1, 0) = s.E / 2.0;
      Gq(1, 2) = Gq(2, 1) = s.H / 2.0;
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eg(Gq);
      if (eg.eigenvalues().minCoeff() < 1e-9) continue;
      return s;
    }
  }
  fail(ErrorKind::numerical,
       "no admissible Lyapunov constants found for this quadratic potential");
}

double lyapunov_G(const LyapunovSpec& s, const Potential& v, double q, double p,
                  double r) {
  return s.C_hat + 0.5 * s.A * q * q + 0.5 * s.B * p * p + 0.5 * s.C * r * r +
         s.D * v.eval1(q) + s.E * p * q + s.F * q * r + s.H * p * r +
         s.M * v.grad1(q) * p;
}

double lyapunov_LG(const LyapunovSpec& s, const Potential& v, double q, double p,
                   double r) {
  const double vp = v.grad1(q);
  const double vpp = v.hess1(q);
  const double gq = s.A * q + s.D * vp + s.E * p + s.F * r + s.M * vpp * p;
  const double gp = s.B * p + s.E * q + s.H * r + s.M * vp;
  const double gr = s.C * r + s.F * q + s.H * p;
  const double grr = s.C;
  return p * gq + (-vp + r) * gp + (-p - r) * gr + grr;
}

std::vector<DriftPoint> lyapunov_sample_points(const GleModel& model,
                                               std::size_t count,
                                               double max_radius,
                                               std::uint64_t seed) {
  const bool torus = model.domain == DomainKind::torus;
  rng::Key key = rng::make_key(seed, 0, rng::Stream::lyapunov_points);
  std::vector<DriftPoint> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    // log-spaced radii; several directions per shell
    const double u = key.uniform(i, 0);
    const double radius = 0.05 * std::pow(max_radius / 0.05, u);
    DriftPoint pt{};
    if (torus) {
      pt.q = 6.283185307179586 * key.uniform(i, 1);
      const double ang = 6.283185307179586 * key.uniform(i, 2);
      pt.p = radius * std::cos(ang);
      pt.r = radius * std::sin(ang);
    } else {
      double x = key.normal(i, 2), y = key.normal(i, 3), z = key.normal(i, 4);
      const double nrm = std::sqrt(x * x + y * y + z * z) + 1e-300;
      pt.q = radius * x / nrm;
      pt.p = radius * y / nrm;
      pt.r = radius * z / nrm;
    }
    pts.push_back(pt);
  }
  return pts;
}

DriftReport lyapunov_drift_check(const GleModel& model, const LyapunovSpec& spec,
                                 const std::vector<DriftPoint>& points) {
  require(model.m == 1 && model.d == 1, ErrorKind::domain,
          "lyapunov drift check is defined for the m = d = 1 system");
  require(spec.B > spec.H && spec.C > spec.H, ErrorKind::invalid_argument,
          "lyapunov constants must satisfy B > H and C > H");
  require(!points.empty(), ErrorKind::invalid_argument,
          "lyapunov drift check needs sample points");
  const bool torus = model.domain == DomainKind::torus;
  const Potential& v = model.potential;

  DriftReport rep;
  rep.d_hat = -1e300;
  rep.g_min = 1e300;

  // radial shells: log-spaced buckets over |(p,r)| or |(q,p,r)|
  const int shells = 24;
  double rmax = 0.0;
  auto radius_of = [&](const DriftPoint& pt) {
    return torus ? std::hypot(pt.p, pt.r)
                 : std::sqrt(pt.q * pt.q + pt.p * pt.p + pt.r * pt.r);
  };
  for (const auto& pt : points) rmax = std::max(rmax, radius_of(pt));
  const double rmin = 0.05;
  std::vector<double> shell_max(shells, -1e300);

  for (const auto& pt : points) {
    const double g = lyapunov_G(spec, v, pt.q, pt.p, pt.r);
    require(g >= 1.0, ErrorKind::invalid_argument,
            "lyapunov G < 1 at a sampled point; constants violate positivity");
    rep.g_min = std::min(rep.g_min, g);
    const double val = lyapunov_LG(spec, v, pt.q, pt.p, pt.r) + spec.a * g;
    rep.d_hat = std::max(rep.d_hat, val);
    const double r = std::max(radius_of(pt), rmin);
    int sh = static_cast<int>(std::floor(
        (std::log(r) - std::log(rmin)) / (std::log(rmax) - std::log(rmin)) *
        shells));
    sh = std::clamp(sh, 0, shells - 1);
    shell_max[sh] = std::max(shell_max[sh], val);
  }

  for (int i = 0; i < shells; ++i) {
    if (shell_max[i] <= -1e299) continue;
    rep.radii.push_back(rmin * std::exp((i + 0.5) / shells *
                                        (std::log(rmax) - std::log(rmin))));
    rep.per_radius_max.push_back(shell_max[i]);
  }

  // fitted radius: first shell after the global maximum; beyond it the shell
  // maxima must be non-increasing (drift dominates the far field)
  std::size_t kmax = 0;
  for (std::size_t i = 1; i < rep.per_radius_max.size(); ++i)
    if (rep.per_radius_max[i] > rep.per_radius_max[kmax]) kmax = i;
  rep.radial_decreasing = true;
  for (std::size_t i = kmax; i + 1 < rep.per_radius_max.size(); ++i)
    if (rep.per_radius_max[i + 1] > rep.per_radius_max[i] + 1e-9)
      rep.radial_decreasing = false;
  rep.fitted_radius = rep.radii.empty() ? 0.0 : rep.radii[kmax];
  rep.pass = std::isfinite(rep.d_hat) && rep.radial_decreasing;
  return rep;
}

} // namespace glesim
