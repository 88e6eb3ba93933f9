#include "glesim/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "glesim/rng.hpp"

namespace glesim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Grid {
  int dim = 1;               // 1 or 2
  int bins = 64;             // per dimension
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  double width[2] = {1, 1};

  double cell_volume() const {
    return dim == 1 ? width[0] : width[0] * width[1];
  }
  int total() const { return dim == 1 ? bins : bins * bins; }
};

double extract(const State& s, Marginal m, int axis) {
  if (m == Marginal::q || (m == Marginal::qp && axis == 0)) return s.q[0];
  return s.p[0];
}

// Poisson draw via inversion for small means, normal approximation for large;
// only used for bootstrap counts where losing exactness in the far tail is
// immaterial.
std::uint64_t poissonish(double mean, const rng::Key& key, std::uint64_t step,
                         std::uint64_t slot) {
  if (mean <= 0) return 0;
  if (mean > 30.0) {
    const double g = key.normal(step, slot);
    const double v = mean + std::sqrt(mean) * g;
    return v <= 0 ? 0 : static_cast<std::uint64_t>(std::llround(v));
  }
  const double u = key.uniform(step, 2 * slot + 1);
  double p = std::exp(-mean), c = p;
  std::uint64_t k = 0;
  while (u > c && k < 400) {
    ++k;
    p *= mean / static_cast<double>(k);
    c += p;
  }
  return k;
}

double entropy_from_counts(const std::vector<double>& counts, double n,
                           const std::vector<double>& rho, double vol) {
  double h = 0.0;
  for (std::size_t b = 0; b < counts.size(); ++b) {
    if (counts[b] <= 0 || rho[b] <= 0) continue;
    const double f = counts[b] / (n * vol);
    h += (counts[b] / n) * std::log(f / rho[b]);
  }
  return std::max(0.0, h);
}

} // namespace

std::function<double(double)> stationary_q_density(const GleModel& model) {
  const Potential v = model.potential;
  const double beta = model.beta;
  if (model.domain == DomainKind::torus) {
    const int ng = 4096;
    double z = 0.0;
    for (int i = 0; i < ng; ++i)
      z += std::exp(-beta * v.eval1(kTwoPi * i / ng)) * (kTwoPi / ng);
    return [v, beta, z](double q) {
      return std::exp(-beta * v.eval1(wrap_torus(q))) / z;
    };
  }
  // confining: integrate over the region where the weight is non-negligible
  double vmin = v.eval1(0.0);
  for (double q = -50.0; q <= 50.0; q += 0.01) vmin = std::min(vmin, v.eval1(q));
  double lo = -1.0, hi = 1.0;
  auto small = [&](double q) { return beta * (v.eval1(q) - vmin) > 45.0; };
  while (!small(lo) && lo > -1e6) lo *= 2.0;
  while (!small(hi) && hi < 1e6) hi *= 2.0;
  const int ng = 16384;
  const double h = (hi - lo) / ng;
  double z = 0.0;
  for (int i = 0; i <= ng; ++i) {
    const double w = std::exp(-beta * (v.eval1(lo + i * h) - vmin));
    z += (i == 0 || i == ng) ? 0.5 * w : w;
  }
  z *= h;
  return [v, beta, z, vmin](double q) {
    return std::exp(-beta * (v.eval1(q) - vmin)) / z;
  };
}

MarginalDistances estimate_distances(const std::vector<State>& samples,
                                     const GleModel& model,
                                     const Binning& binning) {
  const std::size_t n = samples.size();
  Grid grid;
  grid.dim = binning.marginal == Marginal::qp ? 2 : 1;
  grid.bins = binning.bins;
  require(grid.bins >= 4, ErrorKind::invalid_argument, "binning: bins >= 4");
  require(n >= static_cast<std::size_t>(10) * grid.total(),
          ErrorKind::invalid_argument,
          "binning: sample count must be >= 10 x bin count");

  // axis 0 = q for marginals q/qp, p for marginal p; axis 1 = p for qp
  auto axis_range = [&](int axis, bool is_q, double cfg_lo, double cfg_hi) {
    if (cfg_lo < cfg_hi) {
      grid.lo[axis] = cfg_lo;
      grid.hi[axis] = cfg_hi;
    } else if (is_q && model.domain == DomainKind::torus) {
      grid.lo[axis] = 0.0;
      grid.hi[axis] = kTwoPi;
    } else {
      double mn = 1e300, mx = -1e300;
      for (const auto& s : samples) {
        const double x = is_q ? s.q[0] : s.p[0];
        mn = std::min(mn, x);
        mx = std::max(mx, x);
      }
      const double pad = 1e-9 + 0.02 * (mx - mn);
      grid.lo[axis] = mn - pad;
      grid.hi[axis] = mx + pad;
    }
    grid.width[axis] = (grid.hi[axis] - grid.lo[axis]) / grid.bins;
  };

  if (binning.marginal == Marginal::p) {
    axis_range(0, false, binning.p_lo, binning.p_hi);
  } else {
    axis_range(0, true, binning.q_lo, binning.q_hi);
    if (binning.marginal == Marginal::qp)
      axis_range(1, false, binning.p_lo, binning.p_hi);
  }

  // counts
  std::vector<double> counts(grid.total(), 0.0);
  std::size_t outside = 0;
  for (const auto& s : samples) {
    int idx[2] = {0, 0};
    bool in = true;
    for (int a = 0; a < grid.dim; ++a) {
      const double x = extract(s, binning.marginal, a);
      const int b = static_cast<int>((x - grid.lo[a]) / grid.width[a]);
      if (x < grid.lo[a] || b < 0 || b >= grid.bins) {
        in = false;
        break;
      }
      idx[a] = b;
    }
    if (!in) {
      ++outside;
      continue;
    }
    counts[grid.dim == 1 ? idx[0] : idx[0] * grid.bins + idx[1]] += 1.0;
  }
  const double out_frac = static_cast<double>(outside) / static_cast<double>(n);
  require(out_frac <= 0.5, ErrorKind::invalid_argument,
          "binning grid covers less than half of the sample mass");

  // reference density at bin centers
  auto rho_q = stationary_q_density(model);
  const double sp = std::sqrt(model.beta / kTwoPi);  // normal density prefactor
  auto rho_p = [&](double p) {
    return sp * std::exp(-0.5 * model.beta * p * p);
  };
  std::vector<double> rho(grid.total(), 0.0);
  for (int b = 0; b < grid.total(); ++b) {
    const int i0 = grid.dim == 1 ? b : b / grid.bins;
    const int i1 = grid.dim == 1 ? 0 : b % grid.bins;
    const double x0 = grid.lo[0] + (i0 + 0.5) * grid.width[0];
    switch (binning.marginal) {
      case Marginal::q: rho[b] = rho_q(x0); break;
      case Marginal::p: rho[b] = rho_p(x0); break;
      case Marginal::qp: {
        const double x1 = grid.lo[1] + (i1 + 0.5) * grid.width[1];
        rho[b] = rho_q(x0) * rho_p(x1);
        break;
      }
    }
  }

  const double vol = grid.cell_volume();
  const double nn = static_cast<double>(n - outside);

  MarginalDistances out;
  out.outside_fraction = out_frac;
  out.entropy.value = entropy_from_counts(counts, nn, rho, vol);
  out.entropy.method = "histogram";
  out.entropy.sample_size = n;

  // Poisson bootstrap for the CI
  {
    std::vector<double> hs(binning.bootstrap);
    rng::Key key = rng::make_key(binning.bootstrap_seed, 0, rng::Stream::bootstrap);
    std::vector<double> cc(counts.size());
    for (int r = 0; r < binning.bootstrap; ++r) {
      double tot = 0.0;
      for (std::size_t b = 0; b < counts.size(); ++b) {
        cc[b] = static_cast<double>(
            poissonish(counts[b], key, r, b));
        tot += cc[b];
      }
      hs[r] = tot > 0 ? entropy_from_counts(cc, tot, rho, vol)
                      : out.entropy.value;
    }
    std::sort(hs.begin(), hs.end());
    const auto qtl = [&](double q) {
      const double pos = q * (hs.size() - 1);
      const std::size_t i = static_cast<std::size_t>(pos);
      const double t = pos - static_cast<double>(i);
      return i + 1 < hs.size() ? (1 - t) * hs[i] + t * hs[i + 1] : hs.back();
    };
    out.entropy.lo = std::min(out.entropy.value, qtl(0.025));
    out.entropy.hi = std::max(out.entropy.value, qtl(0.975));
  }

  // Fisher information: finite differences of log f on the grid, analytic
  // grad log rho; contributions only from bins whose neighbors are occupied.
  {
    auto dlog_rho = [&](Marginal m, int axis, double x) {
      if (m == Marginal::p || (m == Marginal::qp && axis == 1))
        return -model.beta * x;
      return -model.beta * model.potential.grad1(x);
    };
    double fisher = 0.0;
    auto cnt = [&](int i0, int i1) {
      return counts[grid.dim == 1 ? i0 : i0 * grid.bins + i1];
    };
    for (int b = 0; b < grid.total(); ++b) {
      if (counts[b] <= 0) continue;
      const int i0 = grid.dim == 1 ? b : b / grid.bins;
      const int i1 = grid.dim == 1 ? 0 : b % grid.bins;
      double g2 = 0.0;
      bool ok = true;
      for (int a = 0; a < grid.dim; ++a) {
        const int j0 = a == 0 ? i0 - 1 : i0, j1 = a == 1 ? i1 - 1 : i1;
        const int k0 = a == 0 ? i0 + 1 : i0, k1 = a == 1 ? i1 + 1 : i1;
        const bool lo_ok = (a == 0 ? j0 >= 0 : j1 >= 0);
        const bool hi_ok = (a == 0 ? k0 < grid.bins : k1 < grid.bins);
        if (!lo_ok || !hi_ok || cnt(j0, j1) <= 0 || cnt(k0, k1) <= 0) {
          ok = false;
          break;
        }
        const double dlf = (std::log(cnt(k0, k1)) - std::log(cnt(j0, j1))) /
                           (2.0 * grid.width[a]);
        const double x = grid.lo[a] + ((a == 0 ? i0 : i1) + 0.5) * grid.width[a];
        const double diff = dlf - dlog_rho(binning.marginal, a, x);
        g2 += diff * diff;
      }
      if (ok) fisher += (counts[b] / nn) * g2;
    }
    out.fisher = fisher;
  }

  // L1 over the grid plus the mass imbalance of the complement
  {
    double l1 = 0.0, rho_mass = 0.0;
    for (int b = 0; b < grid.total(); ++b) {
      const double f = counts[b] / (nn * vol);
      l1 += std::abs(f - rho[b]) * vol;
      rho_mass += rho[b] * vol;
    }
    l1 += std::abs(out_frac - std::max(0.0, 1.0 - rho_mass));
    out.l1 = l1;
  }
  return out;
}

EstimateWithCI estimate_relative_entropy(const std::vector<State>& samples,
                                         const GleModel& model,
                                         const Binning& binning) {
  return estimate_distances(samples, model, binning).entropy;
}

double estimate_fisher(const std::vector<State>& samples, const GleModel& model,
                       const Binning& binning) {
  return estimate_distances(samples, model, binning).fisher;
}

} // namespace glesim
