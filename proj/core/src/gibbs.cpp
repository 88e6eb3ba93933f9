#include "glesim/gibbs.hpp"

#include <cmath>

namespace glesim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

GibbsSampler::GibbsSampler(const GleModel& model) : model_(model) {
  model_.validate();
  if (model_.domain == DomainKind::torus) {
    // envelope: max over one period of -beta*V1 (per coordinate; V separable)
    double best = -1e300;
    const int ng = 4096;
    for (int i = 0; i < ng; ++i) {
      const double q = kTwoPi * i / ng;
      best = std::max(best, -model_.beta * model_.potential.eval1(q));
    }
    env_log_max_ = best;
    return;
  }
  if (model_.potential.kind() == PotentialKind::quadratic) return;
  require(model_.d == 1, ErrorKind::domain,
          "gibbs sampler: confining non-quadratic potentials are exact-sampled "
          "only for d=1; use long-run dynamics as the sampler instead");
  // inverse-CDF table: find the region where exp(-beta(V - Vmin)) is
  // non-negligible, then tabulate the cumulative integral on a fine grid.
  double lo = -1.0, hi = 1.0;
  auto logw = [&](double q) { return -model_.beta * model_.potential.eval1(q); };
  double vbest = logw(0.0);
  for (double q = -100.0; q <= 100.0; q += 0.05)
    vbest = std::max(vbest, logw(q));
  auto negligible = [&](double q) { return logw(q) - vbest < -45.0; };
  while (!negligible(lo) && lo > -1e6) lo *= 2.0;
  while (!negligible(hi) && hi < 1e6) hi *= 2.0;
  const int ng = 8192;
  cdf_grid_.resize(ng + 1);
  cdf_values_.resize(ng + 1);
  const double h = (hi - lo) / ng;
  double acc = 0.0;
  double prev = std::exp(logw(lo) - vbest);
  cdf_grid_[0] = lo;
  cdf_values_[0] = 0.0;
  for (int i = 1; i <= ng; ++i) {
    const double q = lo + h * i;
    const double w = std::exp(logw(q) - vbest);
    acc += 0.5 * (prev + w) * h;
    prev = w;
    cdf_grid_[i] = q;
    cdf_values_[i] = acc;
  }
  for (auto& c : cdf_values_) c /= acc;
}

double GibbsSampler::draw_q1(const rng::Key& key, std::uint64_t index,
                             int coord) const {
  if (model_.domain == DomainKind::torus) {
    // rejection: propose uniform, accept with exp(-beta V - env_log_max)
    for (std::uint64_t trial = 0;; ++trial) {
      const std::uint64_t step = index * 1024 + trial;
      const double u = key.uniform(step, 16 + 2 * coord);
      const double v = key.uniform(step, 17 + 2 * coord);
      const double q = kTwoPi * u;
      ++proposals_;
      if (std::log(v) < -model_.beta * model_.potential.eval1(q) - env_log_max_) {
        ++accepts_;
        return q;
      }
      require(trial < 100000, ErrorKind::numerical,
              "gibbs sampler: rejection acceptance is pathologically low");
    }
  }
  if (model_.potential.kind() == PotentialKind::quadratic) {
    const double sigma =
        1.0 / std::sqrt(model_.beta * model_.potential.stiffness());
    return sigma * key.normal(index, 8 + coord);
  }
  // inverse CDF, linear interpolation between grid nodes
  const double u = key.uniform(index, 16 + coord);
  auto it = std::lower_bound(cdf_values_.begin(), cdf_values_.end(), u);
  std::size_t j = std::min<std::size_t>(
      cdf_values_.size() - 1,
      std::max<std::size_t>(1, static_cast<std::size_t>(it - cdf_values_.begin())));
  const double c0 = cdf_values_[j - 1], c1 = cdf_values_[j];
  const double t = c1 > c0 ? (u - c0) / (c1 - c0) : 0.5;
  return cdf_grid_[j - 1] + t * (cdf_grid_[j] - cdf_grid_[j - 1]);
}

State GibbsSampler::draw(const rng::Key& key, std::uint64_t index) const {
  State s = State::zero(model_);
  const double scale = 1.0 / std::sqrt(model_.beta);
  for (int i = 0; i < model_.d; ++i) {
    s.q[i] = draw_q1(key, index, i);
    s.p[i] = scale * key.normal(index, i);
    for (int j = 0; j < model_.m; ++j)
      s.z(j, i) = scale * key.normal(index, model_.d + j * model_.d + i);
  }
  return s;
}

double GibbsSampler::acceptance_rate() const {
  return proposals_ == 0
             ? 1.0
             : static_cast<double>(accepts_) / static_cast<double>(proposals_);
}

GibbsSampleSet sample_gibbs(const GleModel& model, std::size_t n,
                            std::uint64_t seed) {
  GibbsSampler sampler(model);
  rng::Key key = rng::make_key(seed, 0, rng::Stream::gibbs_sampler);
  GibbsSampleSet out;
  out.states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.states.push_back(sampler.draw(key, i));
  out.acceptance_rate = sampler.acceptance_rate();
  return out;
}

} // namespace glesim
