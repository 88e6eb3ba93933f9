#include "glesim/simulate.hpp"

#include <cmath>
#include <memory>

#include "glesim/gibbs.hpp"
#include "glesim/parallel.hpp"

namespace glesim {

namespace {

std::uint64_t step_count(double horizon, double dt) {
  require(horizon > 0, ErrorKind::invalid_argument, "horizon must be > 0");
  const double raw = horizon / dt;
  auto steps = static_cast<std::uint64_t>(std::llround(raw));
  require(steps >= 1, ErrorKind::invalid_argument,
          "horizon must cover at least one step");
  require(std::abs(raw - static_cast<double>(steps)) < 1e-9 * raw + 1e-12,
          ErrorKind::invalid_argument,
          "horizon must be an integer multiple of dt");
  return steps;
}

void check_budget(std::uint64_t steps, std::uint64_t replicas,
                  std::uint64_t systems, std::uint64_t budget) {
  require(steps * replicas * systems <= budget, ErrorKind::budget,
          "resource budget exceeded before launch: " +
              std::to_string(steps * replicas * systems) + " steps > budget " +
              std::to_string(budget));
}

State initial_state(const GleModel& model, const SimulateOptions& options,
                    const GibbsSampler* sampler, std::uint64_t replica) {
  switch (options.init.kind) {
    case InitKind::gibbs: {
      rng::Key key =
          rng::make_key(options.seed, replica, rng::Stream::initial_condition);
      return sampler->draw(key, 0);
    }
    case InitKind::point:
      return options.init.point;
    case InitKind::custom:
      require(options.init.custom.size() > replica, ErrorKind::invalid_argument,
              "custom init requires one state per replica");
      return options.init.custom[replica];
  }
  return State::zero(model);
}

struct Recorder {
  Trajectory* out;
  std::size_t stride;
  std::uint64_t steps;
  double dt;

  void record(std::uint64_t k, const State& s, const Eigen::VectorXd& q_abs) {
    if (k % stride == 0 || k == steps) {
      out->times.push_back(static_cast<double>(k) * dt);
      out->states.push_back(s);
      out->q_abs.push_back(q_abs);
    }
  }
};

} // namespace

std::vector<Trajectory> simulate_paths(const GleModel& model,
                                       const SimulateOptions& options) {
  model.validate();
  options.scheme.validate(model);
  require(options.replicas >= 1, ErrorKind::invalid_argument,
          "replicas must be >= 1");
  const double dt = options.scheme.dt;
  const std::uint64_t steps = step_count(options.horizon, dt);
  check_budget(steps, options.replicas, 1, options.max_total_steps);

  std::unique_ptr<GibbsSampler> sampler;
  if (options.init.kind == InitKind::gibbs)
    sampler = std::make_unique<GibbsSampler>(model);

  OuSplitCache cache;
  if (options.scheme.kind == SchemeKind::ou_splitting)
    cache = OuSplitCache::build(model, dt);
  const std::uint64_t model_fp = model.fingerprint();
  const bool torus = model.domain == DomainKind::torus;

  std::vector<Trajectory> out(options.replicas);
  parallel_for(options.replicas, options.workers, [&](std::size_t r) {
    Trajectory& tr = out[r];
    tr.replica_id = r;
    tr.seed = options.seed;
    tr.noise_stream = static_cast<std::uint64_t>(rng::Stream::trajectory_noise);
    tr.model_fingerprint = model_fp;
    const NoisePath noise = make_noise_path(options.seed, r, dt, model.m, model.d);

    State s = initial_state(model, options, sampler.get(), r);
    require(s.finite(), ErrorKind::numerical, "non-finite initial state");
    Eigen::VectorXd q_abs = s.q;
    Recorder rec{&tr, options.store_stride, steps, dt};
    rec.record(0, s, q_abs);

    Eigen::VectorXd y(model.m + 1), gradv(model.d);
    for (std::uint64_t k = 0; k < steps; ++k) {
      if (options.scheme.kind == SchemeKind::euler_maruyama) {
        gradv = model.potential.grad(s.q);
        const Eigen::VectorXd p_old = s.p;
        q_abs += dt * p_old;
        s.q += dt * p_old;
        s.p -= dt * gradv;
        for (int j = 0; j < model.m; ++j) {
          s.p += dt * model.lambda[j] * s.z.row(j).transpose();
          const double sig = std::sqrt(2.0 * model.alpha[j] / model.beta);
          for (int i = 0; i < model.d; ++i)
            s.z(j, i) += -dt * (model.lambda[j] * p_old[i] +
                                model.alpha[j] * s.z(j, i)) +
                         sig * noise.increment(k, j, i);
        }
      } else {
        // Strang: half q drift, exact (p,z) block, half q drift
        q_abs += 0.5 * dt * s.p;
        s.q += 0.5 * dt * s.p;
        for (int i = 0; i < model.d; ++i) {
          const double f = -model.potential.grad1(s.q[i]);
          y[0] = s.p[i];
          for (int j = 0; j < model.m; ++j) y[1 + j] = s.z(j, i);
          Eigen::VectorXd xi(model.m + 1);
          for (int rrow = 0; rrow < model.m + 1; ++rrow)
            xi[rrow] = noise.key.normal(
                k, static_cast<std::uint64_t>(i) * (model.m + 1) + rrow);
          y = (cache.mean_map * y + cache.force_response * f +
               cache.cov_sqrt * xi)
                  .eval();
          s.p[i] = y[0];
          for (int j = 0; j < model.m; ++j) s.z(j, i) = y[1 + j];
        }
        q_abs += 0.5 * dt * s.p;
        s.q += 0.5 * dt * s.p;
      }
      if (torus)
        for (int i = 0; i < model.d; ++i) s.q[i] = wrap_torus(s.q[i]);
      rec.record(k + 1, s, q_abs);
    }
    require(s.finite(), ErrorKind::numerical,
            "trajectory diverged to non-finite state");
  });
  return out;
}

std::vector<std::vector<State>> simulate_ensemble_snapshots(
    const GleModel& model, const SimulateOptions& options,
    const std::vector<double>& snapshot_times) {
  model.validate();
  options.scheme.validate(model);
  const double dt = options.scheme.dt;
  const std::uint64_t steps = step_count(options.horizon, dt);
  check_budget(steps, options.replicas, 1, options.max_total_steps);

  std::vector<std::uint64_t> snap_steps;
  for (double t : snapshot_times) {
    auto k = static_cast<std::uint64_t>(std::llround(t / dt));
    require(std::abs(t - static_cast<double>(k) * dt) < 1e-9 + 1e-9 * t,
            ErrorKind::invalid_argument,
            "snapshot times must be multiples of dt");
    require(k <= steps, ErrorKind::invalid_argument,
            "snapshot time beyond horizon");
    snap_steps.push_back(k);
  }

  std::unique_ptr<GibbsSampler> sampler;
  if (options.init.kind == InitKind::gibbs)
    sampler = std::make_unique<GibbsSampler>(model);
  OuSplitCache cache;
  if (options.scheme.kind == SchemeKind::ou_splitting)
    cache = OuSplitCache::build(model, dt);
  const bool torus = model.domain == DomainKind::torus;

  std::vector<std::vector<State>> snaps(snapshot_times.size());
  for (auto& v : snaps) v.resize(options.replicas);

  parallel_for(options.replicas, options.workers, [&](std::size_t r) {
    const NoisePath noise = make_noise_path(options.seed, r, dt, model.m, model.d);
    State s = initial_state(model, options, sampler.get(), r);
    Eigen::VectorXd y(model.m + 1);
    for (std::size_t si = 0; si < snap_steps.size(); ++si)
      if (snap_steps[si] == 0) snaps[si][r] = s;
    for (std::uint64_t k = 0; k < steps; ++k) {
      if (options.scheme.kind == SchemeKind::euler_maruyama) {
        const Eigen::VectorXd gradv = model.potential.grad(s.q);
        const Eigen::VectorXd p_old = s.p;
        s.q += dt * p_old;
        s.p -= dt * gradv;
        for (int j = 0; j < model.m; ++j) {
          s.p += dt * model.lambda[j] * s.z.row(j).transpose();
          const double sig = std::sqrt(2.0 * model.alpha[j] / model.beta);
          for (int i = 0; i < model.d; ++i)
            s.z(j, i) += -dt * (model.lambda[j] * p_old[i] +
                                model.alpha[j] * s.z(j, i)) +
                         sig * noise.increment(k, j, i);
        }
      } else {
        s.q += 0.5 * dt * s.p;
        for (int i = 0; i < model.d; ++i) {
          const double f = -model.potential.grad1(s.q[i]);
          y[0] = s.p[i];
          for (int j = 0; j < model.m; ++j) y[1 + j] = s.z(j, i);
          Eigen::VectorXd xi(model.m + 1);
          for (int rrow = 0; rrow < model.m + 1; ++rrow)
            xi[rrow] = noise.key.normal(
                k, static_cast<std::uint64_t>(i) * (model.m + 1) + rrow);
          y = (cache.mean_map * y + cache.force_response * f +
               cache.cov_sqrt * xi)
                  .eval();
          s.p[i] = y[0];
          for (int j = 0; j < model.m; ++j) s.z(j, i) = y[1 + j];
        }
        s.q += 0.5 * dt * s.p;
      }
      if (torus)
        for (int i = 0; i < model.d; ++i) s.q[i] = wrap_torus(s.q[i]);
      for (std::size_t si = 0; si < snap_steps.size(); ++si)
        if (snap_steps[si] == k + 1) snaps[si][r] = s;
    }
  });
  return snaps;
}

Trajectory simulate_langevin(const LangevinSystem& system,
                             const IntegratorScheme& scheme, double horizon,
                             const LangevinNoiseSpec& noise, const State& init,
                             std::size_t store_stride) {
  require(system.gamma > 0, ErrorKind::invalid_argument,
          "langevin: gamma must be > 0");
  require(system.beta > 0, ErrorKind::invalid_argument,
          "langevin: beta must be > 0");
  require(scheme.dt > 0, ErrorKind::invalid_argument, "langevin: dt must be > 0");
  const double dt = scheme.dt;
  const std::uint64_t steps = step_count(horizon, dt);
  const int d = static_cast<int>(init.q.size());
  const int nm = static_cast<int>(noise.mode_weights.size());
  const bool torus = system.domain == DomainKind::torus;

  // exact OU map for the P block under ou_splitting
  double mean_decay = 0.0, force_resp = 0.0, noise_sd = 0.0;
  if (scheme.kind == SchemeKind::ou_splitting) {
    mean_decay = std::exp(-system.gamma * dt);
    force_resp = (1.0 - mean_decay) / system.gamma;
    const double w2 = noise.mode_weights.squaredNorm();
    noise_sd = std::sqrt(w2 * (1.0 - mean_decay * mean_decay) /
                         (2.0 * system.gamma));
  }

  rng::Key key =
      rng::make_key(noise.seed, noise.replica, rng::Stream::trajectory_noise);
  Trajectory tr;
  tr.replica_id = noise.replica;
  tr.seed = noise.seed;
  tr.noise_stream = static_cast<std::uint64_t>(rng::Stream::trajectory_noise);
  tr.model_fingerprint = 0;

  State s;
  s.q = init.q;
  s.p = init.p;
  s.z = Eigen::MatrixXd::Zero(0, d);
  Eigen::VectorXd q_abs = s.q;
  Recorder rec{&tr, store_stride, steps, dt};
  rec.record(0, s, q_abs);

  const double sqdt = std::sqrt(dt);
  for (std::uint64_t k = 0; k < steps; ++k) {
    if (scheme.kind == SchemeKind::euler_maruyama) {
      const Eigen::VectorXd p_old = s.p;
      const Eigen::VectorXd gradv = system.potential.grad(s.q);
      q_abs += dt * p_old;
      s.q += dt * p_old;
      for (int i = 0; i < d; ++i) {
        double dw = 0.0;
        for (int j = 0; j < nm; ++j)
          dw += noise.mode_weights[j] *
                (sqdt * key.normal(k, static_cast<std::uint64_t>(i) * nm + j));
        s.p[i] += dt * (-gradv[i] - system.gamma * p_old[i]) + dw;
      }
    } else {
      q_abs += 0.5 * dt * s.p;
      s.q += 0.5 * dt * s.p;
      const Eigen::VectorXd gradv = system.potential.grad(s.q);
      for (int i = 0; i < d; ++i) {
        const double xi = nm > 0 ? key.normal(k, i) : 0.0;
        s.p[i] = mean_decay * s.p[i] - force_resp * gradv[i] + noise_sd * xi;
      }
      q_abs += 0.5 * dt * s.p;
      s.q += 0.5 * dt * s.p;
    }
    if (torus)
      for (int i = 0; i < d; ++i) s.q[i] = wrap_torus(s.q[i]);
    rec.record(k + 1, s, q_abs);
  }
  return tr;
}

CoupledPaths simulate_coupled_whitenoise(const GleModel& base_model, double eps,
                                         const SimulateOptions& options) {
  base_model.validate();
  const GleModel model = rescale_whitenoise(base_model, eps);
  options.scheme.validate(model);
  const double dt = options.scheme.dt;
  const std::uint64_t steps = step_count(options.horizon, dt);
  check_budget(steps, options.replicas, 2, options.max_total_steps);

  const int m = model.m, d = model.d;
  const double gamma = kernel_mass(base_model);
  Eigen::VectorXd weights(m);
  for (int j = 0; j < m; ++j)
    weights[j] = std::sqrt(2.0 * model.lambda[j] * model.lambda[j] /
                           (model.beta * model.alpha[j]));

  // joint (p, z_1..z_m, P) linear block for the exact coupled update
  LinearBlockCache joint;
  if (options.scheme.kind == SchemeKind::ou_splitting) {
    const int n = m + 2;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
    M.topLeftCorner(m + 1, m + 1) = model.pz_drift_matrix();
    M(m + 1, m + 1) = gamma;
    Eigen::MatrixXd noise_in = Eigen::MatrixXd::Zero(n, m);
    for (int j = 0; j < m; ++j) {
      noise_in(1 + j, j) = std::sqrt(2.0 * model.alpha[j] / model.beta);
      noise_in(m + 1, j) = weights[j];
    }
    Eigen::MatrixXd forces = Eigen::MatrixXd::Zero(n, 2);
    forces(0, 0) = 1.0;      // force on p
    forces(m + 1, 1) = 1.0;  // force on P
    joint = LinearBlockCache::build(M, forces, noise_in * noise_in.transpose(),
                                    dt);
  }

  GibbsSampler sampler(base_model);
  const std::uint64_t model_fp = model.fingerprint();
  const bool torus = model.domain == DomainKind::torus;

  CoupledPaths out;
  out.gle.resize(options.replicas);
  out.langevin.resize(options.replicas);

  parallel_for(options.replicas, options.workers, [&](std::size_t r) {
    rng::Key init_key =
        rng::make_key(options.seed, r, rng::Stream::initial_condition);
    State s = options.init.kind == InitKind::point ? options.init.point
                                                   : sampler.draw(init_key, 0);
    Eigen::VectorXd Q = s.q, P = s.p;
    Eigen::VectorXd q_abs = s.q, Q_abs = Q;

    Trajectory& tg = out.gle[r];
    Trajectory& tl = out.langevin[r];
    for (Trajectory* t : {&tg, &tl}) {
      t->replica_id = r;
      t->seed = options.seed;
      t->noise_stream =
          static_cast<std::uint64_t>(rng::Stream::trajectory_noise);
    }
    tg.model_fingerprint = model_fp;
    tl.model_fingerprint = model_fp;

    Recorder rec_g{&tg, options.store_stride, steps, dt};
    Recorder rec_l{&tl, options.store_stride, steps, dt};
    rec_g.record(0, s, q_abs);
    State sl;
    sl.q = Q;
    sl.p = P;
    sl.z = Eigen::MatrixXd::Zero(0, d);
    rec_l.record(0, sl, Q_abs);

    const NoisePath noise = make_noise_path(options.seed, r, dt, m, d);
    Eigen::VectorXd y(m + 2);
    const double sqdt = std::sqrt(dt);
    for (std::uint64_t k = 0; k < steps; ++k) {
      if (options.scheme.kind == SchemeKind::euler_maruyama) {
        // shared raw increments
        const Eigen::VectorXd p_old = s.p;
        const Eigen::VectorXd P_old = P;
        const Eigen::VectorXd gv = model.potential.grad(s.q);
        const Eigen::VectorXd gV = model.potential.grad(Q);
        q_abs += dt * p_old;
        s.q += dt * p_old;
        Q_abs += dt * P_old;
        Q += dt * P_old;
        s.p -= dt * gv;
        P -= dt * (gV + gamma * P_old);
        for (int i = 0; i < d; ++i) {
          for (int j = 0; j < m; ++j) {
            const double dw = sqdt * noise.key.normal(
                                         k, static_cast<std::uint64_t>(i) * m + j);
            s.p[i] += dt * model.lambda[j] * s.z(j, i);
            s.z(j, i) +=
                -dt * (model.lambda[j] * p_old[i] + model.alpha[j] * s.z(j, i)) +
                std::sqrt(2.0 * model.alpha[j] / model.beta) * dw;
            P[i] += weights[j] * dw;
          }
        }
      } else {
        q_abs += 0.5 * dt * s.p;
        s.q += 0.5 * dt * s.p;
        Q_abs += 0.5 * dt * P;
        Q += 0.5 * dt * P;
        for (int i = 0; i < d; ++i) {
          const double f1 = -model.potential.grad1(s.q[i]);
          const double f2 = -model.potential.grad1(Q[i]);
          y[0] = s.p[i];
          for (int j = 0; j < m; ++j) y[1 + j] = s.z(j, i);
          y[m + 1] = P[i];
          Eigen::VectorXd xi(m + 2);
          for (int rrow = 0; rrow < m + 2; ++rrow)
            xi[rrow] = noise.key.normal(
                k, static_cast<std::uint64_t>(i) * (m + 2) + rrow);
          y = (joint.mean_map * y + joint.force_response.col(0) * f1 +
               joint.force_response.col(1) * f2 + joint.cov_sqrt * xi)
                  .eval();
          s.p[i] = y[0];
          for (int j = 0; j < m; ++j) s.z(j, i) = y[1 + j];
          P[i] = y[m + 1];
        }
        q_abs += 0.5 * dt * s.p;
        s.q += 0.5 * dt * s.p;
        Q_abs += 0.5 * dt * P;
        Q += 0.5 * dt * P;
      }
      if (torus)
        for (int i = 0; i < d; ++i) {
          s.q[i] = wrap_torus(s.q[i]);
          Q[i] = wrap_torus(Q[i]);
        }
      rec_g.record(k + 1, s, q_abs);
      sl.q = Q;
      sl.p = P;
      rec_l.record(k + 1, sl, Q_abs);
    }
  });
  return out;
}

} // namespace glesim
