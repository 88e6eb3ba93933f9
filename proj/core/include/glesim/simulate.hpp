#pragma once

#include <vector>

#include "glesim/integrator.hpp"
#include "glesim/noise.hpp"
#include "glesim/trajectory.hpp"

namespace glesim {

enum class InitKind { gibbs, point, custom };

struct InitSpec {
  InitKind kind = InitKind::gibbs;
  State point;                // used when kind == point
  std::vector<State> custom;  // one per replica when kind == custom
};

struct SimulateOptions {
  IntegratorScheme scheme;
  double horizon = 1.0;
  int replicas = 1;
  std::uint64_t seed = 0;
  InitSpec init;
  std::size_t store_stride = 1;
  std::uint64_t max_total_steps = 10'000'000;
  int workers = 1;
};

// n independent replicas; replica r draws from stream r, so the result is a
// pure function of (model, options) independent of worker count.
std::vector<Trajectory> simulate_paths(const GleModel& model,
                                       const SimulateOptions& options);

// Snapshot ensemble: states of `replicas` independent trajectories at the
// requested times (which must be multiples of dt). Memory stays proportional
// to replicas x times instead of replicas x steps.
std::vector<std::vector<State>> simulate_ensemble_snapshots(
    const GleModel& model, const SimulateOptions& options,
    const std::vector<double>& snapshot_times);

// Langevin limit system dQ = P dt, dP = (-V'(Q) - gamma P) dt + sum_i w_i dW_i.
struct LangevinSystem {
  double gamma = 1.0;
  double beta = 1.0;
  Potential potential = Potential::cosine(0.0);
  DomainKind domain = DomainKind::torus;
};

// mode_weights w_i couple the shared Brownian modes into P; an empty vector
// means a deterministic (noise-free) run. For the standalone system use the
// single weight sqrt(2 gamma / beta); for the coupled white-noise runs use
// w_i = sqrt(2 lambda_i^2 / (beta alpha_i)) so that both systems are driven
// by identical W_i (total intensity 2 gamma / beta either way).
struct LangevinNoiseSpec {
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
  Eigen::VectorXd mode_weights;
};

Trajectory simulate_langevin(const LangevinSystem& system,
                             const IntegratorScheme& scheme, double horizon,
                             const LangevinNoiseSpec& noise, const State& init,
                             std::size_t store_stride = 1);

// Coupled pair for the white-noise limit: the rescaled model (lambda/sqrt(eps),
// alpha/eps) and the limit Langevin system are driven by the same Brownian
// modes. euler_maruyama shares the raw increments; ou_splitting samples the
// joint exact Gaussian of the (p, z, P) block so the coupling holds at any dt.
struct CoupledPaths {
  std::vector<Trajectory> gle;
  std::vector<Trajectory> langevin;
};

CoupledPaths simulate_coupled_whitenoise(const GleModel& base_model, double eps,
                                         const SimulateOptions& options);

} // namespace glesim
