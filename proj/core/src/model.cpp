#include "glesim/model.hpp"

#include <cmath>

#include "glesim/hash.hpp"

namespace glesim {

void GleModel::validate() const {
  require(d >= 1, ErrorKind::invalid_argument, "model.d must be >= 1");
  require(m >= 1, ErrorKind::invalid_argument, "model.m must be >= 1");
  require(lambda.size() == m, ErrorKind::dimension_mismatch,
          "model.lambda must have length m");
  require(alpha.size() == m, ErrorKind::dimension_mismatch,
          "model.alpha must have length m");
  require(beta > 0, ErrorKind::invalid_argument, "model.beta must be > 0");
  for (int j = 0; j < m; ++j)
    require(alpha[j] > 0, ErrorKind::invalid_argument,
            "model.alpha[" + std::to_string(j) + "] must be > 0");
  if (domain == DomainKind::torus)
    require(potential.periodic(), ErrorKind::domain,
            "torus domain requires a periodic potential");
  else
    require(!potential.periodic(), ErrorKind::domain,
            "confining domain requires a non-periodic potential");
}

Eigen::MatrixXd GleModel::pz_drift_matrix() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int j = 0; j < m; ++j) {
    M(0, 1 + j) = -lambda[j];
    M(1 + j, 0) = lambda[j];
    M(1 + j, 1 + j) = alpha[j];
  }
  return M;
}

Eigen::VectorXd GleModel::pz_noise_diag() const {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(m + 1);
  for (int j = 0; j < m; ++j) q[1 + j] = 2.0 * alpha[j] / beta;
  return q;
}

std::string GleModel::describe() const {
  std::string s = "gle{d=" + std::to_string(d) + ",m=" + std::to_string(m);
  s += ",lambda=[";
  for (int j = 0; j < m; ++j) s += std::to_string(lambda[j]) + ",";
  s += "],alpha=[";
  for (int j = 0; j < m; ++j) s += std::to_string(alpha[j]) + ",";
  s += "],beta=" + std::to_string(beta);
  s += ",domain=" + std::string(domain == DomainKind::torus ? "torus" : "confining");
  s += ",V=" + potential.describe() + "}";
  return s;
}

std::uint64_t GleModel::fingerprint() const { return fnv1a64(describe()); }

State State::zero(const GleModel& model) {
  State s;
  s.q = Eigen::VectorXd::Zero(model.d);
  s.p = Eigen::VectorXd::Zero(model.d);
  s.z = Eigen::MatrixXd::Zero(model.m, model.d);
  return s;
}

bool State::finite() const {
  return q.allFinite() && p.allFinite() && z.allFinite();
}

double kernel_eval(const GleModel& model, double t) {
  const double a = std::abs(t);
  double v = 0.0;
  for (int j = 0; j < model.m; ++j)
    v += model.lambda[j] * model.lambda[j] * std::exp(-model.alpha[j] * a);
  return v;
}

double kernel_mass(const GleModel& model) {
  double v = 0.0;
  for (int j = 0; j < model.m; ++j)
    v += model.lambda[j] * model.lambda[j] / model.alpha[j];
  return v;
}

GleModel rescale_whitenoise(const GleModel& model, double eps) {
  require(eps > 0, ErrorKind::invalid_argument,
          "whitenoise rescaling requires eps > 0");
  GleModel out = model;
  out.lambda = model.lambda / std::sqrt(eps);
  out.alpha = model.alpha / eps;
  return out;
}

} // namespace glesim
