#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "glesim/errors.hpp"

namespace glesim {

enum class PotentialKind { cosine, quadratic, polynomial, tabulated };

// Potential V(q) with analytic gradient and Hessian diagonal.
//
// cosine      V(q) = amplitude * sum_i cos(q_i), 2*pi periodic per coordinate
// quadratic   V(q) = stiffness/2 * |q|^2
// polynomial  V(q) = sum_i sum_k c_k q_i^k   (separable)
// tabulated   periodic cubic spline through samples on [0, 2*pi), d = 1 only
//
// cosine and tabulated are periodic (torus); quadratic and polynomial are
// confining candidates.
class Potential {
public:
  static Potential cosine(double amplitude = 1.0);
  static Potential quadratic(double stiffness = 1.0);
  static Potential polynomial(std::vector<double> coefficients);
  static Potential tabulated(std::vector<double> values_on_period);

  PotentialKind kind() const { return kind_; }
  bool periodic() const {
    return kind_ == PotentialKind::cosine || kind_ == PotentialKind::tabulated;
  }
  double period() const { return 6.283185307179586476925286766559; }

  double eval(const Eigen::VectorXd& q) const;
  Eigen::VectorXd grad(const Eigen::VectorXd& q) const;
  // Hessian is diagonal for every supported kind (separable potentials).
  Eigen::VectorXd hess_diag(const Eigen::VectorXd& q) const;

  double eval1(double q) const;
  double grad1(double q) const;
  double hess1(double q) const;

  double amplitude() const { return amplitude_; }
  double stiffness() const { return stiffness_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  std::string describe() const;
  bool operator==(const Potential& other) const = default;

private:
  Potential() = default;

  PotentialKind kind_ = PotentialKind::cosine;
  double amplitude_ = 1.0;  // cosine
  double stiffness_ = 1.0;  // quadratic
  std::vector<double> coeffs_;  // polynomial c_0..c_K

  // tabulated: sample values plus periodic cubic spline second derivatives
  std::vector<double> table_;
  std::vector<double> spline_m_;
  void build_spline();
  double spline_eval(double q, int deriv) const;
};

} // namespace glesim
