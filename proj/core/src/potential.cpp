#include "glesim/potential.hpp"

#include <cmath>

namespace glesim {

Potential Potential::cosine(double amplitude) {
  Potential p;
  p.kind_ = PotentialKind::cosine;
  p.amplitude_ = amplitude;
  return p;
}

Potential Potential::quadratic(double stiffness) {
  require(stiffness > 0, ErrorKind::invalid_argument,
          "quadratic potential requires stiffness > 0");
  Potential p;
  p.kind_ = PotentialKind::quadratic;
  p.stiffness_ = stiffness;
  return p;
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  require(!coefficients.empty(), ErrorKind::invalid_argument,
          "polynomial potential requires at least one coefficient");
  Potential p;
  p.kind_ = PotentialKind::polynomial;
  p.coeffs_ = std::move(coefficients);
  return p;
}

Potential Potential::tabulated(std::vector<double> values_on_period) {
  require(values_on_period.size() >= 4, ErrorKind::invalid_argument,
          "tabulated potential requires >= 4 samples per period");
  Potential p;
  p.kind_ = PotentialKind::tabulated;
  p.table_ = std::move(values_on_period);
  p.build_spline();
  return p;
}

double Potential::eval1(double q) const {
  switch (kind_) {
    case PotentialKind::cosine: return amplitude_ * std::cos(q);
    case PotentialKind::quadratic: return 0.5 * stiffness_ * q * q;
    case PotentialKind::polynomial: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 0;) v = v * q + coeffs_[k];
      return v;
    }
    case PotentialKind::tabulated: return spline_eval(q, 0);
  }
  return 0.0;
}

double Potential::grad1(double q) const {
  switch (kind_) {
    case PotentialKind::cosine: return -amplitude_ * std::sin(q);
    case PotentialKind::quadratic: return stiffness_ * q;
    case PotentialKind::polynomial: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 1;)
        v = v * q + coeffs_[k] * static_cast<double>(k);
      return v;
    }
    case PotentialKind::tabulated: return spline_eval(q, 1);
  }
  return 0.0;
}

double Potential::hess1(double q) const {
  switch (kind_) {
    case PotentialKind::cosine: return -amplitude_ * std::cos(q);
    case PotentialKind::quadratic: return stiffness_;
    case PotentialKind::polynomial: {
      double v = 0.0;
      for (std::size_t k = coeffs_.size(); k-- > 2;)
        v = v * q + coeffs_[k] * static_cast<double>(k) * static_cast<double>(k - 1);
      return v;
    }
    case PotentialKind::tabulated: return spline_eval(q, 2);
  }
  return 0.0;
}

double Potential::eval(const Eigen::VectorXd& q) const {
  double v = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) v += eval1(q[i]);
  return v;
}

Eigen::VectorXd Potential::grad(const Eigen::VectorXd& q) const {
  Eigen::VectorXd g(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) g[i] = grad1(q[i]);
  return g;
}

Eigen::VectorXd Potential::hess_diag(const Eigen::VectorXd& q) const {
  Eigen::VectorXd h(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) h[i] = hess1(q[i]);
  return h;
}

// Periodic cubic spline: solve the cyclic tridiagonal system for second
// derivatives m_i at the knots (natural "not-a-knot" is wrong for periodic
// data; the cyclic system keeps C2 continuity across the seam).
void Potential::build_spline() {
  const int n = static_cast<int>(table_.size());
  const double h = period() / n;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) {
    const int im = (i + n - 1) % n;
    const int ip = (i + 1) % n;
    A(i, im) = h / 6.0;
    A(i, i) = 2.0 * h / 3.0;
    A(i, ip) = h / 6.0;
    rhs[i] = (table_[ip] - 2.0 * table_[i] + table_[im]) / h;
  }
  Eigen::VectorXd m = A.partialPivLu().solve(rhs);
  spline_m_.assign(m.data(), m.data() + n);
}

double Potential::spline_eval(double q, int deriv) const {
  const int n = static_cast<int>(table_.size());
  const double L = period();
  const double h = L / n;
  double x = std::fmod(q, L);
  if (x < 0) x += L;
  int i = static_cast<int>(x / h);
  if (i >= n) i = n - 1;
  const int ip = (i + 1) % n;
  const double a = (static_cast<double>(i + 1) * h - x) / h;
  const double b = (x - static_cast<double>(i) * h) / h;
  const double yi = table_[i], yp = table_[ip];
  const double mi = spline_m_[i], mp = spline_m_[ip];
  switch (deriv) {
    case 0:
      return a * yi + b * yp +
             ((a * a * a - a) * mi + (b * b * b - b) * mp) * h * h / 6.0;
    case 1:
      return (yp - yi) / h +
             (-(3.0 * a * a - 1.0) * mi + (3.0 * b * b - 1.0) * mp) * h / 6.0;
    default:
      return a * mi + b * mp;
  }
}

std::string Potential::describe() const {
  switch (kind_) {
    case PotentialKind::cosine:
      return "cosine(amplitude=" + std::to_string(amplitude_) + ")";
    case PotentialKind::quadratic:
      return "quadratic(stiffness=" + std::to_string(stiffness_) + ")";
    case PotentialKind::polynomial: {
      std::string s = "polynomial(";
      for (double c : coeffs_) s += std::to_string(c) + ",";
      s += ")";
      return s;
    }
    case PotentialKind::tabulated:
      return "tabulated(" + std::to_string(table_.size()) + " knots)";
  }
  return "?";
}

} // namespace glesim
