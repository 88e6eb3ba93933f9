#include "glesim/expm.hpp"

#include <cmath>

namespace glesim {

Eigen::MatrixXd expm_pade(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  const double theta13 = 5.371920351148152;
  const double b[] = {64764752532480000.0, 32382376266240000.0,
                      7771770303897600.0,  1187353796428800.0,
                      129060195264000.0,   10559470521600.0,
                      670442572800.0,      33522128640.0,
                      1323241920.0,        40840800.0,
                      960960.0,            16380.0,
                      182.0,               1.0};

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  const Eigen::MatrixXd as = a / std::pow(2.0, squarings);

  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = as * as;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a2 * a4;
  Eigen::MatrixXd u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
            b[5] * a4 + b[3] * a2 + b[1] * I);
  Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 +
                      b[4] * a4 + b[2] * a2 + b[0] * I;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

} // namespace glesim
