#include "svarkit/presets.hpp"

namespace svarkit::presets {

Eigen::MatrixXd system11_a() {
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(4, 4);
  // equation form: eps3 = -0.0365 eps1 + ..., eps4 = -0.1424 eps1 + ...
  A(2, 0) = 0.0365;
  A(3, 0) = 0.1424;
  return A;
}

Eigen::MatrixXd system11_b() {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(4, 4);
  B(0, 0) = 0.0959;
  B(1, 1) = 0.0143;
  B(1, 2) = -0.0052;
  B(2, 2) = 0.0078;
  B(2, 3) = 0.0023;
  B(3, 3) = 0.0385;
  return B;
}

Eigen::MatrixXd system11_impact0() {
  Eigen::MatrixXd M(4, 4);
  M << 0.0959, 0.0000, 0.0000, 0.0000,
       0.0000, 0.0143, -0.0053, 0.0000,
       0.0035, 0.0000, 0.0079, 0.0023,
       0.0137, 0.0000, 0.0000, 0.0385;
  return M;
}

Eigen::MatrixXd system11_impact1() {
  Eigen::MatrixXd M(4, 4);
  M << 0.0130, -0.0102, 0.0132, 0.0112,
       0.0007, 0.0140, -0.0096, -0.0030,
       0.0027, 0.0004, 0.0074, 0.0026,
      -0.0160, -0.0025, 0.0002, -0.0164;
  return M;
}

Eigen::MatrixXd system11_a1() {
  return system11_impact1() * system11_impact0().inverse();
}

Eigen::MatrixXd recursive_a() { return Eigen::MatrixXd::Identity(4, 4); }

Eigen::MatrixXd recursive_b() {
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(4, 4);
  B << 1.00, 0.00, 0.00, 0.00,
       0.40, 0.80, 0.00, 0.00,
      -0.25, 0.30, 0.60, 0.00,
       0.15, -0.10, 0.20, 0.50;
  return B;
}

Eigen::MatrixXd recursive_a1() {
  Eigen::MatrixXd A1(4, 4);
  A1 << 0.50, 0.10, 0.00, 0.00,
        0.05, 0.40, 0.10, 0.00,
        0.00, 0.05, 0.30, 0.10,
        0.00, 0.00, 0.05, 0.20;
  return A1;
}

}  // namespace svarkit::presets
