#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

namespace dicke {

using Real = double;
using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

// Half-integer spin labels are carried as twice their value (exact integer
// arithmetic, no floating-point keys).  `half_label(3)` renders "3/2",
// `half_label(4)` renders "2".
std::string half_label(int twice_value);

}  // namespace dicke
