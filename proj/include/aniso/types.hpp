#pragma once

#include <Eigen/Dense>

#include <complex>

namespace aniso {

using Real = double;
using Complex = std::complex<double>;

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using IndexVector = Eigen::VectorXi;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexRowVector = Eigen::RowVectorXcd;

}  // namespace aniso
