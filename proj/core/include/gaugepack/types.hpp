#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gaugepack {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;   // complex matrices (channels, codewords, covariances)
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// All divergences in this library are measured in bits (logs base 2).

}  // namespace gaugepack
