#pragma once

#include <Eigen/Dense>

#include "bcinv/ring/matrix.hpp"

namespace bcinv {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& A) {
  Eigen::MatrixXd E(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) E(i, j) = A(i, j);
  return E;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& E) {
  Matrix<double> A(E.rows(), E.cols());
  for (Eigen::Index i = 0; i < E.rows(); ++i)
    for (Eigen::Index j = 0; j < E.cols(); ++j) A(i, j) = E(i, j);
  return A;
}

}  // namespace bcinv
