#include "bcinv/ring/linalg.hpp"

#include <algorithm>

#include "bcinv/ring/eigen_bridge.hpp"

namespace bcinv::linalg {
namespace {

struct Svd {
  Eigen::MatrixXd U, V;
  Eigen::VectorXd sigma;
  std::size_t rank = 0;
};

// Singular values below tol * max(m, n) * sigma_max count as zero.
Svd truncated_svd(const RealField& f, const Matrix<double>& A) {
  Svd out;
  if (A.rows() == 0 || A.cols() == 0) {
    out.U = Eigen::MatrixXd::Identity(A.rows(), A.rows());
    out.V = Eigen::MatrixXd::Identity(A.cols(), A.cols());
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(A), Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.U = svd.matrixU();
  out.V = svd.matrixV();
  out.sigma = svd.singularValues();
  const double smax = out.sigma.size() ? out.sigma(0) : 0.0;
  const double cutoff = f.rank_tol * static_cast<double>(std::max(A.rows(), A.cols())) * smax;
  for (Eigen::Index i = 0; i < out.sigma.size(); ++i)
    if (out.sigma(i) > cutoff && out.sigma(i) > 0.0) ++out.rank;
  return out;
}

}  // namespace

std::size_t rank(const RealField& f, const Matrix<double>& A) { return truncated_svd(f, A).rank; }

RankFactors<double> rank_factorization(const RealField& f, const Matrix<double>& A) {
  const auto svd = truncated_svd(f, A);
  const auto r = static_cast<Eigen::Index>(svd.rank);
  Eigen::MatrixXd B = svd.U.leftCols(r) * svd.sigma.head(r).asDiagonal();
  Eigen::MatrixXd C = svd.V.leftCols(r).transpose();
  return {from_eigen(B), from_eigen(C), svd.rank};
}

Matrix<double> null_space(const RealField& f, const Matrix<double>& A) {
  const auto svd = truncated_svd(f, A);
  const auto r = static_cast<Eigen::Index>(svd.rank);
  return from_eigen(svd.V.rightCols(static_cast<Eigen::Index>(A.cols()) - r));
}

std::optional<Matrix<double>> solve(const RealField& f, const Matrix<double>& A, const Matrix<double>& B) {
  require(A.rows() == B.rows(), ErrorKind::DimensionMismatch, "solve: row mismatch");
  const Eigen::MatrixXd EA = to_eigen(A), EB = to_eigen(B);
  if (A.cols() == 0) {
    if (EB.norm() <= 1e-8 * (1.0 + EB.norm())) return Matrix<double>(0, B.cols());
    return std::nullopt;
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(EA);
  cod.setThreshold(f.rank_tol * static_cast<double>(std::max(A.rows(), A.cols())));
  const Eigen::MatrixXd X = cod.solve(EB);
  const double residual = (EA * X - EB).norm();
  if (residual > 1e-8 * (1.0 + EA.norm() * X.norm() + EB.norm())) return std::nullopt;
  return from_eigen(X);
}

std::optional<Matrix<double>> inverse(const RealField& f, const Matrix<double>& A) {
  require(A.rows() == A.cols(), ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  if (A.rows() == 0) return A;
  if (rank(f, A) < A.rows()) return std::nullopt;
  return from_eigen(to_eigen(A).fullPivLu().inverse());
}

Matrix<double> left_inverse(const RealField& f, const Matrix<double>& B) {
  if (B.cols() == 0) return Matrix<double>(0, B.rows(), 0.0);
  require(rank(f, B) == B.cols(), ErrorKind::NotInvertible, "left_inverse: factor is not full column rank");
  const Eigen::MatrixXd E = to_eigen(B);
  // (BᵀB)⁻¹Bᵀ computed through QR for stability
  return from_eigen(E.colPivHouseholderQr().solve(Eigen::MatrixXd::Identity(E.rows(), E.rows())));
}

Matrix<double> right_inverse(const RealField& f, const Matrix<double>& C) {
  return mat::transpose(left_inverse(f, mat::transpose(C)));
}

}  // namespace bcinv::linalg
