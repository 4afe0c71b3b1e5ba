#include "linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>

#include "dds/error.hpp"

namespace dds::detail {

std::optional<Vector> weighted_projection(const Matrix& H, const Vector& s,
                                          const Matrix& B, const Vector& b) {
  const Eigen::LLT<Matrix> llt(H);
  if (llt.info() != Eigen::Success) {
    throw Error{ErrorCode::factorization_failure,
                "projection metric is not numerically positive-definite"};
  }
  const Matrix hinv_b = llt.solve(B);
  const Matrix schur = B.transpose() * hinv_b;
  const Vector rhs = B.transpose() * s - b;
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(schur);
  cod.setThreshold(1e-12);
  const Vector lambda = cod.solve(rhs);
  Vector w = s - hinv_b * lambda;

  const double scale = 1.0 + B.norm() * w.norm() + b.norm();
  if ((B.transpose() * w - b).norm() > 1e-9 * scale) return std::nullopt;
  return w;
}

std::optional<Vector> solve_square(const Matrix& M, const Vector& rhs) {
  // Row and column equilibration: the path system mixes entries of order μ/τ
  // with entries of order 1/τ³.
  const Index n = M.rows();
  Vector row_scale(n);
  for (Index i = 0; i < n; ++i) {
    const double r = M.row(i).cwiseAbs().maxCoeff();
    row_scale(i) = r > 0.0 ? 1.0 / r : 1.0;
  }
  Matrix scaled = row_scale.asDiagonal() * M;
  Vector col_scale(n);
  for (Index j = 0; j < n; ++j) {
    const double c = scaled.col(j).cwiseAbs().maxCoeff();
    col_scale(j) = c > 0.0 ? 1.0 / c : 1.0;
  }
  scaled = scaled * col_scale.asDiagonal();

  Eigen::FullPivLU<Matrix> lu(scaled);
  const Vector b = row_scale.asDiagonal() * rhs;
  Vector v = lu.solve(b);
  if (!v.allFinite()) return std::nullopt;
  // One step of iterative refinement recovers digits lost to pivot growth.
  v += lu.solve(b - scaled * v);
  const double residual = (scaled * v - b).norm();
  if (!v.allFinite() || residual > 1e-8 * (b.norm() + scaled.norm() * v.norm())) {
    return std::nullopt;
  }
  return Vector{col_scale.asDiagonal() * v};
}

}  // namespace dds::detail
