#include "specsbm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "specsbm/error.hpp"

namespace specsbm {

SymMatrix::SymMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    std::ostringstream os;
    os << "symmetric matrix must be square, got " << entries_.rows() << "x" << entries_.cols();
    throw Error(ErrorCode::kInvalidArgument, os.str());
  }
  if (!entries_.allFinite()) {
    throw Error(ErrorCode::kNonFinite, "matrix has NaN or infinite entries");
  }
  const Index n = entries_.rows();
  for (Index j = 0; j < n; ++j) {
    for (Index i = j + 1; i < n; ++i) {
      if (std::abs(entries_(i, j) - entries_(j, i)) > kSymmetryTolerance) {
        std::ostringstream os;
        os << "matrix is not symmetric at (" << i << "," << j << ")";
        throw Error(ErrorCode::kInvalidArgument, os.str());
      }
    }
  }
}

double spectral_norm(const SymMatrix& m) {
  if (m.size() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "spectral_norm of an empty matrix");
  }
  return eigenvalues(m).cwiseAbs().maxCoeff();
}

double orthonormality_defect(const Matrix& q) {
  const Matrix gram = q.transpose() * q;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

OrthogonalMatrix::OrthogonalMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "orthogonal matrix must be square");
  }
  if (entries_.size() > 0 && orthonormality_defect(entries_) > kTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "matrix is not orthogonal");
  }
}

OrthogonalMatrix orthogonal_align(const Matrix& u_hat, const Matrix& u) {
  constexpr double kInputTolerance = 1e-8;
  constexpr double kMinSingular = 1e-12;
  if (u_hat.rows() != u.rows() || u_hat.cols() != u.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "orthogonal_align: shape mismatch");
  }
  if (orthonormality_defect(u_hat) > kInputTolerance || orthonormality_defect(u) > kInputTolerance) {
    throw Error(ErrorCode::kInvalidArgument, "orthogonal_align: columns are not orthonormal");
  }
  const Matrix cross = u_hat.transpose() * u;
  Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (cross.size() > 0 && svd.singularValues().minCoeff() < kMinSingular) {
    throw Error(ErrorCode::kRankDeficient, "U_hat^T U has a singular value below 1e-12");
  }
  return OrthogonalMatrix(svd.matrixU() * svd.matrixV().transpose());
}

namespace detail {

std::vector<Index> eigen_order(const Vector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  return order;
}

void canonicalize_signs(Matrix& vectors) {
  // Entries within this relative distance of the column maximum count as ties.
  constexpr double kTieTolerance = 1e-10;
  for (Index j = 0; j < vectors.cols(); ++j) {
    auto col = vectors.col(j);
    const double peak = col.cwiseAbs().maxCoeff();
    if (peak == 0.0) continue;
    for (Index i = 0; i < col.size(); ++i) {
      if (std::abs(col[i]) >= peak * (1.0 - kTieTolerance)) {
        if (col[i] < 0.0) col = -col;
        break;
      }
    }
  }
}

}  // namespace detail

}  // namespace specsbm
