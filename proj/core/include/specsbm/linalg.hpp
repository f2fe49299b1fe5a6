#pragma once

#include <Eigen/Dense>
#include <vector>

namespace specsbm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Dense symmetric matrix. Construction checks that every entry is finite
// (NonFinite otherwise) and that |m(i,j) - m(j,i)| <= 1e-12 (InvalidArgument).
class SymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  SymMatrix() = default;
  explicit SymMatrix(Matrix entries);

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }

 private:
  Matrix entries_;
};

// Eigenpairs ordered by descending |value|; equal magnitudes put the larger
// signed value first, then the lower original index. Column j of `vectors`
// pairs with values[j], and the entry of largest magnitude in every column is
// positive (ties go to the lowest row).
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};

// Full eigendecomposition. Cyclic Jacobi for n <= 16, Householder reduction to
// tridiagonal form plus implicit-shift QL otherwise.
EigenDecomposition eig_sym(const SymMatrix& m);

// The `count` leading eigenpairs under the ordering above. Runs the same QL
// iteration as eig_sym but only back-transforms the selected columns.
EigenDecomposition eig_leading(const SymMatrix& m, Index count);

// All eigenvalues, ordered as above, without eigenvectors.
Vector eigenvalues(const SymMatrix& m);

// max_j |lambda_j(m)|.
double spectral_norm(const SymMatrix& m);

class OrthogonalMatrix {
 public:
  static constexpr double kTolerance = 1e-10;

  // Throws InvalidArgument unless ||O^T O - I||_max <= kTolerance.
  explicit OrthogonalMatrix(Matrix entries);

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }

 private:
  Matrix entries_;
};

// O = U_bar V_bar^T from the SVD U_hat^T U = U_bar S V_bar^T, so that U_hat * O
// is the Procrustes-closest rotation of U_hat onto U. Both inputs must have
// orthonormal columns to 1e-8. RankDeficient if a singular value is < 1e-12.
OrthogonalMatrix orthogonal_align(const Matrix& u_hat, const Matrix& u);

// max |Q^T Q - I| over entries.
double orthonormality_defect(const Matrix& q);

namespace detail {

// Permutation that sorts `values` by the eigenpair ordering rule.
std::vector<Index> eigen_order(const Vector& values);

// Flip columns so the largest-magnitude entry is positive.
void canonicalize_signs(Matrix& vectors);

}  // namespace detail

}  // namespace specsbm
