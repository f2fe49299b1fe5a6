// Dense symmetric eigensolvers: cyclic Jacobi for small matrices, Householder
// tridiagonalization followed by implicit-shift QL for everything else.

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <vector>

#include "specsbm/error.hpp"
#include "specsbm/linalg.hpp"

namespace specsbm {
namespace {

constexpr Index kJacobiMaxSize = 16;
constexpr int kJacobiMaxSweeps = 64;
constexpr int kQlMaxIterationsPerValue = 64;

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Rotation {
  Index row;
  double c;
  double s;
};

struct JacobiResult {
  Vector values;
  Matrix vectors;
};

JacobiResult cyclic_jacobi(const Matrix& input, bool want_vectors) {
  const Index n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::Identity(n, n);
  const double scale = a.norm();
  const double threshold = std::numeric_limits<double>::epsilon() * scale;

  int sweep = 0;
  for (;; ++sweep) {
    double off = 0.0;
    for (Index q = 1; q < n; ++q) {
      for (Index p = 0; p < q; ++p) off += a(p, q) * a(p, q);
    }
    if (std::sqrt(off) <= threshold) break;
    if (sweep == kJacobiMaxSweeps) {
      throw Error(ErrorCode::kNoConvergence, "Jacobi sweeps exhausted");
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (want_vectors) {
          for (Index k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
  }
  return {a.diagonal(), std::move(v)};
}

// Implicit-shift QL on the tridiagonal (d, e), e[i] coupling i and i+1 and
// e[n-1] unused. Eigenvalues are left in d. When `log` is set, every plane
// rotation is recorded so eigenvectors can be rebuilt for chosen columns only.
void tridiagonal_ql(Vector& d, Vector& e, std::vector<Rotation>* log) {
  const Index n = d.size();
  if (n == 0) return;
  e[n - 1] = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (Index l = 0; l < n; ++l) {
    int iterations = 0;
    Index m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iterations > kQlMaxIterationsPerValue) {
        throw Error(ErrorCode::kNoConvergence, "QL iteration budget exhausted");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (Index i = m - 1; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (log != nullptr) log->push_back({i, c, s});
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

// Columns `selected` of the QL eigenvector matrix R_1 R_2 ... R_T, built by
// applying the logged rotations right-to-left to the matching unit vectors.
RowMajorMatrix replay_rotations(const std::vector<Rotation>& log, Index n,
                                const std::vector<Index>& selected) {
  const Index k = static_cast<Index>(selected.size());
  RowMajorMatrix x = RowMajorMatrix::Zero(n, k);
  for (Index j = 0; j < k; ++j) x(selected[static_cast<std::size_t>(j)], j) = 1.0;
  for (auto it = log.rbegin(); it != log.rend(); ++it) {
    auto upper = x.row(it->row);
    auto lower = x.row(it->row + 1);
    for (Index j = 0; j < k; ++j) {
      const double a = upper[j];
      const double b = lower[j];
      upper[j] = it->c * a + it->s * b;
      lower[j] = -it->s * a + it->c * b;
    }
  }
  return x;
}

EigenDecomposition from_jacobi(const Matrix& m, Index count) {
  JacobiResult jr = cyclic_jacobi(m, true);
  const std::vector<Index> order = detail::eigen_order(jr.values);
  EigenDecomposition out;
  out.values.resize(count);
  out.vectors.resize(m.rows(), count);
  for (Index j = 0; j < count; ++j) {
    const Index src = order[static_cast<std::size_t>(j)];
    out.values[j] = jr.values[src];
    out.vectors.col(j) = jr.vectors.col(src);
  }
  detail::canonicalize_signs(out.vectors);
  return out;
}

}  // namespace

EigenDecomposition eig_leading(const SymMatrix& m, Index count) {
  const Index n = m.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "eigendecomposition of an empty matrix");
  if (count < 0 || count > n) {
    throw Error(ErrorCode::kInvalidArgument, "requested eigenpair count out of range");
  }
  if (n <= kJacobiMaxSize) return from_jacobi(m.matrix(), count);

  Eigen::Tridiagonalization<Matrix> tri(m.matrix());
  Vector d = tri.diagonal();
  Vector e(n);
  e.head(n - 1) = tri.subDiagonal();
  std::vector<Rotation> log;
  log.reserve(static_cast<std::size_t>(3 * n * 4));
  tridiagonal_ql(d, e, &log);

  const std::vector<Index> order = detail::eigen_order(d);
  const std::vector<Index> selected(order.begin(), order.begin() + count);
  const RowMajorMatrix z = replay_rotations(log, n, selected);

  EigenDecomposition out;
  out.values.resize(count);
  for (Index j = 0; j < count; ++j) out.values[j] = d[selected[static_cast<std::size_t>(j)]];
  out.vectors = tri.matrixQ() * Matrix(z);
  detail::canonicalize_signs(out.vectors);
  return out;
}

EigenDecomposition eig_sym(const SymMatrix& m) { return eig_leading(m, m.size()); }

Vector eigenvalues(const SymMatrix& m) {
  const Index n = m.size();
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "eigenvalues of an empty matrix");
  Vector values;
  if (n <= kJacobiMaxSize) {
    values = cyclic_jacobi(m.matrix(), false).values;
  } else {
    Eigen::Tridiagonalization<Matrix> tri(m.matrix());
    values = tri.diagonal();
    Vector e(n);
    e.head(n - 1) = tri.subDiagonal();
    tridiagonal_ql(values, e, nullptr);
  }
  const std::vector<Index> order = detail::eigen_order(values);
  Vector sorted(n);
  for (Index j = 0; j < n; ++j) sorted[j] = values[order[static_cast<std::size_t>(j)]];
  return sorted;
}

}  // namespace specsbm
