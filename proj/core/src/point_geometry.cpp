#include <algorithm>
#include <cmath>
#include <limits>

#include "specsbm/clustering.hpp"
#include "specsbm/error.hpp"

namespace specsbm {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr double kZeroRow = 1e-12;
constexpr double kCoincident = 1e-12;

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) throw Error(ErrorCode::kNonFinite, std::string(what) + " has non-finite entries");
}

}  // namespace

namespace detail {

std::vector<int> assign_columns(const Matrix& pts, const Matrix& centers) {
  const Index n = pts.cols();
  const Index k = centers.cols();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (Index c = 0; c < k; ++c) {
      const double dist = (pts.col(i) - centers.col(c)).norm();
      if (dist < best - kTieTolerance) {
        best = dist;
        arg = static_cast<int>(c);
      }
    }
    labels[static_cast<std::size_t>(i)] = arg;
  }
  return labels;
}

Matrix seed_centers(const Matrix& pts, int k, int power, Rng& rng, std::vector<Index>* picks) {
  const Index n = pts.cols();
  Matrix centers(pts.rows(), k);
  std::vector<double> weight(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  Index pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
  for (int c = 0; c < k; ++c) {
    centers.col(c) = pts.col(pick);
    if (picks != nullptr) picks->push_back(pick);
    if (c + 1 == k) break;
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double d2 = (pts.col(i) - centers.col(c)).squaredNorm();
      const double w = power == 2 ? d2 : std::sqrt(d2);
      auto& slot = weight[static_cast<std::size_t>(i)];
      slot = std::min(slot, w);
      total += slot;
    }
    if (!(total > 0.0)) {
      pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(n)));
      continue;
    }
    const double target = rng.uniform() * total;
    double running = 0.0;
    pick = -1;
    Index last_positive = 0;
    for (Index i = 0; i < n; ++i) {
      const double w = weight[static_cast<std::size_t>(i)];
      if (w > 0.0) last_positive = i;
      running += w;
      if (running > target && w > 0.0) {
        pick = i;
        break;
      }
    }
    if (pick < 0) pick = last_positive;
  }
  return centers;
}

bool fill_empty_clusters(const Matrix& pts, std::vector<int>& labels, Matrix& centers, int k) {
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (const int g : labels) ++counts[static_cast<std::size_t>(g)];
  bool moved = false;
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] > 0) continue;
    Index far = -1;
    double far_dist = -1.0;
    for (Index i = 0; i < pts.cols(); ++i) {
      const int g = labels[static_cast<std::size_t>(i)];
      if (counts[static_cast<std::size_t>(g)] < 2) continue;
      const double d = (pts.col(i) - centers.col(g)).squaredNorm();
      if (d > far_dist) {
        far_dist = d;
        far = i;
      }
    }
    if (far < 0) throw Error(ErrorCode::kTooFewPoints, "cannot fill an empty cluster");
    --counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
    labels[static_cast<std::size_t>(far)] = c;
    counts[static_cast<std::size_t>(c)] = 1;
    centers.col(c) = pts.col(far);
    moved = true;
  }
  return moved;
}

double column_objective(const Matrix& pts, const std::vector<int>& labels, const Matrix& centers, bool squared) {
  double total = 0.0;
  for (Index i = 0; i < pts.cols(); ++i) {
    const double d2 = (pts.col(i) - centers.col(labels[static_cast<std::size_t>(i)])).squaredNorm();
    total += squared ? d2 : std::sqrt(d2);
  }
  return pts.cols() > 0 ? total / static_cast<double>(pts.cols()) : 0.0;
}

}  // namespace detail

std::vector<int> assign_labels(const Matrix& points, const Matrix& centroids) {
  if (centroids.rows() == 0) throw Error(ErrorCode::kInvalidArgument, "no centroids given");
  if (points.cols() != centroids.cols()) throw Error(ErrorCode::kLengthMismatch, "dimension mismatch");
  return detail::assign_columns(points.transpose(), centroids.transpose());
}

NormalizedRows row_normalize(const Matrix& u) {
  NormalizedRows out;
  out.points = u;
  for (Index i = 0; i < u.rows(); ++i) {
    const double norm = u.row(i).norm();
    if (norm < kZeroRow) {
      out.points.row(i).setZero();
      out.zero_rows.push_back(i);
    } else {
      out.points.row(i) /= norm;
    }
  }
  return out;
}

double hausdorff(const Matrix& a, const Matrix& b) {
  if (a.rows() == 0 || b.rows() == 0) throw Error(ErrorCode::kEmptySet, "hausdorff needs nonempty sets");
  if (a.cols() != b.cols()) throw Error(ErrorCode::kLengthMismatch, "dimension mismatch");
  auto directed = [](const Matrix& x, const Matrix& y) {
    double worst = 0.0;
    for (Index i = 0; i < x.rows(); ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < y.rows(); ++j) best = std::min(best, (x.row(i) - y.row(j)).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double squared_objective(const Matrix& points, const std::vector<int>& labels, const Matrix& centroids) {
  if (static_cast<Index>(labels.size()) != points.rows()) throw Error(ErrorCode::kLengthMismatch, "labels");
  return detail::column_objective(points.transpose(), labels, centroids.transpose(), true);
}

double distance_objective(const Matrix& points, const std::vector<int>& labels, const Matrix& centroids) {
  if (static_cast<Index>(labels.size()) != points.rows()) throw Error(ErrorCode::kLengthMismatch, "labels");
  return detail::column_objective(points.transpose(), labels, centroids.transpose(), false);
}

MedianResult geometric_median(const Matrix& points, const std::optional<Vector>& start, double tolerance,
                              int max_iter) {
  if (points.cols() == 0) throw Error(ErrorCode::kEmptySet, "geometric median of no points");
  require_finite(points, "point set");
  const Index dim = points.rows();
  const Index m = points.cols();
  MedianResult out;
  Vector y = start ? *start : Vector(points.rowwise().mean());
  Vector num(dim);
  Vector pull(dim);
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    num.setZero();
    pull.setZero();
    double den = 0.0;
    int coincident = 0;
    for (Index j = 0; j < m; ++j) {
      const double dist = (points.col(j) - y).norm();
      if (dist < kCoincident) {
        ++coincident;
        continue;
      }
      const double w = 1.0 / dist;
      num.noalias() += w * points.col(j);
      pull.noalias() += w * (points.col(j) - y);
      den += w;
    }
    if (den == 0.0) {
      out.converged = true;
      break;
    }
    Vector next = num / den;
    if (coincident > 0) {
      const double r = pull.norm();
      if (r <= coincident) {
        out.converged = true;
        break;
      }
      const double beta = std::min(1.0, coincident / r);
      next = (1.0 - beta) * next + beta * y;
    }
    const double step = (next - y).norm();
    y = std::move(next);
    if (step <= tolerance * (1.0 + y.norm())) {
      out.converged = true;
      break;
    }
  }
  out.cost = 0.0;
  for (Index j = 0; j < m; ++j) out.cost += (points.col(j) - y).norm();
  out.point = std::move(y);
  return out;
}

}  // namespace specsbm
