#include <algorithm>
#include <cmath>
#include <limits>

#include "specsbm/clustering.hpp"
#include "specsbm/error.hpp"

namespace specsbm {

namespace {

struct Run {
  std::vector<int> labels;
  Matrix centers;  // dimension x K
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

Matrix cluster_means(const Matrix& pts, const std::vector<int>& labels, int k) {
  Matrix sums = Matrix::Zero(pts.rows(), k);
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (Index i = 0; i < pts.cols(); ++i) {
    const int g = labels[static_cast<std::size_t>(i)];
    sums.col(g) += pts.col(i);
    ++counts[static_cast<std::size_t>(g)];
  }
  for (int c = 0; c < k; ++c) sums.col(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
  return sums;
}

Run lloyd(const Matrix& pts, int k, int max_iter, Matrix centers) {
  Run run;
  run.labels = detail::assign_columns(pts, centers);
  detail::fill_empty_clusters(pts, run.labels, centers, k);
  run.trace.push_back(detail::column_objective(pts, run.labels, centers, true));
  for (int it = 0; it < max_iter; ++it) {
    run.iterations = it + 1;
    Matrix next = cluster_means(pts, run.labels, k);
    std::vector<int> labels = detail::assign_columns(pts, next);
    detail::fill_empty_clusters(pts, labels, next, k);
    run.trace.push_back(detail::column_objective(pts, labels, next, true));
    centers = std::move(next);
    if (labels == run.labels) {
      run.converged = true;
      break;
    }
    run.labels = std::move(labels);
  }
  run.centers = std::move(centers);
  run.objective = detail::column_objective(pts, run.labels, run.centers, true);
  return run;
}

// Voronoi iteration over medoids followed by greedy best-improvement swaps.
// `dist2` holds squared distances between all points.
Run medoids(const Matrix& pts, const Matrix& dist2, int k, int max_iter, std::vector<Index> med) {
  const Index n = pts.cols();
  // Seeding repeats an index only when every remaining weight is zero.
  for (std::size_t c = 1; c < med.size(); ++c) {
    Index candidate = 0;
    while (std::find(med.begin(), med.begin() + static_cast<std::ptrdiff_t>(c), med[c]) !=
           med.begin() + static_cast<std::ptrdiff_t>(c)) {
      med[c] = candidate++;
    }
  }
  auto assign = [&](const std::vector<Index>& m, std::vector<int>& labels) {
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int c = 0; c < k; ++c) {
        const double d = std::sqrt(dist2(i, m[static_cast<std::size_t>(c)]));
        if (d < best - 1e-12) {
          best = d;
          arg = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = arg;
      total += dist2(i, m[static_cast<std::size_t>(arg)]);
    }
    return total / static_cast<double>(n);
  };
  auto centers_of = [&](const std::vector<Index>& m) {
    Matrix c(pts.rows(), k);
    for (int j = 0; j < k; ++j) c.col(j) = pts.col(m[static_cast<std::size_t>(j)]);
    return c;
  };

  Run run;
  run.labels.assign(static_cast<std::size_t>(n), 0);
  double objective = assign(med, run.labels);
  run.trace.push_back(objective);
  int it = 0;
  for (; it < max_iter; ++it) {
    std::vector<Index> next = med;
    for (int c = 0; c < k; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (Index j = 0; j < n; ++j) {
        if (run.labels[static_cast<std::size_t>(j)] != c) continue;
        double cost = 0.0;
        for (Index i = 0; i < n; ++i) {
          if (run.labels[static_cast<std::size_t>(i)] == c) cost += dist2(i, j);
        }
        if (cost < best) {
          best = cost;
          next[static_cast<std::size_t>(c)] = j;
        }
      }
    }
    std::vector<int> labels(static_cast<std::size_t>(n));
    const double value = assign(next, labels);
    if (value >= objective) break;
    med = std::move(next);
    run.labels = std::move(labels);
    objective = value;
    run.trace.push_back(objective);
  }

  for (; it < max_iter; ++it) {
    double best = objective;
    int best_c = -1;
    Index best_h = -1;
    for (int c = 0; c < k; ++c) {
      for (Index h = 0; h < n; ++h) {
        if (std::find(med.begin(), med.end(), h) != med.end()) continue;
        std::vector<Index> trial = med;
        trial[static_cast<std::size_t>(c)] = h;
        double total = 0.0;
        for (Index i = 0; i < n; ++i) {
          double nearest = std::numeric_limits<double>::infinity();
          for (const Index m : trial) nearest = std::min(nearest, dist2(i, m));
          total += nearest;
        }
        total /= static_cast<double>(n);
        if (total < best - 1e-12 * std::max(1.0, best)) {
          best = total;
          best_c = c;
          best_h = h;
        }
      }
    }
    if (best_c < 0) {
      run.converged = true;
      break;
    }
    med[static_cast<std::size_t>(best_c)] = best_h;
    objective = assign(med, run.labels);
    run.trace.push_back(objective);
  }
  run.iterations = it;
  run.centers = centers_of(med);
  run.objective = detail::column_objective(pts, run.labels, run.centers, true);
  return run;
}

}  // namespace

ClusteringResult kmeans(const Matrix& points, int k, const KMeansConfig& config, RngSeed seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "K must be positive");
  if (points.rows() < k) throw Error(ErrorCode::kTooFewPoints, "fewer points than clusters");
  if (!points.allFinite()) throw Error(ErrorCode::kNonFinite, "point set has non-finite entries");
  if (config.restarts < 1 || config.max_iter < 1) {
    throw Error(ErrorCode::kInvalidArgument, "restarts and max_iter must be positive");
  }
  const Matrix pts = points.transpose();
  Matrix dist2;
  if (config.mode == CentroidMode::kMedoid) {
    const Index n = pts.cols();
    dist2.resize(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) dist2(i, j) = (pts.col(i) - pts.col(j)).squaredNorm();
    }
  }

  std::optional<Run> best;
  int best_restart = 0;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(seed.derive(static_cast<std::uint64_t>(r)));
    std::vector<Index> picks;
    Matrix start = detail::seed_centers(pts, k, 2, rng, &picks);
    Run run = config.mode == CentroidMode::kMean ? lloyd(pts, k, config.max_iter, std::move(start))
                                                 : medoids(pts, dist2, k, config.max_iter, std::move(picks));
    if (!best || run.objective < best->objective) {
      best = std::move(run);
      best_restart = r;
    }
  }
  ClusteringResult out;
  out.labels = std::move(best->labels);
  out.centroids = best->centers.transpose();
  out.objective = best->objective;
  out.iterations = best->iterations;
  out.converged = best->converged;
  out.best_restart = best_restart;
  out.trace = std::move(best->trace);
  return out;
}

}  // namespace specsbm
