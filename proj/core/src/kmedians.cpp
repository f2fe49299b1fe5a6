#include <cmath>
#include <limits>

#include "specsbm/clustering.hpp"
#include "specsbm/error.hpp"

namespace specsbm {

namespace {

constexpr double kMedianTolerance = 1e-10;
constexpr int kMedianMaxIter = 1000;

struct Run {
  std::vector<int> labels;
  Matrix centers;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> trace;
};

double cost_at(const Matrix& members, const Vector& y) {
  double total = 0.0;
  for (Index j = 0; j < members.cols(); ++j) total += (members.col(j) - y).norm();
  return total;
}

// New centroid for one cluster. Weiszfeld starts from whichever of the cluster
// mean and the previous centroid is cheaper; the previous centroid survives
// only if the result is strictly worse, so the objective never increases.
Vector update_center(const Matrix& members, const Vector& previous) {
  const Vector mean = members.rowwise().mean();
  const double mean_cost = cost_at(members, mean);
  const double prev_cost = cost_at(members, previous);
  const Vector& start = prev_cost < mean_cost ? previous : mean;
  MedianResult med = geometric_median(members, start, kMedianTolerance, kMedianMaxIter);
  if (prev_cost < med.cost) return previous;
  return med.point;
}

Matrix median_step(const Matrix& pts, const std::vector<int>& labels, const Matrix& centers, int k) {
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(k));
  for (Index i = 0; i < pts.cols(); ++i) members[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])].push_back(i);
  Matrix next(pts.rows(), k);
  for (int c = 0; c < k; ++c) {
    const auto& idx = members[static_cast<std::size_t>(c)];
    Matrix block(pts.rows(), static_cast<Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) block.col(static_cast<Index>(j)) = pts.col(idx[j]);
    next.col(c) = update_center(block, centers.col(c));
  }
  return next;
}

Run lloyd_median(const Matrix& pts, int k, int max_iter, Matrix centers) {
  Run run;
  run.labels = detail::assign_columns(pts, centers);
  detail::fill_empty_clusters(pts, run.labels, centers, k);
  run.trace.push_back(detail::column_objective(pts, run.labels, centers, false));
  for (int it = 0; it < max_iter; ++it) {
    run.iterations = it + 1;
    Matrix next = median_step(pts, run.labels, centers, k);
    std::vector<int> labels = detail::assign_columns(pts, next);
    detail::fill_empty_clusters(pts, labels, next, k);
    run.trace.push_back(detail::column_objective(pts, labels, next, false));
    centers = std::move(next);
    if (labels == run.labels) {
      run.converged = true;
      break;
    }
    run.labels = std::move(labels);
  }
  run.centers = std::move(centers);
  run.objective = detail::column_objective(pts, run.labels, run.centers, false);
  return run;
}

}  // namespace

ClusteringResult kmedians_modified(const Matrix& points, int k, const KMeansConfig& config, RngSeed seed) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "K must be positive");
  if (points.rows() < k) throw Error(ErrorCode::kTooFewPoints, "fewer points than clusters");
  if (!points.allFinite()) throw Error(ErrorCode::kNonFinite, "point set has non-finite entries");
  if (config.restarts < 1 || config.max_iter < 1) {
    throw Error(ErrorCode::kInvalidArgument, "restarts and max_iter must be positive");
  }
  const Matrix pts = points.transpose();
  std::optional<Run> best;
  int best_restart = 0;
  for (int r = 0; r < config.restarts; ++r) {
    Rng rng(seed.derive(static_cast<std::uint64_t>(r)));
    Run run = lloyd_median(pts, k, config.max_iter, detail::seed_centers(pts, k, 1, rng));
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
