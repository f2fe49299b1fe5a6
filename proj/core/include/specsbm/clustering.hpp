#pragma once

#include <optional>
#include <vector>

#include "specsbm/linalg.hpp"
#include "specsbm/rng.hpp"

namespace specsbm {

enum class CentroidMode { kMean, kMedoid };

struct KMeansConfig {
  int restarts = 50;
  int max_iter = 300;
  CentroidMode mode = CentroidMode::kMean;
};

// Labels are 0-based. `centroids` holds one centroid per row. `objective` is
// (1/n) sum_i ||x_i - c_{g_i}||^2 for K-means and (1/n) sum_i ||x_i - c_{g_i}||
// for the modified algorithm. `trace` is the objective after every iteration
// of the winning restart.
struct ClusteringResult {
  std::vector<int> labels;
  Matrix centroids;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  int best_restart = 0;
  std::vector<double> trace;
  std::vector<Index> zero_rows;  // embedding rows that normalized to zero
};

// Nearest centroid (rows of `centroids`) for every row of `points`; distances
// within 1e-12 of each other count as tied and go to the smallest index.
std::vector<int> assign_labels(const Matrix& points, const Matrix& centroids);

struct NormalizedRows {
  Matrix points;
  std::vector<Index> zero_rows;
};

// Each row scaled to unit length. Rows with norm below 1e-12 stay zero and are
// reported in zero_rows.
NormalizedRows row_normalize(const Matrix& u);

// Hausdorff distance between two point sets given as rows. EmptySet if either
// set has no rows.
double hausdorff(const Matrix& a, const Matrix& b);

double squared_objective(const Matrix& points, const std::vector<int>& labels, const Matrix& centroids);
double distance_objective(const Matrix& points, const std::vector<int>& labels, const Matrix& centroids);

struct MedianResult {
  Vector point;
  double cost = 0.0;  // sum of distances
  int iterations = 0;
  bool converged = false;
};

// Geometric median of the columns of `points` (dimension x count) by Weiszfeld
// iteration, with the Vardi-Zhang step when an iterate sits on data points.
// Starts from `start` when given, otherwise the mean.
MedianResult geometric_median(const Matrix& points, const std::optional<Vector>& start = std::nullopt,
                              double tolerance = 1e-10, int max_iter = 1000);

// Best of config.restarts runs, picked by (objective, restart index). Mean mode
// runs Lloyd iterations from k-means++ seeding; medoid mode keeps centroids on
// data points and finishes with greedy swaps. TooFewPoints if n < K.
ClusteringResult kmeans(const Matrix& points, int k, const KMeansConfig& config, RngSeed seed);

// Modified K-means: the distance objective, geometric-median centroid updates
// and D^1 seeding. config.mode is ignored.
ClusteringResult kmedians_modified(const Matrix& points, int k, const KMeansConfig& config, RngSeed seed);

namespace detail {

// Column-major helpers on a dimension x n layout shared by both algorithms.
std::vector<int> assign_columns(const Matrix& pts, const Matrix& centers);
// k-means++ style seeding with weights D^power. Chosen column indices go to
// `picks` when it is given.
Matrix seed_centers(const Matrix& pts, int k, int power, Rng& rng, std::vector<Index>* picks = nullptr);
// Moves the farthest points into empty clusters. Returns true if anything moved.
bool fill_empty_clusters(const Matrix& pts, std::vector<int>& labels, Matrix& centers, int k);
double column_objective(const Matrix& pts, const std::vector<int>& labels, const Matrix& centers, bool squared);

}  // namespace detail

}  // namespace specsbm
