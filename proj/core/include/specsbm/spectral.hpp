#pragma once

#include <optional>
#include <string_view>

#include "specsbm/clustering.hpp"
#include "specsbm/graph.hpp"
#include "specsbm/model.hpp"

namespace specsbm {

// kMedoid is K-means with centroids restricted to data points.
enum class ClusterAlgo { kKMeans, kModified, kMedoid };

std::string_view to_string(ClusterAlgo a) noexcept;
ClusterAlgo parse_algo(std::string_view text);

struct Embedding {
  Matrix points;  // n x K rows fed to the clustering step
  Vector values;  // K leading eigenvalues
  std::vector<Index> zero_rows;
};

// Leading-K eigenvectors of `laplacian`, scaled by sqrt(n/K) for the plain and
// tau variants, row-normalized for the degree-corrected ones.
Embedding spectral_embedding(const SymMatrix& laplacian, int k, Variant variant);

ClusteringResult cluster_points(const Matrix& points, int k, ClusterAlgo algo, const KMeansConfig& config,
                                RngSeed seed);

ClusteringResult cluster_laplacian(const SymMatrix& laplacian, int k, Variant variant, ClusterAlgo algo,
                                   const KMeansConfig& config, RngSeed seed);

ClusteringResult spectral_cluster(const AdjacencyMatrix& a, int k, Variant variant, double tau,
                                  ClusterAlgo algo, const KMeansConfig& config, RngSeed seed,
                                  const std::optional<Vector>& theta_hat = std::nullopt);

}  // namespace specsbm
