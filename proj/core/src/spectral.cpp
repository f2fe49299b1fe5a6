#include "specsbm/spectral.hpp"

#include <cmath>

#include "specsbm/error.hpp"
#include "specsbm/laplacian.hpp"

namespace specsbm {

std::string_view to_string(ClusterAlgo a) noexcept {
  switch (a) {
    case ClusterAlgo::kKMeans: return "kmeans";
    case ClusterAlgo::kModified: return "modified";
    case ClusterAlgo::kMedoid: return "medoid";
  }
  return "unknown";
}

ClusterAlgo parse_algo(std::string_view text) {
  if (text == "kmeans") return ClusterAlgo::kKMeans;
  if (text == "modified") return ClusterAlgo::kModified;
  if (text == "medoid") return ClusterAlgo::kMedoid;
  throw Error(ErrorCode::kParse, "unknown clustering algorithm '" + std::string(text) + "'");
}

Embedding spectral_embedding(const SymMatrix& laplacian, int k, Variant variant) {
  if (k < 1 || k > laplacian.size()) throw Error(ErrorCode::kTooFewPoints, "K must lie in 1..n");
  EigenDecomposition eig = eig_leading(laplacian, k);
  Embedding out;
  out.values = std::move(eig.values);
  if (variant == Variant::kPlain || variant == Variant::kTau) {
    out.points = std::sqrt(static_cast<double>(laplacian.size()) / k) * eig.vectors;
  } else {
    NormalizedRows rows = row_normalize(eig.vectors);
    out.points = std::move(rows.points);
    out.zero_rows = std::move(rows.zero_rows);
  }
  return out;
}

ClusteringResult cluster_points(const Matrix& points, int k, ClusterAlgo algo, const KMeansConfig& config,
                                RngSeed seed) {
  KMeansConfig cfg = config;
  switch (algo) {
    case ClusterAlgo::kKMeans:
      cfg.mode = CentroidMode::kMean;
      return kmeans(points, k, cfg, seed);
    case ClusterAlgo::kMedoid:
      cfg.mode = CentroidMode::kMedoid;
      return kmeans(points, k, cfg, seed);
    case ClusterAlgo::kModified:
      return kmedians_modified(points, k, cfg, seed);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown clustering algorithm");
}

ClusteringResult cluster_laplacian(const SymMatrix& laplacian, int k, Variant variant, ClusterAlgo algo,
                                   const KMeansConfig& config, RngSeed seed) {
  Embedding emb = spectral_embedding(laplacian, k, variant);
  ClusteringResult out = cluster_points(emb.points, k, algo, config, seed);
  out.zero_rows = std::move(emb.zero_rows);
  return out;
}

ClusteringResult spectral_cluster(const AdjacencyMatrix& a, int k, Variant variant, double tau,
                                  ClusterAlgo algo, const KMeansConfig& config, RngSeed seed,
                                  const std::optional<Vector>& theta_hat) {
  return cluster_laplacian(build_laplacian(a, variant, tau, theta_hat), k, variant, algo, config, seed);
}

}  // namespace specsbm
