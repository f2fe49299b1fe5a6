#pragma once

#include <optional>
#include <vector>

#include "specsbm/spectral.hpp"

namespace specsbm {

struct TauGrid {
  std::vector<double> values;  // 1e-4, 1, tau_max^{1/18}, ..., tau_max
  double tau_max = 0.0;
};

// DegenerateGrid if tau_max <= 1.
TauGrid tau_grid(double tau_max);

// B_hat_kl = (sum of A_ij over ordered pairs with labels k, l) / (n_k n_l).
// EmptyCluster if a label in 0..k-1 is unused.
Matrix estimate_block_matrix(const AdjacencyMatrix& a, const std::vector<int>& labels, int k);

// theta_hat_i = n_k d_i / (sum of degrees in community k), k = label of i.
// ZeroCommunityDegree if a community has no incident edges.
Vector estimate_theta(const AdjacencyMatrix& a, const std::vector<int>& labels, int k);

struct PlugInModel {
  Membership z_hat;
  Matrix b_hat;
  std::optional<Vector> theta_hat;  // used by the tau-prime and tau-dprime forms
};

// Estimates B_hat, and theta_hat when the variant is degree corrected.
PlugInModel fit_plug_in(const AdjacencyMatrix& a, const std::vector<int>& labels, int k, Variant variant);

// P_hat = Theta_hat Z_hat B_hat Z_hat^T Theta_hat (Theta_hat = I for the plain
// and tau forms) pushed through the variant's population formula.
SymMatrix plug_in_laplacian(const PlugInModel& plug, double tau, Variant variant);

// |sigma_K| of the plug-in Laplacian, from its K x K reduction.
double plug_in_sigma_k(const PlugInModel& plug, double tau, Variant variant);

struct QEvaluation {
  double q = 0.0;  // +inf when the grid point is unusable
  ClusteringResult clustering;
  bool usable = false;
};

// ||L_tau - L_hat_tau|| / |sigma_hat_K| at one tau. The sample Laplacian for
// tau-dprime is built with `theta_hat`; every plug-in is re-estimated from the
// labels found at this tau.
QEvaluation q_criterion(const AdjacencyMatrix& a, int k, double tau, Variant variant, ClusterAlgo algo,
                        const KMeansConfig& config, RngSeed seed,
                        const std::optional<Vector>& theta_hat = std::nullopt);

struct TauSelection {
  double tau_star = 0.0;
  std::size_t best_index = 0;
  std::vector<double> taus;
  std::vector<double> qs;
  ClusteringResult clustering;  // the clustering at tau_star
};

// Minimizes Q over the grid built from the sample average degree (or over
// `grid` when given). Ties go to the smaller tau. AllInfinite if no grid point
// is usable.
TauSelection select_tau(const AdjacencyMatrix& a, int k, Variant variant, ClusterAlgo algo,
                        const KMeansConfig& config, RngSeed seed,
                        const std::optional<Vector>& theta_hat = std::nullopt,
                        const std::optional<TauGrid>& grid = std::nullopt);

struct AdaptiveResult {
  ClusteringResult clustering;       // final, from L''
  std::vector<int> stage1_labels;    // from L' at tau'
  std::vector<int> stage2_labels;    // same as clustering.labels
  Vector theta_hat;
  TauSelection stage1;
  TauSelection stage2;
};

// Select tau' and cluster with L'; estimate theta from those labels; select
// tau'' on L'' built with that estimate and recluster.
AdaptiveResult adaptive_cluster(const AdjacencyMatrix& a, int k, ClusterAlgo algo, const KMeansConfig& config,
                                RngSeed seed);

}  // namespace specsbm
