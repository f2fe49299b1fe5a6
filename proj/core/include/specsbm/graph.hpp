#pragma once

#include <iosfwd>

#include "specsbm/linalg.hpp"
#include "specsbm/model.hpp"
#include "specsbm/rng.hpp"

namespace specsbm {

// Symmetric 0/1 matrix with zero diagonal, stored densely as doubles so it
// feeds straight into Laplacian construction.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  // Validates symmetry, 0/1 entries and the zero diagonal.
  explicit AdjacencyMatrix(Matrix entries);

  Index size() const noexcept { return entries_.rows(); }
  const Matrix& matrix() const noexcept { return entries_; }
  double operator()(Index i, Index j) const { return entries_(i, j); }
  Index edge_count() const;

 private:
  Matrix entries_;
};

// A_ij ~ Bernoulli(P_ij) for i < j, visited row by row from one stream.
AdjacencyMatrix sample_adjacency(const SymMatrix& p, RngSeed seed);

// Entries clipped into [0,1]. Degree-corrected models can push theta_i theta_j
// B_kl above one at small n.
SymMatrix clip_probabilities(const SymMatrix& p);

struct PlantedModel {
  BlockModel model;
  Membership membership;
};

// Block matrix of DGP 1 (K=2) or DGP 2 (K=3) at n nodes, natural logs.
Matrix dgp_block_matrix(int id, Index n);

// DGPs 1-4. DGPs 3 and 4 draw theta from {0.5, 1.5} and rescale it within
// each community to sum to n_k; the seed is only used for that draw.
PlantedModel dgp_preset(int id, Index n_per_community, RngSeed seed);

// K communities of s nodes, B_kk = r + p and B_kl = r.
PlantedModel four_param_sbm(int k, Index s, double r, double p);

// "# n=<n>" then one "i j" line per edge with i < j, 0-based.
void write_edge_list(std::ostream& out, const AdjacencyMatrix& a);
AdjacencyMatrix read_edge_list(std::istream& in);

}  // namespace specsbm
