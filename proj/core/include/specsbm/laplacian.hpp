#pragma once

#include <optional>

#include "specsbm/graph.hpp"
#include "specsbm/model.hpp"

namespace specsbm {

struct DegreeVector {
  Vector d_hat;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

DegreeVector degrees(const AdjacencyMatrix& a);

// Sample Laplacian of the given variant:
//   plain       D^{-1/2} A D^{-1/2}
//   tau         A_tau = A + (tau/n) 1 1^T, D_tau = row sums of A_tau
//   tau-prime   (D + tau I)^{-1/2} A (D + tau I)^{-1/2}
//   tau-dprime  A'' = A + (tau/n) theta theta^T, D'' = row sums of A''
// SingularDegree when a degree that must be inverted is zero, MissingTheta
// when tau-dprime gets no theta_hat. For tau-dprime a node with theta_hat_i = 0
// and no edges has an identically zero row in A''; its row of L'' is zero.
SymMatrix build_laplacian(const AdjacencyMatrix& a, Variant variant, double tau,
                          const std::optional<Vector>& theta_hat = std::nullopt);

}  // namespace specsbm
