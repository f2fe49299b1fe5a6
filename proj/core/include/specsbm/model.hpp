#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specsbm/linalg.hpp"

namespace specsbm {

// Laplacian variants. kTau adds tau/n to every adjacency entry, kTauPrime adds
// tau to every degree, kTauDoublePrime is the degree-corrected form built from
// theta (or its estimate).
enum class Variant { kPlain, kTau, kTauPrime, kTauDoublePrime };

std::string_view to_string(Variant v) noexcept;
// Accepts "plain", "tau", "tau-prime"/"tau_prime", "tau-dprime"/"tau_dprime".
Variant parse_variant(std::string_view text);

// Community labels, 0-based internally (0..K-1). Every community is nonempty.
class Membership {
 public:
  Membership() = default;
  Membership(std::vector<int> labels, int k);

  // Nodes 0..sizes[0]-1 in community 0, the next sizes[1] in community 1, ...
  static Membership contiguous(const std::vector<Index>& sizes);

  Index size() const noexcept { return static_cast<Index>(labels_.size()); }
  int k() const noexcept { return k_; }
  int operator[](Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& labels() const noexcept { return labels_; }
  std::vector<Index> sizes() const;
  // n x K 0/1 indicator matrix Z.
  Matrix indicator() const;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

class BlockModel {
 public:
  static constexpr double kThetaSumTolerance = 1e-9;

  // B symmetric with entries in [0,1] (ProbOutOfRange otherwise), sizes
  // positive and theta, when given, positive with one entry per node.
  BlockModel(Matrix b, std::vector<Index> sizes, std::optional<Vector> theta = std::nullopt,
             std::optional<Vector> theta_raw = std::nullopt);

  int k() const noexcept { return static_cast<int>(b_.rows()); }
  Index n() const noexcept { return n_; }
  const Matrix& b() const noexcept { return b_; }
  const std::vector<Index>& sizes() const noexcept { return sizes_; }
  const std::optional<Vector>& theta() const noexcept { return theta_; }
  // The draw before per-community rescaling, kept for reference.
  const std::optional<Vector>& theta_raw() const noexcept { return theta_raw_; }
  bool degree_corrected() const noexcept { return theta_.has_value(); }

  // theta_i, or 1 without degree correction.
  double theta_at(Index i) const { return theta_ ? (*theta_)[i] : 1.0; }

  // Checks membership against sizes, and sum_{i in C_k} theta_i = n_k.
  void check_membership(const Membership& z) const;

 private:
  Matrix b_;
  std::vector<Index> sizes_;
  Index n_ = 0;
  std::optional<Vector> theta_;
  std::optional<Vector> theta_raw_;
};

struct PopulationSummary {
  Vector w;      // W_k = sum_l B_kl pi_l
  Matrix b0;     // diag(W)^{-1/2} B diag(W)^{-1/2}
  Vector pi;     // n_k / n
  Vector sigma;  // eigenvalues of Pi^{1/2} B0 Pi^{1/2}, by descending |.|
  Vector d;      // expected degrees, diagonal included
  std::optional<Vector> theta_tau;  // theta_i d_i / (d_i + tau)
  std::optional<Vector> nk_tau;     // sum_{i in C_k} theta_i^tau
};

struct AssumptionReport {
  double mu_n = 0.0;        // min_i sum_{j != i} P_ij
  double rho_n = 1.0;       // max(max entry of B0, 1)
  double sigma_k = 0.0;     // |sigma_K|
  double eta_n = 0.0;       // rate of the degree-corrected row bound, constant omitted
  double m_bar_min = 0.0;   // min_k average expected degree in community k
  double balance_min = 0.0; // min_k n_k K / n
  double balance_max = 0.0; // max_k n_k K / n
  bool full_rank = false;
  std::vector<std::string> verdicts;
};

SymMatrix edge_prob_matrix(const BlockModel& model, const Membership& z);

// W, B0, Pi, sigma and d at tau = 0 for the plain Laplacian. theta_tau and
// nk_tau are filled at the given tau when the model is degree corrected.
PopulationSummary normalized_block_matrix(const BlockModel& model, const Membership& z,
                                          double tau = 0.0);

SymMatrix population_laplacian(const BlockModel& model, const Membership& z, double tau,
                               Variant variant);

// The K leading eigenvalues of the variant's population Laplacian, by
// descending |.|, from the K x K reduction.
Vector population_spectrum(const BlockModel& model, const Membership& z, double tau,
                           Variant variant);

// Leading K eigenpairs of the population Laplacian built from the K x K
// reduction, U = A Z G^{-1/2} V. Falls back to the dense solver when the
// variant is not block structured (kTau with theta).
EigenDecomposition population_eigen(const BlockModel& model, const Membership& z, double tau,
                                    Variant variant);

AssumptionReport assumption_report(const BlockModel& model, const Membership& z, double tau,
                                   Variant variant);

}  // namespace specsbm
