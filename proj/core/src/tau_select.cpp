#include "specsbm/tau_select.hpp"

#include <cmath>
#include <limits>

#include "specsbm/error.hpp"
#include "specsbm/laplacian.hpp"

namespace specsbm {

namespace {

constexpr double kMinSigma = 1e-12;

std::vector<Index> label_counts(const std::vector<int>& labels, int k, Index n) {
  if (static_cast<Index>(labels.size()) != n) throw Error(ErrorCode::kLengthMismatch, "one label per node required");
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (const int g : labels) {
    if (g < 0 || g >= k) throw Error(ErrorCode::kInvalidArgument, "label outside 0..K-1");
    ++counts[static_cast<std::size_t>(g)];
  }
  for (int c = 0; c < k; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) {
      throw Error(ErrorCode::kEmptyCluster, "estimated community " + std::to_string(c) + " is empty");
    }
  }
  return counts;
}

// Per-node weight w_i (theta_hat_i or 1), shift c_i for the tau/n term, and
// s_i = D_i^{-1/2} (0 for an all-zero row).
struct PlugScaling {
  Vector w;
  Vector c;
  Vector s;
  double shift = 0.0;
};

PlugScaling plug_scaling(const PlugInModel& plug, double tau, Variant variant) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::kInvalidArgument, "tau must be >= 0");
  const Membership& z = plug.z_hat;
  const Index n = z.size();
  const int k = z.k();
  const bool dc = variant == Variant::kTauPrime || variant == Variant::kTauDoublePrime;
  if (dc && !plug.theta_hat) throw Error(ErrorCode::kMissingTheta, "degree-corrected plug-in needs theta_hat");
  PlugScaling sc;
  sc.w = dc ? *plug.theta_hat : Vector::Ones(n);
  sc.c = Vector::Ones(n);
  Vector mass = Vector::Zero(k);
  for (Index i = 0; i < n; ++i) mass[z[i]] += sc.w[i];
  const Vector per_block = plug.b_hat * mass;
  Vector denom(n);
  for (Index i = 0; i < n; ++i) denom[i] = sc.w[i] * per_block[z[i]];
  switch (variant) {
    case Variant::kPlain:
      break;
    case Variant::kTau:
      sc.shift = tau / static_cast<double>(n);
      denom.array() += tau;
      break;
    case Variant::kTauPrime:
      denom.array() += tau;
      break;
    case Variant::kTauDoublePrime:
      sc.shift = tau / static_cast<double>(n);
      sc.c = sc.w;
      denom += tau * sc.w;
      break;
  }
  sc.s.resize(n);
  for (Index i = 0; i < n; ++i) {
    if (denom[i] > 0.0) {
      sc.s[i] = 1.0 / std::sqrt(denom[i]);
    } else if (denom[i] == 0.0 && sc.w[i] == 0.0 && sc.shift * sc.c[i] == 0.0) {
      sc.s[i] = 0.0;
    } else {
      throw Error(ErrorCode::kSingularDegree, "plug-in degree of node " + std::to_string(i) + " is zero");
    }
  }
  return sc;
}

}  // namespace

TauGrid tau_grid(double tau_max) {
  if (!(tau_max > 1.0) || !std::isfinite(tau_max)) {
    throw Error(ErrorCode::kDegenerateGrid, "tau grid needs an average degree above 1");
  }
  TauGrid grid;
  grid.tau_max = tau_max;
  grid.values.reserve(20);
  grid.values.push_back(1e-4);
  grid.values.push_back(1.0);
  for (int j = 1; j <= 18; ++j) grid.values.push_back(std::pow(tau_max, j / 18.0));
  grid.values.back() = tau_max;
  return grid;
}

Matrix estimate_block_matrix(const AdjacencyMatrix& a, const std::vector<int>& labels, int k) {
  const std::vector<Index> counts = label_counts(labels, k, a.size());
  Matrix sums = Matrix::Zero(k, k);
  const Index n = a.size();
  for (Index j = 0; j < n; ++j) {
    const int gj = labels[static_cast<std::size_t>(j)];
    for (Index i = 0; i < n; ++i) {
      if (a(i, j) != 0.0) sums(labels[static_cast<std::size_t>(i)], gj) += a(i, j);
    }
  }
  for (int p = 0; p < k; ++p) {
    for (int q = 0; q < k; ++q) {
      sums(p, q) /= static_cast<double>(counts[static_cast<std::size_t>(p)]) *
                    static_cast<double>(counts[static_cast<std::size_t>(q)]);
    }
  }
  return sums;
}

Vector estimate_theta(const AdjacencyMatrix& a, const std::vector<int>& labels, int k) {
  const std::vector<Index> counts = label_counts(labels, k, a.size());
  const Vector d = a.matrix().rowwise().sum();
  Vector volume = Vector::Zero(k);
  for (Index i = 0; i < a.size(); ++i) volume[labels[static_cast<std::size_t>(i)]] += d[i];
  for (int c = 0; c < k; ++c) {
    if (!(volume[c] > 0.0)) {
      throw Error(ErrorCode::kZeroCommunityDegree, "estimated community " + std::to_string(c) + " has no edges");
    }
  }
  Vector theta(a.size());
  for (Index i = 0; i < a.size(); ++i) {
    const int g = labels[static_cast<std::size_t>(i)];
    theta[i] = static_cast<double>(counts[static_cast<std::size_t>(g)]) * d[i] / volume[g];
  }
  return theta;
}

PlugInModel fit_plug_in(const AdjacencyMatrix& a, const std::vector<int>& labels, int k, Variant variant) {
  PlugInModel plug{Membership(labels, k), estimate_block_matrix(a, labels, k), std::nullopt};
  if (variant == Variant::kTauPrime || variant == Variant::kTauDoublePrime) {
    plug.theta_hat = estimate_theta(a, labels, k);
  }
  return plug;
}

SymMatrix plug_in_laplacian(const PlugInModel& plug, double tau, Variant variant) {
  const PlugScaling sc = plug_scaling(plug, tau, variant);
  const Membership& z = plug.z_hat;
  const Index n = z.size();
  Matrix l(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double p = (sc.w[i] * sc.w[j]) * plug.b_hat(z[i], z[j]);
      l(i, j) = (p + sc.shift * (sc.c[i] * sc.c[j])) * (sc.s[i] * sc.s[j]);
    }
  }
  return SymMatrix(std::move(l));
}

double plug_in_sigma_k(const PlugInModel& plug, double tau, Variant variant) {
  const PlugScaling sc = plug_scaling(plug, tau, variant);
  const Membership& z = plug.z_hat;
  const int k = z.k();
  // With kTauDoublePrime the shift term is w_i w_j (tau/n), so the entries stay
  // block structured in a_i = w_i s_i with core B_hat + tau/n.
  Vector g = Vector::Zero(k);
  for (Index i = 0; i < z.size(); ++i) {
    const double a = sc.w[i] * sc.s[i];
    g[z[i]] += a * a;
  }
  const Vector root = g.cwiseSqrt();
  Matrix core = root.asDiagonal() * (plug.b_hat.array() + sc.shift).matrix() * root.asDiagonal();
  core = 0.5 * (core + core.transpose()).eval();
  const Vector ev = eigenvalues(SymMatrix(std::move(core)));
  return std::abs(ev[k - 1]);
}

QEvaluation q_criterion(const AdjacencyMatrix& a, int k, double tau, Variant variant, ClusterAlgo algo,
                        const KMeansConfig& config, RngSeed seed, const std::optional<Vector>& theta_hat) {
  QEvaluation out;
  const SymMatrix l = build_laplacian(a, variant, tau, theta_hat);
  out.clustering = cluster_laplacian(l, k, variant, algo, config, seed);
  out.q = std::numeric_limits<double>::infinity();
  try {
    const PlugInModel plug = fit_plug_in(a, out.clustering.labels, k, variant);
    const double sigma = plug_in_sigma_k(plug, tau, variant);
    if (!(sigma >= kMinSigma)) return out;
    const Matrix diff = l.matrix() - plug_in_laplacian(plug, tau, variant).matrix();
    out.q = spectral_norm(SymMatrix(0.5 * (diff + diff.transpose())));
    out.q /= sigma;
    out.usable = std::isfinite(out.q);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyCluster && e.code() != ErrorCode::kZeroCommunityDegree &&
        e.code() != ErrorCode::kSingularDegree) {
      throw;
    }
  }
  return out;
}

TauSelection select_tau(const AdjacencyMatrix& a, int k, Variant variant, ClusterAlgo algo,
                        const KMeansConfig& config, RngSeed seed, const std::optional<Vector>& theta_hat,
                        const std::optional<TauGrid>& grid) {
  const TauGrid g = grid ? *grid : tau_grid(degrees(a).mean);
  TauSelection out;
  out.taus = g.values;
  out.qs.reserve(g.values.size());
  bool found = false;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < g.values.size(); ++j) {
    QEvaluation eval = q_criterion(a, k, g.values[j], variant, algo, config, seed, theta_hat);
    out.qs.push_back(eval.q);
    if (eval.usable && (!found || eval.q < best)) {
      found = true;
      best = eval.q;
      out.best_index = j;
      out.tau_star = g.values[j];
      out.clustering = std::move(eval.clustering);
    }
  }
  if (!found) throw Error(ErrorCode::kAllInfinite, "no grid point gave a finite criterion");
  return out;
}

AdaptiveResult adaptive_cluster(const AdjacencyMatrix& a, int k, ClusterAlgo algo, const KMeansConfig& config,
                                RngSeed seed) {
  AdaptiveResult out;
  out.stage1 = select_tau(a, k, Variant::kTauPrime, algo, config, seed.derive("stage1"));
  out.stage1_labels = out.stage1.clustering.labels;
  out.theta_hat = estimate_theta(a, out.stage1_labels, k);
  out.stage2 = select_tau(a, k, Variant::kTauDoublePrime, algo, config, seed.derive("stage2"), out.theta_hat);
  out.clustering = out.stage2.clustering;
  out.stage2_labels = out.clustering.labels;
  return out;
}

}  // namespace specsbm
