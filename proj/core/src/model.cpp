#include "specsbm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "specsbm/error.hpp"

namespace specsbm {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::kPlain: return "plain";
    case Variant::kTau: return "tau";
    case Variant::kTauPrime: return "tau-prime";
    case Variant::kTauDoublePrime: return "tau-dprime";
  }
  return "unknown";
}

Variant parse_variant(std::string_view text) {
  if (text == "plain") return Variant::kPlain;
  if (text == "tau") return Variant::kTau;
  if (text == "tau-prime" || text == "tau_prime") return Variant::kTauPrime;
  if (text == "tau-dprime" || text == "tau_dprime") return Variant::kTauDoublePrime;
  throw Error(ErrorCode::kParse, "unknown Laplacian variant '" + std::string(text) + "'");
}

Membership::Membership(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (k_ < 1) throw Error(ErrorCode::kInvalidArgument, "membership needs K >= 1");
  std::vector<Index> counts(static_cast<std::size_t>(k_), 0);
  for (const int g : labels_) {
    if (g < 0 || g >= k_) {
      throw Error(ErrorCode::kInvalidArgument, "label " + std::to_string(g) + " outside 0..K-1");
    }
    ++counts[static_cast<std::size_t>(g)];
  }
  for (int c = 0; c < k_; ++c) {
    if (counts[static_cast<std::size_t>(c)] == 0) {
      throw Error(ErrorCode::kEmptyCluster, "community " + std::to_string(c) + " is empty");
    }
  }
}

Membership Membership::contiguous(const std::vector<Index>& sizes) {
  std::vector<int> labels;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    labels.insert(labels.end(), static_cast<std::size_t>(std::max<Index>(sizes[c], 0)), static_cast<int>(c));
  }
  return Membership(std::move(labels), static_cast<int>(sizes.size()));
}

std::vector<Index> Membership::sizes() const {
  std::vector<Index> counts(static_cast<std::size_t>(k_), 0);
  for (const int g : labels_) ++counts[static_cast<std::size_t>(g)];
  return counts;
}

Matrix Membership::indicator() const {
  Matrix z = Matrix::Zero(size(), k_);
  for (Index i = 0; i < size(); ++i) z(i, (*this)[i]) = 1.0;
  return z;
}

BlockModel::BlockModel(Matrix b, std::vector<Index> sizes, std::optional<Vector> theta,
                       std::optional<Vector> theta_raw)
    : b_(std::move(b)), sizes_(std::move(sizes)), theta_(std::move(theta)), theta_raw_(std::move(theta_raw)) {
  if (b_.rows() < 1 || b_.rows() != b_.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "block matrix must be square and nonempty");
  }
  if (static_cast<Index>(sizes_.size()) != b_.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "one community size per block row required");
  }
  if (!b_.allFinite()) throw Error(ErrorCode::kNonFinite, "block matrix has non-finite entries");
  for (Index i = 0; i < b_.rows(); ++i) {
    for (Index j = 0; j < b_.cols(); ++j) {
      if (b_(i, j) < 0.0 || b_(i, j) > 1.0) {
        throw Error(ErrorCode::kProbOutOfRange, "block probabilities must lie in [0,1]");
      }
      if (std::abs(b_(i, j) - b_(j, i)) > SymMatrix::kSymmetryTolerance) {
        throw Error(ErrorCode::kInvalidArgument, "block matrix must be symmetric");
      }
    }
  }
  for (const Index s : sizes_) {
    if (s < 1) throw Error(ErrorCode::kInvalidArgument, "community sizes must be positive");
    n_ += s;
  }
  if (theta_) {
    if (theta_->size() != n_) throw Error(ErrorCode::kInvalidArgument, "theta needs one entry per node");
    if (!theta_->allFinite() || theta_->minCoeff() <= 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "theta entries must be positive");
    }
  }
}

void BlockModel::check_membership(const Membership& z) const {
  if (z.k() != k() || z.size() != n_ || z.sizes() != sizes_) {
    throw Error(ErrorCode::kInvalidArgument, "membership does not match community sizes");
  }
  if (!theta_) return;
  std::vector<double> sums(static_cast<std::size_t>(k()), 0.0);
  for (Index i = 0; i < n_; ++i) sums[static_cast<std::size_t>(z[i])] += (*theta_)[i];
  for (int c = 0; c < k(); ++c) {
    const double target = static_cast<double>(sizes_[static_cast<std::size_t>(c)]);
    if (std::abs(sums[static_cast<std::size_t>(c)] - target) > kThetaSumTolerance * std::max(1.0, target)) {
      std::ostringstream os;
      os << "theta in community " << c << " sums to " << sums[static_cast<std::size_t>(c)] << ", expected "
         << target;
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
}

namespace {

// Expected degrees d_i = sum_j P_ij, diagonal included.
Vector expected_degrees(const BlockModel& model, const Membership& z) {
  Vector mass = Vector::Zero(model.k());
  for (Index i = 0; i < model.n(); ++i) mass[z[i]] += model.theta_at(i);
  const Vector per_block = model.b() * mass;
  Vector d(model.n());
  for (Index i = 0; i < model.n(); ++i) d[i] = model.theta_at(i) * per_block[z[i]];
  return d;
}

bool block_structured(const BlockModel& model, Variant variant) {
  return !(variant == Variant::kTau && model.degree_corrected());
}

// The population Laplacian of every variant has entries
//   s_i s_j (theta_i theta_j B_{g_i g_j} + (tau/n) c_i c_j)
// with s_i = D_i^{-1/2}. For kTau c_i = 1, for kTauDoublePrime c_i = theta_i.
struct Scaling {
  Vector s;
  Vector c;
  double shift = 0.0;  // tau / n, or 0
};

Scaling population_scaling(const BlockModel& model, const Membership& z, double tau, Variant variant) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::kInvalidArgument, "tau must be >= 0");
  model.check_membership(z);
  const Index n = model.n();
  const Vector d = expected_degrees(model, z);
  Scaling out;
  out.c = Vector::Ones(n);
  Vector denom = d;
  switch (variant) {
    case Variant::kPlain:
      break;
    case Variant::kTau:
      out.shift = tau / static_cast<double>(n);
      denom.array() += tau;
      break;
    case Variant::kTauPrime:
      denom.array() += tau;
      break;
    case Variant::kTauDoublePrime:
      out.shift = tau / static_cast<double>(n);
      for (Index i = 0; i < n; ++i) {
        out.c[i] = model.theta_at(i);
        denom[i] += tau * model.theta_at(i);
      }
      break;
  }
  out.s.resize(n);
  for (Index i = 0; i < n; ++i) {
    if (!(denom[i] > 0.0)) {
      throw Error(ErrorCode::kSingularDegree, "population degree of node " + std::to_string(i) + " is zero");
    }
    out.s[i] = 1.0 / std::sqrt(denom[i]);
  }
  return out;
}

// L = A Z C Z^T A with a_i = theta_i s_i and C = B + shift. G_k = sum_{i in k} a_i^2.
struct Reduction {
  Vector a;
  Vector g;
  Matrix core;  // G^{1/2} C G^{1/2}
};

Reduction reduce(const BlockModel& model, const Membership& z, const Scaling& sc) {
  Reduction r;
  r.a.resize(model.n());
  r.g = Vector::Zero(model.k());
  for (Index i = 0; i < model.n(); ++i) {
    r.a[i] = model.theta_at(i) * sc.s[i];
    r.g[z[i]] += r.a[i] * r.a[i];
  }
  const Matrix c = model.b().array() + sc.shift;
  const Vector root = r.g.cwiseSqrt();
  r.core = root.asDiagonal() * c * root.asDiagonal();
  r.core = 0.5 * (r.core + r.core.transpose()).eval();
  return r;
}

}  // namespace

SymMatrix edge_prob_matrix(const BlockModel& model, const Membership& z) {
  model.check_membership(z);
  const Index n = model.n();
  Matrix p(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      p(i, j) = (model.theta_at(i) * model.theta_at(j)) * model.b()(z[i], z[j]);
    }
  }
  return SymMatrix(std::move(p));
}

PopulationSummary normalized_block_matrix(const BlockModel& model, const Membership& z, double tau) {
  model.check_membership(z);
  PopulationSummary out;
  const int k = model.k();
  const double n = static_cast<double>(model.n());
  out.pi.resize(k);
  for (int c = 0; c < k; ++c) out.pi[c] = static_cast<double>(model.sizes()[static_cast<std::size_t>(c)]) / n;
  out.w = model.b() * out.pi;
  for (int c = 0; c < k; ++c) {
    if (!(out.w[c] > 0.0)) {
      throw Error(ErrorCode::kDegenerateBlock, "W_" + std::to_string(c) + " is zero");
    }
  }
  const Vector inv_root = out.w.cwiseSqrt().cwiseInverse();
  out.b0 = inv_root.asDiagonal() * model.b() * inv_root.asDiagonal();
  out.b0 = 0.5 * (out.b0 + out.b0.transpose()).eval();
  const Vector pi_root = out.pi.cwiseSqrt();
  Matrix core = pi_root.asDiagonal() * out.b0 * pi_root.asDiagonal();
  core = 0.5 * (core + core.transpose()).eval();
  out.sigma = eigenvalues(SymMatrix(std::move(core)));
  out.d = expected_degrees(model, z);
  if (model.degree_corrected()) {
    Vector theta_tau(model.n());
    Vector nk_tau = Vector::Zero(k);
    for (Index i = 0; i < model.n(); ++i) {
      theta_tau[i] = model.theta_at(i) * out.d[i] / (out.d[i] + tau);
      nk_tau[z[i]] += theta_tau[i];
    }
    out.theta_tau = std::move(theta_tau);
    out.nk_tau = std::move(nk_tau);
  }
  return out;
}

SymMatrix population_laplacian(const BlockModel& model, const Membership& z, double tau, Variant variant) {
  const Scaling sc = population_scaling(model, z, tau, variant);
  const Index n = model.n();
  Matrix l(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double p = (model.theta_at(i) * model.theta_at(j)) * model.b()(z[i], z[j]);
      l(i, j) = (p + sc.shift * (sc.c[i] * sc.c[j])) * (sc.s[i] * sc.s[j]);
    }
  }
  return SymMatrix(std::move(l));
}

Vector population_spectrum(const BlockModel& model, const Membership& z, double tau, Variant variant) {
  if (!block_structured(model, variant)) {
    return eigenvalues(population_laplacian(model, z, tau, variant)).head(model.k());
  }
  const Reduction r = reduce(model, z, population_scaling(model, z, tau, variant));
  return eigenvalues(SymMatrix(r.core));
}

EigenDecomposition population_eigen(const BlockModel& model, const Membership& z, double tau,
                                    Variant variant) {
  if (!block_structured(model, variant)) {
    return eig_leading(population_laplacian(model, z, tau, variant), model.k());
  }
  const Reduction r = reduce(model, z, population_scaling(model, z, tau, variant));
  const EigenDecomposition small = eig_sym(SymMatrix(r.core));
  EigenDecomposition out;
  out.values = small.values;
  out.vectors.resize(model.n(), model.k());
  const Vector g_inv_root = r.g.cwiseSqrt().cwiseInverse();
  for (Index i = 0; i < model.n(); ++i) {
    const int c = z[i];
    out.vectors.row(i) = (r.a[i] * g_inv_root[c]) * small.vectors.row(c);
  }
  detail::canonicalize_signs(out.vectors);
  return out;
}

AssumptionReport assumption_report(const BlockModel& model, const Membership& z, double tau, Variant variant) {
  model.check_membership(z);
  AssumptionReport rep;
  const int k = model.k();
  const double n = static_cast<double>(model.n());
  const Vector d = expected_degrees(model, z);

  // Degrees here exclude the self pair, matching the closed forms for the
  // four-parameter model.
  rep.mu_n = std::numeric_limits<double>::infinity();
  Vector community_degree = Vector::Zero(k);
  for (Index i = 0; i < model.n(); ++i) {
    const double self = model.theta_at(i) * model.theta_at(i) * model.b()(z[i], z[i]);
    const double off = d[i] - self;
    rep.mu_n = std::min(rep.mu_n, off);
    community_degree[z[i]] += off;
  }
  rep.m_bar_min = std::numeric_limits<double>::infinity();
  rep.balance_min = std::numeric_limits<double>::infinity();
  rep.balance_max = 0.0;
  for (int c = 0; c < k; ++c) {
    const double nk = static_cast<double>(model.sizes()[static_cast<std::size_t>(c)]);
    rep.m_bar_min = std::min(rep.m_bar_min, community_degree[c] / nk);
    rep.balance_min = std::min(rep.balance_min, nk * k / n);
    rep.balance_max = std::max(rep.balance_max, nk * k / n);
  }

  const bool shifted = variant == Variant::kTau || variant == Variant::kTauDoublePrime;
  Matrix c = model.b().array() + (shifted ? tau / n : 0.0);
  Vector pi(k);
  for (int g = 0; g < k; ++g) pi[g] = static_cast<double>(model.sizes()[static_cast<std::size_t>(g)]) / n;
  const Vector w = c * pi;
  rep.rho_n = 1.0;
  if (w.minCoeff() > 0.0) {
    const Vector inv_root = w.cwiseSqrt().cwiseInverse();
    Matrix b0 = inv_root.asDiagonal() * c * inv_root.asDiagonal();
    b0 = 0.5 * (b0 + b0.transpose()).eval();
    rep.rho_n = std::max(1.0, b0.maxCoeff());
    const Vector ev = eigenvalues(SymMatrix(b0)).cwiseAbs();
    rep.full_rank = ev.minCoeff() > 1e-10 * ev.maxCoeff();
  }
  rep.verdicts.push_back(std::string("Assumption full-rank: ") + (rep.full_rank ? "pass" : "fail"));
  rep.verdicts.push_back(std::string("Assumption balance: ") + (rep.balance_min > 0.0 ? "pass" : "fail"));

  try {
    rep.sigma_k = std::abs(population_spectrum(model, z, tau, variant)[k - 1]);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularDegree) throw;
    rep.sigma_k = 0.0;
  }

  double theta_max = 1.0;
  double theta_min = 1.0;
  if (model.theta()) {
    theta_max = model.theta()->maxCoeff();
    theta_min = model.theta()->minCoeff();
  }
  const double mu_tau = rep.mu_n + (variant == Variant::kPlain ? 0.0 : tau);
  const double logn = std::log(n);
  const double lead = rep.rho_n * std::sqrt(logn) / (std::sqrt(mu_tau) * rep.sigma_k * rep.sigma_k);
  const double tail = std::sqrt(1.0 / k + std::log(5.0) / logn) * std::sqrt(rep.rho_n) *
                          std::pow(theta_max / theta_min, 0.25) +
                      rep.rho_n + 1.0;
  rep.eta_n = lead * tail;
  return rep;
}

}  // namespace specsbm
