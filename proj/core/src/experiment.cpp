#include "specsbm/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "specsbm/error.hpp"
#include "specsbm/laplacian.hpp"
#include "specsbm/metrics.hpp"
#include "specsbm/tau_select.hpp"

namespace specsbm {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::kPlain: return "plain";
    case Method::kTau: return "tau";
    case Method::kTauPrime: return "tau-prime";
    case Method::kTauDoublePrime: return "tau-dprime";
    case Method::kAdaptive: return "adaptive";
  }
  return "unknown";
}

Method parse_method(std::string_view text) {
  if (text == "adaptive") return Method::kAdaptive;
  switch (parse_variant(text)) {
    case Variant::kPlain: return Method::kPlain;
    case Variant::kTau: return Method::kTau;
    case Variant::kTauPrime: return Method::kTauPrime;
    case Variant::kTauDoublePrime: return Method::kTauDoublePrime;
  }
  throw Error(ErrorCode::kParse, "unknown variant");
}

void validate(const ExperimentConfig& config) {
  if (config.reps < 1) throw Error(ErrorCode::kInvalidArgument, "reps must be at least 1");
  if (config.threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be at least 1");
  if (config.methods.empty()) throw Error(ErrorCode::kInvalidArgument, "no variant selected");
  if (config.custom_model) {
    if (config.dgp != 0) throw Error(ErrorCode::kInvalidArgument, "a custom model uses dgp 0");
  } else {
    if (config.dgp < 1 || config.dgp > 4) throw Error(ErrorCode::kInvalidArgument, "dgp must be 1, 2, 3 or 4");
    if (config.n_per_k < 2) throw Error(ErrorCode::kInvalidArgument, "n-per-k must be at least 2");
  }
  if (config.tau.mode == TauMode::kFixed && !(config.tau.value >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fixed tau must be >= 0");
  }
  if (config.kmeans.restarts < 1 || config.kmeans.max_iter < 1) {
    throw Error(ErrorCode::kInvalidArgument, "restarts and max_iter must be positive");
  }
}

Replicate make_replicate(const ExperimentConfig& config, int rep) {
  const RngSeed seed{config.seed, static_cast<std::uint64_t>(rep)};
  PlantedModel planted = config.custom_model
                             ? *config.custom_model
                             : dgp_preset(config.dgp, config.n_per_k, seed.derive("theta"));
  const SymMatrix p = clip_probabilities(edge_prob_matrix(planted.model, planted.membership));
  const Index n = p.size();
  const double off_diagonal = p.matrix().sum() - p.matrix().diagonal().sum();
  AdjacencyMatrix a = sample_adjacency(p, seed.derive("graph"));
  return {std::move(planted), std::move(a), n > 0 ? off_diagonal / static_cast<double>(n) : 0.0};
}

namespace {

using Clock = std::chrono::steady_clock;

struct Context {
  const ExperimentConfig& config;
  const Replicate& rep;
  RngSeed cluster_seed;
  std::vector<ExperimentRecord>& out;
  ExperimentRecord base;
};

void finish(Context& ctx, double tau, const std::vector<int>& labels, Clock::time_point start) {
  ExperimentRecord rec = ctx.base;
  rec.tau = tau;
  const auto& truth = ctx.rep.planted.membership.labels();
  rec.ccp = ccp(labels, truth, rec.k);
  rec.nmi = nmi(labels, truth);
  if (ctx.config.timing) {
    rec.runtime_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  ctx.out.push_back(std::move(rec));
}

std::vector<double> fixed_taus(const Context& ctx) {
  switch (ctx.config.tau.mode) {
    case TauMode::kGrid: return tau_grid(ctx.rep.expected_mean_degree).values;
    case TauMode::kDbar: return {degrees(ctx.rep.adjacency).mean};
    case TauMode::kDbar4: return {degrees(ctx.rep.adjacency).mean / 4.0};
    case TauMode::kFixed: return {ctx.config.tau.value};
    case TauMode::kJy: break;
  }
  return {};
}

void run_variant(Context& ctx, Variant variant, const std::optional<Vector>& theta_hat, RngSeed select_seed,
                 Clock::time_point start) {
  const AdjacencyMatrix& a = ctx.rep.adjacency;
  const int k = ctx.base.k;
  const ExperimentConfig& cfg = ctx.config;
  if (cfg.tau.mode == TauMode::kJy) {
    const TauSelection sel = select_tau(a, k, variant, cfg.algo, cfg.kmeans, select_seed, theta_hat);
    finish(ctx, sel.tau_star, sel.clustering.labels, start);
    return;
  }
  for (const double tau : fixed_taus(ctx)) {
    const auto t0 = cfg.tau.mode == TauMode::kGrid ? Clock::now() : start;
    const ClusteringResult res = spectral_cluster(a, k, variant, tau, cfg.algo, cfg.kmeans, ctx.cluster_seed, theta_hat);
    finish(ctx, tau, res.labels, t0);
  }
}

void run_method(Context& ctx, Method method) {
  const auto start = Clock::now();
  const AdjacencyMatrix& a = ctx.rep.adjacency;
  const int k = ctx.base.k;
  const ExperimentConfig& cfg = ctx.config;
  switch (method) {
    case Method::kPlain: {
      if (degrees(a).min <= 0.0) {
        ExperimentRecord rec = ctx.base;
        rec.excluded = Exclusion::kZeroDegree;
        ctx.out.push_back(std::move(rec));
        return;
      }
      const ClusteringResult res = spectral_cluster(a, k, Variant::kPlain, 0.0, cfg.algo, cfg.kmeans, ctx.cluster_seed);
      finish(ctx, 0.0, res.labels, start);
      return;
    }
    case Method::kTau:
      run_variant(ctx, Variant::kTau, std::nullopt, ctx.cluster_seed, start);
      return;
    case Method::kTauPrime:
      run_variant(ctx, Variant::kTauPrime, std::nullopt, ctx.cluster_seed, start);
      return;
    case Method::kTauDoublePrime: {
      // Theta comes from the tau-prime clustering at its selected tau, as in
      // the first stage of the adaptive procedure.
      const TauSelection stage1 =
          select_tau(a, k, Variant::kTauPrime, cfg.algo, cfg.kmeans, ctx.cluster_seed.derive("stage1"));
      const Vector theta_hat = estimate_theta(a, stage1.clustering.labels, k);
      run_variant(ctx, Variant::kTauDoublePrime, theta_hat, ctx.cluster_seed.derive("stage2"), start);
      return;
    }
    case Method::kAdaptive: {
      const AdaptiveResult res = adaptive_cluster(a, k, cfg.algo, cfg.kmeans, ctx.cluster_seed);
      finish(ctx, res.stage2.tau_star, res.clustering.labels, start);
      return;
    }
  }
}

}  // namespace

std::vector<ExperimentRecord> run_replication(const ExperimentConfig& config, int rep) {
  const Replicate replicate = make_replicate(config, rep);
  const RngSeed seed{config.seed, static_cast<std::uint64_t>(rep)};
  std::vector<ExperimentRecord> out;
  for (const Method method : config.methods) {
    ExperimentRecord base;
    base.rep = rep;
    base.dgp = config.custom_model ? 0 : config.dgp;
    base.n = replicate.adjacency.size();
    base.k = replicate.planted.model.k();
    base.variant = std::string(to_string(method));
    base.algo = std::string(to_string(config.algo));
    Context ctx{config, replicate, seed.derive("cluster"), out, base};
    const std::size_t before = out.size();
    try {
      run_method(ctx, method);
    } catch (const std::exception& e) {
      out.resize(before);
      ExperimentRecord rec = base;
      rec.excluded = Exclusion::kPipelineError;
      rec.error = e.what();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  validate(config);
  std::vector<std::vector<ExperimentRecord>> slots(static_cast<std::size_t>(config.reps));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int rep = next++; rep < config.reps; rep = next++) {
      try {
        slots[static_cast<std::size_t>(rep)] = run_replication(config, rep);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::min(config.threads, config.reps);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<ExperimentRecord> records;
  for (auto& slot : slots) {
    for (auto& rec : slot) records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace specsbm
