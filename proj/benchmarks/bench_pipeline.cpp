#include <benchmark/benchmark.h>

#include "specsbm/experiment.hpp"
#include "specsbm/laplacian.hpp"
#include "specsbm/spectral.hpp"
#include "specsbm/tau_select.hpp"

namespace {

using namespace specsbm;

// One DGP 1 graph with n/K communities of the given size.
AdjacencyMatrix dgp1_graph(Index n_per_k) {
  ExperimentConfig cfg;
  cfg.dgp = 1;
  cfg.n_per_k = n_per_k;
  cfg.seed = 11;
  return make_replicate(cfg, 0).adjacency;
}

void BM_EigLeading(benchmark::State& state) {
  const AdjacencyMatrix a = dgp1_graph(state.range(0));
  const SymMatrix l = build_laplacian(a, Variant::kTau, degrees(a).mean);
  for (auto _ : state) benchmark::DoNotOptimize(eig_leading(l, 2));
  state.SetComplexityN(l.size());
}
BENCHMARK(BM_EigLeading)->Arg(50)->Arg(100)->Arg(200)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Eigenvalues(benchmark::State& state) {
  const AdjacencyMatrix a = dgp1_graph(state.range(0));
  const SymMatrix l = build_laplacian(a, Variant::kTau, degrees(a).mean);
  for (auto _ : state) benchmark::DoNotOptimize(eigenvalues(l));
}
BENCHMARK(BM_Eigenvalues)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_KMediansModified(benchmark::State& state) {
  const AdjacencyMatrix a = dgp1_graph(state.range(0));
  const SymMatrix l = build_laplacian(a, Variant::kTau, degrees(a).mean);
  const Embedding emb = spectral_embedding(l, 2, Variant::kTau);
  const KMeansConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(kmedians_modified(emb.points, 2, cfg, RngSeed{5, 0}));
}
BENCHMARK(BM_KMediansModified)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_QCriterion(benchmark::State& state) {
  const AdjacencyMatrix a = dgp1_graph(state.range(0));
  const double tau = degrees(a).mean;
  const KMeansConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q_criterion(a, 2, tau, Variant::kTau, ClusterAlgo::kModified, cfg, RngSeed{5, 0}));
  }
}
BENCHMARK(BM_QCriterion)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_Replication(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.dgp = 1;
  cfg.n_per_k = state.range(0);
  cfg.methods = {Method::kTau};
  cfg.tau = {TauMode::kJy, 0.0};
  for (auto _ : state) benchmark::DoNotOptimize(run_replication(cfg, 0));
}
BENCHMARK(BM_Replication)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
