#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specsbm/graph.hpp"
#include "specsbm/spectral.hpp"

namespace specsbm {

// The pipelines the harness can run. kAdaptive is the two-stage
// degree-corrected procedure and ignores the tau mode.
enum class Method { kPlain, kTau, kTauPrime, kTauDoublePrime, kAdaptive };

std::string_view to_string(Method m) noexcept;
Method parse_method(std::string_view text);

enum class TauMode { kGrid, kJy, kDbar, kDbar4, kFixed };

struct TauSpec {
  TauMode mode = TauMode::kJy;
  double value = 0.0;  // used by kFixed
};

std::string tau_label(const TauSpec& spec);
// "grid", "jy", "dbar", "dbar4" or a nonnegative number.
TauSpec parse_tau(std::string_view text);

// Block model read from "key=value" lines: K, sizes (comma separated),
// B (rows separated by ';', entries by ','), optional theta (n entries).
PlantedModel read_custom_model(std::istream& in);

struct ExperimentConfig {
  int dgp = 1;  // 1-4, or 0 with custom_model
  std::optional<PlantedModel> custom_model;
  Index n_per_k = 50;
  int reps = 1;
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::kTau};
  ClusterAlgo algo = ClusterAlgo::kModified;
  TauSpec tau;
  KMeansConfig kmeans;
  int threads = 1;
  bool timing = false;  // runtime_ms stays 0 unless set, keeping output reproducible
};

// Reasons a record carries no metrics.
enum class Exclusion { kNone = 0, kZeroDegree = 1, kPipelineError = 2 };

struct ExperimentRecord {
  int rep = 0;
  int dgp = 0;
  Index n = 0;
  int k = 0;
  std::string variant;
  std::string algo;
  double tau = 0.0;
  std::optional<double> ccp;
  std::optional<double> nmi;
  Exclusion excluded = Exclusion::kNone;
  double runtime_ms = 0.0;
  std::string error;  // not written to CSV
};

// The graph and truth used by replication `rep`.
struct Replicate {
  PlantedModel planted;
  AdjacencyMatrix adjacency;
  double expected_mean_degree = 0.0;
};

void validate(const ExperimentConfig& config);
Replicate make_replicate(const ExperimentConfig& config, int rep);

// One record per method, or one per grid tau in grid mode. Pipeline failures
// become flagged records rather than exceptions.
std::vector<ExperimentRecord> run_replication(const ExperimentConfig& config, int rep);

// All replications on config.threads workers, records in replication order.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config);

inline constexpr const char* kCsvHeader = "rep,dgp,n,K,variant,algo,tau,ccp,nmi,excluded,runtime_ms";

// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records(std::istream& in);

// Means over included records for each (variant, algo, tau group). In grid
// mode the tau group is the grid value; otherwise all taus of a variant pool
// together and `tau` is their mean.
struct SummaryRow {
  std::string variant;
  std::string algo;
  std::string tau_label;
  double tau = 0.0;
  double ccp = 0.0;
  double nmi = 0.0;
  double ratio = 0.0;  // share of replications not excluded for a zero degree
  Index included = 0;
  Index total = 0;
};

std::vector<SummaryRow> summarize(const std::vector<ExperimentRecord>& records, const TauSpec& tau);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);

struct TableCell {
  int dgp = 0;
  int k = 0;
  Index n_per_k = 0;
  std::string tau_label;
  std::string variant;
  double ccp = 0.0;
  double nmi = 0.0;
  Index reps = 0;
};

struct TableInput {
  std::string tau_label;
  std::vector<ExperimentRecord> records;
};

struct CellKey {
  int dgp = 0;
  Index n_per_k = 0;
  std::string tau_label;
};

// Mean CCP and NMI per (dgp, n/K, tau label, variant). MissingCell when a
// requested cell has no included records.
std::vector<TableCell> summarize_table(const std::vector<TableInput>& inputs,
                                       const std::vector<CellKey>& required = {});
void write_table(std::ostream& out, const std::vector<TableCell>& cells);

}  // namespace specsbm
