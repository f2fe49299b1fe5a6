// specsbm command line: generate graphs, cluster them, tune the regularizer
// and run Monte-Carlo experiments.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "config.hpp"
#include "specsbm/error.hpp"
#include "specsbm/experiment.hpp"
#include "specsbm/laplacian.hpp"
#include "specsbm/metrics.hpp"
#include "specsbm/tau_select.hpp"

using namespace specsbm;

namespace {

// Writes to a file when a path is given, to stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw Error(ErrorCode::kIo, "cannot write " + path);
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return in;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Labels on disk are 1-based, one per line.
void write_labels(std::ostream& out, const std::vector<int>& labels) {
  for (const int g : labels) out << g + 1 << '\n';
}

std::vector<int> read_labels(const std::string& path) {
  auto in = open_input(path);
  std::vector<int> labels;
  int g = 0;
  while (in >> g) {
    if (g < 1) throw Error(ErrorCode::kParse, "labels are 1-based");
    labels.push_back(g - 1);
  }
  if (!in.eof()) throw Error(ErrorCode::kParse, "cannot read labels from " + path);
  return labels;
}

struct Common {
  int dgp = 1;
  std::string model;
  Index n_per_k = 50;
  std::uint64_t seed = 1;
  std::string algo = "modified";
  std::string tau = "jy";
  int restarts = KMeansConfig{}.restarts;
  std::string out;
};

void add_model_options(CLI::App& app, Common& c) {
  app.add_option("--dgp", c.dgp, "Data generating process")->check(CLI::Range(1, 4));
  app.add_option("--model", c.model, "Custom block model file (K, sizes, B, optional theta)");
  app.add_option("--n-per-k", c.n_per_k, "Nodes per community")->check(CLI::PositiveNumber);
}

void add_cluster_options(CLI::App& app, Common& c) {
  app.add_option("--algo", c.algo, "kmeans, modified or medoid")
      ->check(CLI::IsMember({"kmeans", "modified", "medoid"}));
  app.add_option("--restarts", c.restarts, "Clustering restarts")->check(CLI::PositiveNumber);
}

KMeansConfig kmeans_config(const Common& c) {
  KMeansConfig cfg;
  cfg.restarts = c.restarts;
  cfg.mode = c.algo == "medoid" ? CentroidMode::kMedoid : CentroidMode::kMean;
  return cfg;
}

PlantedModel planted_model(const Common& c, RngSeed seed) {
  if (!c.model.empty()) {
    auto in = open_input(c.model);
    return read_custom_model(in);
  }
  return dgp_preset(c.dgp, c.n_per_k, seed.derive("theta"));
}

int run_generate(const Common& c, std::uint64_t rep, const std::string& labels_path) {
  ExperimentConfig cfg;
  cfg.dgp = c.model.empty() ? c.dgp : 0;
  if (!c.model.empty()) cfg.custom_model = planted_model(c, {});
  cfg.n_per_k = c.n_per_k;
  cfg.seed = c.seed;
  const Replicate r = make_replicate(cfg, static_cast<int>(rep));
  Output out(c.out);
  write_edge_list(out.stream(), r.adjacency);
  if (!labels_path.empty()) {
    Output labels(labels_path);
    write_labels(labels.stream(), r.planted.membership.labels());
  }
  return 0;
}

double resolve_fixed_tau(const TauSpec& spec, const AdjacencyMatrix& a) {
  switch (spec.mode) {
    case TauMode::kDbar: return degrees(a).mean;
    case TauMode::kDbar4: return degrees(a).mean / 4.0;
    case TauMode::kFixed: return spec.value;
    default: throw Error(ErrorCode::kInvalidArgument, "this tau mode needs a grid search");
  }
}

struct ClusterOutcome {
  std::vector<int> labels;
  double tau = 0.0;
};

// Same seeding as one harness replication's "cluster" stream.
ClusterOutcome cluster_graph(const AdjacencyMatrix& a, int k, const std::string& variant, const Common& c) {
  const RngSeed seed = RngSeed{c.seed, 0}.derive("cluster");
  const ClusterAlgo algo = parse_algo(c.algo);
  const KMeansConfig cfg = kmeans_config(c);
  const TauSpec spec = parse_tau(c.tau);
  if (spec.mode == TauMode::kGrid) throw Error(ErrorCode::kInvalidArgument, "use tune-tau for a grid scan");
  const Method method = parse_method(variant);
  if (method == Method::kAdaptive) {
    const AdaptiveResult r = adaptive_cluster(a, k, algo, cfg, seed);
    return {r.clustering.labels, r.stage2.tau_star};
  }
  if (method == Method::kPlain) return {spectral_cluster(a, k, Variant::kPlain, 0.0, algo, cfg, seed).labels, 0.0};

  Variant v = parse_variant(variant);
  std::optional<Vector> theta_hat;
  RngSeed stage_seed = seed;
  if (v == Variant::kTauDoublePrime) {
    const TauSelection stage1 = select_tau(a, k, Variant::kTauPrime, algo, cfg, seed.derive("stage1"));
    theta_hat = estimate_theta(a, stage1.clustering.labels, k);
    stage_seed = seed.derive("stage2");
  }
  if (spec.mode == TauMode::kJy) {
    const TauSelection sel = select_tau(a, k, v, algo, cfg, stage_seed, theta_hat);
    return {sel.clustering.labels, sel.tau_star};
  }
  const double tau = resolve_fixed_tau(spec, a);
  return {spectral_cluster(a, k, v, tau, algo, cfg, seed, theta_hat).labels, tau};
}

int run_cluster(const Common& c, const std::string& in_path, int k, const std::string& variant,
                const std::string& truth_path) {
  auto in = open_input(in_path);
  const AdjacencyMatrix a = read_edge_list(in);
  const ClusterOutcome r = cluster_graph(a, k, variant, c);
  Output out(c.out);
  write_labels(out.stream(), r.labels);
  std::cerr << "tau=" << format_double(r.tau);
  if (!truth_path.empty()) {
    const std::vector<int> truth = read_labels(truth_path);
    std::cerr << " ccp=" << format_double(ccp(r.labels, truth, k)) << " nmi=" << format_double(nmi(r.labels, truth));
  }
  std::cerr << '\n';
  return 0;
}

int run_tune(const Common& c, const std::string& in_path, int k, const std::string& variant) {
  auto in = open_input(in_path);
  const AdjacencyMatrix a = read_edge_list(in);
  const Variant v = parse_variant(variant);
  if (v == Variant::kPlain) throw Error(ErrorCode::kInvalidArgument, "the plain Laplacian has no tau");
  const RngSeed seed = RngSeed{c.seed, 0}.derive("cluster");
  const ClusterAlgo algo = parse_algo(c.algo);
  const KMeansConfig cfg = kmeans_config(c);
  std::optional<Vector> theta_hat;
  RngSeed stage_seed = seed;
  if (v == Variant::kTauDoublePrime) {
    const TauSelection stage1 = select_tau(a, k, Variant::kTauPrime, algo, cfg, seed.derive("stage1"));
    theta_hat = estimate_theta(a, stage1.clustering.labels, k);
    stage_seed = seed.derive("stage2");
  }
  const TauSelection sel = select_tau(a, k, v, algo, cfg, stage_seed, theta_hat);
  Output out(c.out);
  out.stream() << "tau,q\n";
  for (std::size_t j = 0; j < sel.taus.size(); ++j) {
    out.stream() << format_double(sel.taus[j]) << ',' << (std::isfinite(sel.qs[j]) ? format_double(sel.qs[j]) : "inf")
                 << '\n';
  }
  std::cerr << "tau_star=" << format_double(sel.tau_star) << '\n';
  return 0;
}

int run_experiment_cmd(const Common& c, int reps, const std::string& variants, int threads, bool timing,
                       const std::string& summary_path) {
  ExperimentConfig cfg;
  cfg.dgp = c.model.empty() ? c.dgp : 0;
  if (!c.model.empty()) cfg.custom_model = planted_model(c, {});
  cfg.n_per_k = c.n_per_k;
  cfg.reps = reps;
  cfg.seed = c.seed;
  cfg.methods.clear();
  for (const auto& v : split_list(variants)) cfg.methods.push_back(parse_method(v));
  cfg.algo = parse_algo(c.algo);
  cfg.tau = parse_tau(c.tau);
  cfg.kmeans = kmeans_config(c);
  cfg.threads = threads;
  cfg.timing = timing;
  const auto records = run_experiment(cfg);
  Output out(c.out);
  write_records(out.stream(), records);
  for (const auto& r : records) {
    if (r.excluded == Exclusion::kPipelineError) std::cerr << "rep " << r.rep << " " << r.variant << ": " << r.error << '\n';
  }
  if (!summary_path.empty()) {
    Output summary(summary_path);
    write_summary(summary.stream(), summarize(records, cfg.tau));
  }
  return 0;
}

CellKey parse_cell(const std::string& text) {
  // dgp:n_per_k:tau_label
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw Error(ErrorCode::kParse, "--require expects dgp:n_per_k:tau_label, got " + text);
  }
  return {std::stoi(text.substr(0, first)), static_cast<Index>(std::stoll(text.substr(first + 1, second - first - 1))),
          text.substr(second + 1)};
}

int run_table(const Common& c, const std::vector<std::string>& inputs, const std::vector<std::string>& required) {
  std::vector<TableInput> tables;
  for (const auto& item : inputs) {
    // [label=]path; the label defaults to --tau.
    const auto eq = item.find('=');
    TableInput t;
    t.tau_label = eq == std::string::npos ? tau_label(parse_tau(c.tau)) : item.substr(0, eq);
    auto in = open_input(eq == std::string::npos ? item : item.substr(eq + 1));
    t.records = read_records(in);
    tables.push_back(std::move(t));
  }
  std::vector<CellKey> cells;
  for (const auto& r : required) cells.push_back(parse_cell(r));
  Output out(c.out);
  write_table(out.stream(), summarize_table(tables, cells));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral clustering for stochastic block models"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value file; command-line flags take precedence");

  Common c;
  std::uint64_t rep = 0;
  std::string labels_path;
  std::string in_path;
  std::string truth_path;
  int k = 0;
  std::string variant = "tau";
  int reps = 1;
  int threads = 1;
  bool timing = false;
  std::string summary_path;
  std::vector<std::string> table_inputs;
  std::vector<std::string> required;

  auto with_common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", config_path, "Flat key=value file; command-line flags take precedence");
    sub->add_option("--seed", c.seed, "Master seed");
    sub->add_option("--out", c.out, "Output path (stdout when omitted)");
    return sub;
  };

  auto* gen = with_common(app.add_subcommand("generate", "Sample one graph and write its edge list"));
  add_model_options(*gen, c);
  gen->add_option("--rep", rep, "Replication index (random stream)");
  gen->add_option("--labels", labels_path, "Also write the true labels here");

  auto* clu = with_common(app.add_subcommand("cluster", "Cluster one edge list"));
  clu->add_option("--in", in_path, "Edge list")->required();
  clu->add_option("--k", k, "Number of communities")->required()->check(CLI::PositiveNumber);
  clu->add_option("--variant", variant, "plain, tau, tau-prime, tau-dprime or adaptive");
  clu->add_option("--tau", c.tau, "jy, dbar, dbar4 or a number");
  clu->add_option("--truth", truth_path, "True labels, to report CCP and NMI");
  add_cluster_options(*clu, c);

  auto* tune = with_common(app.add_subcommand("tune-tau", "Write the (tau, Q) trace over the grid"));
  tune->add_option("--in", in_path, "Edge list")->required();
  tune->add_option("--k", k, "Number of communities")->required()->check(CLI::PositiveNumber);
  tune->add_option("--variant", variant, "tau, tau-prime or tau-dprime");
  add_cluster_options(*tune, c);

  auto* exp = with_common(app.add_subcommand("experiment", "Monte-Carlo replications to CSV"));
  add_model_options(*exp, c);
  exp->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  exp->add_option("--variant", variant, "Comma-separated list of plain, tau, tau-prime, tau-dprime, adaptive");
  exp->add_option("--tau", c.tau, "grid, jy, dbar, dbar4 or a number");
  exp->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  exp->add_flag("--timing", timing, "Fill runtime_ms (output is then not reproducible)");
  exp->add_option("--summary", summary_path, "Write per-variant means here");
  add_cluster_options(*exp, c);

  auto* tab = with_common(app.add_subcommand("table", "Aggregate record files into table cells"));
  tab->add_option("--in", table_inputs, "Record CSV as [tau_label=]path; repeatable")
      ->required()
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  tab->add_option("--tau", c.tau, "Label for inputs given without one");
  tab->add_option("--require", required, "Cell dgp:n_per_k:tau_label that must be present; repeatable")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  try {
    auto accepts = [&](const std::string& sub, const std::string& key) {
      CLI::App* target = nullptr;
      for (CLI::App* candidate : app.get_subcommands({})) {
        if (candidate->get_name() == sub) target = candidate;
      }
      return target == nullptr || target->get_option_no_throw("--" + key) != nullptr;
    };
    std::vector<std::string> args = cli::expand_config(argc, argv, accepts);
    std::reverse(args.begin(), args.end());
    args.pop_back();
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*gen) return run_generate(c, rep, labels_path);
    if (*clu) return run_cluster(c, in_path, k, variant, truth_path);
    if (*tune) return run_tune(c, in_path, k, variant);
    if (*exp) return run_experiment_cmd(c, reps, variant, threads, timing, summary_path);
    if (*tab) return run_table(c, table_inputs, required);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
