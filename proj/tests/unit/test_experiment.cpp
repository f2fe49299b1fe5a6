#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "specsbm/error.hpp"
#include "specsbm/experiment.hpp"

using namespace specsbm;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.dgp = 1;
  c.n_per_k = 30;
  c.reps = 4;
  c.seed = 11;
  c.methods = {Method::kPlain, Method::kTau, Method::kTauPrime, Method::kAdaptive};
  c.tau = parse_tau("jy");
  c.kmeans.restarts = 5;
  return c;
}

std::string to_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  write_records(os, records);
  return os.str();
}

}  // namespace

TEST(ParseTau, Modes) {
  EXPECT_EQ(parse_tau("grid").mode, TauMode::kGrid);
  EXPECT_EQ(parse_tau("jy").mode, TauMode::kJy);
  EXPECT_EQ(parse_tau("dbar").mode, TauMode::kDbar);
  EXPECT_EQ(parse_tau("dbar4").mode, TauMode::kDbar4);
  const auto fixed = parse_tau("2.5");
  EXPECT_EQ(fixed.mode, TauMode::kFixed);
  EXPECT_EQ(fixed.value, 2.5);
  EXPECT_EQ(tau_label(fixed), "2.5");
  EXPECT_THROW(parse_tau("-1"), Error);
  EXPECT_THROW(parse_tau("abc"), Error);
  EXPECT_EQ(parse_method("adaptive"), Method::kAdaptive);
  EXPECT_THROW(parse_method("bogus"), Error);
}

TEST(Validate, RejectsBadConfigs) {
  auto c = small_config();
  c.reps = 0;
  EXPECT_THROW(validate(c), Error);
  c = small_config();
  c.dgp = 7;
  EXPECT_THROW(validate(c), Error);
  c = small_config();
  c.methods.clear();
  EXPECT_THROW(validate(c), Error);
  EXPECT_NO_THROW(validate(small_config()));
}

TEST(Experiment, ReplicationIsReproducible) {
  const auto c = small_config();
  const auto a = run_replication(c, 2);
  const auto b = run_replication(c, 2);
  EXPECT_EQ(to_csv(a), to_csv(b));
  ASSERT_EQ(a.size(), c.methods.size());
  const auto other = run_replication(c, 3);
  EXPECT_NE(to_csv(a), to_csv(other));
}

TEST(Experiment, RecordsAreWellFormed) {
  auto c = small_config();
  c.n_per_k = 200;
  c.reps = 1;
  c.methods = {Method::kTau};
  const auto recs = run_experiment(c);
  ASSERT_EQ(recs.size(), 1u);
  const auto& r = recs[0];
  EXPECT_EQ(r.dgp, 1);
  EXPECT_EQ(r.n, 400);
  EXPECT_EQ(r.k, 2);
  EXPECT_EQ(r.variant, "tau");
  EXPECT_EQ(r.algo, "modified");
  EXPECT_GT(r.tau, 0.0);
  ASSERT_TRUE(r.ccp && r.nmi);
  EXPECT_GE(*r.ccp, 0.0);
  EXPECT_LE(*r.ccp, 1.0);
  EXPECT_GE(*r.nmi, 0.0);
  EXPECT_LE(*r.nmi, 1.0);
  EXPECT_EQ(r.excluded, Exclusion::kNone);
  EXPECT_EQ(r.runtime_ms, 0.0);
}

TEST(Experiment, ThreadCountDoesNotChangeOutput) {
  auto c = small_config();
  c.threads = 1;
  const std::string one = to_csv(run_experiment(c));
  c.threads = 3;
  const std::string three = to_csv(run_experiment(c));
  EXPECT_EQ(one, three);
  EXPECT_EQ(one.substr(0, one.find('\n')), "rep,dgp,n,K,variant,algo,tau,ccp,nmi,excluded,runtime_ms");
}

TEST(Experiment, PlainExclusionsCarryNoMetrics) {
  auto c = small_config();
  c.n_per_k = 50;
  c.reps = 30;
  c.methods = {Method::kPlain};
  int excluded = 0;
  for (const auto& r : run_experiment(c)) {
    if (r.excluded == Exclusion::kZeroDegree) {
      ++excluded;
      EXPECT_FALSE(r.ccp.has_value());
      EXPECT_FALSE(r.nmi.has_value());
    } else {
      EXPECT_EQ(r.excluded, Exclusion::kNone);
      EXPECT_TRUE(r.ccp.has_value());
    }
  }
  EXPECT_GT(excluded, 0);
  EXPECT_LT(excluded, 30);
}

TEST(Experiment, GridModeEmitsOneRecordPerGridPoint) {
  auto c = small_config();
  c.reps = 2;
  c.methods = {Method::kTau};
  c.tau = parse_tau("grid");
  const auto recs = run_experiment(c);
  ASSERT_EQ(recs.size(), 40u);
  const auto rows = summarize(recs, c.tau);
  ASSERT_EQ(rows.size(), 20u);
  for (std::size_t j = 1; j < rows.size(); ++j) EXPECT_LT(rows[j - 1].tau, rows[j].tau);
  for (const auto& row : rows) EXPECT_EQ(row.total, 2);
}

TEST(Summary, SingleReplicationEqualsRecord) {
  auto c = small_config();
  c.reps = 1;
  c.methods = {Method::kTauPrime};
  const auto recs = run_experiment(c);
  const auto rows = summarize(recs, c.tau);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].ccp, *recs[0].ccp);
  EXPECT_EQ(rows[0].nmi, *recs[0].nmi);
  EXPECT_EQ(rows[0].tau, recs[0].tau);
  EXPECT_EQ(rows[0].ratio, 1.0);
}

TEST(Records, RoundTripPreservesSummary) {
  const auto c = small_config();
  const auto recs = run_experiment(c);
  std::istringstream in(to_csv(recs));
  const auto back = read_records(in);
  EXPECT_EQ(to_csv(back), to_csv(recs));
  const auto x = summarize(recs, c.tau);
  const auto y = summarize(back, c.tau);
  ASSERT_EQ(x.size(), y.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    EXPECT_NEAR(x[i].ccp, y[i].ccp, 1e-12);
    EXPECT_NEAR(x[i].nmi, y[i].nmi, 1e-12);
    EXPECT_EQ(x[i].included, y[i].included);
  }
  std::istringstream bad("rep,dgp\n1,2\n");
  EXPECT_THROW(read_records(bad), Error);
}

TEST(Table, CellsAndMissingCell) {
  ExperimentRecord r;
  r.dgp = 1;
  r.n = 100;
  r.k = 2;
  r.variant = "tau";
  r.algo = "modified";
  r.tau = 3.0;
  r.ccp = 1.0;
  r.nmi = 1.0;
  std::vector<ExperimentRecord> recs(3, r);
  const auto cells = summarize_table({{"jy", recs}}, {{1, 50, "jy"}});
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].ccp, 1.0);
  EXPECT_EQ(cells[0].n_per_k, 50);
  EXPECT_EQ(cells[0].reps, 3);
  try {
    summarize_table({{"jy", recs}}, {{3, 200, "jy"}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingCell);
  }
}

TEST(CustomModel, ParsesAndRuns) {
  std::istringstream in("# two blocks\nK=2\nsizes=20,20\nB=0.5,0.05;0.05,0.5\n");
  auto c = small_config();
  c.dgp = 0;
  c.custom_model = read_custom_model(in);
  c.reps = 2;
  c.methods = {Method::kTau};
  const auto recs = run_experiment(c);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].n, 40);
  std::istringstream missing("K=2\nsizes=1,2\n");
  EXPECT_THROW(read_custom_model(missing), Error);
}
