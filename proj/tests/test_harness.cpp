#include <doctest.h>

#include <cmath>
#include <string>

#include "agsparse/harness.hpp"

using namespace agsparse;

namespace {

BenchConfig tiny_bench() {
  BenchConfig config;
  config.ns = {40};
  config.q = 60;
  config.taus = {0.1, 0.5};
  config.family = Family::Linear;
  config.penalty = PenaltyKind::Scad;
  config.reps = 3;
  config.seed = 99;
  config.max_iter = 300;
  config.n_boot = 200;
  return config;
}

RecoveryConfig tiny_recovery() {
  RecoveryConfig config;
  config.n = 50;
  config.q = 60;
  config.taus = {0.1};
  config.snrs = {1.0, 7.0};
  config.family = Family::Linear;
  config.penalty = PenaltyKind::Scad;
  config.grid_size = 8;
  config.reps = 2;
  config.seed = 5;
  config.max_iter = 300;
  return config;
}

}  // namespace

TEST_CASE("bench produces a full grid and is thread-count invariant") {
  BenchConfig config = tiny_bench();
  const BenchResult serial = run_benchmark(config);
  CHECK(serial.cells.size() == 2 * 3);  // taus x methods
  CHECK(serial.ista_runs == 2 * 3);
  CHECK(serial.ista_monotone_runs == serial.ista_runs);

  config.threads = 3;
  const BenchResult parallel = run_benchmark(config);
  const csv::Table a = bench_table(tiny_bench(), serial);
  const csv::Table b = bench_table(config, parallel);
  CHECK(csv::to_string(a) == csv::to_string(b));

  // per-cell medians are finite at this easy scale
  for (const auto& cell : serial.cells) {
    CHECK_FALSE(cell.ci.breakdown);
    CHECK(cell.ci.lo <= cell.ci.median);
    CHECK(cell.ci.median <= cell.ci.hi);
  }
}

TEST_CASE("bench with one replicate collapses the interval") {
  BenchConfig config = tiny_bench();
  config.taus = {0.1};
  config.reps = 1;
  const BenchResult r = run_benchmark(config);
  for (const auto& cell : r.cells) {
    CHECK(cell.ci.lo == cell.ci.median);
    CHECK(cell.ci.hi == cell.ci.median);
  }
}

TEST_CASE("bench table round-trips through csv") {
  const BenchConfig config = tiny_bench();
  const csv::Table t = bench_table(config, run_benchmark(config));
  CHECK(csv::parse_string(csv::to_string(t)) == t);
  REQUIRE(!t.rows.empty());
  CHECK(t.rows[0][0] == "linear");
  CHECK(t.rows[0][9] == "ag_proposed");
}

TEST_CASE("logistic bench runs on the sum scale without breakdowns") {
  BenchConfig config = tiny_bench();
  config.family = Family::Logistic;
  config.taus = {0.1};
  config.max_iter = 500;
  const BenchResult r = run_benchmark(config);
  for (const auto& cell : r.cells) {
    // targets are reachable: at least the best method crosses them
    if (cell.method == Method::AGProposed) {
      CHECK(cell.censored < cell.reps);
    }
  }
  CHECK(r.ista_monotone_runs == r.ista_runs);
}

TEST_CASE("recovery produces a full grid and is thread-count invariant") {
  RecoveryConfig config = tiny_recovery();
  const RecoveryResult serial = run_recovery(config);
  REQUIRE(serial.cells.size() == 2);
  for (const auto& cell : serial.cells) {
    CHECK(cell.reps == 2);
    CHECK(cell.scaled_error_mean >= 0.0);
    CHECK(cell.active_mean >= 0.0);
  }

  config.threads = 2;
  const RecoveryResult parallel = run_recovery(config);
  CHECK(csv::to_string(recovery_table(tiny_recovery(), serial)) ==
        csv::to_string(recovery_table(config, parallel)));
}

TEST_CASE("recovery cells improve with snr on an easy instance") {
  RecoveryConfig config = tiny_recovery();
  config.reps = 3;
  const RecoveryResult r = run_recovery(config);
  REQUIRE(r.cells.size() == 2);
  CHECK(r.cells[0].snr == 1.0);
  CHECK(r.cells[1].snr == 7.0);
  CHECK(r.cells[1].scaled_error_mean < r.cells[0].scaled_error_mean);
  // negative predictive value rises (or at worst holds) as noise shrinks
  REQUIRE(r.cells[0].npv_mean.has_value());
  REQUIRE(r.cells[1].npv_mean.has_value());
  CHECK(*r.cells[1].npv_mean >= *r.cells[0].npv_mean - 0.02);
  CHECK(r.cells[0].errors == 0);
}

TEST_CASE("recovery table round-trips through csv") {
  const RecoveryConfig config = tiny_recovery();
  const csv::Table t = recovery_table(config, run_recovery(config));
  CHECK(csv::parse_string(csv::to_string(t)) == t);
}

TEST_CASE("method names") {
  CHECK(std::string(method_name(Method::AGProposed)) == "ag_proposed");
  CHECK(std::string(method_name(Method::AGOriginal)) == "ag_original");
  CHECK(std::string(method_name(Method::Ista)) == "ista");
}
