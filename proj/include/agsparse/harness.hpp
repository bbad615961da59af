#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agsparse/csv.hpp"
#include "agsparse/metrics.hpp"
#include "agsparse/model.hpp"
#include "agsparse/penalty.hpp"
#include "agsparse/simulate.hpp"

namespace agsparse {

enum class Method { AGProposed, AGOriginal, Ista };

const char* method_name(Method m);

// Convergence-rate experiment: per (n, tau) cell and replicate, simulate a
// block-signal dataset, fit the three methods cold-started from the null
// model on identical data, and count the iterations needed to bring the
// objective within target_offset of the best value any method reached.
//
// The linear objective is the mean-scale loss plus penalty. The logistic
// objective is put on the sum scale (n * loss + penalty): the standard
// penalty level 0.5 and the e^2 descent offset are only meaningful there,
// the mean-scale problem being fully thresholded at that lambda.
struct BenchConfig {
  std::vector<std::size_t> ns{200};
  std::size_t q = 400;
  std::vector<double> taus{0.1, 0.5, 0.9};
  Family family = Family::Linear;
  PenaltyKind penalty = PenaltyKind::Scad;
  double lambda = 0.5;
  double shape = 3.7;  // 3.0 for MCP
  double snr = 3.0;
  std::size_t reps = 10;
  std::uint64_t seed = 0;
  std::size_t max_iter = 2000;
  double tol = 1e-6;
  // Objective descent target g* + offset; defaults to e^3 (linear) or
  // e^2 (logistic, sum scale) when unset.
  std::optional<double> target_offset;
  std::size_t n_boot = 1000;
  double ci_level = 0.95;
  std::size_t threads = 1;
};

struct BenchCellStats {
  std::size_t n = 0;
  double tau = 0.0;
  Method method = Method::AGProposed;
  std::size_t reps = 0;       // replicates that completed
  std::size_t censored = 0;
  std::size_t errors = 0;     // replicates that failed (tagged, not fatal)
  std::string error_message;  // first failure, empty when none
  BootstrapCI ci{};
};

struct BenchResult {
  std::vector<BenchCellStats> cells;   // ordered by (n, tau, method)
  std::size_t ista_runs = 0;
  std::size_t ista_monotone_runs = 0;
};

BenchResult run_benchmark(const BenchConfig& config);
csv::Table bench_table(const BenchConfig& config, const BenchResult& result);

// Signal-recovery experiment: per (tau, snr) cell and replicate, simulate
// training and validation sets of equal size, solve a cold-start lambda path
// (50 equally spaced values from lambda_max to 0), pick lambda by validation
// loss, and score the selected fit against the ground truth.
//
// Within a replicate the draws (design, signal, noise directions, Bernoulli
// uniforms) are shared across the snr grid, so snr enters only through the
// residual scale; each cell is still an exact sample of its own
// distribution, while across-snr comparisons are paired.
struct RecoveryConfig {
  std::size_t n = 200;
  std::size_t q = 410;
  std::vector<double> taus{0.1, 0.5, 0.9};
  std::vector<double> snrs{1.0, 3.0, 7.0, 10.0};
  Family family = Family::Linear;
  PenaltyKind penalty = PenaltyKind::Scad;
  double shape = 3.7;
  SignalPattern pattern = SignalPattern::Blocks5x10;
  std::size_t grid_size = 50;
  std::size_t reps = 10;
  std::uint64_t seed = 0;
  std::size_t max_iter = 2000;
  double tol = 1e-6;
  double zero_tol = 1e-8;  // support extraction threshold
  bool warm_start = false;
  std::size_t threads = 1;
};

struct RecoveryCellStats {
  double tau = 0.0;
  double snr = 0.0;
  std::size_t reps = 0;       // replicates that completed
  std::size_t errors = 0;     // replicates that failed (tagged, not fatal)
  std::string error_message;
  double scaled_error_mean = 0.0;
  double scaled_error_se = 0.0;
  std::optional<double> ppv_mean, ppv_se;
  std::size_t ppv_missing = 0;
  std::optional<double> npv_mean, npv_se;
  std::size_t npv_missing = 0;
  double active_mean = 0.0;
  double active_se = 0.0;
};

struct RecoveryResult {
  std::vector<RecoveryCellStats> cells;  // ordered by (tau, snr)
};

RecoveryResult run_recovery(const RecoveryConfig& config);
csv::Table recovery_table(const RecoveryConfig& config,
                          const RecoveryResult& result);

}  // namespace agsparse
