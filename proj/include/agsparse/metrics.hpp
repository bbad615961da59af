#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <vector>

#include "agsparse/simulate.hpp"
#include "agsparse/solver.hpp"

namespace agsparse {

// Support-recovery quality of an estimate against the ground truth.
// PPV = |A n Ahat| / |Ahat|, NPV over the complements within {1..q};
// either is missing (not zero) when its denominator set is empty.
// scaled_error = ||beta_true - beta_hat||^2 / ||beta_true||^2 over the
// penalized coordinates (intercept excluded).
struct RecoveryMetrics {
  std::optional<double> ppv;
  std::optional<double> npv;
  double scaled_error = 0.0;
  std::size_t active_size = 0;
};

RecoveryMetrics recovery_metrics(const GroundTruth& truth,
                                 const Eigen::VectorXd& beta_hat,
                                 double zero_tol = 1e-8);

struct TargetResult {
  std::size_t iteration = 0;  // first k with g_k <= target (1-based)
  bool censored = true;
};

// First trace index whose objective reaches the target; censored when the
// trace never crosses it. Throws DomainError on an empty trace.
TargetResult iterations_to_target(const std::vector<TracePoint>& trace,
                                  double target);

struct BootstrapCI {
  double median;
  double lo;
  double hi;
  bool breakdown = false;  // median not identified (censoring)
};

// Percentile bootstrap of the median; deterministic per seed. Censored
// samples enter as +inf; when the median itself is censored (more than half
// the sample, or an even-split tie) the breakdown flag is set and no CI is
// produced.
BootstrapCI bootstrap_median_ci(const std::vector<double>& samples,
                                std::size_t n_boot = 1000, double level = 0.95,
                                std::uint64_t seed = 0);

// Median of a copy (average of the two central order statistics for even n).
double sample_median(std::vector<double> values);

}  // namespace agsparse
