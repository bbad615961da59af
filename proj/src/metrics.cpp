#include "agsparse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "agsparse/errors.hpp"
#include "agsparse/rng.hpp"

namespace agsparse {

RecoveryMetrics recovery_metrics(const GroundTruth& truth,
                                 const Eigen::VectorXd& beta_hat,
                                 double zero_tol) {
  if (beta_hat.size() != truth.beta_true.size()) {
    throw DimensionError("recovery_metrics: coefficient lengths differ");
  }
  if (zero_tol < 0.0) throw DomainError("recovery_metrics: zero_tol >= 0");
  const Eigen::Index q = beta_hat.size() - 1;

  std::vector<bool> in_truth(static_cast<std::size_t>(q) + 1, false);
  for (std::size_t j : truth.support) in_truth[j] = true;

  std::size_t tp = 0, sel = 0, tn = 0, unsel = 0;
  for (Eigen::Index j = 1; j <= q; ++j) {
    const bool hat = std::abs(beta_hat[j]) > zero_tol;
    const bool act = in_truth[static_cast<std::size_t>(j)];
    if (hat) {
      ++sel;
      if (act) ++tp;
    } else {
      ++unsel;
      if (!act) ++tn;
    }
  }

  RecoveryMetrics m;
  m.active_size = sel;
  if (sel > 0) m.ppv = static_cast<double>(tp) / static_cast<double>(sel);
  if (unsel > 0) m.npv = static_cast<double>(tn) / static_cast<double>(unsel);
  const double denom = truth.beta_true.tail(q).squaredNorm();
  if (!(denom > 0.0)) {
    throw DomainError("recovery_metrics: zero true signal");
  }
  m.scaled_error =
      (truth.beta_true.tail(q) - beta_hat.tail(q)).squaredNorm() / denom;
  return m;
}

TargetResult iterations_to_target(const std::vector<TracePoint>& trace,
                                  double target) {
  if (trace.empty()) throw DomainError("iterations_to_target: empty trace");
  for (std::size_t k = 0; k < trace.size(); ++k) {
    if (trace[k].objective <= target) return {k + 1, false};
  }
  return {0, true};
}

double sample_median(std::vector<double> values) {
  if (values.empty()) throw DomainError("median of empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BootstrapCI bootstrap_median_ci(const std::vector<double>& samples,
                                std::size_t n_boot, double level,
                                std::uint64_t seed) {
  if (samples.empty()) throw DomainError("bootstrap: empty sample");
  if (!(level > 0.0 && level < 1.0)) {
    throw DomainError("bootstrap: level must lie in (0, 1)");
  }
  const std::size_t n = samples.size();
  const std::size_t censored = static_cast<std::size_t>(std::count_if(
      samples.begin(), samples.end(), [](double v) { return std::isinf(v); }));

  BootstrapCI out;
  out.median = sample_median(samples);
  out.breakdown = 2 * censored > n || !std::isfinite(out.median);
  if (out.breakdown) {
    out.median = std::numeric_limits<double>::infinity();
    out.lo = out.hi = std::numeric_limits<double>::quiet_NaN();
    return out;
  }

  Rng rng(seed);
  std::vector<double> meds(n_boot);
  std::vector<double> resample(n);
  for (std::size_t b = 0; b < n_boot; ++b) {
    for (std::size_t i = 0; i < n; ++i) {
      resample[i] = samples[static_cast<std::size_t>(rng.uniform() *
                                                     static_cast<double>(n))];
    }
    meds[b] = sample_median(resample);
  }
  std::sort(meds.begin(), meds.end());
  const double tail = 0.5 * (1.0 - level);
  auto pick = [&](double p) {
    const auto idx = static_cast<std::size_t>(
        std::min(p * static_cast<double>(n_boot),
                 static_cast<double>(n_boot - 1)));
    return meds[idx];
  };
  // an infinite bound just means the percentile lands among censored
  // resamples; the point estimate is still identified
  out.lo = pick(tail);
  out.hi = pick(1.0 - tail);
  return out;
}

}  // namespace agsparse
