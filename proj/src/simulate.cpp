#include "agsparse/simulate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "agsparse/errors.hpp"
#include "agsparse/rng.hpp"

namespace agsparse {

namespace {

// substream tags for seed derivation
enum : std::uint64_t { kDesign = 1, kSignal = 2, kNoise = 3, kBernoulli = 4 };

struct Block {
  std::size_t size;
  double mu;
  double sd;
  bool fixed = false;
  double fixed_value = 0.0;
};

std::vector<Block> pattern_blocks(SignalPattern pattern, Family family,
                                  bool scale_is_variance) {
  auto dev = [scale_is_variance](double s) {
    return scale_is_variance ? std::sqrt(s) : s;
  };
  std::vector<Block> blocks;
  if (pattern == SignalPattern::Visual4) {
    const bool lin = family == Family::Linear;
    const double v[4] = {lin ? 2.0 : 0.5, lin ? -2.0 : -0.5, lin ? 8.0 : 0.8,
                         lin ? -8.0 : -0.8};
    for (double value : v) blocks.push_back({1, 0.0, 0.0, true, value});
  } else {
    if (family == Family::Linear) {
      blocks = {{10, 0.5, dev(1.0)},
                {10, 5.0, dev(2.0)},
                {10, 10.0, dev(3.0)},
                {10, 20.0, dev(4.0)},
                {10, 50.0, dev(5.0)}};
    } else {
      blocks = {{10, 0.5, dev(1.0)},
                {10, 0.5, dev(1.0)},
                {10, -0.5, dev(1.0)},
                {10, -0.5, dev(1.0)},
                {10, 1.0, dev(1.0)}};
    }
  }
  return blocks;
}

double noise_sd(const Eigen::VectorXd& beta_true, double snr, double tau) {
  if (!(snr > 0.0)) throw DomainError("response: snr must be > 0");
  const Eigen::VectorXd beta_cov = beta_true.tail(beta_true.size() - 1);
  const double qf = ar1_quadratic_form(beta_cov, tau);
  if (!(qf > 0.0)) {
    throw DomainError("response: zero signal makes the SNR degenerate");
  }
  if (std::isinf(snr)) return 0.0;
  return std::sqrt(qf) / snr;
}

Eigen::VectorXd predictor(const Eigen::MatrixXd& X,
                          const Eigen::VectorXd& beta_true, double sigma,
                          Rng& rng) {
  if (X.cols() + 1 != beta_true.size()) {
    throw DimensionError("response: beta length must be q+1");
  }
  Eigen::VectorXd eta = X * beta_true.tail(X.cols());
  eta.array() += beta_true[0];
  if (sigma > 0.0) {
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      eta[i] += sigma * rng.normal();
    }
  }
  return eta;
}

}  // namespace

Eigen::MatrixXd toeplitz_design(std::size_t n, std::size_t q, double tau,
                                std::uint64_t seed) {
  if (n < 1 || q < 1) throw DomainError("toeplitz_design: n, q >= 1");
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw DomainError("toeplitz_design: tau must lie in [0, 1)");
  }
  Rng rng(seed);
  Eigen::MatrixXd X(n, q);
  const double carry = std::sqrt(1.0 - tau * tau);
  for (std::size_t i = 0; i < n; ++i) {
    double prev = rng.normal();
    X(i, 0) = prev;
    for (std::size_t j = 1; j < q; ++j) {
      prev = tau * prev + carry * rng.normal();
      X(i, j) = prev;
    }
  }
  return X;
}

GroundTruth true_beta(SignalPattern pattern, Family family, std::size_t q,
                      std::uint64_t seed, bool scale_is_variance) {
  const auto blocks = pattern_blocks(pattern, family, scale_is_variance);
  std::size_t total_signal = 0;
  for (const auto& b : blocks) total_signal += b.size;
  if (q < total_signal) {
    throw DomainError("true_beta: q too small for the pattern (need >= " +
                      std::to_string(total_signal) + ")");
  }
  const std::size_t n_gaps = blocks.size() - 1;
  const std::size_t total_gap = q - total_signal;
  const std::size_t base = n_gaps == 0 ? 0 : total_gap / n_gaps;
  const std::size_t rem = n_gaps == 0 ? 0 : total_gap % n_gaps;

  Rng rng(derive_seed(seed, kSignal));
  GroundTruth out;
  out.beta_true = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q) + 1);
  std::size_t pos = 1;  // coefficients are 1-based; 0 is the intercept
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b].size; ++i) {
      const double value = blocks[b].fixed
                               ? blocks[b].fixed_value
                               : blocks[b].mu + blocks[b].sd * rng.normal();
      out.beta_true[static_cast<Eigen::Index>(pos)] = value;
      if (value != 0.0) out.support.push_back(pos);
      ++pos;
    }
    if (b < n_gaps) pos += base + (b < rem ? 1 : 0);
  }
  return out;
}

double ar1_quadratic_form(const Eigen::VectorXd& beta_cov, double tau) {
  if (!(tau >= 0.0 && tau < 1.0)) {
    throw DomainError("ar1_quadratic_form: tau must lie in [0, 1)");
  }
  const Eigen::Index q = beta_cov.size();
  double total = beta_cov.squaredNorm();
  if (tau > 0.0) {
    double tpow = 1.0;
    for (Eigen::Index d = 1; d < q; ++d) {
      tpow *= tau;
      if (tpow < 1e-17) break;
      total += 2.0 * tpow * beta_cov.head(q - d).dot(beta_cov.tail(q - d));
    }
  }
  return total;
}

Eigen::VectorXd linear_response(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& beta_true, double snr,
                                double tau, std::uint64_t seed) {
  const double sigma = noise_sd(beta_true, snr, tau);
  Rng rng(derive_seed(seed, kNoise));
  return predictor(X, beta_true, sigma, rng);
}

Eigen::VectorXd logistic_response(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& beta_true, double snr,
                                  double tau, std::uint64_t seed) {
  const double sigma = noise_sd(beta_true, snr, tau);
  Rng noise(derive_seed(seed, kNoise));
  const Eigen::VectorXd eta = predictor(X, beta_true, sigma, noise);
  Rng bern(derive_seed(seed, kBernoulli));
  Eigen::VectorXd y(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    const double p = 1.0 / (1.0 + std::exp(-eta[i]));  // exp(-inf) = 0
    y[i] = bern.uniform() < p ? 1.0 : 0.0;
  }
  return y;
}

SimData simulate(const SimConfig& config) {
  if (config.n < 1 || config.q < 1) throw DomainError("simulate: n, q >= 1");
  SimData out;
  out.X = toeplitz_design(config.n, config.q, config.tau,
                          derive_seed(config.seed, kDesign));
  out.truth = true_beta(config.pattern, config.family, config.q, config.seed,
                        config.block_scale_is_variance);
  if (config.family == Family::Linear) {
    out.y = linear_response(out.X, out.truth.beta_true, config.snr, config.tau,
                            config.seed);
  } else {
    out.y = logistic_response(out.X, out.truth.beta_true, config.snr,
                              config.tau, config.seed);
  }
  return out;
}

}  // namespace agsparse
