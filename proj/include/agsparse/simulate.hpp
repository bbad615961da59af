#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "agsparse/model.hpp"

namespace agsparse {

enum class SignalPattern { Visual4, Blocks5x10 };

struct SimConfig {
  std::size_t n = 200;
  std::size_t q = 410;
  double tau = 0.5;             // AR(1) correlation, in [0, 1)
  double snr = 3.0;             // may be +inf for the noiseless limit
  Family family = Family::Linear;
  SignalPattern pattern = SignalPattern::Blocks5x10;
  std::uint64_t seed = 0;
  bool block_scale_is_variance = false;  // second N10 parameter reading
};

struct GroundTruth {
  Eigen::VectorXd beta_true;          // length q+1, intercept 0
  std::vector<std::size_t> support;   // {j >= 1 : beta_true_j != 0}
};

// n x q rows from N(0, Sigma) with Sigma_ij = tau^|i-j|, generated by the
// AR(1) recurrence x_j = tau x_{j-1} + sqrt(1-tau^2) z_j.
Eigen::MatrixXd toeplitz_design(std::size_t n, std::size_t q, double tau,
                                std::uint64_t seed);

// Signal layout: blocks placed left to right with equal zero gaps between
// consecutive blocks (within +-1 index), first block starting at column 1
// and last ending at column q.
//   Visual4:    four singletons, values (2,-2,8,-8) linear,
//               (0.5,-0.5,0.8,-0.8) logistic.
//   Blocks5x10: five blocks of ten draws, linear N(0.5,1), N(5,2), N(10,3),
//               N(20,4), N(50,5); logistic N(0.5,1) x2, N(-0.5,1) x2,
//               N(1,1). Second parameter is the standard deviation unless
//               scale_is_variance.
GroundTruth true_beta(SignalPattern pattern, Family family, std::size_t q,
                      std::uint64_t seed, bool scale_is_variance = false);

// beta' Sigma beta for the AR(1) covariance, O(q * log(eps)/log(tau)) using
// the banded structure. beta_cov excludes the intercept.
double ar1_quadratic_form(const Eigen::VectorXd& beta_cov, double tau);

// y = X beta + eps, eps ~ N(0, sigma^2 I) with
// sigma = sqrt(beta' Sigma beta)/snr from the analytic covariance.
// Throws DomainError when the signal is identically zero.
Eigen::VectorXd linear_response(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& beta_true, double snr,
                                double tau, std::uint64_t seed);

// Independent Bernoulli outcomes with probabilities sigmoid(X beta + eps).
Eigen::VectorXd logistic_response(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& beta_true, double snr,
                                  double tau, std::uint64_t seed);

struct SimData {
  Eigen::MatrixXd X;  // n x q raw covariates
  Eigen::VectorXd y;
  GroundTruth truth;
};

SimData simulate(const SimConfig& config);

}  // namespace agsparse
