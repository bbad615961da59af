#pragma once

#include <Eigen/Core>

namespace agsparse {

enum class Family { Linear, Logistic };

// Regression data with an explicit intercept column. X is n x (q+1) with
// column 0 all ones; centers/scales (length q) record the standardization
// applied to the remaining columns (zeros/ones when the data is raw).
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Family family = Family::Linear;
  Eigen::VectorXd centers;
  Eigen::VectorXd scales;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index q() const { return X.cols() - 1; }
};

struct StandardizedColumns {
  Eigen::MatrixXd cols;
  Eigen::VectorXd centers;
  Eigen::VectorXd scales;
};

// Center by the sample mean and scale by the sample standard deviation
// (n-1 divisor). Throws DomainError naming the first constant column.
StandardizedColumns standardize_columns(const Eigen::MatrixXd& raw);

// Inverse transform of standardize_columns.
Eigen::MatrixXd unstandardize_columns(const Eigen::MatrixXd& cols,
                                      const Eigen::VectorXd& centers,
                                      const Eigen::VectorXd& scales);

// Build a dataset from raw covariate columns (no intercept in raw_X).
Dataset make_dataset(const Eigen::MatrixXd& raw_X, Eigen::VectorXd y,
                     Family family, bool standardize = true);

// Same, but reusing the centers/scales of another dataset (validation data
// expressed in the training coordinates).
Dataset make_dataset_like(const Eigen::MatrixXd& raw_X, Eigen::VectorXd y,
                          Family family, const Eigen::VectorXd& centers,
                          const Eigen::VectorXd& scales);

bool is_standardized(const Dataset& data, double tol = 1e-8);

// Map coefficients fitted on the standardized scale back to the raw scale.
Eigen::VectorXd original_scale_coefficients(const Dataset& data,
                                            const Eigen::VectorXd& beta);

// Smooth convex loss f(beta).
//   Linear:   ||X beta - y||^2 / (2n)
//   Logistic: (1/n) sum_i [log(1 + exp(x_i' beta)) - y_i x_i' beta],
// evaluated with overflow-safe log1p/exp handling.
double loss(const Dataset& data, const Eigen::VectorXd& beta);

Eigen::VectorXd loss_grad(const Dataset& data, const Eigen::VectorXd& beta);

// Fused evaluation sharing the X*beta product.
double loss_value_and_grad(const Dataset& data, const Eigen::VectorXd& beta,
                           Eigen::VectorXd& grad);

// Lipschitz constant of the loss gradient: lambda_max(X'X)/n for linear,
// /(4n) for logistic. lambda_max by power iteration from a deterministic
// start (rel. tol 1e-8, at most 1e4 iterations), inflated by 1.01.
double smooth_lipschitz(const Dataset& data);

// Intercept-only optimum: ybar for linear, logit(ybar) clamped away from
// +-inf for logistic.
double null_intercept(const Dataset& data);

// Coefficient vector for the null model (intercept only).
Eigen::VectorXd null_model_start(const Dataset& data);

}  // namespace agsparse
