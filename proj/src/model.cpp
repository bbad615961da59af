#include "agsparse/model.hpp"

#include <cmath>
#include <string>

#include "agsparse/errors.hpp"

namespace agsparse {

namespace {

void validate(const Dataset& data) {
  if (data.X.rows() < 1 || data.X.cols() < 2) {
    throw DimensionError("dataset: need n >= 1 and q >= 1");
  }
  if (data.y.size() != data.X.rows()) {
    throw DimensionError("dataset: y length does not match X rows");
  }
  if (!data.X.allFinite() || !data.y.allFinite()) {
    throw DomainError("dataset: non-finite entries");
  }
  if ((data.X.col(0).array() != 1.0).any()) {
    throw DomainError("dataset: column 0 must be the intercept column");
  }
  if (data.family == Family::Logistic) {
    for (Eigen::Index i = 0; i < data.y.size(); ++i) {
      if (data.y[i] != 0.0 && data.y[i] != 1.0) {
        throw DomainError("dataset: logistic response must be 0/1");
      }
    }
  }
}

// log(1 + exp(m)) without overflow.
inline double log1pexp(double m) {
  return std::max(m, 0.0) + std::log1p(std::exp(-std::abs(m)));
}

inline double sigmoid(double m) {
  if (m >= 0.0) return 1.0 / (1.0 + std::exp(-m));
  const double e = std::exp(m);
  return e / (1.0 + e);
}

void check_beta(const Dataset& data, const Eigen::VectorXd& beta) {
  if (beta.size() != data.X.cols()) {
    throw DimensionError("loss: beta length does not match X columns");
  }
}

}  // namespace

StandardizedColumns standardize_columns(const Eigen::MatrixXd& raw) {
  const Eigen::Index n = raw.rows();
  const Eigen::Index q = raw.cols();
  if (n < 2 || q < 1) {
    throw DimensionError("standardize: need at least two rows");
  }
  StandardizedColumns out;
  out.cols.resize(n, q);
  out.centers.resize(q);
  out.scales.resize(q);
  for (Eigen::Index j = 0; j < q; ++j) {
    const double mean = raw.col(j).mean();
    const double ss = (raw.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw DomainError("standardize: column " + std::to_string(j) +
                        " is constant");
    }
    out.centers[j] = mean;
    out.scales[j] = sd;
    out.cols.col(j) = (raw.col(j).array() - mean) / sd;
  }
  return out;
}

Eigen::MatrixXd unstandardize_columns(const Eigen::MatrixXd& cols,
                                      const Eigen::VectorXd& centers,
                                      const Eigen::VectorXd& scales) {
  if (cols.cols() != centers.size() || cols.cols() != scales.size()) {
    throw DimensionError("unstandardize: metadata length mismatch");
  }
  Eigen::MatrixXd out(cols.rows(), cols.cols());
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    out.col(j) = cols.col(j).array() * scales[j] + centers[j];
  }
  return out;
}

namespace {

Dataset assemble(const Eigen::MatrixXd& cols, Eigen::VectorXd y, Family family,
                 Eigen::VectorXd centers, Eigen::VectorXd scales) {
  Dataset data;
  data.X.resize(cols.rows(), cols.cols() + 1);
  data.X.col(0).setOnes();
  data.X.rightCols(cols.cols()) = cols;
  data.y = std::move(y);
  data.family = family;
  data.centers = std::move(centers);
  data.scales = std::move(scales);
  validate(data);
  return data;
}

}  // namespace

Dataset make_dataset(const Eigen::MatrixXd& raw_X, Eigen::VectorXd y,
                     Family family, bool standardize) {
  if (standardize) {
    StandardizedColumns s = standardize_columns(raw_X);
    return assemble(s.cols, std::move(y), family, std::move(s.centers),
                    std::move(s.scales));
  }
  return assemble(raw_X, std::move(y), family,
                  Eigen::VectorXd::Zero(raw_X.cols()),
                  Eigen::VectorXd::Ones(raw_X.cols()));
}

Dataset make_dataset_like(const Eigen::MatrixXd& raw_X, Eigen::VectorXd y,
                          Family family, const Eigen::VectorXd& centers,
                          const Eigen::VectorXd& scales) {
  if (raw_X.cols() != centers.size() || raw_X.cols() != scales.size()) {
    throw DimensionError("make_dataset_like: metadata length mismatch");
  }
  Eigen::MatrixXd cols(raw_X.rows(), raw_X.cols());
  for (Eigen::Index j = 0; j < raw_X.cols(); ++j) {
    cols.col(j) = (raw_X.col(j).array() - centers[j]) / scales[j];
  }
  return assemble(cols, std::move(y), family, centers, scales);
}

bool is_standardized(const Dataset& data, double tol) {
  const double n = static_cast<double>(data.n());
  if (data.n() < 2) return false;
  for (Eigen::Index j = 1; j < data.X.cols(); ++j) {
    const double mean = data.X.col(j).mean();
    const double ss = (data.X.col(j).array() - mean).square().sum();
    const double sd = std::sqrt(ss / (n - 1.0));
    if (std::abs(mean) > tol || std::abs(sd - 1.0) > tol) return false;
  }
  return true;
}

Eigen::VectorXd original_scale_coefficients(const Dataset& data,
                                            const Eigen::VectorXd& beta) {
  check_beta(data, beta);
  Eigen::VectorXd out(beta.size());
  double intercept = beta[0];
  for (Eigen::Index j = 1; j < beta.size(); ++j) {
    out[j] = beta[j] / data.scales[j - 1];
    intercept -= out[j] * data.centers[j - 1];
  }
  out[0] = intercept;
  return out;
}

double loss(const Dataset& data, const Eigen::VectorXd& beta) {
  Eigen::VectorXd unused;
  return loss_value_and_grad(data, beta, unused);
}

Eigen::VectorXd loss_grad(const Dataset& data, const Eigen::VectorXd& beta) {
  Eigen::VectorXd grad;
  loss_value_and_grad(data, beta, grad);
  return grad;
}

double loss_value_and_grad(const Dataset& data, const Eigen::VectorXd& beta,
                           Eigen::VectorXd& grad) {
  check_beta(data, beta);
  const double n = static_cast<double>(data.n());
  const Eigen::VectorXd m = data.X * beta;
  double value = 0.0;
  if (data.family == Family::Linear) {
    const Eigen::VectorXd r = m - data.y;
    value = 0.5 * r.squaredNorm() / n;
    grad.noalias() = data.X.transpose() * r;
    grad /= n;
  } else {
    Eigen::VectorXd r(m.size());
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      value += log1pexp(m[i]) - data.y[i] * m[i];
      r[i] = sigmoid(m[i]) - data.y[i];
    }
    value /= n;
    grad.noalias() = data.X.transpose() * r;
    grad /= n;
  }
  if (!std::isfinite(value)) {
    throw NumericError("loss: non-finite value");
  }
  return value;
}

double null_intercept(const Dataset& data) {
  const double ybar = data.y.mean();
  if (data.family == Family::Linear) return ybar;
  const double n = static_cast<double>(data.n());
  // keep the logit finite for all-0/all-1 responses
  const double p = std::min(std::max(ybar, 1.0 / (n + 1.0)), n / (n + 1.0));
  return std::log(p / (1.0 - p));
}

Eigen::VectorXd null_model_start(const Dataset& data) {
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(data.X.cols());
  beta[0] = null_intercept(data);
  return beta;
}

double smooth_lipschitz(const Dataset& data) {
  const Eigen::MatrixXd& X = data.X;
  if (X.squaredNorm() == 0.0) {
    throw DomainError("smooth_lipschitz: design is all zeros");
  }
  const Eigen::Index p = X.cols();
  Eigen::VectorXd v = Eigen::VectorXd::Constant(p, 1.0);
  v /= v.norm();
  constexpr std::size_t kMaxIter = 10000;
  constexpr double kRelTol = 1e-8;
  double eig = 0.0;
  bool converged = false;
  std::size_t it = 0;
  for (; it < kMaxIter; ++it) {
    Eigen::VectorXd w = X.transpose() * (X * v);
    const double next = v.dot(w);
    const double wn = w.norm();
    if (wn == 0.0) {
      // v landed in the null space; restart from a basis direction
      v.setZero();
      v[static_cast<Eigen::Index>(it) % p] = 1.0;
      continue;
    }
    v = w / wn;
    if (std::abs(next - eig) <= kRelTol * std::abs(next)) {
      eig = next;
      converged = true;
      break;
    }
    eig = next;
  }
  if (!converged) {
    throw NumericError("smooth_lipschitz: power iteration did not converge in " +
                       std::to_string(kMaxIter) + " iterations");
  }
  const double n = static_cast<double>(data.n());
  const double denom = data.family == Family::Linear ? n : 4.0 * n;
  return 1.01 * eig / denom;
}

}  // namespace agsparse
