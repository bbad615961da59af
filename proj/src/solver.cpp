#include "agsparse/solver.hpp"

#include <cmath>
#include <ostream>
#include <string>
#include <utility>

#include "agsparse/csv.hpp"
#include "agsparse/errors.hpp"

namespace agsparse {

namespace {

std::vector<bool> default_mask(Eigen::Index dim) {
  std::vector<bool> mask(static_cast<std::size_t>(dim), true);
  mask[0] = false;  // intercept
  return mask;
}

}  // namespace

CompositeProblem::CompositeProblem(const Dataset& data, PenaltySpec penalty)
    : CompositeProblem(data, penalty, smooth_lipschitz(data)) {}

CompositeProblem::CompositeProblem(const Dataset& data, PenaltySpec penalty,
                                   double smooth_lipschitz_f)
    : data_(&data),
      penalty_(penalty),
      lambda_(penalty.lambda),
      l_psi_(smooth_lipschitz_f + dc_smooth_lipschitz(penalty)),
      penalized_(default_mask(data.X.cols())),
      dim_(data.X.cols()) {}

CompositeProblem::CompositeProblem(SmoothFunction psi, double lambda,
                                   std::vector<bool> penalized)
    : custom_(std::move(psi)),
      lambda_(lambda),
      l_psi_(custom_.lipschitz),
      penalized_(std::move(penalized)),
      dim_(static_cast<Eigen::Index>(penalized_.size())) {
  if (lambda_ < 0.0) throw DomainError("problem: lambda must be >= 0");
  if (!(l_psi_ > 0.0)) throw DomainError("problem: Lipschitz bound must be > 0");
}

double CompositeProblem::smooth_value(const Eigen::VectorXd& x) const {
  if (!data_) return custom_.value(x);
  double v = agsparse::loss(*data_, x);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (penalized_[static_cast<std::size_t>(j)]) {
      v += dc_smooth_value(*penalty_, x[j]);
    }
  }
  return v;
}

Eigen::VectorXd CompositeProblem::smooth_gradient(const Eigen::VectorXd& x) const {
  if (!data_) return custom_.gradient(x);
  Eigen::VectorXd g = loss_grad(*data_, x);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (penalized_[static_cast<std::size_t>(j)]) {
      g[j] += dc_smooth_grad(*penalty_, x[j]);
    }
  }
  return g;
}

double CompositeProblem::smooth_value_and_gradient(const Eigen::VectorXd& x,
                                                   Eigen::VectorXd& grad) const {
  if (!data_) {
    grad = custom_.gradient(x);
    return custom_.value(x);
  }
  double v = loss_value_and_grad(*data_, x, grad);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (penalized_[static_cast<std::size_t>(j)]) {
      v += dc_smooth_value(*penalty_, x[j]);
      grad[j] += dc_smooth_grad(*penalty_, x[j]);
    }
  }
  return v;
}

double CompositeProblem::objective(const Eigen::VectorXd& x) const {
  double v = smooth_value(x);
  if (lambda_ > 0.0) {
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (penalized_[static_cast<std::size_t>(j)]) {
        v += lambda_ * std::abs(x[j]);
      }
    }
  }
  return v;
}

Eigen::VectorXd gradient_mapping(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y, double c,
                                 double lambda,
                                 const std::vector<bool>& penalized) {
  if (!(c > 0.0)) throw DomainError("gradient_mapping: step c must be > 0");
  return (x - prox_l1(x, y, c, lambda, penalized)) / c;
}

namespace {

struct SolveState {
  FitResult result;
  double l1_at(const CompositeProblem& p, const Eigen::VectorXd& x) const {
    double s = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      if (p.penalized()[static_cast<std::size_t>(j)]) s += std::abs(x[j]);
    }
    return s;
  }

  void record(const CompositeProblem& p, const SolverConfig& cfg,
              std::size_t k, double smooth_val, const Eigen::VectorXd& point,
              double grad_norm) {
    if (cfg.record_trace) {
      result.trace.push_back({smooth_val + p.lambda() * l1_at(p, point),
                              grad_norm});
    }
    if (cfg.record_iterates) result.iterates.push_back(point);
    if (grad_norm < result.best_grad_map_norm) {
      result.best_grad_map_norm = grad_norm;
      result.best_iteration = k;
    }
  }
};

void check_finite(const Eigen::VectorXd& v, std::size_t k) {
  if (!v.allFinite()) {
    throw NumericError("solver diverged at iteration " + std::to_string(k));
  }
}

void check_start(const CompositeProblem& problem, const SolverConfig& config,
                 const Eigen::VectorXd& x0) {
  if (x0.size() != problem.dim()) {
    throw DimensionError("solver: x0 length does not match problem dimension");
  }
  if (config.max_iter < 1) throw DomainError("solver: max_iter must be >= 1");
  if (!(config.tol > 0.0)) throw DomainError("solver: tol must be > 0");
}

}  // namespace

FitResult ag_solve(const CompositeProblem& problem, const Schedule& schedule,
                   const SolverConfig& config, const Eigen::VectorXd& x0) {
  check_start(problem, config, x0);
  ConditionsReport rep =
      verify_conditions(schedule, problem.lipschitz(), config.max_iter);
  if (!rep.ok()) {
    throw DomainError(
        "ag_solve: schedule violates the convergence conditions (step at k=" +
        std::to_string(rep.step_violation_k) + ", ratio at k=" +
        std::to_string(rep.ratio_violation_k) + ")");
  }

  const double omega = schedule.omega();
  const double lambda = problem.lambda();
  const auto& mask = problem.penalized();
  const bool need_value = config.record_trace || config.lipschitz_check;

  Eigen::VectorXd x = x0;        // dual sequence x_k
  Eigen::VectorXd x_ag = x0;     // aggregated sequence x_k^ag
  Eigen::VectorXd x_md, grad;
  SolveState st;

  std::size_t k = 1;
  for (; k <= config.max_iter; ++k) {
    const double a = schedule.alpha(k);
    const double d = schedule.delta(k);
    x_md = (1.0 - a) * x_ag + a * x;
    double smooth_val = 0.0;
    if (need_value) {
      smooth_val = problem.smooth_value_and_gradient(x_md, grad);
    } else {
      grad = problem.smooth_gradient(x_md);
    }
    x = prox_l1(x, grad, d, lambda, mask);
    Eigen::VectorXd next_ag = prox_l1(x_md, grad, omega, lambda, mask);
    const double grad_norm = (x_md - next_ag).norm() / omega;
    st.record(problem, config, k, smooth_val, x_md, grad_norm);
    if (config.lipschitz_check) {
      const double lhs = problem.smooth_value(next_ag);
      const double rhs = smooth_val + grad.dot(next_ag - x_md) +
                         0.5 * problem.lipschitz() * (next_ag - x_md).squaredNorm();
      if (lhs > rhs + 10.0 * config.tol) st.result.lipschitz_warnings++;
    }
    check_finite(x, k);
    check_finite(next_ag, k);
    x_ag = std::move(next_ag);
    if (grad_norm <= config.tol) {
      st.result.beta = x_md;
      st.result.iterations = k;
      st.result.status = SolveStatus::ToleranceReached;
      return std::move(st.result);
    }
  }
  st.result.beta = x_md;
  st.result.iterations = config.max_iter;
  st.result.status = SolveStatus::MaxIterations;
  return std::move(st.result);
}

FitResult ag_solve_momentum_form(const CompositeProblem& problem,
                                 const Schedule& schedule,
                                 const SolverConfig& config,
                                 const Eigen::VectorXd& x0) {
  check_start(problem, config, x0);
  if (problem.lambda() != 0.0) {
    throw DomainError(
        "ag_solve_momentum_form: smooth problems only (lambda must be 0)");
  }
  const double omega = schedule.omega();
  const bool need_value = config.record_trace;

  Eigen::VectorXd x_ag_prev = x0;
  Eigen::VectorXd x_md = x0;  // alpha_1 = 1 makes x_1^md = x_0
  Eigen::VectorXd grad;
  SolveState st;

  std::size_t k = 1;
  for (; k <= config.max_iter; ++k) {
    const double a = schedule.alpha(k);
    const double d = schedule.delta(k);
    double smooth_val = 0.0;
    if (need_value) {
      smooth_val = problem.smooth_value_and_gradient(x_md, grad);
    } else {
      grad = problem.smooth_gradient(x_md);
    }
    Eigen::VectorXd x_ag = x_md - omega * grad;
    const double grad_norm = grad.norm();  // G reduces to the gradient
    st.record(problem, config, k, smooth_val, x_md, grad_norm);
    check_finite(x_ag, k);
    if (grad_norm <= config.tol) {
      st.result.beta = x_md;
      st.result.iterations = k;
      st.result.status = SolveStatus::ToleranceReached;
      return std::move(st.result);
    }
    const double a_next = schedule.alpha(k + 1);
    Eigen::VectorXd next_md = x_ag +
        a_next * (1.0 / a - d / omega) * (omega * grad) +
        a_next * (1.0 / a - 1.0) * (x_ag - x_ag_prev);
    x_ag_prev = std::move(x_ag);
    x_md = std::move(next_md);
  }
  st.result.beta = x_md;
  st.result.iterations = config.max_iter;
  st.result.status = SolveStatus::MaxIterations;
  return std::move(st.result);
}

FitResult ista_solve(const CompositeProblem& problem,
                     const SolverConfig& config, const Eigen::VectorXd& x0) {
  check_start(problem, config, x0);
  const double c = 1.0 / problem.lipschitz();
  const double lambda = problem.lambda();
  const auto& mask = problem.penalized();

  const bool need_value = config.record_trace;

  Eigen::VectorXd x = x0;
  Eigen::VectorXd grad;
  SolveState st;

  std::size_t k = 1;
  for (; k <= config.max_iter; ++k) {
    double smooth_val = 0.0;
    if (need_value) {
      smooth_val = problem.smooth_value_and_gradient(x, grad);
    } else {
      grad = problem.smooth_gradient(x);
    }
    Eigen::VectorXd next = prox_l1(x, grad, c, lambda, mask);
    const double grad_norm = (x - next).norm() / c;
    check_finite(next, k);
    // the trace point k is the iterate whose gradient drives step k,
    // matching the md-point convention of ag_solve
    st.record(problem, config, k, smooth_val, x, grad_norm);
    if (grad_norm <= config.tol) {
      st.result.beta = x;
      st.result.iterations = k;
      st.result.status = SolveStatus::ToleranceReached;
      return std::move(st.result);
    }
    x = std::move(next);
  }
  st.result.beta = x;
  st.result.iterations = config.max_iter;
  st.result.status = SolveStatus::MaxIterations;
  return std::move(st.result);
}

void write_trace_csv(std::ostream& out, const FitResult& result) {
  out << "k,objective,grad_mapping_norm\n";
  for (std::size_t k = 0; k < result.trace.size(); ++k) {
    out << (k + 1) << ',' << csv::format_double(result.trace[k].objective)
        << ',' << csv::format_double(result.trace[k].grad_map_norm) << '\n';
  }
}

}  // namespace agsparse
