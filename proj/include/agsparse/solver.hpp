#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

#include "agsparse/model.hpp"
#include "agsparse/penalty.hpp"
#include "agsparse/schedule.hpp"

namespace agsparse {

// Smooth part Psi = f + h of a composite objective Psi + lambda*l1.
struct SmoothFunction {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
  double lipschitz = 0.0;
};

// Composite problem min Psi(x) + lambda * sum_{penalized j} |x_j| with
// Psi = f + h smooth. Immutable once built; a data-backed problem keeps a
// pointer to the dataset, which must outlive the problem.
class CompositeProblem {
 public:
  // Penalized regression on a dataset: f = loss, h = DC-smooth penalty part
  // applied to penalized coordinates. The mask defaults to "everything but
  // the intercept". smooth_lipschitz_f, when given, skips the power
  // iteration (useful along a lambda path where it is shared).
  CompositeProblem(const Dataset& data, PenaltySpec penalty);
  CompositeProblem(const Dataset& data, PenaltySpec penalty,
                   double smooth_lipschitz_f);

  // Custom smooth part (smooth quadratic tests, scaled objectives, ...).
  CompositeProblem(SmoothFunction psi, double lambda,
                   std::vector<bool> penalized);

  double smooth_value(const Eigen::VectorXd& x) const;
  Eigen::VectorXd smooth_gradient(const Eigen::VectorXd& x) const;
  // Fused value+gradient (shares the design-matrix product when data-backed).
  double smooth_value_and_gradient(const Eigen::VectorXd& x,
                                   Eigen::VectorXd& grad) const;
  // Full objective including the l1 term.
  double objective(const Eigen::VectorXd& x) const;

  double lipschitz() const { return l_psi_; }
  double lambda() const { return lambda_; }
  const std::vector<bool>& penalized() const { return penalized_; }
  Eigen::Index dim() const { return dim_; }

 private:
  const Dataset* data_ = nullptr;
  std::optional<PenaltySpec> penalty_;
  SmoothFunction custom_;
  double lambda_ = 0.0;
  double l_psi_ = 0.0;
  std::vector<bool> penalized_;
  Eigen::Index dim_ = 0;
};

struct SolverConfig {
  std::size_t max_iter = 2000;
  double tol = 1e-6;             // on the gradient-mapping l2 norm
  bool record_trace = false;
  bool record_iterates = false;  // keep every x_k^md (tests only)
  bool lipschitz_check = false;  // count descent-inequality violations
};

enum class SolveStatus { ToleranceReached, MaxIterations };

struct TracePoint {
  double objective;       // full objective at the iterate
  double grad_map_norm;   // ||G|| at the iterate
};

struct FitResult {
  Eigen::VectorXd beta;
  std::size_t iterations = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<TracePoint> trace;              // filled when record_trace
  std::size_t best_iteration = 0;             // argmin of ||G|| over the run
  double best_grad_map_norm = std::numeric_limits<double>::infinity();
  int lipschitz_warnings = 0;
  std::vector<Eigen::VectorXd> iterates;      // filled when record_iterates

  bool converged() const { return status == SolveStatus::ToleranceReached; }
};

// Gradient mapping G(x, y, c) = (x - prox_l1(x, y, c, lambda, mask)) / c;
// reduces to y when lambda = 0.
Eigen::VectorXd gradient_mapping(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y, double c,
                                 double lambda,
                                 const std::vector<bool>& penalized);

// Accelerated gradient solver (composite updates). Verifies the schedule
// conditions up to config.max_iter before running; stops when
// ||G(x_k^md, grad, omega)|| <= tol and returns that x_k^md.
FitResult ag_solve(const CompositeProblem& problem, const Schedule& schedule,
                   const SolverConfig& config, const Eigen::VectorXd& x0);

// Momentum-form rewrite of the smooth updates; equivalence oracle for
// ag_solve. Requires lambda = 0 (throws DomainError otherwise).
FitResult ag_solve_momentum_form(const CompositeProblem& problem,
                                 const Schedule& schedule,
                                 const SolverConfig& config,
                                 const Eigen::VectorXd& x0);

// Proximal gradient descent with constant step 1/L_psi; same stopping rule.
// The objective trace is nonincreasing.
FitResult ista_solve(const CompositeProblem& problem,
                     const SolverConfig& config, const Eigen::VectorXd& x0);

// One row per iteration: k,objective,grad_mapping_norm.
void write_trace_csv(std::ostream& out, const FitResult& result);

}  // namespace agsparse
