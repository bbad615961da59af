#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace agsparse {

// Hyperparameter sequences for the accelerated gradient solver: damping
// {alpha_k} (alpha_1 = 1), dual steps {delta_k}, constant gradient-correction
// step omega, and the telescoping product Gamma_1 = 1,
// Gamma_k = (1 - alpha_k) Gamma_{k-1}. alpha/Gamma values are memoized, so
// indexed access is O(1) amortized. Instances are cheap to copy; the caches
// are not synchronized, so share across threads only after warming up or
// give each thread its own copy.
class Schedule {
 public:
  using SeqFn = std::function<double(std::size_t)>;  // k >= 1

  // Tuned schedule: omega = 2/(3 L), alpha_1 = 1,
  // alpha_{k+1} = 2/(1 + sqrt(1 + 4/alpha_k^2)), delta_k = omega/alpha_k.
  static Schedule proposed(double l_psi);

  // Baseline with the classical damping alpha_k = 2/(k+1),
  // omega = 1/(2 L), delta_k = omega*k/2. Satisfies the same step and
  // ratio conditions (the ratio alpha_k/(delta_k Gamma_k) is constant).
  static Schedule original(double l_psi);

  // User-supplied sequences; delta may be null to mean omega/alpha_k.
  static Schedule custom(SeqFn alpha, SeqFn delta, double omega);

  double alpha(std::size_t k) const;
  double delta(std::size_t k) const;
  double omega() const { return omega_; }
  double gamma(std::size_t k) const;
  double log_gamma(std::size_t k) const;

 private:
  Schedule() = default;
  void extend_to(std::size_t k) const;

  bool proposed_recursion_ = false;
  SeqFn alpha_fn_;
  SeqFn delta_fn_;
  double omega_ = 0.0;
  mutable std::vector<double> alpha_;
  mutable std::vector<double> gamma_;
  mutable std::vector<double> log_gamma_;
};

Schedule proposed_schedule(double l_psi);
Schedule original_schedule(double l_psi);

struct AlphaBounds {
  double lower;
  double upper;
};

// Two-sided damping bounds 2/((1 + a k^-b) k + 1) < alpha_k <= 2/(k+1).
// (a, b) must satisfy a*2^-b > sqrt(5)-2 and
// a(1-b) 2^(2-b) - a b (1-b) 2^-b - 1 >= 0; violations throw DomainError
// naming the failed condition.
AlphaBounds alpha_bounds(std::size_t k, double a = 1.0, double b = 0.5);

struct ConditionsReport {
  bool step_ok = true;                // alpha_k delta_k <= omega < 1/L
  std::size_t step_violation_k = 0;   // first violating k (0 = none)
  bool ratio_ok = true;               // alpha_k/(delta_k Gamma_k) nonincreasing
  std::size_t ratio_violation_k = 0;
  bool ok() const { return step_ok && ratio_ok; }
};

// Checks the two convergence conditions for k = 1..n_steps with 1e-12
// relative floating-point slack.
ConditionsReport verify_conditions(const Schedule& schedule, double l_psi,
                                   std::size_t n_steps);

// Diagnostic value of the complexity bound after n_steps iterations:
//   [sum_k Gamma_k^-1 omega (1 - L_psi omega)]^-1
//     * [dist0^2/delta_1 + (2 L_h / Gamma_N)(xstar_norm^2 + m_bound^2)].
// Never used by the solvers. Throws DomainError when the bracket is
// nonpositive (omega >= 1/L_psi).
double complexity_bound_terms(const Schedule& schedule, std::size_t n_steps,
                              double l_psi, double l_h, double dist0,
                              double xstar_norm, double m_bound);

}  // namespace agsparse
