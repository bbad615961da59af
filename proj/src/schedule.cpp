#include "agsparse/schedule.hpp"

#include <cmath>
#include <string>

#include "agsparse/errors.hpp"

namespace agsparse {

Schedule Schedule::proposed(double l_psi) {
  if (!(l_psi > 0.0)) throw DomainError("schedule: L_psi must be > 0");
  Schedule s;
  s.proposed_recursion_ = true;
  s.omega_ = 2.0 / (3.0 * l_psi);
  return s;
}

Schedule Schedule::original(double l_psi) {
  if (!(l_psi > 0.0)) throw DomainError("schedule: L_psi must be > 0");
  Schedule s;
  const double omega = 1.0 / (2.0 * l_psi);
  s.omega_ = omega;
  s.alpha_fn_ = [](std::size_t k) { return 2.0 / static_cast<double>(k + 1); };
  s.delta_fn_ = [omega](std::size_t k) {
    return omega * static_cast<double>(k) / 2.0;
  };
  return s;
}

Schedule Schedule::custom(SeqFn alpha, SeqFn delta, double omega) {
  if (!(omega > 0.0)) throw DomainError("schedule: omega must be > 0");
  if (!alpha) throw DomainError("schedule: alpha sequence required");
  Schedule s;
  s.omega_ = omega;
  s.alpha_fn_ = std::move(alpha);
  s.delta_fn_ = std::move(delta);
  return s;
}

void Schedule::extend_to(std::size_t k) const {
  while (alpha_.size() < k) {
    const std::size_t next = alpha_.size() + 1;
    double a;
    if (proposed_recursion_) {
      if (next == 1) {
        a = 1.0;
      } else {
        const double prev = alpha_.back();
        a = 2.0 / (1.0 + std::sqrt(1.0 + 4.0 / (prev * prev)));
      }
    } else {
      a = alpha_fn_(next);
    }
    alpha_.push_back(a);
    if (next == 1) {
      gamma_.push_back(1.0);
      log_gamma_.push_back(0.0);
    } else {
      gamma_.push_back(gamma_.back() * (1.0 - a));
      log_gamma_.push_back(log_gamma_.back() + std::log1p(-a));
    }
  }
}

double Schedule::alpha(std::size_t k) const {
  if (k == 0) throw DomainError("schedule: k starts at 1");
  extend_to(k);
  return alpha_[k - 1];
}

double Schedule::delta(std::size_t k) const {
  if (k == 0) throw DomainError("schedule: k starts at 1");
  if (delta_fn_) return delta_fn_(k);
  return omega_ / alpha(k);
}

double Schedule::gamma(std::size_t k) const {
  if (k == 0) throw DomainError("schedule: k starts at 1");
  extend_to(k);
  return gamma_[k - 1];
}

double Schedule::log_gamma(std::size_t k) const {
  if (k == 0) throw DomainError("schedule: k starts at 1");
  extend_to(k);
  return log_gamma_[k - 1];
}

Schedule proposed_schedule(double l_psi) { return Schedule::proposed(l_psi); }
Schedule original_schedule(double l_psi) { return Schedule::original(l_psi); }

AlphaBounds alpha_bounds(std::size_t k, double a, double b) {
  if (k == 0) throw DomainError("alpha_bounds: k starts at 1");
  if (!(a > 0.0) || !(b > 0.0 && b < 1.0)) {
    throw DomainError("alpha_bounds: need a > 0 and b in (0, 1)");
  }
  const double sqrt5 = std::sqrt(5.0);
  if (!(a * std::pow(2.0, -b) > sqrt5 - 2.0)) {
    throw DomainError("alpha_bounds: condition 1 fails (a*2^-b <= sqrt(5)-2)");
  }
  const double c2 = a * (1.0 - b) * std::pow(2.0, 2.0 - b) -
                    a * b * (1.0 - b) * std::pow(2.0, -b) - 1.0;
  if (!(c2 >= 0.0)) {
    throw DomainError(
        "alpha_bounds: condition 2 fails (a(1-b)2^{2-b} - ab(1-b)2^{-b} - 1 < 0)");
  }
  const double kd = static_cast<double>(k);
  AlphaBounds out;
  out.lower = 2.0 / ((1.0 + a * std::pow(kd, -b)) * kd + 1.0);
  out.upper = 2.0 / (kd + 1.0);
  return out;
}

ConditionsReport verify_conditions(const Schedule& schedule, double l_psi,
                                   std::size_t n_steps) {
  constexpr double kSlack = 1e-12;
  ConditionsReport report;
  const double omega = schedule.omega();
  double prev_log_ratio = 0.0;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double a = schedule.alpha(k);
    const double d = schedule.delta(k);
    if (report.step_ok) {
      if (!(a * d <= omega * (1.0 + kSlack)) || !(omega < 1.0 / l_psi) ||
          !(d > 0.0)) {
        report.step_ok = false;
        report.step_violation_k = k;
      }
    }
    // ratio alpha_k/(delta_k Gamma_k), compared in log space
    const double log_ratio =
        std::log(a) - std::log(d) - schedule.log_gamma(k);
    if (report.ratio_ok && k >= 2) {
      if (!(log_ratio <= prev_log_ratio + kSlack)) {
        report.ratio_ok = false;
        report.ratio_violation_k = k;
      }
    }
    prev_log_ratio = log_ratio;
    if (!report.step_ok && !report.ratio_ok) break;
  }
  return report;
}

double complexity_bound_terms(const Schedule& schedule, std::size_t n_steps,
                              double l_psi, double l_h, double dist0,
                              double xstar_norm, double m_bound) {
  if (n_steps == 0) throw DomainError("complexity_bound_terms: N >= 1");
  const double omega = schedule.omega();
  double bracket = 0.0;
  for (std::size_t k = 1; k <= n_steps; ++k) {
    bracket += (1.0 / schedule.gamma(k)) * omega * (1.0 - l_psi * omega);
  }
  if (!(bracket > 0.0)) {
    throw DomainError(
        "complexity_bound_terms: nonpositive bracket (omega >= 1/L_psi)");
  }
  const double delta1 = schedule.delta(1);
  const double gamma_n = schedule.gamma(n_steps);
  const double tail =
      dist0 * dist0 / delta1 +
      (2.0 * l_h / gamma_n) * (xstar_norm * xstar_norm + m_bound * m_bound);
  return tail / bracket;
}

}  // namespace agsparse
