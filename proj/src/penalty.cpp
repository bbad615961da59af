#include "agsparse/penalty.hpp"

#include <cmath>
#include <string>

#include "agsparse/errors.hpp"

namespace agsparse {

PenaltySpec::PenaltySpec(PenaltyKind kind_, double lambda_, double shape_)
    : kind(kind_), lambda(lambda_), shape(shape_) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("penalty: lambda must be finite and >= 0");
  }
  if (kind == PenaltyKind::Scad) {
    if (!(shape > 2.0) || !std::isfinite(shape)) {
      throw DomainError("penalty: SCAD requires a > 2");
    }
  } else {
    if (!(shape > 1.0) || !std::isfinite(shape)) {
      throw DomainError("penalty: MCP requires gamma > 1");
    }
  }
}

PenaltySpec PenaltySpec::scad(double lambda, double a) {
  return PenaltySpec(PenaltyKind::Scad, lambda, a);
}

PenaltySpec PenaltySpec::mcp(double lambda, double gamma) {
  return PenaltySpec(PenaltyKind::Mcp, lambda, gamma);
}

double penalty_value(const PenaltySpec& spec, double theta) {
  const double lam = spec.lambda;
  const double t = std::abs(theta);
  if (spec.kind == PenaltyKind::Scad) {
    const double a = spec.shape;
    if (t <= lam) return lam * t;
    if (t <= a * lam)
      return (2.0 * a * lam * t - t * t - lam * lam) / (2.0 * (a - 1.0));
    return 0.5 * (a + 1.0) * lam * lam;
  }
  const double g = spec.shape;
  if (t < g * lam) return lam * t - t * t / (2.0 * g);
  return 0.5 * g * lam * lam;
}

double dc_smooth_value(const PenaltySpec& spec, double theta) {
  const double lam = spec.lambda;
  const double t = std::abs(theta);
  if (spec.kind == PenaltyKind::Scad) {
    const double a = spec.shape;
    if (t <= lam) return 0.0;
    if (t < a * lam)
      return (2.0 * lam * t - t * t - lam * lam) / (2.0 * (a - 1.0));
    return 0.5 * (a + 1.0) * lam * lam - lam * t;
  }
  const double g = spec.shape;
  if (t < g * lam) return -t * t / (2.0 * g);
  return 0.5 * g * lam * lam - lam * t;
}

double dc_smooth_grad(const PenaltySpec& spec, double theta) {
  const double lam = spec.lambda;
  const double t = std::abs(theta);
  const double s = theta < 0.0 ? -1.0 : 1.0;
  if (spec.kind == PenaltyKind::Scad) {
    const double a = spec.shape;
    if (t <= lam) return 0.0;
    if (t < a * lam) return (lam * s - theta) / (a - 1.0);
    return -lam * s;
  }
  const double g = spec.shape;
  if (t < g * lam) return -theta / g;
  return -lam * s;
}

double dc_smooth_lipschitz(const PenaltySpec& spec) {
  if (spec.kind == PenaltyKind::Scad) return 1.0 / (spec.shape - 1.0);
  return 1.0 / spec.shape;
}

double soft_threshold(double z, double t) {
  if (t < 0.0) throw DomainError("soft_threshold: threshold must be >= 0");
  const double a = std::abs(z) - t;
  if (a <= 0.0) return 0.0;
  return z < 0.0 ? -a : a;
}

Eigen::VectorXd prox_l1(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        double c, double lambda,
                        const std::vector<bool>& penalized) {
  if (!(c > 0.0)) throw DomainError("prox_l1: step c must be > 0");
  if (lambda < 0.0) throw DomainError("prox_l1: lambda must be >= 0");
  if (x.size() != y.size() ||
      static_cast<std::size_t>(x.size()) != penalized.size()) {
    throw DimensionError("prox_l1: x, y and mask lengths differ");
  }
  Eigen::VectorXd u(x.size());
  const double thr = c * lambda;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double v = x[j] - c * y[j];
    u[j] = penalized[static_cast<std::size_t>(j)] ? soft_threshold(v, thr) : v;
  }
  return u;
}

}  // namespace agsparse
