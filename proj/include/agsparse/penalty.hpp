#pragma once

#include <Eigen/Core>
#include <vector>

namespace agsparse {

enum class PenaltyKind { Scad, Mcp };

// Folded-concave penalty with its difference-of-convex split
//   p(theta) = lambda*|theta| + h(theta),
// where h is smooth and concave. SCAD requires shape a > 2, MCP shape
// gamma > 1; lambda >= 0 (lambda = 0 collapses the penalty to zero).
struct PenaltySpec {
  PenaltyKind kind;
  double lambda;
  double shape;  // a for SCAD, gamma for MCP

  PenaltySpec(PenaltyKind kind, double lambda, double shape);
  static PenaltySpec scad(double lambda, double a);
  static PenaltySpec mcp(double lambda, double gamma);
};

// Full penalty value p(theta). Symmetric, nondecreasing in |theta|, constant
// once |theta| passes a*lambda (SCAD) or gamma*lambda (MCP).
double penalty_value(const PenaltySpec& spec, double theta);

// Smooth concave part h(theta) with p = lambda*|theta| + h exactly.
double dc_smooth_value(const PenaltySpec& spec, double theta);

// h'(theta); odd, continuous across branch boundaries, |h'| <= lambda.
double dc_smooth_grad(const PenaltySpec& spec, double theta);

// Smallest Lipschitz constant of h': 1/(a-1) for SCAD, 1/gamma for MCP.
double dc_smooth_lipschitz(const PenaltySpec& spec);

// sign(z) * max(|z| - t, 0); the scalar l1 proximal map.
double soft_threshold(double z, double t);

// Proximal step for <y,u> + ||u - x||^2/(2c) + c*lambda*l1 on the penalized
// coordinates: soft_threshold(x_j - c*y_j, c*lambda) where penalized[j],
// plain gradient step x_j - c*y_j elsewhere (e.g. the intercept).
Eigen::VectorXd prox_l1(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        double c, double lambda,
                        const std::vector<bool>& penalized);

}  // namespace agsparse
