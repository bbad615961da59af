#include <doctest.h>

#include <cmath>

#include "agsparse/errors.hpp"
#include "agsparse/penalty.hpp"
#include "agsparse/rng.hpp"

using namespace agsparse;

namespace {

PenaltySpec random_spec(Rng& rng) {
  const bool scad = rng.uniform() < 0.5;
  const double lambda = 2.0 * rng.uniform();
  return scad ? PenaltySpec::scad(lambda, 2.05 + 3.0 * rng.uniform())
              : PenaltySpec::mcp(lambda, 1.05 + 3.0 * rng.uniform());
}

double fd_grad(const PenaltySpec& spec, double theta, double h = 1e-6) {
  return (dc_smooth_value(spec, theta + h) - dc_smooth_value(spec, theta - h)) /
         (2.0 * h);
}

}  // namespace

TEST_CASE("penalty spec validation") {
  CHECK_THROWS_AS(PenaltySpec::scad(0.5, 2.0), DomainError);
  CHECK_THROWS_AS(PenaltySpec::scad(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(PenaltySpec::mcp(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(PenaltySpec::mcp(-0.1, 3.0), DomainError);
  CHECK_NOTHROW(PenaltySpec::scad(0.0, 3.7));  // unpenalized limit
}

TEST_CASE("lambda 0 collapses both penalties to zero") {
  for (const PenaltySpec& spec :
       {PenaltySpec::scad(0.0, 3.7), PenaltySpec::mcp(0.0, 3.0)}) {
    for (double theta : {0.0, 0.3, -1.5, 8.0}) {
      CHECK(penalty_value(spec, theta) == 0.0);
      CHECK(dc_smooth_value(spec, theta) == 0.0);
      CHECK(dc_smooth_grad(spec, theta) == 0.0);
    }
  }
}

TEST_CASE("penalty values at known points") {
  const PenaltySpec scad = PenaltySpec::scad(0.5, 3.7);
  CHECK(penalty_value(scad, 0.0) == 0.0);
  CHECK(penalty_value(scad, 0.3) == doctest::Approx(0.15).epsilon(1e-12));
  CHECK(penalty_value(scad, 2.0) == doctest::Approx(0.5875).epsilon(1e-12));

  const PenaltySpec mcp = PenaltySpec::mcp(0.5, 3.0);
  CHECK(penalty_value(mcp, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(penalty_value(mcp, 2.0) == doctest::Approx(0.375).epsilon(1e-12));
}

TEST_CASE("smooth part values and gradient") {
  const PenaltySpec scad = PenaltySpec::scad(0.5, 3.7);
  const PenaltySpec mcp = PenaltySpec::mcp(0.5, 3.0);
  CHECK(dc_smooth_value(scad, 0.0) == 0.0);
  CHECK(dc_smooth_value(mcp, 1.0) == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
  CHECK(dc_smooth_value(scad, 2.0) == doctest::Approx(-0.4125).epsilon(1e-12));

  CHECK(dc_smooth_grad(scad, 0.0) == 0.0);
  CHECK(dc_smooth_grad(mcp, 0.0) == 0.0);
  // interior branch, against the finite-difference oracle
  CHECK(dc_smooth_grad(scad, 1.0) ==
        doctest::Approx(-0.5 / 2.7).epsilon(1e-12));
  CHECK(dc_smooth_grad(scad, 1.0) == doctest::Approx(fd_grad(scad, 1.0)));
  // both branch formulas agree at the outer boundary
  const double a_bd = 3.7 * 0.5;
  CHECK(dc_smooth_grad(scad, a_bd) == doctest::Approx(-0.5).epsilon(1e-12));
  const double g_bd = 3.0 * 0.5;
  CHECK(dc_smooth_grad(mcp, g_bd) == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("lipschitz constants") {
  CHECK(dc_smooth_lipschitz(PenaltySpec::scad(0.5, 3.7)) ==
        doctest::Approx(1.0 / 2.7).epsilon(1e-12));
  CHECK(dc_smooth_lipschitz(PenaltySpec::mcp(0.5, 3.0)) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  // lambda = 0 keeps the constant formula (h is identically zero)
  CHECK(dc_smooth_lipschitz(PenaltySpec::mcp(0.0, 3.0)) ==
        doctest::Approx(1.0 / 3.0));

  // empirical sup of |h'(x)-h'(y)|/|x-y| on a dense grid
  for (const PenaltySpec& spec :
       {PenaltySpec::scad(0.5, 3.7), PenaltySpec::mcp(0.5, 3.0)}) {
    double sup = 0.0;
    double prev_x = -4.0;
    double prev_g = dc_smooth_grad(spec, prev_x);
    for (double x = -4.0 + 1e-3; x <= 4.0; x += 1e-3) {
      const double g = dc_smooth_grad(spec, x);
      sup = std::max(sup, std::abs(g - prev_g) / (x - prev_x));
      prev_x = x;
      prev_g = g;
    }
    CHECK(sup <= dc_smooth_lipschitz(spec) + 1e-8);
    CHECK(sup >= 0.9 * dc_smooth_lipschitz(spec));
  }
}

TEST_CASE("DC reconstruction on random draws") {
  Rng rng(20240811);
  for (int i = 0; i < 10000; ++i) {
    const PenaltySpec spec = random_spec(rng);
    const double theta = 8.0 * (rng.uniform() - 0.5);
    const double whole = penalty_value(spec, theta);
    const double split =
        spec.lambda * std::abs(theta) + dc_smooth_value(spec, theta);
    CHECK(std::abs(whole - split) <= 1e-12 * (1.0 + std::abs(whole)));
    CHECK(whole >= -1e-15);
    CHECK(penalty_value(spec, -theta) == doctest::Approx(whole));
  }
}

TEST_CASE("gradient matches central differences away from and at boundaries") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const PenaltySpec spec = random_spec(rng);
    double theta = 6.0 * (rng.uniform() - 0.5);
    if (i % 4 == 0) theta = spec.shape * spec.lambda;   // outer boundary
    if (i % 4 == 1 && spec.kind == PenaltyKind::Scad) theta = spec.lambda;
    const double g = dc_smooth_grad(spec, theta);
    const double fd = fd_grad(spec, theta);
    CHECK(std::abs(g - fd) <= 1e-6 * (1.0 + std::abs(fd)));
    CHECK(std::abs(g) <= spec.lambda + 1e-12);
    CHECK(dc_smooth_grad(spec, -theta) == doctest::Approx(-g));
  }
}

TEST_CASE("h' is nonincreasing (concavity) and Lipschitz") {
  Rng rng(99);
  for (int i = 0; i < 5000; ++i) {
    const PenaltySpec spec = random_spec(rng);
    double t1 = 6.0 * (rng.uniform() - 0.5);
    double t2 = 6.0 * (rng.uniform() - 0.5);
    if (t1 > t2) std::swap(t1, t2);
    const double g1 = dc_smooth_grad(spec, t1);
    const double g2 = dc_smooth_grad(spec, t2);
    CHECK(g1 >= g2 - 1e-12);
    CHECK(std::abs(g1 - g2) <=
          dc_smooth_lipschitz(spec) * (t2 - t1) + 1e-12);
  }
}

TEST_CASE("soft threshold") {
  CHECK(soft_threshold(0.5, 1.0) == 0.0);
  CHECK(soft_threshold(3.0, 1.0) == doctest::Approx(2.0));
  CHECK(soft_threshold(-3.0, 1.0) == doctest::Approx(-2.0));
  CHECK_THROWS_AS(soft_threshold(1.0, -0.5), DomainError);

  // grid-search oracle for the scalar prox objective
  const double z = 3.0, t = 1.0;
  double best_u = -5.0, best_v = 1e300;
  for (double u = -5.0; u <= 5.0; u += 1e-4) {
    const double v = 0.5 * (u - z) * (u - z) + t * std::abs(u);
    if (v < best_v) {
      best_v = v;
      best_u = u;
    }
  }
  CHECK(std::abs(soft_threshold(z, t) - best_u) <= 2e-4);
}

TEST_CASE("prox_l1") {
  Eigen::VectorXd x(3), y(3);
  x << 0.0, 1.0, -2.0;
  y << 1.0, -0.5, 0.25;
  std::vector<bool> mask{true, true, true};

  SUBCASE("lambda = 0 is a plain gradient step") {
    const Eigen::VectorXd u = prox_l1(x, y, 0.7, 0.0, mask);
    CHECK((u - (x - 0.7 * y)).norm() == doctest::Approx(0.0));
  }
  SUBCASE("scalar case against the derived value") {
    Eigen::VectorXd x1(1), y1(1);
    x1 << 0.0;
    y1 << 1.0;
    const Eigen::VectorXd u = prox_l1(x1, y1, 1.0, 0.5, {true});
    CHECK(u[0] == doctest::Approx(-0.5));
  }
  SUBCASE("mask false leaves the gradient step") {
    const Eigen::VectorXd u =
        prox_l1(x, y, 1.0, 10.0, {false, false, false});
    CHECK((u - (x - y)).norm() == doctest::Approx(0.0));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(prox_l1(x, y, 0.0, 0.5, mask), DomainError);
    CHECK_THROWS_AS(prox_l1(x, y.head(2), 1.0, 0.5, mask), DimensionError);
  }
}

TEST_CASE("prox_l1 optimality against random perturbations") {
  Rng rng(5150);
  Eigen::VectorXd x(6), y(6);
  for (Eigen::Index j = 0; j < 6; ++j) {
    x[j] = rng.normal();
    y[j] = rng.normal();
  }
  std::vector<bool> mask{false, true, true, true, false, true};
  const double c = 0.35, lambda = 0.8;
  const Eigen::VectorXd u = prox_l1(x, y, c, lambda, mask);
  auto objective = [&](const Eigen::VectorXd& v) {
    double val = y.dot(v) + (v - x).squaredNorm() / (2.0 * c);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      if (mask[static_cast<std::size_t>(j)]) val += lambda * std::abs(v[j]);
    }
    return val;
  };
  const double base = objective(u);
  for (int i = 0; i < 10000; ++i) {
    Eigen::VectorXd pert = u;
    for (Eigen::Index j = 0; j < 6; ++j) {
      pert[j] += 0.2 * (rng.uniform() - 0.5);
    }
    CHECK(base <= objective(pert) + 1e-12);
  }
}
