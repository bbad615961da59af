#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "agsparse/errors.hpp"
#include "agsparse/metrics.hpp"
#include "agsparse/rng.hpp"

using namespace agsparse;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

GroundTruth truth_from(const std::vector<std::size_t>& support, std::size_t q) {
  GroundTruth t;
  t.beta_true = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q) + 1);
  for (std::size_t j : support) {
    t.beta_true[static_cast<Eigen::Index>(j)] = 1.0;
  }
  t.support = support;
  return t;
}

Eigen::VectorXd hat_from(const std::vector<std::size_t>& sel, std::size_t q) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(q) + 1);
  for (std::size_t j : sel) b[static_cast<Eigen::Index>(j)] = 0.5;
  return b;
}

}  // namespace

TEST_CASE("recovery metrics on the worked example") {
  // A = {1,2}, Ahat = {1,3}, q = 4
  const GroundTruth t = truth_from({1, 2}, 4);
  const RecoveryMetrics m = recovery_metrics(t, hat_from({1, 3}, 4), 1e-8);
  REQUIRE(m.ppv.has_value());
  REQUIRE(m.npv.has_value());
  CHECK(*m.ppv == doctest::Approx(0.5));
  CHECK(*m.npv == doctest::Approx(0.5));
  CHECK(m.active_size == 2);
}

TEST_CASE("perfect recovery and exact coefficients") {
  const GroundTruth t = truth_from({2, 5}, 6);
  const RecoveryMetrics m = recovery_metrics(t, t.beta_true, 1e-8);
  CHECK(*m.ppv == 1.0);
  CHECK(*m.npv == 1.0);
  CHECK(m.scaled_error == 0.0);
  CHECK(m.active_size == 2);
}

TEST_CASE("undefined ratios are missing, not zero") {
  const GroundTruth t = truth_from({1}, 4);
  const RecoveryMetrics empty = recovery_metrics(t, hat_from({}, 4), 1e-8);
  CHECK_FALSE(empty.ppv.has_value());
  CHECK(empty.npv.has_value());

  const RecoveryMetrics full = recovery_metrics(t, hat_from({1, 2, 3, 4}, 4), 1e-8);
  CHECK(full.ppv.has_value());
  CHECK_FALSE(full.npv.has_value());
}

TEST_CASE("metrics match brute-force set counting on random pairs") {
  Rng rng(314);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t q = 3 + static_cast<std::size_t>(rng.uniform() * 20);
    std::set<std::size_t> a_set, hat_set;
    for (std::size_t j = 1; j <= q; ++j) {
      if (rng.uniform() < 0.3) a_set.insert(j);
      if (rng.uniform() < 0.3) hat_set.insert(j);
    }
    if (a_set.empty()) a_set.insert(1);
    const GroundTruth t =
        truth_from({a_set.begin(), a_set.end()}, q);
    const RecoveryMetrics m =
        recovery_metrics(t, hat_from({hat_set.begin(), hat_set.end()}, q), 1e-8);

    std::size_t tp = 0, tn = 0;
    for (std::size_t j = 1; j <= q; ++j) {
      const bool in_a = a_set.count(j) > 0;
      const bool in_h = hat_set.count(j) > 0;
      if (in_a && in_h) ++tp;
      if (!in_a && !in_h) ++tn;
    }
    if (hat_set.empty()) {
      CHECK_FALSE(m.ppv.has_value());
    } else {
      CHECK(*m.ppv == doctest::Approx(double(tp) / double(hat_set.size())));
    }
    const std::size_t comp = q - hat_set.size();
    if (comp == 0) {
      CHECK_FALSE(m.npv.has_value());
    } else {
      CHECK(*m.npv == doctest::Approx(double(tn) / double(comp)));
    }
    CHECK(m.active_size == hat_set.size());
  }
}

TEST_CASE("zero_tol separates support from drift") {
  const GroundTruth t = truth_from({1}, 3);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(4);
  b[1] = 1.0;
  b[2] = 5e-9;   // below default zero_tol
  b[3] = 2e-8;   // above it
  const RecoveryMetrics m = recovery_metrics(t, b, 1e-8);
  CHECK(m.active_size == 2);
}

TEST_CASE("iterations to target") {
  std::vector<TracePoint> trace;
  for (int k = 1; k <= 300; ++k) {
    trace.push_back({1000.0 / k, 0.0});
  }
  const TargetResult hit = iterations_to_target(trace, 1000.0 / 137.0);
  CHECK_FALSE(hit.censored);
  CHECK(hit.iteration == 137);

  // oscillating trace: first touch counts
  std::vector<TracePoint> wavy{{5, 0}, {2, 0}, {4, 0}, {1, 0}};
  CHECK(iterations_to_target(wavy, 2.5).iteration == 2);

  CHECK(iterations_to_target(wavy, 0.5).censored);
  CHECK_THROWS_AS(iterations_to_target({}, 1.0), DomainError);
}

TEST_CASE("median") {
  CHECK(sample_median({5.0}) == 5.0);
  CHECK(sample_median({3.0, 1.0}) == 2.0);
  CHECK(sample_median({9.0, 1.0, 5.0}) == 5.0);
  CHECK_THROWS_AS(sample_median({}), DomainError);
}

TEST_CASE("bootstrap median ci") {
  SUBCASE("constant sample collapses") {
    const BootstrapCI ci = bootstrap_median_ci({5, 5, 5, 5}, 500, 0.95, 1);
    CHECK(ci.median == 5.0);
    CHECK(ci.lo == 5.0);
    CHECK(ci.hi == 5.0);
    CHECK_FALSE(ci.breakdown);
  }
  SUBCASE("1..100 has a tight interval around 50.5") {
    std::vector<double> samples(100);
    for (int i = 0; i < 100; ++i) samples[i] = i + 1.0;
    const BootstrapCI ci = bootstrap_median_ci(samples, 1000, 0.95, 42);
    CHECK(ci.median == doctest::Approx(50.5));
    CHECK(ci.lo >= 40.0);
    CHECK(ci.hi <= 61.0);
    CHECK(ci.lo < ci.hi);
  }
  SUBCASE("deterministic per seed") {
    std::vector<double> samples{3, 1, 4, 1, 5, 9, 2, 6};
    const BootstrapCI a = bootstrap_median_ci(samples, 200, 0.9, 7);
    const BootstrapCI b = bootstrap_median_ci(samples, 200, 0.9, 7);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
    const BootstrapCI c = bootstrap_median_ci(samples, 200, 0.9, 8);
    CHECK((a.lo != c.lo || a.hi != c.hi));
  }
  SUBCASE("censoring past one half breaks the median down") {
    const BootstrapCI ci =
        bootstrap_median_ci({3.0, kInf, kInf, kInf, 2.0}, 100, 0.95, 1);
    CHECK(ci.breakdown);
    CHECK(std::isinf(ci.median));
    CHECK(std::isnan(ci.lo));
  }
  SUBCASE("mild censoring keeps a finite median") {
    const BootstrapCI ci =
        bootstrap_median_ci({3.0, 4.0, kInf, 2.0, 1.0}, 200, 0.95, 1);
    CHECK_FALSE(ci.breakdown);
    CHECK(ci.median == 3.0);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(bootstrap_median_ci({}, 100, 0.95, 0), DomainError);
    CHECK_THROWS_AS(bootstrap_median_ci({1.0}, 100, 1.5, 0), DomainError);
  }
}
