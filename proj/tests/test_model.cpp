#include <doctest.h>

#include <cmath>

#include "agsparse/errors.hpp"
#include "agsparse/model.hpp"
#include "agsparse/rng.hpp"
#include "test_util.hpp"

using namespace agsparse;

namespace {

double fd_partial(const Dataset& data, const Eigen::VectorXd& beta,
                  Eigen::Index j, double h = 1e-6) {
  Eigen::VectorXd up = beta, dn = beta;
  up[j] += h;
  dn[j] -= h;
  return (loss(data, up) - loss(data, dn)) / (2.0 * h);
}

}  // namespace

TEST_CASE("standardize basics") {
  Eigen::MatrixXd raw(3, 1);
  raw << 1.0, 2.0, 3.0;
  const auto s = standardize_columns(raw);
  CHECK(s.cols.col(0).mean() == doctest::Approx(0.0).epsilon(1e-12));
  const double sd = std::sqrt(s.cols.col(0).squaredNorm() / 2.0);
  CHECK(sd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.centers[0] == doctest::Approx(2.0));
  CHECK(s.scales[0] == doctest::Approx(1.0));

  // idempotence
  const auto s2 = standardize_columns(s.cols);
  CHECK((s2.cols - s.cols).cwiseAbs().maxCoeff() <= 1e-12);

  // constant column rejected with its index
  Eigen::MatrixXd bad(3, 2);
  bad << 1.0, 5.0, 2.0, 5.0, 3.0, 5.0;
  CHECK_THROWS_WITH_AS(standardize_columns(bad),
                       doctest::Contains("column 1"), DomainError);
}

TEST_CASE("standardize round-trips") {
  Rng rng(31);
  const Eigen::MatrixXd raw =
      5.0 * testutil::random_matrix(rng, 20, 4).array() + 3.0;
  const auto s = standardize_columns(raw);
  const Eigen::MatrixXd back = unstandardize_columns(s.cols, s.centers, s.scales);
  CHECK((back - raw).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("dataset validation") {
  Eigen::MatrixXd raw(4, 2);
  raw << 1, 2, 3, 4, 5, 6, 7, 9;
  Eigen::VectorXd y(4);
  y << 0, 1, 1, 0;
  CHECK_NOTHROW(make_dataset(raw, y, Family::Logistic));
  y[2] = 0.5;
  CHECK_THROWS_AS(make_dataset(raw, y, Family::Logistic), DomainError);
  y[2] = std::nan("");
  CHECK_THROWS_AS(make_dataset(raw, y, Family::Linear), DomainError);
}

TEST_CASE("loss values") {
  // perfect fit
  Dataset d = testutil::random_dataset(1, 12, 3, Family::Linear);
  Rng rng2(2);
  Eigen::VectorXd beta = testutil::random_vector(rng2, 4);
  d.y = d.X * beta;
  CHECK(loss(d, beta) == doctest::Approx(0.0).epsilon(1e-14));

  // 1x1 arithmetic: single ones column, beta 2, y 0 -> 4/2 = 2
  Dataset tiny;
  tiny.X = Eigen::MatrixXd::Ones(1, 2);
  tiny.y = Eigen::VectorXd::Zero(1);
  tiny.family = Family::Linear;
  Eigen::VectorXd b2(2);
  b2 << 2.0, 0.0;
  CHECK(loss(tiny, b2) == doctest::Approx(2.0));

  // logistic at beta = 0 is log 2 regardless of data
  Dataset dl = testutil::random_dataset(3, 15, 4, Family::Logistic);
  CHECK(loss(dl, Eigen::VectorXd::Zero(5)) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("loss gradient") {
  Dataset d = testutil::random_dataset(4, 10, 3, Family::Linear);
  Rng rng(17);
  Eigen::VectorXd beta = testutil::random_vector(rng, 4);
  d.y = d.X * beta;
  CHECK(loss_grad(d, beta).norm() == doctest::Approx(0.0).epsilon(1e-12));

  const Eigen::VectorXd g0 = loss_grad(d, Eigen::VectorXd::Zero(4));
  const Eigen::VectorXd expect = -d.X.transpose() * d.y / double(d.n());
  CHECK((g0 - expect).norm() <= 1e-12);

  // finite differences, both families
  for (Family fam : {Family::Linear, Family::Logistic}) {
    Dataset rd = testutil::random_dataset(11, 5, 3, fam);
    const Eigen::VectorXd b = 0.5 * testutil::random_vector(rng, 4);
    const Eigen::VectorXd g = loss_grad(rd, b);
    for (Eigen::Index j = 0; j < 4; ++j) {
      CHECK(std::abs(g[j] - fd_partial(rd, b, j)) <=
            1e-6 * (1.0 + std::abs(g[j])));
    }
  }
}

TEST_CASE("fused value and gradient agree with the plain paths") {
  for (Family fam : {Family::Linear, Family::Logistic}) {
    Dataset d = testutil::random_dataset(21, 13, 5, fam);
    Rng rng(77);
    const Eigen::VectorXd b = testutil::random_vector(rng, 6);
    Eigen::VectorXd g;
    const double v = loss_value_and_grad(d, b, g);
    CHECK(v == doctest::Approx(loss(d, b)).epsilon(1e-14));
    CHECK((g - loss_grad(d, b)).norm() <= 1e-14);
  }
}

TEST_CASE("smooth_lipschitz exact on the identity design") {
  Dataset d;
  d.X = Eigen::MatrixXd::Identity(2, 2);
  d.y = Eigen::VectorXd::Zero(2);
  d.family = Family::Linear;
  CHECK(smooth_lipschitz(d) == doctest::Approx(0.505).epsilon(1e-9));
  d.family = Family::Logistic;
  CHECK(smooth_lipschitz(d) == doctest::Approx(0.12625).epsilon(1e-9));

  // quadratic scaling
  Dataset d2 = d;
  d2.family = Family::Linear;
  d2.X *= 2.0;
  CHECK(smooth_lipschitz(d2) ==
        doctest::Approx(4.0 * 0.505).epsilon(1e-8));
}

TEST_CASE("gradient lipschitz and convexity probes") {
  Rng rng(404);
  for (Family fam : {Family::Linear, Family::Logistic}) {
    Dataset d = testutil::random_dataset(55, 30, 6, fam);
    const double lip = smooth_lipschitz(d);
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd b1 = testutil::random_vector(rng, 7);
      const Eigen::VectorXd b2 = testutil::random_vector(rng, 7);
      CHECK((loss_grad(d, b1) - loss_grad(d, b2)).norm() <=
            lip * (b1 - b2).norm() + 1e-10);
      if (i < 200) {
        const double t = rng.uniform();
        const Eigen::VectorXd mid = t * b1 + (1.0 - t) * b2;
        CHECK(loss(d, mid) <=
              t * loss(d, b1) + (1.0 - t) * loss(d, b2) + 1e-10);
      }
    }
  }
}

TEST_CASE("standardized fits map back to the raw scale") {
  Rng rng(88);
  const Eigen::MatrixXd raw =
      (testutil::random_matrix(rng, 25, 3) * 3.0).array() + 1.5;
  const Eigen::VectorXd y = testutil::random_vector(rng, 25);
  Dataset std_d = make_dataset(raw, y, Family::Linear);
  const Eigen::VectorXd beta_std = testutil::random_vector(rng, 4);
  const Eigen::VectorXd beta_raw = original_scale_coefficients(std_d, beta_std);

  Dataset raw_d = make_dataset(raw, y, Family::Linear, false);
  const Eigen::VectorXd pred_std = std_d.X * beta_std;
  const Eigen::VectorXd pred_raw = raw_d.X * beta_raw;
  CHECK((pred_std - pred_raw).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("null model start") {
  Dataset d = testutil::random_dataset(9, 30, 4, Family::Linear);
  const Eigen::VectorXd b = null_model_start(d);
  CHECK(b[0] == doctest::Approx(d.y.mean()));
  CHECK(b.tail(4).norm() == 0.0);

  Dataset dl = testutil::random_dataset(10, 30, 4, Family::Logistic);
  const double p = dl.y.mean();
  if (p > 0.0 && p < 1.0) {
    CHECK(null_intercept(dl) == doctest::Approx(std::log(p / (1.0 - p))));
  }
}

TEST_CASE("validation data in training coordinates") {
  Rng rng(3);
  const Eigen::MatrixXd tr = testutil::random_matrix(rng, 30, 3);
  const Eigen::MatrixXd va = testutil::random_matrix(rng, 30, 3);
  const Eigen::VectorXd ytr = testutil::random_vector(rng, 30);
  const Eigen::VectorXd yva = testutil::random_vector(rng, 30);
  Dataset train = make_dataset(tr, ytr, Family::Linear);
  Dataset val = make_dataset_like(va, yva, Family::Linear, train.centers,
                                  train.scales);
  CHECK(val.centers == train.centers);
  // same affine map: reconstructing raw validation columns works
  const Eigen::MatrixXd back = unstandardize_columns(
      val.X.rightCols(3), train.centers, train.scales);
  CHECK((back - va).cwiseAbs().maxCoeff() <= 1e-10);
}
