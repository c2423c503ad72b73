#include <gtest/gtest.h>

#include <cmath>

#include "ols_oracle.hpp"
#include "tiestrength/reference_model.hpp"
#include "tiestrength/regression.hpp"
#include "tiestrength/rng.hpp"

namespace tie {
namespace {

TEST(Ols, PerfectFitIsAnError) {
  Eigen::MatrixXd X(6, 2);
  Eigen::VectorXd y(6);
  for (int i = 0; i < 6; ++i) {
    y(i) = i * 1.5 + 2;
    X(i, 0) = y(i);
    X(i, 1) = (i * i) % 5;
  }
  EXPECT_THROW(fit_ols(X, y), PerfectFitError);
}

TEST(Ols, ConstantTargetGivesZeroSlopes) {
  Rng rng(4);
  Eigen::MatrixXd X(20, 3);
  for (Eigen::Index i = 0; i < X.rows(); ++i)
    for (Eigen::Index j = 0; j < X.cols(); ++j) X(i, j) = rng.uniform();
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 2.5);
  const Eigen::VectorXd beta = least_squares(X, y);
  EXPECT_NEAR(beta(0), 2.5, 1e-12);
  for (Eigen::Index j = 1; j < beta.size(); ++j) EXPECT_NEAR(beta(j), 0.0, 1e-12);
  // Zero residual variance leaves t undefined.
  EXPECT_THROW(fit_ols(X, y), PerfectFitError);
}

TEST(Ols, Errors) {
  Eigen::MatrixXd X(5, 2);
  X << 1, 2, 2, 4, 3, 6, 4, 8, 5, 10;  // second column = 2 * first
  Eigen::VectorXd y(5);
  y << 1, 3, 2, 5, 4;
  EXPECT_THROW(fit_ols(X, y), SingularDesignError);
  EXPECT_THROW(fit_ols(X.topRows(3), y.head(3)), Error);
  EXPECT_THROW(fit_ols(X, y.head(4)), Error);
}

TEST(Ols, MatchesNormalEquationsOracle) {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    const auto inst = testing::random_ols_instance(seed, 50, 3);
    const OLSFit fit = fit_ols(inst.X, inst.y);
    const auto oracle = testing::normal_equations_oracle(inst.X, inst.y);
    for (Eigen::Index j = 0; j < 4; ++j) {
      EXPECT_NEAR(fit.coefficients(j), oracle.coefficients(j), 1e-9 * std::abs(oracle.coefficients(j)));
      EXPECT_NEAR(fit.standard_errors(j), oracle.standard_errors(j), 1e-9 * std::abs(oracle.standard_errors(j)));
      EXPECT_NEAR(fit.t_values(j), oracle.t_values(j), 1e-9 * std::abs(oracle.t_values(j)));
      EXPECT_DOUBLE_EQ(fit.t_values(j), fit.coefficients(j) / fit.standard_errors(j));
    }
    EXPECT_EQ(fit.n_observations, 50);
    EXPECT_EQ(fit.n_predictors, 3);
  }
}

TEST(Ols, ResidualsOrthogonalToDesign) {
  const auto inst = testing::random_ols_instance(7, 80, 4);
  const OLSFit fit = fit_ols(inst.X, inst.y);
  Eigen::MatrixXd design(inst.X.rows(), 5);
  design.col(0).setOnes();
  design.rightCols(4) = inst.X;
  const Eigen::VectorXd residuals = inst.y - design * fit.coefficients;
  const double scale = inst.y.norm() * design.norm();
  for (Eigen::Index j = 0; j < design.cols(); ++j)
    EXPECT_LT(std::abs(design.col(j).dot(residuals)), 1e-8 * scale);
}

TEST(Ols, RowPermutationInvariance) {
  const auto inst = testing::random_ols_instance(8, 60, 3);
  std::vector<int> order(60);
  for (int i = 0; i < 60; ++i) order[i] = i;
  Rng rng(1);
  rng.shuffle(order);
  Eigen::MatrixXd X2(60, 3);
  Eigen::VectorXd y2(60);
  for (int i = 0; i < 60; ++i) {
    X2.row(i) = inst.X.row(order[i]);
    y2(i) = inst.y(order[i]);
  }
  const auto a = fit_ols(inst.X, inst.y);
  const auto b = fit_ols(X2, y2);
  for (Eigen::Index j = 0; j < 4; ++j) {
    EXPECT_NEAR(a.coefficients(j), b.coefficients(j), 1e-12 * std::max(1.0, std::abs(a.coefficients(j))));
    EXPECT_NEAR(a.t_values(j), b.t_values(j), 1e-12 * std::max(1.0, std::abs(a.t_values(j))));
  }
}

TEST(LrImportances, AbsoluteValueWithoutIntercept) {
  OLSFit fit;
  fit.t_values = Eigen::Vector3d(5.0, -3.0, 2.0);
  EXPECT_EQ(lr_importances(fit), (std::vector<double>{3.0, 2.0}));
  fit.t_values = Eigen::Vector3d(1.0, 0.0, 0.0);
  EXPECT_EQ(lr_importances(fit), (std::vector<double>{0.0, 0.0}));
}

TEST(LrImportances, ReferenceTValuesLoadedAsStub) {
  const auto t = reference::t_values();
  OLSFit stub;
  stub.t_values.resize(static_cast<Eigen::Index>(t.size() + 1));
  stub.t_values(0) = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) stub.t_values(static_cast<Eigen::Index>(i + 1)) = t[i];
  const auto importances = lr_importances(stub);
  EXPECT_EQ(importances, t);
  EXPECT_EQ(importances[6], 12.581);
}

}  // namespace
}  // namespace tie
