#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tiestrength/model.hpp"

namespace tie {

class SingularDesignError : public Error {
 public:
  using Error::Error;
};

class PerfectFitError : public Error {
 public:
  using Error::Error;
};

// Ordinary least squares fit with an intercept. Index 0 of every vector is
// the intercept; index i+1 is predictor column i.
struct OLSFit {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd t_values;
  double residual_variance = 0.0;
  Eigen::Index n_observations = 0;
  Eigen::Index n_predictors = 0;
};

// Coefficients only (intercept first), via column-pivoted Householder QR of
// the design matrix. Throws SingularDesignError on rank deficiency and Error
// on shape problems. Succeeds on perfect fits.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// Full fit with standard errors from the unbiased residual variance
// RSS / (n - p - 1) and diag((X'X)^-1) = diag(R^-1 R^-T). Requires
// n > p + 1. Throws PerfectFitError when the residuals vanish.
OLSFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// |t| of every predictor; the intercept is dropped.
std::vector<double> lr_importances(const OLSFit& fit);

}  // namespace tie
