#include "tiestrength/regression.hpp"

#include <cmath>
#include <limits>

namespace tie {
namespace {

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd design(X.rows(), X.cols() + 1);
  design.col(0).setOnes();
  design.rightCols(X.cols()) = X;
  return design;
}

void check_shape(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  if (X.rows() != y.size())
    throw Error("ols: design has " + std::to_string(X.rows()) + " rows but target has " +
                std::to_string(y.size()));
  if (!X.allFinite() || !y.allFinite()) throw Error("ols: non-finite input");
}

}  // namespace

Eigen::VectorXd least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  check_shape(X, y);
  const Eigen::MatrixXd design = with_intercept(X);
  if (design.rows() < design.cols())
    throw Error("ols: too few rows (" + std::to_string(design.rows()) + ") for " +
                std::to_string(design.cols()) + " coefficients");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < design.cols())
    throw SingularDesignError("ols: design matrix is rank deficient (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(design.cols()) + ")");
  return qr.solve(y);
}

OLSFit fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  check_shape(X, y);
  const Eigen::Index n = X.rows();
  const Eigen::Index p = X.cols();
  if (n <= p + 1)
    throw Error("ols: need more than " + std::to_string(p + 1) + " rows, got " + std::to_string(n));

  const Eigen::MatrixXd design = with_intercept(X);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::Index cols = design.cols();
  if (qr.rank() < cols)
    throw SingularDesignError("ols: design matrix is rank deficient (rank " +
                              std::to_string(qr.rank()) + " of " + std::to_string(cols) + ")");

  OLSFit fit;
  fit.n_observations = n;
  fit.n_predictors = p;
  fit.coefficients = qr.solve(y);

  const Eigen::VectorXd residuals = y - design * fit.coefficients;
  const double rss = residuals.squaredNorm();
  const double scale = std::max(y.norm(), std::numeric_limits<double>::min());
  if (std::sqrt(rss) <= 1e-12 * scale)
    throw PerfectFitError("ols: residuals vanish, t-values are undefined");
  fit.residual_variance = rss / static_cast<double>(n - p - 1);

  // (X'X)^-1 = P R^-1 R^-T P' for X P = Q R.
  const auto R = qr.matrixR().topLeftCorner(cols, cols).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd r_inv = R.solve(Eigen::MatrixXd::Identity(cols, cols));
  const Eigen::VectorXd pivoted_diag = r_inv.rowwise().squaredNorm();
  const auto& perm = qr.colsPermutation().indices();

  fit.standard_errors.resize(cols);
  fit.t_values.resize(cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double se = std::sqrt(fit.residual_variance * pivoted_diag(j));
    fit.standard_errors(perm(j)) = se;
  }
  for (Eigen::Index j = 0; j < cols; ++j)
    fit.t_values(j) = fit.coefficients(j) / fit.standard_errors(j);
  return fit;
}

std::vector<double> lr_importances(const OLSFit& fit) {
  std::vector<double> out;
  for (Eigen::Index j = 1; j < fit.t_values.size(); ++j) out.push_back(std::abs(fit.t_values(j)));
  return out;
}

}  // namespace tie
