#pragma once

#include <Eigen/Dense>

#include "fairkl/kernels.hpp"

namespace fairkl {

// Kernel ridge regression with a cross-covariance (statistical dependence)
// penalty on the predictions. The fitted objective is
//   (1/n) ||y - K a||^2 + (lambda/n) a^T K a + (eta/n^2) a^T K HLH K a
// whose stationary point solves (K + lambda I + (eta/n) HLH K) a = y.
// eta = 0 reduces to plain KRR.
struct FairKrrConfig {
  KernelSpec kernel_x;
  KernelSpec kernel_s;
  double lambda = 1.0;
  double eta = 0.0;
  // subtract the target mean before solving and add it back at prediction;
  // keeps the penalty (which only sees centered quantities) and the loss on
  // the same footing
  bool center_targets = true;
};

struct FairKrrModel {
  FairKrrConfig config;
  Eigen::MatrixXd X_train;
  Eigen::VectorXd alpha;
  double y_mean = 0.0;
  Eigen::MatrixXd centered_L;  // HLH on the training sensitive values
  // diagnostics at the fitted alpha
  double objective_value = 0.0;
  double in_sample_rmse = 0.0;
  double in_sample_hsic = 0.0;
};

FairKrrModel fit_fkl(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::MatrixXd& S, const FairKrrConfig& config);

Eigen::VectorXd predict_fkl(const FairKrrModel& model,
                            const Eigen::MatrixXd& X_star);

// Objective above evaluated at an arbitrary coefficient vector (y here is the
// vector the solve actually saw, i.e. centered when the model centers).
double fkl_objective(const Eigen::MatrixXd& K, const Eigen::MatrixXd& centered_L,
                     const Eigen::VectorXd& y, double lambda, double eta,
                     const Eigen::VectorXd& alpha);

// Finite-feature version:
//   (1/n) ||y - X b||^2 + (lambda/n) ||b||^2 + eta ||Cov_sx b||^2
// solved by (X^T X + lambda I + n eta Cov_xs Cov_sx) b = X^T y, where
// Cov_sx = (1/n) S^T H X.
struct FairLinearModel {
  Eigen::VectorXd beta;
  double y_mean = 0.0;
  bool centered = true;
};

FairLinearModel fit_fair_linear(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& y,
                                const Eigen::MatrixXd& S, double lambda,
                                double eta, bool center_targets = true);

Eigen::VectorXd predict_fair_linear(const FairLinearModel& model,
                                    const Eigen::MatrixXd& X_star);

// (1/n) G^T H F, the empirical cross-covariance of two column blocks.
Eigen::MatrixXd empirical_cross_covariance(const Eigen::MatrixXd& F,
                                           const Eigen::MatrixXd& G);

}  // namespace fairkl
