#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "fairkl/kernels.hpp"

namespace fairkl {

// GP regression whose prior covariance is deflated along directions that
// covary with the sensitive variables:
//   k*(x,x') = k(x,x') - k_Xx^T G k_Xx',  G = HLH (K HLH + delta^{-1} I)^{-1}.
// delta = 0 is the plain GP. With delta = eta / (lambda n) the posterior mean
// coincides with the penalized kernel ridge fit at weight eta.
struct FairGpConfig {
  KernelSpec kernel_x;
  KernelSpec kernel_s;
  double lambda = 0.1;  // observation noise variance
  double delta = 0.0;
  bool center_targets = true;
};

struct FairGpModel {
  FairGpConfig config;
  Eigen::MatrixXd X_train;
  Eigen::MatrixXd K_train;      // plain kernel Gram on training inputs
  Eigen::MatrixXd correction;   // G above (empty when delta == 0)
  Eigen::MatrixXd chol;         // lower Cholesky factor of C* + lambda I
  Eigen::VectorXd alpha;        // (C* + lambda I)^{-1} (y - y_mean)
  double y_mean = 0.0;
  double nlml = 0.0;
  double jitter = 0.0;  // diagonal shift the factorization needed
};

struct GpPrediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd var;  // latent-function variance, floored at zero
};

// Cross Gram of the deflated prior kernel between point sets A and B.
// L is the sensitive-kernel Gram on the training rows.
Eigen::MatrixXd fair_prior_kernel_cross(const FairGpConfig& config,
                                        const Eigen::MatrixXd& X_train,
                                        const Eigen::MatrixXd& L,
                                        const Eigen::MatrixXd& A,
                                        const Eigen::MatrixXd& B);

FairGpModel gp_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& S, const FairGpConfig& config);

GpPrediction posterior_predict(const FairGpModel& model,
                               const Eigen::MatrixXd& X_star);

// -1/2 y^T (C*+lambda I)^{-1} y - 1/2 log det(C*+lambda I) - n/2 log 2pi,
// with y centered first when the config says so.
double log_marginal_likelihood(const FairGpConfig& config,
                               const Eigen::MatrixXd& X,
                               const Eigen::VectorXd& y,
                               const Eigen::MatrixXd& S);

struct OptimizerSettings {
  int restarts = 3;
  int max_iters = 60;
  double log_theta_lo = -6.907755278982137;  // log 1e-3
  double log_theta_hi = 6.907755278982137;   // log 1e3
  double log_lambda_lo = -13.815510557964274;  // log 1e-6
  double log_lambda_hi = 4.605170185988092;    // log 1e2
  bool optimize_theta_l = false;  // theta_l stays fixed by default
  double fd_step = 1e-5;          // central-difference step in log-space
  double grad_tol = 1e-5;
  double eta_link = -1.0;  // when >= 0: delta = eta_link / (lambda n)
  std::uint64_t seed = 0;
};

struct OptimizeDiagnostics {
  std::vector<std::string> param_names;
  std::vector<double> start_nlml;  // NLML at each restart's starting point
  double final_nlml = 0.0;
  Eigen::VectorXd final_params;    // log-space
  Eigen::VectorXd final_gradient;  // internal estimate at the optimum
  int best_restart = -1;
};

// Multi-start descent on the NLML over log(theta[, theta_1..theta_d]) and
// log(lambda), derivative estimates by central differences. Deterministic for
// a fixed seed; ties break toward the lowest restart index.
FairGpConfig optimize_hyperparams(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& y,
                                  const Eigen::MatrixXd& S,
                                  const FairGpConfig& base,
                                  const OptimizerSettings& settings,
                                  OptimizeDiagnostics* diag = nullptr);

// The optimizer's own gradient estimator, exposed for verification.
Eigen::VectorXd nlml_fd_gradient(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y,
                                 const Eigen::MatrixXd& S,
                                 const FairGpConfig& base,
                                 const OptimizerSettings& settings,
                                 const Eigen::VectorXd& log_params);

// Per-dimension lengthscales of the fitted kernel, index order.
std::vector<double> ard_relevance_report(const FairGpModel& model);

}  // namespace fairkl
