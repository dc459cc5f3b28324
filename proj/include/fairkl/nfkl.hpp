#pragma once

#include <Eigen/Dense>
#include <optional>

#include "fairkl/kernels.hpp"

namespace fairkl {

// Kernel ridge regression penalized by the normalized (NOCCO-style)
// dependence between predictions and sensitive values. With Lt = HLH and
// W = Lt (Lt + n eps I)^{-1}, the coefficients solve
//   (K + n lambda I + eta W K) a = y.
// Note the ridge convention: lambda multiplies n here, so lambda values are
// comparable with the plain-KRR convention after dividing by n.
struct NfklConfig {
  KernelSpec kernel_x;
  KernelSpec kernel_s;
  double lambda = 0.01;  // per-sample ridge weight
  double eta = 0.0;
  double eps = 1e-6;     // regularizer inside the normalization
  bool center_targets = true;
};

struct NfklModel {
  NfklConfig config;
  Eigen::MatrixXd X_train;
  Eigen::VectorXd alpha;
  double y_mean = 0.0;
  double objective_value = 0.0;
  double in_sample_rmse = 0.0;
  double in_sample_nocco = 0.0;  // normalized dependence of fitted values
};

NfklModel fit_nfkl(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& S, const NfklConfig& config);

Eigen::VectorXd predict_nfkl(const NfklModel& model,
                             const Eigen::MatrixXd& X_star);

// (1/n)||f - y||^2 + lambda a^T K a + eta Tr(R_f R_S), with R_f built from
// the rank-one linear Gram of f. The ridge term is dropped when alpha/K are
// not supplied.
double nocco_objective_value(const Eigen::VectorXd& f, const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& L, double lambda,
                             double eta, double eps,
                             const std::optional<Eigen::VectorXd>& alpha = {},
                             const std::optional<Eigen::MatrixXd>& K = {});

// Fully normalized finite-feature version:
//   b = (X^T X + n lambda I + n eta P)^{-1} X^T y,
//   P = Cxx^{-1/2} Cxs (Css + eps I)^{-1} Csx Cxx^{-1/2},
// inverse square roots by eigendecomposition with eigenvalues floored at eps.
struct FairLinearNoccoModel {
  Eigen::VectorXd beta;
  double y_mean = 0.0;
  bool centered = true;
};

FairLinearNoccoModel fit_fair_linear_nocco(const Eigen::MatrixXd& X,
                                           const Eigen::VectorXd& y,
                                           const Eigen::MatrixXd& S,
                                           double lambda, double eta,
                                           double eps,
                                           bool center_targets = true);

Eigen::VectorXd predict_fair_linear_nocco(const FairLinearNoccoModel& model,
                                          const Eigen::MatrixXd& X_star);

}  // namespace fairkl
