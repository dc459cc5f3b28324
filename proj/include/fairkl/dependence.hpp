#pragma once

#include <Eigen/Dense>

namespace fairkl {

struct DependenceReport {
  double hsic = 0.0;
  double nocco = 0.0;
  double corr = 0.0;
  double mi = 0.0;
};

// Empirical HSIC, (1/n^2) Tr(M H L H). Both Grams are n x n; negative
// round-off is clamped to zero.
double hsic(const Eigen::MatrixXd& M, const Eigen::MatrixXd& L);

// Same statistic for the linear kernel on predictions:
// (1/n^2) f^T H L H f == hsic(f f^T, L), computed without the outer product.
double hsic_linear_predictions(const Eigen::VectorXd& f,
                               const Eigen::MatrixXd& L);

// Normalized cross-covariance dependence, Tr(R_K R_L) with
// R_M = HMH (HMH + n*eps*I)^{-1}. Solves go through an SPD Cholesky of the
// shifted centered Gram, never an explicit inverse.
double nocco(const Eigen::MatrixXd& K, const Eigen::MatrixXd& L, double eps);

double pearson_corr(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

// Plug-in mutual information (nats) from a 2-D equal-width histogram over
// [min,max] x [min,max], 0 log 0 taken as 0. A constant input gives 0.
double mutual_information_plugin(const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& b, int bins = 16);

double rmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& target);

// 1 - SS_res / SS_tot; requires target with positive variance.
double r_squared(const Eigen::VectorXd& pred, const Eigen::VectorXd& target);

// All four audit measures between a prediction vector and one sensitive
// column, with L the sensitive-kernel Gram used for hsic/nocco.
DependenceReport dependence_report(const Eigen::VectorXd& f,
                                   const Eigen::MatrixXd& L,
                                   const Eigen::VectorXd& s, double eps,
                                   int bins = 16);

}  // namespace fairkl
