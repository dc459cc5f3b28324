#pragma once

#include <Eigen/Dense>

#include "fairkl/kernels.hpp"

namespace fairkl::reference {

// Plain serial versions of the hot kernels. They are written as independent
// naive loops (no shared helpers with the parallel paths) so tests can use
// them as oracles, and the benchmark compares against them.

Eigen::MatrixXd gram_serial(const KernelSpec& spec, const Eigen::MatrixXd& A,
                            const Eigen::MatrixXd& B);
Eigen::MatrixXd gram_serial(const KernelSpec& spec, const Eigen::MatrixXd& A);

Eigen::MatrixXd center_gram_serial(const Eigen::MatrixXd& L);

// (1/n^2) Tr(M H L H) through the expanded sums
//   sum_ij M_ij L_ij / n^2 - 2 sum_i rM_i rL_i / n^3 + sM sL / n^4
double hsic_expanded(const Eigen::MatrixXd& M, const Eigen::MatrixXd& L);

double median_heuristic_serial(const Eigen::MatrixXd& X);

// kernel expansion sum_i alpha_i k(x_i, x), one point at a time
Eigen::VectorXd predict_expansion(const KernelSpec& spec,
                                  const Eigen::MatrixXd& X_train,
                                  const Eigen::VectorXd& alpha,
                                  const Eigen::MatrixXd& X_star);

}  // namespace fairkl::reference
