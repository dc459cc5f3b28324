#pragma once

#include <Eigen/Dense>
#include <vector>

namespace fairkl {

// Rbf: k(x,x') = exp(-||x-x'||^2 / theta^2)
// Ard: k(x,x') = exp(-sum_k (x_k-x'_k)^2 / theta_k^2)
// Linear: k(x,x') = <x,x'>
// Ard with all lengthscales equal to theta reproduces Rbf exactly.
enum class KernelFamily { Rbf, Ard, Linear };

struct KernelSpec {
  KernelFamily family = KernelFamily::Rbf;
  double theta = 1.0;                  // Rbf lengthscale
  std::vector<double> lengthscales;    // Ard, one per input dimension

  static KernelSpec rbf(double theta) {
    KernelSpec s;
    s.family = KernelFamily::Rbf;
    s.theta = theta;
    return s;
  }
  static KernelSpec ard(std::vector<double> ls) {
    KernelSpec s;
    s.family = KernelFamily::Ard;
    s.lengthscales = std::move(ls);
    return s;
  }
  static KernelSpec linear() {
    KernelSpec s;
    s.family = KernelFamily::Linear;
    return s;
  }
};

struct GramMatrix {
  Eigen::MatrixXd values;
  bool symmetric = false;
};

double kernel_eval(const KernelSpec& spec, const Eigen::RowVectorXd& a,
                   const Eigen::RowVectorXd& b);

// Symmetric Gram of one sample set. Rows are partitioned across OpenMP
// workers; each entry is computed independently, so the result is bitwise
// identical for any worker count. The upper triangle is mirrored, never
// recomputed.
GramMatrix gram(const KernelSpec& spec, const Eigen::MatrixXd& A);

// Cross Gram, values(i,j) = k(A.row(i), B.row(j)).
GramMatrix gram(const KernelSpec& spec, const Eigen::MatrixXd& A,
                const Eigen::MatrixXd& B);

// Median of the n(n-1)/2 pairwise Euclidean distances (lower middle order
// statistic for even counts). Throws if every pair coincides.
double median_heuristic(const Eigen::MatrixXd& X);

Eigen::MatrixXd centering_matrix(int n);

// H L H via the row/column-mean expansion, then symmetrized as (M + M^T)/2
// to keep downstream eigensolves clean.
Eigen::MatrixXd center_gram(const Eigen::MatrixXd& L);

// Squared Euclidean distance matrix (self-pairs exactly zero); shared by the
// Gram builders and reused by sweeps that rebuild Grams across a theta grid.
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& B);
Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A);

// Gram from a precomputed squared-distance matrix (Rbf only).
Eigen::MatrixXd rbf_gram_from_sqdist(const Eigen::MatrixXd& D2, double theta);

}  // namespace fairkl
