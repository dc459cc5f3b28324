#include "fairkl/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fairkl::reference {

namespace {

double eval(const KernelSpec& spec, const Eigen::RowVectorXd& a,
            const Eigen::RowVectorXd& b) {
  switch (spec.family) {
    case KernelFamily::Rbf: {
      double s = 0.0;
      for (Eigen::Index k = 0; k < a.size(); ++k)
        s += (a(k) - b(k)) * (a(k) - b(k));
      return std::exp(-s / (spec.theta * spec.theta));
    }
    case KernelFamily::Ard: {
      double s = 0.0;
      for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double d = (a(k) - b(k)) / spec.lengthscales[k];
        s += d * d;
      }
      return std::exp(-s);
    }
    case KernelFamily::Linear:
      return a.dot(b);
  }
  return 0.0;
}

}  // namespace

Eigen::MatrixXd gram_serial(const KernelSpec& spec, const Eigen::MatrixXd& A,
                            const Eigen::MatrixXd& B) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j)
      K(i, j) = eval(spec, A.row(i), B.row(j));
  return K;
}

Eigen::MatrixXd gram_serial(const KernelSpec& spec, const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd K(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      K(i, j) = eval(spec, A.row(i), A.row(j));
      K(j, i) = K(i, j);
    }
  return K;
}

Eigen::MatrixXd center_gram_serial(const Eigen::MatrixXd& L) {
  const Eigen::Index n = L.rows();
  const Eigen::MatrixXd H =
      Eigen::MatrixXd::Identity(n, n) -
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::MatrixXd HL(n, n), HLH(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) s += H(i, k) * L(k, j);
      HL(i, j) = s;
    }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < n; ++k) s += HL(i, k) * H(k, j);
      HLH(i, j) = s;
    }
  return HLH;
}

double hsic_expanded(const Eigen::MatrixXd& M, const Eigen::MatrixXd& L) {
  const Eigen::Index n = M.rows();
  if (L.rows() != n || L.cols() != n || M.cols() != n)
    throw std::invalid_argument("hsic_expanded: size mismatch");
  const double nd = static_cast<double>(n);
  double dot = 0.0, sM = 0.0, sL = 0.0, cross = 0.0;
  std::vector<double> rM(n, 0.0), rL(n, 0.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      dot += M(i, j) * L(i, j);
      rM[i] += M(i, j);
      rL[i] += L(i, j);
    }
  for (Eigen::Index i = 0; i < n; ++i) {
    sM += rM[i];
    sL += rL[i];
    cross += rM[i] * rL[i];
  }
  return dot / (nd * nd) - 2.0 * cross / (nd * nd * nd) +
         sM * sL / (nd * nd * nd * nd);
}

double median_heuristic_serial(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  if (n < 2)
    throw std::invalid_argument("median_heuristic_serial: need two points");
  std::vector<double> dist;
  dist.reserve(static_cast<size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 1; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j)
      dist.push_back((X.row(i) - X.row(j)).norm());
  std::sort(dist.begin(), dist.end());
  return dist[(dist.size() - 1) / 2];
}

Eigen::VectorXd predict_expansion(const KernelSpec& spec,
                                  const Eigen::MatrixXd& X_train,
                                  const Eigen::VectorXd& alpha,
                                  const Eigen::MatrixXd& X_star) {
  Eigen::VectorXd out(X_star.rows());
  for (Eigen::Index m = 0; m < X_star.rows(); ++m) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < X_train.rows(); ++i)
      s += alpha(i) * eval(spec, X_train.row(i), X_star.row(m));
    out(m) = s;
  }
  return out;
}

}  // namespace fairkl::reference
