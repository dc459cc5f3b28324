#include "fairkl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fairkl {

namespace {

void check_spec(const KernelSpec& spec, Eigen::Index dim) {
  switch (spec.family) {
    case KernelFamily::Rbf:
      if (!(spec.theta > 0.0))
        throw std::invalid_argument("kernel: theta must be positive");
      break;
    case KernelFamily::Ard:
      if (spec.lengthscales.size() != static_cast<size_t>(dim))
        throw std::invalid_argument(
            "kernel: need one lengthscale per dimension, got " +
            std::to_string(spec.lengthscales.size()) + " for d=" +
            std::to_string(dim));
      for (double l : spec.lengthscales)
        if (!(l > 0.0))
          throw std::invalid_argument("kernel: lengthscales must be positive");
      break;
    case KernelFamily::Linear:
      break;
  }
}

void check_finite(const Eigen::MatrixXd& A, const char* what) {
  if (!A.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

inline double eval_row(const KernelSpec& spec, const Eigen::MatrixXd& A,
                       Eigen::Index i, const Eigen::MatrixXd& B,
                       Eigen::Index j) {
  const Eigen::Index d = A.cols();
  switch (spec.family) {
    case KernelFamily::Rbf: {
      double s = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double diff = A(i, k) - B(j, k);
        s += diff * diff;
      }
      return std::exp(-s / (spec.theta * spec.theta));
    }
    case KernelFamily::Ard: {
      double s = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) {
        const double diff = (A(i, k) - B(j, k)) / spec.lengthscales[k];
        s += diff * diff;
      }
      return std::exp(-s);
    }
    case KernelFamily::Linear: {
      double s = 0.0;
      for (Eigen::Index k = 0; k < d; ++k) s += A(i, k) * B(j, k);
      return s;
    }
  }
  return 0.0;
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Eigen::RowVectorXd& a,
                   const Eigen::RowVectorXd& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("kernel_eval: dimension mismatch");
  check_spec(spec, a.size());
  return eval_row(spec, a, 0, b, 0);
}

GramMatrix gram(const KernelSpec& spec, const Eigen::MatrixXd& A) {
  check_finite(A, "gram");
  check_spec(spec, A.cols());
  const Eigen::Index n = A.rows();
  GramMatrix g;
  g.symmetric = true;
  g.values.resize(n, n);
#pragma omp parallel for schedule(guided)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j)
      g.values(i, j) = eval_row(spec, A, i, A, j);
  }
  // mirror lower -> upper so both halves are the same doubles
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) g.values(i, j) = g.values(j, i);
  return g;
}

GramMatrix gram(const KernelSpec& spec, const Eigen::MatrixXd& A,
                const Eigen::MatrixXd& B) {
  if (A.cols() != B.cols())
    throw std::invalid_argument("gram: dimension mismatch between sample sets");
  check_finite(A, "gram");
  check_finite(B, "gram");
  check_spec(spec, A.cols());
  GramMatrix g;
  g.symmetric = false;
  g.values.resize(A.rows(), B.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j)
      g.values(i, j) = eval_row(spec, A, i, B, j);
  return g;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& B) {
  if (A.cols() != B.cols())
    throw std::invalid_argument("squared_distances: dimension mismatch");
  Eigen::MatrixXd D2(A.rows(), B.rows());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < A.cols(); ++k) {
        const double diff = A(i, k) - B(j, k);
        s += diff * diff;
      }
      D2(i, j) = s;
    }
  return D2;
}

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd D2(n, n);
#pragma omp parallel for schedule(guided)
  for (Eigen::Index i = 0; i < n; ++i) {
    D2(i, i) = 0.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < A.cols(); ++k) {
        const double diff = A(i, k) - A(j, k);
        s += diff * diff;
      }
      D2(i, j) = s;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) D2(i, j) = D2(j, i);
  return D2;
}

Eigen::MatrixXd rbf_gram_from_sqdist(const Eigen::MatrixXd& D2, double theta) {
  if (!(theta > 0.0))
    throw std::invalid_argument("rbf_gram_from_sqdist: theta must be positive");
  const double inv = 1.0 / (theta * theta);
  Eigen::MatrixXd K(D2.rows(), D2.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < D2.rows(); ++i)
    for (Eigen::Index j = 0; j < D2.cols(); ++j)
      K(i, j) = std::exp(-D2(i, j) * inv);
  return K;
}

double median_heuristic(const Eigen::MatrixXd& X) {
  const Eigen::Index n = X.rows();
  if (n < 2)
    throw std::invalid_argument("median_heuristic: need at least two points");
  check_finite(X, "median_heuristic");
  const Eigen::Index m = n * (n - 1) / 2;
  std::vector<double> dist(static_cast<size_t>(m));
#pragma omp parallel for schedule(guided)
  for (Eigen::Index i = 1; i < n; ++i) {
    // pairs (i, j<i) occupy a contiguous block, so writes never collide
    Eigen::Index base = i * (i - 1) / 2;
    for (Eigen::Index j = 0; j < i; ++j) {
      double s = 0.0;
      for (Eigen::Index k = 0; k < X.cols(); ++k) {
        const double diff = X(i, k) - X(j, k);
        s += diff * diff;
      }
      dist[static_cast<size_t>(base + j)] = std::sqrt(s);
    }
  }
  bool any_positive = false;
  for (double d : dist)
    if (d > 0.0) {
      any_positive = true;
      break;
    }
  if (!any_positive)
    throw std::invalid_argument(
        "median_heuristic: all points coincide, no usable lengthscale");
  const size_t mid = (dist.size() - 1) / 2;  // lower middle for even counts
  std::nth_element(dist.begin(), dist.begin() + mid, dist.end());
  return dist[mid];
}

Eigen::MatrixXd centering_matrix(int n) {
  if (n < 1) throw std::invalid_argument("centering_matrix: n must be >= 1");
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  H.array() -= 1.0 / static_cast<double>(n);
  return H;
}

Eigen::MatrixXd center_gram(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols())
    throw std::invalid_argument("center_gram: matrix must be square");
  const Eigen::Index n = L.rows();
  Eigen::VectorXd row_mean(n), col_mean(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0, c = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      r += L(i, j);
      c += L(j, i);
    }
    row_mean(i) = r / static_cast<double>(n);
    col_mean(i) = c / static_cast<double>(n);
  }
  double grand = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) grand += row_mean(i);
  grand /= static_cast<double>(n);

  Eigen::MatrixXd out(n, n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out(i, j) = L(i, j) - row_mean(i) - col_mean(j) + grand;
  // symmetrize: round-off from the mean subtractions should not leak
  // asymmetry into eigensolves
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = 0.5 * (out(i, j) + out(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

}  // namespace fairkl
