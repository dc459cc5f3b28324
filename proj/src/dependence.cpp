#include "fairkl/dependence.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fairkl/kernels.hpp"

namespace fairkl {

namespace {

void check_square_pair(const Eigen::MatrixXd& M, const Eigen::MatrixXd& L,
                       const char* what) {
  if (M.rows() != M.cols() || L.rows() != L.cols() || M.rows() != L.rows())
    throw std::invalid_argument(std::string(what) +
                                ": need two square matrices of equal size");
}

}  // namespace

double hsic(const Eigen::MatrixXd& M, const Eigen::MatrixXd& L) {
  check_square_pair(M, L, "hsic");
  const Eigen::Index n = M.rows();
  const Eigen::MatrixXd Lc = center_gram(L);
  // row-partitioned Frobenius dot; per-row partials are summed in index
  // order afterwards so the value is independent of the worker count
  Eigen::VectorXd row_dot(n);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) s += M(i, j) * Lc(i, j);
    row_dot(i) = s;
  }
  double tr = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) tr += row_dot(i);
  const double nd = static_cast<double>(n);
  const double v = tr / (nd * nd);
  return v < 0.0 ? 0.0 : v;
}

double hsic_linear_predictions(const Eigen::VectorXd& f,
                               const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols() || L.rows() != f.size())
    throw std::invalid_argument("hsic_linear_predictions: size mismatch");
  const Eigen::Index n = f.size();
  const double nd = static_cast<double>(n);
  const Eigen::VectorXd fc = f.array() - f.mean();
  double quad = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) s += L(i, j) * fc(j);
    quad += fc(i) * s;
  }
  const double v = quad / (nd * nd);
  return v < 0.0 ? 0.0 : v;
}

double nocco(const Eigen::MatrixXd& K, const Eigen::MatrixXd& L, double eps) {
  check_square_pair(K, L, "nocco");
  if (!(eps > 0.0))
    throw std::invalid_argument("nocco: eps must be positive");
  const Eigen::Index n = K.rows();
  const double shift = static_cast<double>(n) * eps;

  const Eigen::MatrixXd Kc = center_gram(K);
  const Eigen::MatrixXd Lc = center_gram(L);

  // R_M = Mc (Mc + n eps I)^{-1}; both factors share an eigenbasis so R_M is
  // symmetric and the product trace reduces to a Frobenius dot
  auto regularized = [shift](const Eigen::MatrixXd& Mc) {
    Eigen::MatrixXd A = Mc;
    A.diagonal().array() += shift;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success)
      throw std::runtime_error("nocco: shifted Gram is not positive definite");
    return Eigen::MatrixXd(llt.solve(Mc));
  };
  const Eigen::MatrixXd Rk = regularized(Kc);
  const Eigen::MatrixXd Rl = regularized(Lc);
  return (Rk.transpose().array() * Rl.array()).sum();
}

double pearson_corr(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("pearson_corr: need two vectors, length >= 2");
  const Eigen::VectorXd ac = a.array() - a.mean();
  const Eigen::VectorXd bc = b.array() - b.mean();
  const double na = ac.norm(), nb = bc.norm();
  if (na == 0.0 || nb == 0.0)
    throw std::invalid_argument("pearson_corr: constant input");
  return ac.dot(bc) / (na * nb);
}

double mutual_information_plugin(const Eigen::VectorXd& a,
                                 const Eigen::VectorXd& b, int bins) {
  if (a.size() != b.size() || a.size() < 1)
    throw std::invalid_argument("mutual_information_plugin: size mismatch");
  if (bins < 1)
    throw std::invalid_argument("mutual_information_plugin: bins must be >= 1");
  const Eigen::Index n = a.size();
  const double amin = a.minCoeff(), amax = a.maxCoeff();
  const double bmin = b.minCoeff(), bmax = b.maxCoeff();
  if (amin == amax || bmin == bmax) return 0.0;

  auto bin_of = [bins](double v, double lo, double hi) {
    int k = static_cast<int>(static_cast<double>(bins) * (v - lo) / (hi - lo));
    if (k < 0) k = 0;
    if (k >= bins) k = bins - 1;  // right edge falls into the last bin
    return k;
  };

  std::vector<double> joint(static_cast<size_t>(bins) * bins, 0.0);
  std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
  const double w = 1.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int ia = bin_of(a(i), amin, amax);
    const int ib = bin_of(b(i), bmin, bmax);
    joint[static_cast<size_t>(ia) * bins + ib] += w;
    pa[ia] += w;
    pb[ib] += w;
  }
  double mi = 0.0;
  for (int ia = 0; ia < bins; ++ia)
    for (int ib = 0; ib < bins; ++ib) {
      const double p = joint[static_cast<size_t>(ia) * bins + ib];
      if (p > 0.0) mi += p * std::log(p / (pa[ia] * pb[ib]));
    }
  return mi < 0.0 ? 0.0 : mi;
}

double rmse(const Eigen::VectorXd& pred, const Eigen::VectorXd& target) {
  if (pred.size() != target.size() || pred.size() == 0)
    throw std::invalid_argument("rmse: size mismatch");
  return std::sqrt((pred - target).squaredNorm() /
                   static_cast<double>(pred.size()));
}

double r_squared(const Eigen::VectorXd& pred, const Eigen::VectorXd& target) {
  if (pred.size() != target.size() || pred.size() < 2)
    throw std::invalid_argument("r_squared: size mismatch");
  const double mean = target.mean();
  const double ss_tot = (target.array() - mean).matrix().squaredNorm();
  if (ss_tot == 0.0)
    throw std::invalid_argument("r_squared: target has zero variance");
  const double ss_res = (target - pred).squaredNorm();
  return 1.0 - ss_res / ss_tot;
}

DependenceReport dependence_report(const Eigen::VectorXd& f,
                                   const Eigen::MatrixXd& L,
                                   const Eigen::VectorXd& s, double eps,
                                   int bins) {
  DependenceReport r;
  r.hsic = hsic_linear_predictions(f, L);
  r.nocco = nocco(f * f.transpose(), L, eps);
  // a constant prediction vector carries no sensitive information; report 0
  // rather than propagate the undefined-correlation error
  const double fsd = (f.array() - f.mean()).matrix().norm();
  r.corr = fsd == 0.0 ? 0.0 : pearson_corr(f, s);
  r.mi = mutual_information_plugin(f, s, bins);
  return r;
}

}  // namespace fairkl
