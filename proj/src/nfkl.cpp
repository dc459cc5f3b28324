#include "fairkl/nfkl.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <stdexcept>

#include "fairkl/dependence.hpp"

namespace fairkl {

namespace {

void check_inputs(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  const Eigen::MatrixXd& S, double lambda, double eta,
                  double eps, const char* what) {
  if (X.rows() != y.size() || X.rows() != S.rows())
    throw std::invalid_argument(std::string(what) + ": row count mismatch");
  if (X.rows() < 1)
    throw std::invalid_argument(std::string(what) + ": empty training set");
  if (!(lambda > 0.0))
    throw std::invalid_argument(std::string(what) + ": lambda must be > 0");
  if (!(eta >= 0.0))
    throw std::invalid_argument(std::string(what) + ": eta must be >= 0");
  if (!(eps > 0.0))
    throw std::invalid_argument(std::string(what) + ": eps must be > 0");
  if (!X.allFinite() || !y.allFinite() || !S.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite inputs");
}

// W = Lt (Lt + n eps I)^{-1} via an SPD solve; symmetric because both factors
// share an eigenbasis
Eigen::MatrixXd normalized_penalty(const Eigen::MatrixXd& centered_L,
                                   double eps) {
  const Eigen::Index n = centered_L.rows();
  Eigen::MatrixXd A = centered_L;
  A.diagonal().array() += static_cast<double>(n) * eps;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error(
        "fit_nfkl: shifted sensitive Gram is not positive definite");
  Eigen::MatrixXd W = llt.solve(centered_L);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = 0.5 * (W(i, j) + W(j, i));
      W(i, j) = v;
      W(j, i) = v;
    }
  return W;
}

}  // namespace

NfklModel fit_nfkl(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& S, const NfklConfig& config) {
  check_inputs(X, y, S, config.lambda, config.eta, config.eps, "fit_nfkl");
  const Eigen::Index n = X.rows();
  const double nd = static_cast<double>(n);

  NfklModel model;
  model.config = config;
  model.X_train = X;
  model.y_mean = config.center_targets ? y.mean() : 0.0;
  const Eigen::VectorXd yc = y.array() - model.y_mean;

  const Eigen::MatrixXd K = gram(config.kernel_x, X).values;
  const Eigen::MatrixXd centered_L =
      center_gram(gram(config.kernel_s, S).values);

  Eigen::MatrixXd A = K;
  A.diagonal().array() += nd * config.lambda + 1e-10 * K.trace() / nd;
  if (config.eta > 0.0) {
    const Eigen::MatrixXd W = normalized_penalty(centered_L, config.eps);
    A.noalias() += config.eta * (W * K);
  }
  model.alpha = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(yc);

  const Eigen::VectorXd f = K * model.alpha;
  model.in_sample_rmse = rmse(f.array() + model.y_mean, y);
  model.objective_value =
      nocco_objective_value(f, yc, centered_L, config.lambda, config.eta,
                            config.eps, model.alpha, K);
  // Tr(R_f R_S) with rank-one R_f collapses to a single quadratic form
  const Eigen::VectorXd fc = f.array() - f.mean();
  Eigen::MatrixXd A2 = centered_L;
  A2.diagonal().array() += nd * config.eps;
  const Eigen::VectorXd w = A2.llt().solve(fc);
  model.in_sample_nocco =
      fc.dot(centered_L * w) / (fc.squaredNorm() + nd * config.eps);
  return model;
}

Eigen::VectorXd predict_nfkl(const NfklModel& model,
                             const Eigen::MatrixXd& X_star) {
  if (X_star.cols() != model.X_train.cols())
    throw std::invalid_argument("predict_nfkl: dimension mismatch");
  const Eigen::MatrixXd Kx =
      gram(model.config.kernel_x, X_star, model.X_train).values;
  return (Kx * model.alpha).array() + model.y_mean;
}

double nocco_objective_value(const Eigen::VectorXd& f, const Eigen::VectorXd& y,
                             const Eigen::MatrixXd& L, double lambda,
                             double eta, double eps,
                             const std::optional<Eigen::VectorXd>& alpha,
                             const std::optional<Eigen::MatrixXd>& K) {
  if (f.size() != y.size() || L.rows() != f.size() || L.cols() != f.size())
    throw std::invalid_argument("nocco_objective_value: size mismatch");
  const double nd = static_cast<double>(f.size());
  double value = (f - y).squaredNorm() / nd;
  if (alpha && K) value += lambda * alpha->dot(*K * *alpha);
  if (eta > 0.0) value += eta * nocco(f * f.transpose(), L, eps);
  return value;
}

namespace {

// M^{-1/2} with the spectrum floored at eps before inverting
Eigen::MatrixXd inverse_sqrt_floored(const Eigen::MatrixXd& M, double eps) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("inverse_sqrt_floored: eigendecomposition failed");
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i)
    d(i) = 1.0 / std::sqrt(std::max(d(i), eps));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

FairLinearNoccoModel fit_fair_linear_nocco(const Eigen::MatrixXd& X,
                                           const Eigen::VectorXd& y,
                                           const Eigen::MatrixXd& S,
                                           double lambda, double eta,
                                           double eps, bool center_targets) {
  check_inputs(X, y, S, lambda, eta, eps, "fit_fair_linear_nocco");
  const Eigen::Index n = X.rows();
  const double nd = static_cast<double>(n);

  FairLinearNoccoModel model;
  model.centered = center_targets;
  model.y_mean = center_targets ? y.mean() : 0.0;
  const Eigen::VectorXd yc = y.array() - model.y_mean;

  const Eigen::MatrixXd Xc = X.rowwise() - X.colwise().mean();
  const Eigen::MatrixXd Sc = S.rowwise() - S.colwise().mean();
  const Eigen::MatrixXd cov_xx = Xc.transpose() * Xc / nd;
  const Eigen::MatrixXd cov_sx = Sc.transpose() * Xc / nd;
  Eigen::MatrixXd css = Sc.transpose() * Sc / nd;
  css.diagonal().array() += eps;

  Eigen::MatrixXd A = X.transpose() * X;
  A.diagonal().array() += nd * lambda;
  if (eta > 0.0) {
    const Eigen::MatrixXd xx_isqrt = inverse_sqrt_floored(cov_xx, eps);
    const Eigen::MatrixXd half =
        Eigen::LDLT<Eigen::MatrixXd>(css).solve(cov_sx * xx_isqrt);
    const Eigen::MatrixXd P =
        xx_isqrt * cov_sx.transpose() * half;  // symmetric PSD
    A.noalias() += nd * eta * P;
  }
  model.beta = Eigen::LDLT<Eigen::MatrixXd>(A).solve(X.transpose() * yc);
  return model;
}

Eigen::VectorXd predict_fair_linear_nocco(const FairLinearNoccoModel& model,
                                          const Eigen::MatrixXd& X_star) {
  return (X_star * model.beta).array() + model.y_mean;
}

}  // namespace fairkl
