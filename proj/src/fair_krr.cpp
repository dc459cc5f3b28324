#include "fairkl/fair_krr.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <stdexcept>

#include "fairkl/dependence.hpp"

namespace fairkl {

namespace {

void check_inputs(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  const Eigen::MatrixXd& S, double lambda, double eta,
                  const char* what) {
  if (X.rows() != y.size() || X.rows() != S.rows())
    throw std::invalid_argument(std::string(what) + ": row count mismatch");
  if (X.rows() < 1)
    throw std::invalid_argument(std::string(what) + ": empty training set");
  if (!(lambda > 0.0))
    throw std::invalid_argument(std::string(what) + ": lambda must be > 0");
  if (!(eta >= 0.0))
    throw std::invalid_argument(std::string(what) + ": eta must be >= 0");
  if (!X.allFinite() || !y.allFinite() || !S.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite inputs");
}

}  // namespace

FairKrrModel fit_fkl(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::MatrixXd& S, const FairKrrConfig& config) {
  check_inputs(X, y, S, config.lambda, config.eta, "fit_fkl");
  const Eigen::Index n = X.rows();
  const double nd = static_cast<double>(n);

  FairKrrModel model;
  model.config = config;
  model.X_train = X;
  model.y_mean = config.center_targets ? y.mean() : 0.0;
  const Eigen::VectorXd yc = y.array() - model.y_mean;

  const Eigen::MatrixXd K = gram(config.kernel_x, X).values;
  model.centered_L = center_gram(gram(config.kernel_s, S).values);

  // system matrix is not symmetric once eta > 0, so LU with partial pivoting;
  // the tiny diagonal shift keeps rank-deficient Grams (linear kernels,
  // saturated RBF) solvable without visibly moving the solution
  Eigen::MatrixXd A = K;
  A.diagonal().array() += config.lambda + 1e-10 * K.trace() / nd;
  if (config.eta > 0.0)
    A.noalias() += (config.eta / nd) * (model.centered_L * K);
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  model.alpha = lu.solve(yc);

  const Eigen::VectorXd f = K * model.alpha;
  model.objective_value = fkl_objective(K, model.centered_L, yc, config.lambda,
                                        config.eta, model.alpha);
  model.in_sample_rmse = rmse(f.array() + model.y_mean, y);
  double quad = f.dot(model.centered_L * f);
  if (quad < 0.0) quad = 0.0;
  model.in_sample_hsic = quad / (nd * nd);
  return model;
}

Eigen::VectorXd predict_fkl(const FairKrrModel& model,
                            const Eigen::MatrixXd& X_star) {
  if (X_star.cols() != model.X_train.cols())
    throw std::invalid_argument("predict_fkl: dimension mismatch");
  const Eigen::MatrixXd Kx =
      gram(model.config.kernel_x, X_star, model.X_train).values;
  return (Kx * model.alpha).array() + model.y_mean;
}

double fkl_objective(const Eigen::MatrixXd& K,
                     const Eigen::MatrixXd& centered_L,
                     const Eigen::VectorXd& y, double lambda, double eta,
                     const Eigen::VectorXd& alpha) {
  const double nd = static_cast<double>(y.size());
  const Eigen::VectorXd f = K * alpha;
  const double loss = (y - f).squaredNorm() / nd;
  const double ridge = lambda / nd * alpha.dot(f);
  const double fairness = eta / (nd * nd) * f.dot(centered_L * f);
  return loss + ridge + fairness;
}

FairLinearModel fit_fair_linear(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& y,
                                const Eigen::MatrixXd& S, double lambda,
                                double eta, bool center_targets) {
  check_inputs(X, y, S, lambda, eta, "fit_fair_linear");
  const double nd = static_cast<double>(X.rows());
  FairLinearModel model;
  model.centered = center_targets;
  model.y_mean = center_targets ? y.mean() : 0.0;
  const Eigen::VectorXd yc = y.array() - model.y_mean;

  Eigen::MatrixXd A = X.transpose() * X;
  A.diagonal().array() += lambda;
  if (eta > 0.0) {
    const Eigen::MatrixXd cov_sx = empirical_cross_covariance(X, S);
    A.noalias() += (nd * eta) * (cov_sx.transpose() * cov_sx);
  }
  model.beta = Eigen::LDLT<Eigen::MatrixXd>(A).solve(X.transpose() * yc);
  return model;
}

Eigen::VectorXd predict_fair_linear(const FairLinearModel& model,
                                    const Eigen::MatrixXd& X_star) {
  return (X_star * model.beta).array() + model.y_mean;
}

Eigen::MatrixXd empirical_cross_covariance(const Eigen::MatrixXd& F,
                                           const Eigen::MatrixXd& G) {
  if (F.rows() != G.rows())
    throw std::invalid_argument("empirical_cross_covariance: row mismatch");
  const Eigen::Index n = F.rows();
  if (n < 1)
    throw std::invalid_argument("empirical_cross_covariance: empty input");
  const Eigen::MatrixXd Fc = F.rowwise() - F.colwise().mean();
  return G.transpose() * Fc / static_cast<double>(n);
}

}  // namespace fairkl
