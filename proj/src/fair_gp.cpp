#include "fairkl/fair_gp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fairkl/rng.hpp"

namespace fairkl {

namespace {

constexpr double kJitterLadder[] = {0.0, 1e-10, 1e-8, 1e-6};

Eigen::MatrixXd correction_operator(const Eigen::MatrixXd& K,
                                    const Eigen::MatrixXd& centered_L,
                                    double delta) {
  // G = (delta^{-1} I + HLH K)^{-1} HLH, equal to HLH (K HLH + delta^{-1})^{-1}
  // by the push-through identity; symmetric up to round-off, so symmetrize
  const Eigen::Index n = K.rows();
  Eigen::MatrixXd A = centered_L * K;
  A.diagonal().array() += 1.0 / delta;
  Eigen::MatrixXd G = Eigen::PartialPivLU<Eigen::MatrixXd>(A).solve(centered_L);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = 0.5 * (G(i, j) + G(j, i));
      G(i, j) = v;
      G(j, i) = v;
    }
  return G;
}

// Cholesky of M + jitter * mean(diag(M)) * I along the ladder; returns the
// factor and reports the shift used.
Eigen::MatrixXd factor_with_ladder(const Eigen::MatrixXd& M, double* jitter) {
  const double scale = M.diagonal().mean();
  for (double level : kJitterLadder) {
    Eigen::MatrixXd A = M;
    A.diagonal().array() += level * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() == Eigen::Success) {
      if (jitter) *jitter = level * scale;
      return llt.matrixL();
    }
  }
  throw std::runtime_error(
      "gp_fit: covariance not positive definite after jitter ladder "
      "1e-10, 1e-8, 1e-6 of the mean diagonal");
}

void check_gp_inputs(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                     const Eigen::MatrixXd& S, const FairGpConfig& config) {
  if (X.rows() != y.size() || X.rows() != S.rows())
    throw std::invalid_argument("gp: row count mismatch");
  if (X.rows() < 1) throw std::invalid_argument("gp: empty training set");
  if (!(config.lambda > 0.0))
    throw std::invalid_argument("gp: lambda must be > 0");
  if (!(config.delta >= 0.0))
    throw std::invalid_argument("gp: delta must be >= 0");
  if (!X.allFinite() || !y.allFinite() || !S.allFinite())
    throw std::invalid_argument("gp: non-finite inputs");
}

}  // namespace

Eigen::MatrixXd fair_prior_kernel_cross(const FairGpConfig& config,
                                        const Eigen::MatrixXd& X_train,
                                        const Eigen::MatrixXd& L,
                                        const Eigen::MatrixXd& A,
                                        const Eigen::MatrixXd& B) {
  if (L.rows() != X_train.rows() || L.cols() != X_train.rows())
    throw std::invalid_argument(
        "fair_prior_kernel_cross: L must be the training-set sensitive Gram");
  Eigen::MatrixXd out = gram(config.kernel_x, A, B).values;
  if (config.delta == 0.0) return out;
  const Eigen::MatrixXd K = gram(config.kernel_x, X_train).values;
  const Eigen::MatrixXd G =
      correction_operator(K, center_gram(L), config.delta);
  const Eigen::MatrixXd Ka = gram(config.kernel_x, X_train, A).values;
  const Eigen::MatrixXd Kb = gram(config.kernel_x, X_train, B).values;
  out.noalias() -= Ka.transpose() * (G * Kb);
  return out;
}

FairGpModel gp_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& S, const FairGpConfig& config) {
  check_gp_inputs(X, y, S, config);
  const Eigen::Index n = X.rows();

  FairGpModel model;
  model.config = config;
  model.X_train = X;
  model.y_mean = config.center_targets ? y.mean() : 0.0;
  const Eigen::VectorXd yc = y.array() - model.y_mean;

  model.K_train = gram(config.kernel_x, X).values;
  Eigen::MatrixXd Cstar = model.K_train;
  if (config.delta > 0.0) {
    const Eigen::MatrixXd centered_L =
        center_gram(gram(config.kernel_s, S).values);
    model.correction =
        correction_operator(model.K_train, centered_L, config.delta);
    Cstar.noalias() -= model.K_train * (model.correction * model.K_train);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < i; ++j) {
        const double v = 0.5 * (Cstar(i, j) + Cstar(j, i));
        Cstar(i, j) = v;
        Cstar(j, i) = v;
      }
  }
  Eigen::MatrixXd Cn = Cstar;
  Cn.diagonal().array() += config.lambda;
  model.chol = factor_with_ladder(Cn, &model.jitter);

  const Eigen::VectorXd tmp =
      model.chol.triangularView<Eigen::Lower>().solve(yc);
  model.alpha =
      model.chol.transpose().triangularView<Eigen::Upper>().solve(tmp);

  double logdet = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) logdet += std::log(model.chol(i, i));
  model.nlml = 0.5 * yc.dot(model.alpha) + logdet +
               0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
  return model;
}

GpPrediction posterior_predict(const FairGpModel& model,
                               const Eigen::MatrixXd& X_star) {
  if (X_star.cols() != model.X_train.cols())
    throw std::invalid_argument("posterior_predict: dimension mismatch");
  const FairGpConfig& cfg = model.config;
  const Eigen::Index m = X_star.rows();

  // k*(X, X_star), training rows by test columns
  Eigen::MatrixXd Ks = gram(cfg.kernel_x, model.X_train, X_star).values;
  Eigen::VectorXd kss(m);
  for (Eigen::Index j = 0; j < m; ++j)
    kss(j) = kernel_eval(cfg.kernel_x, X_star.row(j), X_star.row(j));
  if (cfg.delta > 0.0) {
    const Eigen::MatrixXd GK = model.correction * Ks;
    kss -= (Ks.array() * GK.array()).colwise().sum().matrix().transpose();
    Ks.noalias() = Ks - model.K_train * GK;
  }

  GpPrediction out;
  out.mean = (Ks.transpose() * model.alpha).array() + model.y_mean;
  const auto Lf = model.chol.triangularView<Eigen::Lower>();
  const Eigen::MatrixXd V = Lf.solve(Ks);
  out.var.resize(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double v = kss(j) - V.col(j).squaredNorm();
    out.var(j) = v < 0.0 ? 0.0 : v;
  }
  return out;
}

double log_marginal_likelihood(const FairGpConfig& config,
                               const Eigen::MatrixXd& X,
                               const Eigen::VectorXd& y,
                               const Eigen::MatrixXd& S) {
  return -gp_fit(X, y, S, config).nlml;
}

namespace {

// free-parameter packing for the optimizer: log lengthscales, log lambda,
// optionally log theta_l
struct ParamSpace {
  int theta_count = 0;  // 1 for Rbf, d for Ard
  bool with_theta_l = false;

  static ParamSpace make(const FairGpConfig& base,
                         const OptimizerSettings& settings) {
    ParamSpace ps;
    if (base.kernel_x.family == KernelFamily::Linear)
      throw std::invalid_argument(
          "optimize_hyperparams: linear kernel has no lengthscale to tune");
    ps.theta_count = base.kernel_x.family == KernelFamily::Ard
                         ? static_cast<int>(base.kernel_x.lengthscales.size())
                         : 1;
    ps.with_theta_l = settings.optimize_theta_l;
    if (ps.with_theta_l && base.kernel_s.family != KernelFamily::Rbf)
      throw std::invalid_argument(
          "optimize_hyperparams: theta_l tuning needs an Rbf sensitive kernel");
    return ps;
  }

  int size() const { return theta_count + 1 + (with_theta_l ? 1 : 0); }

  Eigen::VectorXd pack(const FairGpConfig& cfg) const {
    Eigen::VectorXd p(size());
    if (cfg.kernel_x.family == KernelFamily::Ard)
      for (int i = 0; i < theta_count; ++i)
        p(i) = std::log(cfg.kernel_x.lengthscales[static_cast<size_t>(i)]);
    else
      p(0) = std::log(cfg.kernel_x.theta);
    p(theta_count) = std::log(cfg.lambda);
    if (with_theta_l) p(theta_count + 1) = std::log(cfg.kernel_s.theta);
    return p;
  }

  FairGpConfig unpack(const Eigen::VectorXd& p, const FairGpConfig& base,
                      const OptimizerSettings& settings, Eigen::Index n) const {
    FairGpConfig cfg = base;
    if (base.kernel_x.family == KernelFamily::Ard)
      for (int i = 0; i < theta_count; ++i)
        cfg.kernel_x.lengthscales[static_cast<size_t>(i)] = std::exp(p(i));
    else
      cfg.kernel_x.theta = std::exp(p(0));
    cfg.lambda = std::exp(p(theta_count));
    if (with_theta_l) cfg.kernel_s.theta = std::exp(p(theta_count + 1));
    if (settings.eta_link >= 0.0)
      cfg.delta = settings.eta_link == 0.0
                      ? 0.0
                      : settings.eta_link /
                            (cfg.lambda * static_cast<double>(n));
    return cfg;
  }

  Eigen::VectorXd lower(const OptimizerSettings& s) const {
    Eigen::VectorXd lo(size());
    for (int i = 0; i < theta_count; ++i) lo(i) = s.log_theta_lo;
    lo(theta_count) = s.log_lambda_lo;
    if (with_theta_l) lo(theta_count + 1) = s.log_theta_lo;
    return lo;
  }
  Eigen::VectorXd upper(const OptimizerSettings& s) const {
    Eigen::VectorXd hi(size());
    for (int i = 0; i < theta_count; ++i) hi(i) = s.log_theta_hi;
    hi(theta_count) = s.log_lambda_hi;
    if (with_theta_l) hi(theta_count + 1) = s.log_theta_hi;
    return hi;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    if (theta_count == 1) {
      out.push_back("log_theta");
    } else {
      for (int i = 0; i < theta_count; ++i)
        out.push_back("log_theta_" + std::to_string(i));
    }
    out.push_back("log_lambda");
    if (with_theta_l) out.push_back("log_theta_l");
    return out;
  }
};

}  // namespace

Eigen::VectorXd nlml_fd_gradient(const Eigen::MatrixXd& X,
                                 const Eigen::VectorXd& y,
                                 const Eigen::MatrixXd& S,
                                 const FairGpConfig& base,
                                 const OptimizerSettings& settings,
                                 const Eigen::VectorXd& log_params) {
  const ParamSpace ps = ParamSpace::make(base, settings);
  if (log_params.size() != ps.size())
    throw std::invalid_argument("nlml_fd_gradient: parameter size mismatch");
  auto nlml_at = [&](const Eigen::VectorXd& p) {
    return -log_marginal_likelihood(ps.unpack(p, base, settings, X.rows()), X,
                                    y, S);
  };
  Eigen::VectorXd g(log_params.size());
  const double h = settings.fd_step;
  for (Eigen::Index i = 0; i < log_params.size(); ++i) {
    Eigen::VectorXd hi = log_params, lo = log_params;
    hi(i) += h;
    lo(i) -= h;
    g(i) = (nlml_at(hi) - nlml_at(lo)) / (2.0 * h);
  }
  return g;
}

FairGpConfig optimize_hyperparams(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& y,
                                  const Eigen::MatrixXd& S,
                                  const FairGpConfig& base,
                                  const OptimizerSettings& settings,
                                  OptimizeDiagnostics* diag) {
  if (settings.restarts < 1)
    throw std::invalid_argument("optimize_hyperparams: restarts must be >= 1");
  const ParamSpace ps = ParamSpace::make(base, settings);
  const Eigen::VectorXd lo = ps.lower(settings), hi = ps.upper(settings);
  auto clamp = [&](Eigen::VectorXd p) {
    for (Eigen::Index i = 0; i < p.size(); ++i)
      p(i) = std::min(hi(i), std::max(lo(i), p(i)));
    return p;
  };
  auto nlml_at = [&](const Eigen::VectorXd& p) {
    return -log_marginal_likelihood(ps.unpack(p, base, settings, X.rows()), X,
                                    y, S);
  };

  double best_f = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_p;
  int best_restart = -1;
  if (diag) {
    diag->param_names = ps.names();
    diag->start_nlml.clear();
  }

  for (int r = 0; r < settings.restarts; ++r) {
    Eigen::VectorXd p;
    if (r == 0) {
      p = clamp(ps.pack(base));
    } else {
      CounterRng rng(derive_seed(settings.seed, static_cast<std::uint64_t>(r)));
      p.resize(ps.size());
      for (Eigen::Index i = 0; i < p.size(); ++i)
        p(i) = rng.next_uniform(lo(i), hi(i));
    }
    double f = nlml_at(p);
    if (diag) diag->start_nlml.push_back(f);

    for (int iter = 0; iter < settings.max_iters; ++iter) {
      const Eigen::VectorXd g =
          nlml_fd_gradient(X, y, S, base, settings, p);
      if (g.lpNorm<Eigen::Infinity>() < settings.grad_tol) break;
      // backtracking along the negative gradient, in log-space
      double step = 0.5 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
      bool moved = false;
      while (step > 1e-7) {
        const Eigen::VectorXd q = clamp(p - step * g);
        const double fq = nlml_at(q);
        if (fq < f - 1e-12 * (1.0 + std::abs(f))) {
          p = q;
          f = fq;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (f < best_f) {  // strict: ties keep the lowest restart index
      best_f = f;
      best_p = p;
      best_restart = r;
    }
  }

  if (diag) {
    diag->final_nlml = best_f;
    diag->final_params = best_p;
    diag->final_gradient = nlml_fd_gradient(X, y, S, base, settings, best_p);
    diag->best_restart = best_restart;
  }
  return ps.unpack(best_p, base, settings, X.rows());
}

std::vector<double> ard_relevance_report(const FairGpModel& model) {
  const KernelSpec& k = model.config.kernel_x;
  if (k.family != KernelFamily::Ard)
    throw std::invalid_argument(
        "ard_relevance_report: needs a per-dimension lengthscale kernel");
  return k.lengthscales;
}

}  // namespace fairkl
