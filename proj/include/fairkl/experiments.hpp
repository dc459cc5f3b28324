#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairkl/datasets.hpp"
#include "fairkl/fair_gp.hpp"

namespace fairkl {

enum class Method { Krr, Fkl, Nfkl, Gp, FairGp };
enum class BaselineTransform { None, Osv, Frl };

std::string method_name(Method m);
std::string baseline_name(BaselineTransform b);

struct DataSource {
  enum class Kind { Toy1, Toy2, File } kind = Kind::Toy2;
  Toy1Config toy1;
  Toy2Config toy2;
  struct FileSpec {
    std::string path;
    std::string target;
    std::vector<std::string> sensitive;
    std::vector<std::string> drop;
    bool sensitive_in_x = true;
  } file;
};

struct SweepSpec {
  Method method = Method::Fkl;
  BaselineTransform baseline = BaselineTransform::None;
  DataSource data;
  int n_train = 700;
  int n_test = 700;
  int trials = 5;
  std::uint64_t seed = 0;
  std::vector<double> eta_grid;     // ignored for Krr/Gp (always eta = 0)
  std::vector<double> theta_grid;   // CV grid for the ERM methods
  std::vector<double> lambda_grid;  // CV grid, plain-KRR ridge convention
  int cv_folds = 5;
  double theta_l = 0.5;  // sensitive-kernel lengthscale, fixed
  double eps = 1e-6;
  bool standardize = false;
  OptimizerSettings optimizer;  // GP methods only
  int mi_bins = 16;
};

// built-in sweep grids
std::vector<double> default_eta_grid();     // 0 then 25 log-spaced in [1e-7, 1e3]
std::vector<double> default_theta_grid();   // 10 log-spaced in [1e-4, 1e3]
std::vector<double> default_lambda_grid();  // 10 log-spaced in [1e-4, 1e4]
std::vector<double> log_spaced(double lo, double hi, int count);

// Median-heuristic bandwidth plus `count` multiplicative log-normal draws
// around it (sigma_log in log space), sorted ascending and deduplicated.
std::vector<double> theta_grid_around_median(const Eigen::MatrixXd& X,
                                             int count, std::uint64_t seed,
                                             double sigma_log = 0.5);

// The grids a sweep will actually run: defaults filled in, eta pinned to {0}
// for the unpenalized methods. Result files echo these.
struct EffectiveGrids {
  std::vector<double> etas, thetas, lambdas;
};
EffectiveGrids effective_grids(const SweepSpec& spec);

struct SweepRecord {
  int trial = 0;
  double eta = 0.0;
  double rmse = 0.0;
  double r2_obs = 0.0;
  std::optional<double> r2_true;
  double hsic = 0.0;
  double nocco = 0.0;
  double mi = 0.0;
  double corr_sensitive = 0.0;
  double theta = 0.0;
  double lambda = 0.0;
  std::optional<double> nlml;
};

struct SweepError {
  int trial = 0;
  double eta = 0.0;
  std::string message;
};

struct AggregateRow {
  double eta = 0.0;
  int count = 0;
  double rmse_mean = 0.0, rmse_se = 0.0;
  double r2_obs_mean = 0.0, r2_obs_se = 0.0;
  std::optional<double> r2_true_mean, r2_true_se;
  double hsic_mean = 0.0, hsic_se = 0.0;
  double nocco_mean = 0.0, nocco_se = 0.0;
  double mi_mean = 0.0, mi_se = 0.0;
  double corr_mean = 0.0, corr_se = 0.0;
};

struct TradeoffCurve {
  std::vector<SweepRecord> records;  // sorted by (trial, eta-grid position)
  std::vector<SweepError> errors;
  std::vector<AggregateRow> aggregate;  // eta-grid order
};

// Per trial: a fresh train/test draw (generators reseed, files reshuffle),
// optional standardization and baseline transform learned on the training
// half, per-eta hyperparameter selection (k-fold CV minimizing fold RMSE for
// the ERM methods, NLML descent for the GP methods), a final fit, and test
// metrics. Trials are independent work items; records come back in a fixed
// order regardless of scheduling.
TradeoffCurve run_sweep(const SweepSpec& spec);

struct CvChoice {
  double theta = 0.0;
  double lambda = 0.0;
  double cv_rmse = 0.0;
  Eigen::MatrixXd table;  // mean fold RMSE, theta-grid rows x lambda-grid cols
};

// Grid search over (theta, lambda) for Fkl/Nfkl/Krr at a fixed eta. Ties
// break toward smaller lambda, then smaller theta. The fold split depends
// only on (n, k, seed), so every grid point sees the same folds.
CvChoice cv_select(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& S, Method method, double eta,
                   const std::vector<double>& theta_grid,
                   const std::vector<double>& lambda_grid, int k,
                   double theta_l, double eps, std::uint64_t seed);

struct MethodRun {
  std::string label;
  SweepSpec spec;
  TradeoffCurve curve;
};

// Runs several specs that must agree on the data protocol (source, seed,
// trials, split sizes) so their rows are comparable.
std::vector<MethodRun> compare_methods(const std::vector<SweepSpec>& specs);

// Trapezoidal area under the (hsic, rmse) points of one trial, hsic ascending.
double rmse_hsic_auc(const std::vector<SweepRecord>& trial_records);

}  // namespace fairkl
