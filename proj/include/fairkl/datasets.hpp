#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace fairkl {

struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::MatrixXd S;
  std::vector<std::string> feature_names;
  std::vector<std::string> sensitive_names;
  // noise-free targets when the generator knows them
  Eigen::VectorXd f_true;
  bool has_f_true = false;

  Eigen::Index n() const { return X.rows(); }
  Dataset rows(const std::vector<int>& idx) const;
};

// x1, x2, z iid standard normal; x3 = (x1 + z)/sqrt(2);
// f = sign((x1 - z) x3) |x2|; y = f + 2b 1{x3>0} - b + noise.
// Features are [x1, x2, x3], the sensitive variable is x3, z is discarded.
struct Toy1Config {
  int n = 500;
  double bias = 1.0;
  double noise_sd = 0.5;
  std::uint64_t seed = 1;
};

// s ~ N(0, sigma_s^2); x | s ~ N(log|s|, sigma_x^2); y = x^2 + s^2 + noise.
struct Toy2Config {
  int n = 500;
  double sigma_x = 0.5;
  double sigma_s = 1.0;
  double sigma_y = 0.5;
  std::uint64_t seed = 1;
};

Dataset gen_toy1(const Toy1Config& cfg);
Dataset gen_toy2(const Toy2Config& cfg);

struct StandardizationRecord {
  Eigen::VectorXd x_mean, x_sd;  // for kept columns, in kept order
  std::vector<int> kept_columns;
  std::vector<std::string> dropped_constant;
  double y_mean = 0.0, y_sd = 1.0;
  Eigen::VectorXd s_mean, s_sd;  // used when S is not a slice of X
  bool s_from_features = false;
};

// Column-wise (x - mean)/sd with the n-1 divisor, applied to X, y and S.
// Constant columns are dropped and reported. The record inverts predictions
// and re-applies the same affine map to held-out data.
std::pair<Dataset, StandardizationRecord> standardize(const Dataset& ds);
Dataset apply_standardization(const StandardizationRecord& rec,
                              const Dataset& ds);
Eigen::VectorXd destandardize_predictions(const StandardizationRecord& rec,
                                          const Eigen::VectorXd& pred);

// Omit-sensitive-variables baseline: removes the sensitive-named columns from
// X (S itself is kept for auditing).
Dataset baseline_osv(const Dataset& ds);

// Fair-representation baseline: every non-sensitive column is replaced by its
// residual after least squares on [S, 1]. Coefficients are learned once and
// can be applied to held-out rows.
struct FrlTransform {
  Eigen::MatrixXd coef;  // (q+1) x p, column j residualizes feature j
  std::vector<int> kept_columns;
  std::vector<std::string> kept_names;
};
FrlTransform frl_fit(const Dataset& ds);
Dataset frl_apply(const FrlTransform& t, const Dataset& ds);
Dataset baseline_frl(const Dataset& ds);

struct CsvLoadReport {
  int rows_read = 0;
  int rows_dropped_missing = 0;
};

// Comma-separated with a header row; '.' decimal point; empty, "NA" and "?"
// are missing. Rows with a missing value in any retained column are dropped
// (and counted). Sensitive columns stay inside X unless sensitive_in_x is
// false; either way they are copied into S.
Dataset load_csv(const std::string& path, const std::string& target_column,
                 const std::vector<std::string>& sensitive_columns,
                 const std::vector<std::string>& drop_columns = {},
                 bool sensitive_in_x = true, CsvLoadReport* report = nullptr);

// k near-equal disjoint folds from a seeded shuffle; sizes differ by at most
// one and the union is 0..n-1.
std::vector<std::vector<int>> kfold_indices(int n, int k, std::uint64_t seed);

}  // namespace fairkl
