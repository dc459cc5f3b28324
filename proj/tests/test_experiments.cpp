#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "fairkl/datasets.hpp"
#include "fairkl/dependence.hpp"
#include "fairkl/experiments.hpp"
#include "fairkl/fair_krr.hpp"
#include "fairkl/kernels.hpp"
#include "fairkl/nfkl.hpp"
#include "fairkl/rng.hpp"
#include "oracles.hpp"

using namespace fairkl;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

bool records_equal(const SweepRecord& a, const SweepRecord& b) {
  return a.trial == b.trial && a.eta == b.eta && a.rmse == b.rmse &&
         a.r2_obs == b.r2_obs && a.r2_true == b.r2_true && a.hsic == b.hsic &&
         a.nocco == b.nocco && a.mi == b.mi &&
         a.corr_sensitive == b.corr_sensitive && a.theta == b.theta &&
         a.lambda == b.lambda && a.nlml == b.nlml;
}

SweepSpec small_toy2_spec(Method m) {
  SweepSpec spec;
  spec.method = m;
  spec.data.kind = DataSource::Kind::Toy2;
  spec.n_train = 40;
  spec.n_test = 20;
  spec.trials = 3;
  spec.seed = 17;
  spec.eta_grid = {0.0, 0.1, 1.0};
  spec.theta_grid = {0.5, 1.0};
  spec.lambda_grid = {0.1, 1.0};
  spec.cv_folds = 4;
  return spec;
}

}  // namespace

TEST_CASE("grid constructors") {
  const std::vector<double> etas = default_eta_grid();
  REQUIRE(etas.size() == 26);
  CHECK(etas[0] == 0.0);
  CHECK(etas[1] == 1e-7);
  CHECK(etas[25] == 1e3);
  CHECK(std::is_sorted(etas.begin(), etas.end()));

  const std::vector<double> thetas = default_theta_grid();
  REQUIRE(thetas.size() == 10);
  CHECK(thetas.front() == 1e-4);
  CHECK(thetas.back() == 1e3);

  const std::vector<double> lambdas = default_lambda_grid();
  REQUIRE(lambdas.size() == 10);
  CHECK(lambdas.front() == 1e-4);
  CHECK(lambdas.back() == 1e4);

  const std::vector<double> g = log_spaced(0.5, 8.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g[0] == 0.5);
  CHECK(g[4] == 8.0);
  CHECK(g[2] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(log_spaced(3.0, 100.0, 1) == std::vector<double>{3.0});
  CHECK_THROWS_AS(log_spaced(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(log_spaced(1.0, 2.0, 0), std::invalid_argument);
}

TEST_CASE("bandwidth grid around the median heuristic") {
  CounterRng rng(55);
  const MatrixXd X = oracles::randn_matrix(rng, 50, 2);
  const double med = median_heuristic(X);

  const std::vector<double> g = theta_grid_around_median(X, 9, 7);
  CHECK(std::is_sorted(g.begin(), g.end()));
  CHECK(std::count(g.begin(), g.end(), med) == 1);
  CHECK(g.size() <= 10);
  CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
  for (double v : g) CHECK(v > 0.0);
  CHECK(theta_grid_around_median(X, 9, 7) == g);
  CHECK(theta_grid_around_median(X, 9, 8) != g);

  // zero spread collapses onto the heuristic itself
  CHECK(theta_grid_around_median(X, 5, 7, 0.0) == std::vector<double>{med});
  CHECK_THROWS_AS(theta_grid_around_median(X, -1, 7), std::invalid_argument);
}

TEST_CASE("effective grids pin the unpenalized methods to eta zero") {
  SweepSpec spec = small_toy2_spec(Method::Krr);
  CHECK(effective_grids(spec).etas == std::vector<double>{0.0});
  spec.method = Method::Gp;
  CHECK(effective_grids(spec).etas == std::vector<double>{0.0});
  spec.method = Method::Fkl;
  CHECK(effective_grids(spec).etas == spec.eta_grid);
  spec.eta_grid.clear();
  CHECK(effective_grids(spec).etas == default_eta_grid());
  spec.theta_grid.clear();
  CHECK(effective_grids(spec).thetas == default_theta_grid());
  CHECK(effective_grids(spec).lambdas == spec.lambda_grid);
}

TEST_CASE("cross-validation table matches a brute-force fold loop") {
  Toy2Config tc;
  tc.n = 60;
  tc.seed = 23;
  const Dataset ds = gen_toy2(tc);
  const std::vector<double> thetas{0.5, 1.0};
  const std::vector<double> lambdas{0.1, 1.0};
  const int k = 3;
  const double theta_l = 0.5, eps = 1e-6;
  const std::uint64_t seed = 31;
  const auto folds = kfold_indices(60, k, seed);

  for (Method method : {Method::Fkl, Method::Nfkl}) {
    for (double eta : {0.0, 0.5, 2.0}) {
      const CvChoice choice = cv_select(ds.X, ds.y, ds.S, method, eta, thetas,
                                        lambdas, k, theta_l, eps, seed);
      REQUIRE(choice.table.rows() == 2);
      REQUIRE(choice.table.cols() == 2);

      MatrixXd brute = MatrixXd::Zero(2, 2);
      for (int f = 0; f < k; ++f) {
        std::vector<int> tr;
        for (int g = 0; g < k; ++g)
          if (g != f) tr.insert(tr.end(), folds[g].begin(), folds[g].end());
        const Dataset train = ds.rows(tr), val = ds.rows(folds[f]);
        for (int ti = 0; ti < 2; ++ti)
          for (int li = 0; li < 2; ++li) {
            VectorXd pred;
            if (method == Method::Nfkl) {
              NfklConfig c;
              c.kernel_x = KernelSpec::rbf(thetas[ti]);
              c.kernel_s = KernelSpec::rbf(theta_l);
              c.lambda = lambdas[li] / static_cast<double>(train.n());
              c.eta = eta;
              c.eps = eps;
              pred = predict_nfkl(fit_nfkl(train.X, train.y, train.S, c),
                                  val.X);
            } else {
              FairKrrConfig c;
              c.kernel_x = KernelSpec::rbf(thetas[ti]);
              c.kernel_s = KernelSpec::rbf(theta_l);
              c.lambda = lambdas[li];
              c.eta = eta;
              pred = predict_fkl(fit_fkl(train.X, train.y, train.S, c), val.X);
            }
            brute(ti, li) += rmse(pred, val.y) / k;
          }
      }
      CHECK((choice.table - brute).lpNorm<Eigen::Infinity>() < 1e-8);

      // the reported winner is the argmin with the documented tie-break
      double best = choice.table.minCoeff();
      CHECK(choice.cv_rmse == best);
    }
  }
}

TEST_CASE("single-point grids select that point") {
  Toy2Config tc;
  tc.n = 30;
  const Dataset ds = gen_toy2(tc);
  const CvChoice c = cv_select(ds.X, ds.y, ds.S, Method::Fkl, 0.7, {0.8},
                               {0.3}, 3, 0.5, 1e-6, 5);
  CHECK(c.theta == 0.8);
  CHECK(c.lambda == 0.3);
  CHECK(c.table.rows() == 1);
  CHECK(c.cv_rmse == c.table(0, 0));

  const CvChoice again = cv_select(ds.X, ds.y, ds.S, Method::Fkl, 0.7, {0.8},
                                   {0.3}, 3, 0.5, 1e-6, 5);
  CHECK(again.cv_rmse == c.cv_rmse);
  CHECK(again.table == c.table);

  CHECK_THROWS_AS(cv_select(ds.X, ds.y, ds.S, Method::Gp, 0.0, {0.8}, {0.3}, 3,
                            0.5, 1e-6, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(cv_select(ds.X, ds.y, ds.S, Method::Fkl, 0.7, {}, {0.3}, 3,
                            0.5, 1e-6, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(cv_select(ds.X, ds.y, ds.S, Method::Fkl, 0.7, {0.8, 0.8},
                            {0.3}, 3, 0.5, 1e-6, 5),
                  std::invalid_argument);
}

TEST_CASE("cross-validation recovers generating hyperparameters") {
  const std::vector<double> thetas{0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<double> lambdas{0.025, 0.05, 0.1, 0.2, 0.4};
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CounterRng rng(derive_seed(2000, seed));
    const int n = 120;
    const MatrixXd X = oracles::randn_matrix(rng, n, 2);
    MatrixXd K = gram(KernelSpec::rbf(1.0), X).values;
    K.diagonal().array() += 1e-8;
    const MatrixXd Lch = K.llt().matrixL();
    const VectorXd f = Lch * oracles::randn_vector(rng, n);
    VectorXd y(n);
    for (int i = 0; i < n; ++i)
      y(i) = f(i) + std::sqrt(0.1) * rng.next_normal();

    const CvChoice c = cv_select(X, y, X.col(0), Method::Krr, 0.0, thetas,
                                 lambdas, 5, 0.5, 1e-6, seed);
    const auto idx = [](const std::vector<double>& g, double v) {
      return static_cast<int>(std::find(g.begin(), g.end(), v) - g.begin());
    };
    if (std::abs(idx(thetas, c.theta) - 2) <= 1 &&
        std::abs(idx(lambdas, c.lambda) - 2) <= 1)
      ++hits;
  }
  CHECK(hits >= 7);
}

TEST_CASE("a zero-eta penalized sweep reproduces the plain sweep") {
  SweepSpec fkl = small_toy2_spec(Method::Fkl);
  fkl.eta_grid = {0.0};
  SweepSpec krr = small_toy2_spec(Method::Krr);
  krr.eta_grid.clear();

  const TradeoffCurve a = run_sweep(fkl);
  const TradeoffCurve b = run_sweep(krr);
  REQUIRE(a.errors.empty());
  REQUIRE(b.errors.empty());
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(records_equal(a.records[i], b.records[i]));
}

TEST_CASE("sweep cells are complete, ordered, and reproducible") {
  const SweepSpec spec = small_toy2_spec(Method::Fkl);
  const TradeoffCurve curve = run_sweep(spec);
  CHECK(curve.errors.empty());
  REQUIRE(curve.records.size() == 9);  // 3 trials x 3 etas

  std::set<std::pair<int, double>> cells;
  for (const SweepRecord& r : curve.records) {
    cells.insert({r.trial, r.eta});
    CHECK(std::isfinite(r.rmse));
    CHECK(std::isfinite(r.hsic));
    CHECK(r.hsic >= 0.0);
    CHECK(r.mi >= 0.0);
    REQUIRE(r.r2_true.has_value());  // generator knows the clean target
    CHECK(std::find(spec.theta_grid.begin(), spec.theta_grid.end(), r.theta) !=
          spec.theta_grid.end());
    CHECK(std::find(spec.lambda_grid.begin(), spec.lambda_grid.end(),
                    r.lambda) != spec.lambda_grid.end());
    CHECK_FALSE(r.nlml.has_value());
  }
  CHECK(cells.size() == 9);
  for (std::size_t i = 1; i < curve.records.size(); ++i) {
    const auto& p = curve.records[i - 1];
    const auto& q = curve.records[i];
    CHECK((q.trial > p.trial || (q.trial == p.trial && q.eta > p.eta)));
  }

  const TradeoffCurve again = run_sweep(spec);
  REQUIRE(again.records.size() == curve.records.size());
  for (std::size_t i = 0; i < curve.records.size(); ++i)
    CHECK(records_equal(curve.records[i], again.records[i]));
}

TEST_CASE("aggregation is the plain mean and standard error") {
  const SweepSpec spec = small_toy2_spec(Method::Fkl);
  const TradeoffCurve curve = run_sweep(spec);
  REQUIRE(curve.aggregate.size() == 3);
  for (std::size_t e = 0; e < curve.aggregate.size(); ++e) {
    const AggregateRow& row = curve.aggregate[e];
    CHECK(row.eta == spec.eta_grid[e]);
    REQUIRE(row.count == 3);
    double sum = 0.0, sumsq = 0.0;
    for (const SweepRecord& r : curve.records)
      if (r.eta == row.eta) {
        sum += r.rmse;
        sumsq += r.rmse * r.rmse;
      }
    const double mean = sum / 3.0;
    const double var = (sumsq - 3.0 * mean * mean) / 2.0;
    CHECK(row.rmse_mean == doctest::Approx(mean).epsilon(1e-12));
    CHECK(row.rmse_se ==
          doctest::Approx(std::sqrt(std::max(0.0, var) / 3.0)).epsilon(1e-9));
    REQUIRE(row.r2_true_mean.has_value());
  }
}

TEST_CASE("one sweep record replayed by hand") {
  SweepSpec spec;
  spec.method = Method::Fkl;
  spec.data.kind = DataSource::Kind::Toy2;
  spec.n_train = 35;
  spec.n_test = 15;
  spec.trials = 1;
  spec.seed = 77;
  spec.eta_grid = {0.5};
  spec.theta_grid = {0.9};
  spec.lambda_grid = {0.2};
  spec.cv_folds = 3;
  spec.standardize = true;

  const TradeoffCurve curve = run_sweep(spec);
  REQUIRE(curve.errors.empty());
  REQUIRE(curve.records.size() == 1);
  const SweepRecord rec = curve.records[0];

  // replay: per-trial seed, then the data sub-stream
  Toy2Config gen = spec.data.toy2;
  gen.n = 50;
  gen.seed = derive_seed(derive_seed(spec.seed, 0), 0);
  const Dataset full = gen_toy2(gen);
  std::vector<int> tr(35), te(15);
  for (int i = 0; i < 35; ++i) tr[i] = i;
  for (int i = 0; i < 15; ++i) te[i] = 35 + i;
  const Dataset train = full.rows(tr), test = full.rows(te);
  const auto [train_std, srec] = standardize(train);
  const Dataset test_std = apply_standardization(srec, test);

  FairKrrConfig c;
  c.kernel_x = KernelSpec::rbf(0.9);
  c.kernel_s = KernelSpec::rbf(spec.theta_l);
  c.lambda = 0.2;
  c.eta = 0.5;
  const VectorXd pred_std = predict_fkl(
      fit_fkl(train_std.X, train_std.y, train_std.S, c), test_std.X);
  const VectorXd pred = destandardize_predictions(srec, pred_std);

  CHECK(rec.theta == 0.9);
  CHECK(rec.lambda == 0.2);
  CHECK(rec.rmse == doctest::Approx(rmse(pred, test.y)).epsilon(1e-12));
  CHECK(rec.r2_obs == doctest::Approx(r_squared(pred, test.y)).epsilon(1e-12));
  REQUIRE(rec.r2_true.has_value());
  CHECK(*rec.r2_true ==
        doctest::Approx(r_squared(pred, test.f_true)).epsilon(1e-12));

  // dependence metrics audit the raw sensitive values, not the fit space
  const MatrixXd L = gram(KernelSpec::rbf(spec.theta_l), test.S).values;
  const DependenceReport rep =
      dependence_report(pred, L, test.S.col(0), spec.eps, spec.mi_bins);
  CHECK(rec.hsic == doctest::Approx(rep.hsic).epsilon(1e-12));
  CHECK(rec.nocco == doctest::Approx(rep.nocco).epsilon(1e-12));
  CHECK(rec.mi == doctest::Approx(rep.mi).epsilon(1e-12));
  CHECK(rec.corr_sensitive == doctest::Approx(rep.corr).epsilon(1e-12));
}

TEST_CASE("a normalized-method sweep converts the ridge convention") {
  SweepSpec spec;
  spec.method = Method::Nfkl;
  spec.data.kind = DataSource::Kind::Toy2;
  spec.n_train = 30;
  spec.n_test = 10;
  spec.trials = 1;
  spec.seed = 13;
  spec.eta_grid = {2.0};
  spec.theta_grid = {1.1};
  spec.lambda_grid = {0.6};
  spec.cv_folds = 3;

  const TradeoffCurve curve = run_sweep(spec);
  REQUIRE(curve.errors.empty());
  REQUIRE(curve.records.size() == 1);

  Toy2Config gen = spec.data.toy2;
  gen.n = 40;
  gen.seed = derive_seed(derive_seed(spec.seed, 0), 0);
  const Dataset full = gen_toy2(gen);
  std::vector<int> tr(30), te(10);
  for (int i = 0; i < 30; ++i) tr[i] = i;
  for (int i = 0; i < 10; ++i) te[i] = 30 + i;
  const Dataset train = full.rows(tr), test = full.rows(te);

  NfklConfig c;
  c.kernel_x = KernelSpec::rbf(1.1);
  c.kernel_s = KernelSpec::rbf(spec.theta_l);
  c.lambda = 0.6 / 30.0;  // the sweep's lambda grid is in plain-ridge units
  c.eta = 2.0;
  c.eps = spec.eps;
  const VectorXd pred =
      predict_nfkl(fit_nfkl(train.X, train.y, train.S, c), test.X);
  CHECK(curve.records[0].rmse ==
        doctest::Approx(rmse(pred, test.y)).epsilon(1e-12));
}

TEST_CASE("gp sweeps run the optimizer and record its evidence") {
  SweepSpec spec;
  spec.method = Method::Gp;
  spec.data.kind = DataSource::Kind::Toy2;
  spec.n_train = 30;
  spec.n_test = 15;
  spec.trials = 1;
  spec.seed = 3;
  spec.optimizer.restarts = 1;
  spec.optimizer.max_iters = 5;

  const TradeoffCurve curve = run_sweep(spec);
  REQUIRE(curve.errors.empty());
  REQUIRE(curve.records.size() == 1);
  const SweepRecord& r = curve.records[0];
  CHECK(r.eta == 0.0);
  REQUIRE(r.nlml.has_value());
  CHECK(std::isfinite(*r.nlml));
  CHECK(r.theta > 0.0);
  CHECK(r.lambda > 0.0);

  SweepSpec fair = spec;
  fair.method = Method::FairGp;
  fair.eta_grid = {0.0, 1.0};
  const TradeoffCurve fc = run_sweep(fair);
  REQUIRE(fc.errors.empty());
  REQUIRE(fc.records.size() == 2);
  CHECK(fc.records[0].eta == 0.0);
  CHECK(fc.records[1].eta == 1.0);
}

TEST_CASE("trial failures are recorded, not thrown") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "fairkl_sweep_small.csv";
  {
    std::ofstream out(path);
    out << "x,s,y\n";
    for (int i = 0; i < 10; ++i)
      out << 0.1 * i << "," << (i % 2) << "," << i << "\n";
  }
  SweepSpec spec;
  spec.method = Method::Fkl;
  spec.data.kind = DataSource::Kind::File;
  spec.data.file.path = path.string();
  spec.data.file.target = "y";
  spec.data.file.sensitive = {"s"};
  spec.n_train = 40;  // more rows than the file has
  spec.n_test = 20;
  spec.trials = 2;
  spec.eta_grid = {0.0, 1.0};
  spec.theta_grid = {1.0};
  spec.lambda_grid = {0.1};
  spec.cv_folds = 2;

  const TradeoffCurve curve = run_sweep(spec);
  CHECK(curve.records.empty());
  CHECK(curve.errors.size() == 4);  // every (trial, eta) cell reports
  for (const SweepError& e : curve.errors) CHECK(!e.message.empty());
  for (const AggregateRow& row : curve.aggregate) CHECK(row.count == 0);
  std::filesystem::remove(path);
}

TEST_CASE("file-backed sweeps shuffle rows per trial and replay exactly") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "fairkl_sweep_file.csv";
  {
    std::ofstream out(path);
    out << "x,s,y\n";
    CounterRng rng(8);
    for (int i = 0; i < 70; ++i) {
      const double s = rng.next_normal();
      const double x = 0.8 * s + 0.4 * rng.next_normal();
      out << x << "," << s << "," << (x + s + 0.1 * rng.next_normal()) << "\n";
    }
  }
  SweepSpec spec;
  spec.method = Method::Fkl;
  spec.data.kind = DataSource::Kind::File;
  spec.data.file.path = path.string();
  spec.data.file.target = "y";
  spec.data.file.sensitive = {"s"};
  spec.n_train = 40;
  spec.n_test = 20;
  spec.trials = 2;
  spec.seed = 5;
  spec.eta_grid = {0.0, 0.5};
  spec.theta_grid = {0.7, 1.4};
  spec.lambda_grid = {0.1, 1.0};
  spec.cv_folds = 4;

  const TradeoffCurve a = run_sweep(spec);
  REQUIRE(a.errors.empty());
  REQUIRE(a.records.size() == 4);
  for (const SweepRecord& r : a.records)
    CHECK_FALSE(r.r2_true.has_value());  // files carry no clean target

  const TradeoffCurve b = run_sweep(spec);
  for (std::size_t i = 0; i < a.records.size(); ++i)
    CHECK(records_equal(a.records[i], b.records[i]));

  // different trials see different splits: their eta=0 records differ
  CHECK(a.records[0].rmse != a.records[2].rmse);
  std::filesystem::remove(path);
}

TEST_CASE("method comparison requires a shared protocol") {
  SweepSpec a = small_toy2_spec(Method::Krr);
  a.trials = 2;
  SweepSpec b = a;

  const std::vector<MethodRun> runs = compare_methods({a, b});
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].label == "krr");
  REQUIRE(runs[0].curve.records.size() == runs[1].curve.records.size());
  for (std::size_t i = 0; i < runs[0].curve.records.size(); ++i)
    CHECK(records_equal(runs[0].curve.records[i], runs[1].curve.records[i]));

  SweepSpec frl = a;
  frl.baseline = BaselineTransform::Frl;
  CHECK(compare_methods({frl}).at(0).label == "krr+frl");

  SweepSpec mismatched = a;
  mismatched.seed = 999;
  CHECK_THROWS_AS(compare_methods({a, mismatched}), std::invalid_argument);
  mismatched = a;
  mismatched.n_train += 1;
  CHECK_THROWS_AS(compare_methods({a, mismatched}), std::invalid_argument);
  CHECK_THROWS_AS(compare_methods({}), std::invalid_argument);
}

TEST_CASE("error-versus-unfairness area by trapezoid") {
  std::vector<SweepRecord> recs(3);
  recs[0].hsic = 1.0;
  recs[0].rmse = 2.0;
  recs[1].hsic = 0.0;
  recs[1].rmse = 1.0;
  recs[2].hsic = 3.0;
  recs[2].rmse = 4.0;
  CHECK(rmse_hsic_auc(recs) == doctest::Approx(7.5).epsilon(1e-12));
  CHECK(rmse_hsic_auc({recs[0]}) == 0.0);
  CHECK(rmse_hsic_auc({}) == 0.0);
}

TEST_CASE("sweep validation") {
  SweepSpec spec = small_toy2_spec(Method::Fkl);
  spec.trials = 0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.n_train = 3;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.theta_l = 0.0;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.mi_bins = 1;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.cv_folds = 1;
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.eta_grid = {0.5, 0.5};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.eta_grid = {-1.0, 0.5};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  spec = small_toy2_spec(Method::Fkl);
  spec.theta_grid = {0.0, 0.5};
  CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
}
