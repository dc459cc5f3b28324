#include "fairkl/cli.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairkl/dependence.hpp"
#include "fairkl/experiments.hpp"
#include "fairkl/fair_gp.hpp"
#include "fairkl/fair_krr.hpp"
#include "fairkl/nfkl.hpp"
#include "fairkl/results_io.hpp"
#include "fairkl/rng.hpp"

namespace fairkl {

namespace {

void emit(const std::string& out_path, const std::string& content) {
  if (out_path == "-")
    std::cout << content;
  else
    write_text_file(out_path, content);
}

// ---------------------------------------------------------------- synth ----

struct SynthArgs {
  std::string gen = "toy1";
  int n = 500;
  double b = 1.0;
  double noise = 0.5;
  double sigma_x = 0.5, sigma_s = 1.0, sigma_y = 0.5;
  std::uint64_t seed = 1;
  std::string out;
};

std::string dataset_to_csv(const Dataset& ds) {
  std::vector<std::string> cols = ds.feature_names;
  std::vector<int> sens_extra;  // sensitive columns not already features
  for (std::size_t q = 0; q < ds.sensitive_names.size(); ++q) {
    bool in_x = false;
    for (const auto& f : ds.feature_names)
      if (f == ds.sensitive_names[q]) in_x = true;
    if (!in_x) {
      cols.push_back(ds.sensitive_names[q]);
      sens_extra.push_back(static_cast<int>(q));
    }
  }
  cols.push_back("y");
  if (ds.has_f_true) cols.push_back("f_true");

  std::string out;
  for (std::size_t c = 0; c < cols.size(); ++c)
    out += (c ? "," : "") + cols[c];
  out += "\n";
  for (Eigen::Index i = 0; i < ds.n(); ++i) {
    for (Eigen::Index j = 0; j < ds.X.cols(); ++j)
      out += (j ? "," : "") + format_double(ds.X(i, j));
    for (int q : sens_extra) out += "," + format_double(ds.S(i, q));
    out += "," + format_double(ds.y(i));
    if (ds.has_f_true) out += "," + format_double(ds.f_true(i));
    out += "\n";
  }
  return out;
}

int cmd_synth(const SynthArgs& a) {
  Dataset ds;
  if (a.gen == "toy1") {
    Toy1Config cfg;
    cfg.n = a.n;
    cfg.bias = a.b;
    cfg.noise_sd = a.noise;
    cfg.seed = a.seed;
    ds = gen_toy1(cfg);
  } else if (a.gen == "toy2") {
    Toy2Config cfg;
    cfg.n = a.n;
    cfg.sigma_x = a.sigma_x;
    cfg.sigma_s = a.sigma_s;
    cfg.sigma_y = a.sigma_y;
    cfg.seed = a.seed;
    ds = gen_toy2(cfg);
  } else {
    throw std::invalid_argument("synth: generator must be toy1 or toy2");
  }
  const std::string csv = dataset_to_csv(ds);
  const std::string path = a.out.empty() ? a.gen + ".csv" : a.out;
  emit(path, csv);
  int cols = static_cast<int>(ds.X.cols()) + 1 + (ds.has_f_true ? 1 : 0);
  for (const auto& s : ds.sensitive_names) {
    bool in_x = false;
    for (const auto& f : ds.feature_names)
      if (f == s) in_x = true;
    if (!in_x) ++cols;
  }
  std::cout << "rows=" << ds.n() << " cols=" << cols << "\n";
  return 0;
}

// ------------------------------------------------------------------ fit ----

struct FitArgs {
  std::string method;
  std::string data;
  std::string test;
  std::string target = "y";
  std::vector<std::string> sensitive;
  std::vector<std::string> drop;
  bool sensitive_not_in_x = false;
  std::string kernel = "rbf";
  double theta = -1.0;  // < 0: median heuristic
  double lambda = 0.1;
  double eta = 0.0;
  double delta = -1.0;  // fair_gp only; < 0: derived from eta
  double theta_l = 0.5;
  double eps = 1e-6;
  bool cv = false;
  std::vector<double> theta_grid, lambda_grid;
  int cv_folds = 5;
  bool optimize = false;
  int restarts = 3;
  int max_iters = 60;
  bool standardize = false;
  std::uint64_t seed = 0;
  std::string out = "-";
};

std::string metrics_json(const Eigen::VectorXd& pred,
                         const Eigen::VectorXd& y_raw,
                         const Eigen::MatrixXd& S_raw, double theta_l,
                         double eps,
                         const std::optional<Eigen::VectorXd>& f_true) {
  const Eigen::MatrixXd L = gram(KernelSpec::rbf(theta_l), S_raw).values;
  const DependenceReport rep =
      dependence_report(pred, L, S_raw.col(0), eps, 16);
  auto num = [](double v) {
    return std::isfinite(v) ? format_double(v) : std::string("null");
  };
  std::string out = "{\"rmse\":" + num(rmse(pred, y_raw));
  out += ",\"r2_obs\":" + num(r_squared(pred, y_raw));
  out += ",\"r2_true\":" +
         (f_true ? num(r_squared(pred, *f_true)) : std::string("null"));
  out += ",\"hsic\":" + num(rep.hsic);
  out += ",\"nocco\":" + num(rep.nocco);
  out += ",\"mi\":" + num(rep.mi);
  out += ",\"corr_sensitive\":" + num(rep.corr);
  out += "}";
  return out;
}

std::string fit_config_json(const FitArgs& a) {
  auto num = [](double v) { return format_double(v); };
  std::string s = "{\"method\":\"" + json_escape(a.method) + "\"";
  s += ",\"data\":\"" + json_escape(a.data) + "\"";
  s += ",\"test\":\"" + json_escape(a.test) + "\"";
  s += ",\"target\":\"" + json_escape(a.target) + "\"";
  s += ",\"sensitive\":[";
  for (std::size_t i = 0; i < a.sensitive.size(); ++i)
    s += (i ? "," : "") + ("\"" + json_escape(a.sensitive[i]) + "\"");
  s += "],\"drop\":[";
  for (std::size_t i = 0; i < a.drop.size(); ++i)
    s += (i ? "," : "") + ("\"" + json_escape(a.drop[i]) + "\"");
  s += "],\"sensitive_in_x\":" +
       std::string(a.sensitive_not_in_x ? "false" : "true");
  s += ",\"kernel\":\"" + json_escape(a.kernel) + "\"";
  s += ",\"theta\":" + (a.theta >= 0.0 ? num(a.theta) : std::string("null"));
  s += ",\"lambda\":" + num(a.lambda);
  s += ",\"eta\":" + num(a.eta);
  s += ",\"delta\":" + (a.delta >= 0.0 ? num(a.delta) : std::string("null"));
  s += ",\"theta_l\":" + num(a.theta_l);
  s += ",\"eps\":" + num(a.eps);
  s += ",\"cv\":" + std::string(a.cv ? "true" : "false");
  s += ",\"cv_folds\":" + std::to_string(a.cv_folds);
  s += ",\"optimize\":" + std::string(a.optimize ? "true" : "false");
  s += ",\"restarts\":" + std::to_string(a.restarts);
  s += ",\"max_iters\":" + std::to_string(a.max_iters);
  s += ",\"standardize\":" + std::string(a.standardize ? "true" : "false");
  s += ",\"seed\":" + std::to_string(a.seed);
  s += "}";
  return s;
}

int cmd_fit(const FitArgs& a) {
  const bool erm =
      a.method == "krr" || a.method == "fkl" || a.method == "nfkl";
  const bool gp = a.method == "gp" || a.method == "fair_gp";
  if (!erm && !gp)
    throw std::invalid_argument(
        "fit: method must be krr, fkl, nfkl, gp or fair_gp");
  if (a.sensitive.empty())
    throw std::invalid_argument("fit: at least one --sensitive column");
  if (a.kernel != "rbf" && a.kernel != "ard")
    throw std::invalid_argument("fit: kernel must be rbf or ard");
  if (a.cv && !erm)
    throw std::invalid_argument("fit: --cv applies to krr/fkl/nfkl only");
  if (a.optimize && !gp)
    throw std::invalid_argument("fit: --optimize applies to gp/fair_gp only");
  if (a.cv && a.kernel == "ard")
    throw std::invalid_argument("fit: --cv tunes a single rbf lengthscale");
  if (a.delta >= 0.0 && a.method != "fair_gp")
    throw std::invalid_argument("fit: --delta applies to fair_gp only");
  if (a.lambda <= 0.0) throw std::invalid_argument("fit: lambda must be > 0");
  if (a.eta < 0.0) throw std::invalid_argument("fit: eta must be >= 0");

  Dataset train = load_csv(a.data, a.target, a.sensitive, a.drop,
                           !a.sensitive_not_in_x);
  std::optional<Dataset> test;
  if (!a.test.empty())
    test = load_csv(a.test, a.target, a.sensitive, a.drop,
                    !a.sensitive_not_in_x);

  const Eigen::VectorXd ytr_raw = train.y;
  const Eigen::MatrixXd Str_raw = train.S;
  StandardizationRecord srec;
  Dataset train_fit = train;
  std::optional<Dataset> test_fit = test;
  if (a.standardize) {
    auto [tds, rec] = standardize(train);
    train_fit = std::move(tds);
    srec = rec;
    if (test) test_fit = apply_standardization(srec, *test);
  }
  const int n = static_cast<int>(train_fit.X.rows());
  const int d = static_cast<int>(train_fit.X.cols());

  double init_theta = a.theta;
  if (init_theta < 0.0) init_theta = median_heuristic(train_fit.X);
  KernelSpec kx = a.kernel == "ard"
                      ? KernelSpec::ard(std::vector<double>(d, init_theta))
                      : KernelSpec::rbf(init_theta);

  double used_theta = init_theta;
  double used_lambda = a.lambda;
  std::string cv_json, nlml_json = "null", var_json, ls_json;
  Eigen::VectorXd pred_tr, pred_te;

  if (erm) {
    if (a.cv) {
      const std::vector<double> tg =
          a.theta_grid.empty() ? default_theta_grid() : a.theta_grid;
      const std::vector<double> lg =
          a.lambda_grid.empty() ? default_lambda_grid() : a.lambda_grid;
      const Method m = a.method == "krr"
                           ? Method::Krr
                           : (a.method == "nfkl" ? Method::Nfkl : Method::Fkl);
      const CvChoice choice =
          cv_select(train_fit.X, train_fit.y, train_fit.S, m, a.eta, tg, lg,
                    a.cv_folds, a.theta_l, a.eps, a.seed);
      used_theta = choice.theta;
      used_lambda = choice.lambda;
      kx = KernelSpec::rbf(choice.theta);
      cv_json = "{\"theta\":" + format_double(choice.theta) +
                ",\"lambda\":" + format_double(choice.lambda) +
                ",\"cv_rmse\":" + format_double(choice.cv_rmse) + "}";
    }
    if (a.method == "nfkl") {
      NfklConfig c;
      c.kernel_x = kx;
      c.kernel_s = KernelSpec::rbf(a.theta_l);
      c.lambda = used_lambda / n;  // plain-ridge value in, per-sample inside
      c.eta = a.eta;
      c.eps = a.eps;
      const NfklModel m = fit_nfkl(train_fit.X, train_fit.y, train_fit.S, c);
      pred_tr = predict_nfkl(m, train_fit.X);
      if (test_fit) pred_te = predict_nfkl(m, test_fit->X);
    } else {
      FairKrrConfig c;
      c.kernel_x = kx;
      c.kernel_s = KernelSpec::rbf(a.theta_l);
      c.lambda = used_lambda;
      c.eta = a.method == "krr" ? 0.0 : a.eta;
      const FairKrrModel m =
          fit_fkl(train_fit.X, train_fit.y, train_fit.S, c);
      pred_tr = predict_fkl(m, train_fit.X);
      if (test_fit) pred_te = predict_fkl(m, test_fit->X);
    }
  } else {
    FairGpConfig base;
    base.kernel_x = kx;
    base.kernel_s = KernelSpec::rbf(a.theta_l);
    base.lambda = a.lambda;
    base.delta = a.method == "gp"
                     ? 0.0
                     : (a.delta >= 0.0 ? a.delta : a.eta / (a.lambda * n));
    FairGpConfig cfg = base;
    if (a.optimize) {
      OptimizerSettings os;
      os.restarts = a.restarts;
      os.max_iters = a.max_iters;
      os.seed = a.seed;
      if (a.method == "fair_gp" && a.delta < 0.0) os.eta_link = a.eta;
      cfg = optimize_hyperparams(train_fit.X, train_fit.y, train_fit.S, base,
                                 os);
    }
    const FairGpModel m = gp_fit(train_fit.X, train_fit.y, train_fit.S, cfg);
    used_lambda = cfg.lambda;
    nlml_json = format_double(m.nlml);
    if (cfg.kernel_x.family == KernelFamily::Ard) {
      ls_json = "[";
      for (std::size_t i = 0; i < cfg.kernel_x.lengthscales.size(); ++i)
        ls_json += (i ? "," : "") + format_double(cfg.kernel_x.lengthscales[i]);
      ls_json += "]";
      double lg = 0.0;
      for (double v : cfg.kernel_x.lengthscales) lg += std::log(v);
      used_theta = std::exp(lg / cfg.kernel_x.lengthscales.size());
    } else {
      used_theta = cfg.kernel_x.theta;
    }
    const GpPrediction ptr = posterior_predict(m, train_fit.X);
    pred_tr = ptr.mean;
    Eigen::VectorXd var = ptr.var;
    if (test_fit) {
      const GpPrediction pte = posterior_predict(m, test_fit->X);
      pred_te = pte.mean;
      var = pte.var;
    }
    var_json = "{\"mean\":" + format_double(var.mean()) +
               ",\"min\":" + format_double(var.minCoeff()) +
               ",\"max\":" + format_double(var.maxCoeff()) + "}";
  }

  if (a.standardize) {
    pred_tr = destandardize_predictions(srec, pred_tr);
    if (test_fit) pred_te = destandardize_predictions(srec, pred_te);
  }

  std::string doc = "{\n\"meta\":{\"version\":\"";
  doc += kToolkitVersion;
  doc += "\",\"command\":\"fit\",\"seed\":" + std::to_string(a.seed);
  doc += ",\"config\":" + fit_config_json(a) + "},\n";
  doc += "\"fit\":{\"method\":\"" + json_escape(a.method) + "\"";
  doc += ",\"kernel\":\"" + json_escape(a.kernel) + "\"";
  doc += ",\"theta\":" + format_double(used_theta);
  if (!ls_json.empty()) doc += ",\"lengthscales\":" + ls_json;
  doc += ",\"lambda\":" + format_double(used_lambda);
  doc += ",\"eta\":" + format_double(erm && a.method != "krr" ? a.eta : 0.0);
  doc += ",\"theta_l\":" + format_double(a.theta_l);
  if (!cv_json.empty()) doc += ",\"cv\":" + cv_json;
  doc += ",\"nlml\":" + nlml_json;
  if (!var_json.empty()) doc += ",\"predictive_var\":" + var_json;
  std::optional<Eigen::VectorXd> ftr, fte;
  if (train.has_f_true) ftr = train.f_true;
  doc += ",\"in_sample\":" +
         metrics_json(pred_tr, ytr_raw, Str_raw, a.theta_l, a.eps, ftr);
  if (test) {
    if (test->has_f_true) fte = test->f_true;
    doc += ",\"test\":" +
           metrics_json(pred_te, test->y, test->S, a.theta_l, a.eps, fte);
  }
  doc += "}\n}\n";
  emit(a.out, doc);
  return 0;
}

// ------------------------------------------------------------- tradeoff ----

int cmd_tradeoff(const std::string& config_path) {
  const RunConfig cfg = load_run_config(config_path);
  const auto t0 = std::chrono::steady_clock::now();
  const TradeoffCurve curve = run_sweep(cfg.spec);
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (cfg.format == "json" || cfg.format == "both")
    write_text_file(cfg.output + ".json", render_result_json(cfg, curve));
  if (cfg.format == "csv" || cfg.format == "both")
    write_text_file(cfg.output + ".csv", render_result_csv(curve));
  // wall time goes to the error stream, never into result files, so reruns
  // stay byte-identical
  std::cerr << "tradeoff: records=" << curve.records.size()
            << " errors=" << curve.errors.size() << " wall_s=" << wall << "\n";
  for (const SweepError& e : curve.errors)
    std::cerr << "tradeoff: trial " << e.trial << " eta " << e.eta << ": "
              << e.message << "\n";
  return curve.records.empty() ? 1 : 0;
}

// ----------------------------------------------------------- ard-report ----

struct ArdArgs {
  std::string data;
  std::string test;
  std::string target = "y";
  std::vector<std::string> sensitive;
  std::vector<std::string> drop;
  bool sensitive_not_in_x = false;
  std::string kernel = "ard";
  double eta = 1.0;
  double lambda = 0.1;
  double theta_l = 0.5;
  double eps = 1e-6;
  int restarts = 2;
  int max_iters = 40;
  bool standardize = false;
  std::uint64_t seed = 0;
  std::string out = "-";
};

int cmd_ard_report(const ArdArgs& a) {
  if (a.kernel != "ard")
    throw std::invalid_argument("ard-report: needs --kernel ard");
  if (a.sensitive.empty())
    throw std::invalid_argument("ard-report: at least one --sensitive column");
  if (a.eta <= 0.0)
    throw std::invalid_argument("ard-report: eta must be > 0");

  Dataset train = load_csv(a.data, a.target, a.sensitive, a.drop,
                           !a.sensitive_not_in_x);
  std::optional<Dataset> test;
  if (!a.test.empty())
    test = load_csv(a.test, a.target, a.sensitive, a.drop,
                    !a.sensitive_not_in_x);

  const Eigen::VectorXd y_eval_raw = test ? test->y : train.y;
  const Eigen::MatrixXd S_eval_raw = test ? test->S : train.S;

  StandardizationRecord srec;
  Dataset train_fit = train;
  std::optional<Dataset> test_fit = test;
  if (a.standardize) {
    auto [tds, rec] = standardize(train);
    train_fit = std::move(tds);
    srec = rec;
    if (test) test_fit = apply_standardization(srec, *test);
  }
  const int d = static_cast<int>(train_fit.X.cols());
  if (d < 2)
    throw std::invalid_argument("ard-report: needs at least 2 features");
  const int n = static_cast<int>(train_fit.X.rows());

  FairGpConfig base;
  base.kernel_x =
      KernelSpec::ard(std::vector<double>(d, median_heuristic(train_fit.X)));
  base.kernel_s = KernelSpec::rbf(a.theta_l);
  base.lambda = a.lambda;

  auto run_one = [&](double eta_link, std::uint64_t seed) {
    OptimizerSettings os;
    os.restarts = a.restarts;
    os.max_iters = a.max_iters;
    os.eta_link = eta_link;
    os.seed = seed;
    const FairGpConfig tuned =
        optimize_hyperparams(train_fit.X, train_fit.y, train_fit.S, base, os);
    const FairGpModel m = gp_fit(train_fit.X, train_fit.y, train_fit.S, tuned);
    Eigen::VectorXd pred =
        posterior_predict(m, test_fit ? test_fit->X : train_fit.X).mean;
    if (a.standardize) pred = destandardize_predictions(srec, pred);
    return std::make_pair(ard_relevance_report(m), pred);
  };

  auto [ls_plain, pred_plain] = run_one(0.0, derive_seed(a.seed, 0));
  auto [ls_fair, pred_fair] = run_one(a.eta, derive_seed(a.seed, 1));

  const Eigen::MatrixXd L =
      gram(KernelSpec::rbf(a.theta_l), S_eval_raw).values;
  auto unfairness = [&](const Eigen::VectorXd& pred) {
    return hsic_linear_predictions(pred, L);
  };

  std::string table;
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s %14s %14s\n", "feature", "plain",
                "fair");
  table += line;
  for (int j = 0; j < d; ++j) {
    std::snprintf(line, sizeof(line), "%-24s %14.6g %14.6g\n",
                  train_fit.feature_names[j].c_str(), ls_plain[j], ls_fair[j]);
    table += line;
  }
  std::snprintf(line, sizeof(line), "%-24s %14.6g %14.6g\n", "rmse",
                rmse(pred_plain, y_eval_raw), rmse(pred_fair, y_eval_raw));
  table += line;
  std::snprintf(line, sizeof(line), "%-24s %14.6g %14.6g\n", "unfairness",
                unfairness(pred_plain), unfairness(pred_fair));
  table += line;
  (void)n;
  emit(a.out, table);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"fair kernel learning toolkit"};
  app.require_subcommand(1);

  SynthArgs sa;
  CLI::App* synth = app.add_subcommand(
      "synth", "generate a synthetic dataset and write it as CSV");
  synth->add_option("generator", sa.gen, "toy1 or toy2")->required();
  synth->add_option("--n", sa.n, "number of rows");
  synth->add_option("--b", sa.b, "toy1 bias magnitude");
  synth->add_option("--noise", sa.noise, "toy1 noise standard deviation");
  synth->add_option("--sigma-x", sa.sigma_x, "toy2 sigma_x");
  synth->add_option("--sigma-s", sa.sigma_s, "toy2 sigma_s");
  synth->add_option("--sigma-y", sa.sigma_y, "toy2 sigma_y");
  synth->add_option("--seed", sa.seed, "generator seed");
  synth->add_option("--out", sa.out, "output path (default <generator>.csv)");

  FitArgs fa;
  CLI::App* fit = app.add_subcommand(
      "fit", "fit one model and report its metrics as JSON");
  fit->add_option("--method", fa.method, "krr | fkl | nfkl | gp | fair_gp")
      ->required();
  fit->add_option("--data", fa.data, "training CSV")->required();
  fit->add_option("--test", fa.test, "held-out CSV for test metrics");
  fit->add_option("--target", fa.target, "target column (default y)");
  fit->add_option("--sensitive", fa.sensitive, "sensitive column names")
      ->required()
      ->delimiter(',');
  fit->add_option("--drop", fa.drop, "columns to drop")->delimiter(',');
  fit->add_flag("--sensitive-not-in-x", fa.sensitive_not_in_x,
                "exclude sensitive columns from the features");
  fit->add_option("--kernel", fa.kernel, "rbf | ard");
  fit->add_option("--theta", fa.theta,
                  "kernel lengthscale (default: median heuristic)");
  fit->add_option("--lambda", fa.lambda,
                  "ridge weight / observation noise variance");
  fit->add_option("--eta", fa.eta, "fairness weight");
  fit->add_option("--delta", fa.delta, "fair_gp prior correction weight");
  fit->add_option("--theta-l", fa.theta_l, "sensitive-kernel lengthscale");
  fit->add_option("--eps", fa.eps, "normalization regularizer (nfkl)");
  fit->add_flag("--cv", fa.cv, "select theta/lambda by k-fold CV");
  fit->add_option("--theta-grid", fa.theta_grid, "CV theta grid")
      ->delimiter(',');
  fit->add_option("--lambda-grid", fa.lambda_grid, "CV lambda grid")
      ->delimiter(',');
  fit->add_option("--cv-folds", fa.cv_folds, "CV fold count");
  fit->add_flag("--optimize", fa.optimize,
                "tune GP hyperparameters by marginal likelihood");
  fit->add_option("--restarts", fa.restarts, "optimizer restarts");
  fit->add_option("--max-iters", fa.max_iters, "optimizer iterations");
  fit->add_flag("--standardize", fa.standardize,
                "standardize features and target on the training split");
  fit->add_option("--seed", fa.seed, "seed for CV folds / restarts");
  fit->add_option("--out", fa.out, "output path, '-' for stdout");

  std::string tradeoff_config;
  CLI::App* tradeoff = app.add_subcommand(
      "tradeoff", "run a sweep from a JSON config, write JSON + CSV results");
  tradeoff->add_option("config", tradeoff_config, "run configuration file")
      ->required();

  ArdArgs aa;
  CLI::App* ard = app.add_subcommand(
      "ard-report",
      "per-feature lengthscales of a plain vs fairness-corrected GP");
  ard->add_option("--data", aa.data, "training CSV")->required();
  ard->add_option("--test", aa.test, "held-out CSV for the metric rows");
  ard->add_option("--target", aa.target, "target column (default y)");
  ard->add_option("--sensitive", aa.sensitive, "sensitive column names")
      ->required()
      ->delimiter(',');
  ard->add_option("--drop", aa.drop, "columns to drop")->delimiter(',');
  ard->add_flag("--sensitive-not-in-x", aa.sensitive_not_in_x,
                "exclude sensitive columns from the features");
  ard->add_option("--kernel", aa.kernel, "must be ard");
  ard->add_option("--eta", aa.eta, "fairness weight for the fair column");
  ard->add_option("--lambda", aa.lambda, "starting noise variance");
  ard->add_option("--theta-l", aa.theta_l, "sensitive-kernel lengthscale");
  ard->add_option("--eps", aa.eps, "dependence normalization regularizer");
  ard->add_option("--restarts", aa.restarts, "optimizer restarts");
  ard->add_option("--max-iters", aa.max_iters, "optimizer iterations");
  ard->add_flag("--standardize", aa.standardize,
                "standardize features and target on the training split");
  ard->add_option("--seed", aa.seed, "optimizer seed");
  ard->add_option("--out", aa.out, "output path, '-' for stdout");

  int rc = 0;
  synth->callback([&]() { rc = cmd_synth(sa); });
  fit->callback([&]() { rc = cmd_fit(fa); });
  tradeoff->callback([&]() { rc = cmd_tradeoff(tradeoff_config); });
  ard->callback([&]() { rc = cmd_ard_report(aa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace fairkl
