#include "fairkl/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include "fairkl/dependence.hpp"
#include "fairkl/fair_krr.hpp"
#include "fairkl/nfkl.hpp"
#include "fairkl/rng.hpp"

namespace fairkl {

namespace {

// sub-stream tags hung off each trial's seed
constexpr std::uint64_t kDataStream = 0;
constexpr std::uint64_t kFoldStream = 1;
constexpr std::uint64_t kOptStream = 2;

bool is_erm(Method m) {
  return m == Method::Krr || m == Method::Fkl || m == Method::Nfkl;
}

void check_grid(const std::vector<double>& g, const char* what,
                bool allow_zero) {
  if (g.empty())
    throw std::invalid_argument(std::string("sweep: empty ") + what + " grid");
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = g[i];
    if (!std::isfinite(v) || v < 0.0 || (!allow_zero && v == 0.0))
      throw std::invalid_argument(std::string("sweep: invalid ") + what +
                                  " grid value");
    if (i > 0 && !(v > g[i - 1]))
      throw std::invalid_argument(std::string("sweep: ") + what +
                                  " grid must be strictly ascending");
  }
}

struct TrialData {
  // fit space (after optional standardization / baseline transform)
  Eigen::MatrixXd Xtr, Str, Xte;
  Eigen::VectorXd ytr;
  // metric space (original units, untouched sensitive values)
  Eigen::VectorXd yte_raw, f_true_raw;
  Eigen::MatrixXd Ste_raw;
  bool has_f_true = false;
  StandardizationRecord std_rec;
  bool standardized = false;
};

TrialData make_trial_data(const SweepSpec& spec, const Dataset* file_data,
                          std::uint64_t data_seed) {
  Dataset train, test;
  if (spec.data.kind == DataSource::Kind::File) {
    const int total = spec.n_train + spec.n_test;
    if (file_data->n() < total)
      throw std::invalid_argument(
          "sweep: file has fewer rows than n_train + n_test");
    const std::vector<int> perm =
        CounterRng(data_seed).permutation(static_cast<int>(file_data->n()));
    std::vector<int> tr(perm.begin(), perm.begin() + spec.n_train);
    std::vector<int> te(perm.begin() + spec.n_train, perm.begin() + total);
    train = file_data->rows(tr);
    test = file_data->rows(te);
  } else {
    // generator rows are iid, so a contiguous split is a fresh draw
    Dataset full;
    if (spec.data.kind == DataSource::Kind::Toy1) {
      Toy1Config cfg = spec.data.toy1;
      cfg.n = spec.n_train + spec.n_test;
      cfg.seed = data_seed;
      full = gen_toy1(cfg);
    } else {
      Toy2Config cfg = spec.data.toy2;
      cfg.n = spec.n_train + spec.n_test;
      cfg.seed = data_seed;
      full = gen_toy2(cfg);
    }
    std::vector<int> tr(spec.n_train), te(spec.n_test);
    for (int i = 0; i < spec.n_train; ++i) tr[i] = i;
    for (int i = 0; i < spec.n_test; ++i) te[i] = spec.n_train + i;
    train = full.rows(tr);
    test = full.rows(te);
  }

  TrialData td;
  td.yte_raw = test.y;
  td.Ste_raw = test.S;
  td.has_f_true = test.has_f_true;
  if (test.has_f_true) td.f_true_raw = test.f_true;

  Dataset train_fit = train, test_fit = test;
  if (spec.standardize) {
    auto [std_train, rec] = standardize(train);
    train_fit = std::move(std_train);
    test_fit = apply_standardization(rec, test);
    td.std_rec = rec;
    td.standardized = true;
  }
  if (spec.baseline == BaselineTransform::Osv) {
    train_fit = baseline_osv(train_fit);
    test_fit = baseline_osv(test_fit);
  } else if (spec.baseline == BaselineTransform::Frl) {
    const FrlTransform ft = frl_fit(train_fit);
    train_fit = frl_apply(ft, train_fit);
    test_fit = frl_apply(ft, test_fit);
  }
  td.Xtr = train_fit.X;
  td.ytr = train_fit.y;
  td.Str = train_fit.S;
  td.Xte = test_fit.X;
  return td;
}

// Mean fold RMSE over the whole (eta, theta, lambda) grid in one pass.
// One Cholesky of K + lambda I per (fold, theta, lambda); every eta reuses it
// through a low-rank update in the leading eigenspace of the centered
// sensitive Gram, which is exactly how the penalty enters the normal
// equations. Directions below 1e-13 of the top eigenvalue are dropped; their
// weight in the system is below round-off for either penalty.
std::vector<Eigen::MatrixXd> cv_tables(
    const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
    const Eigen::MatrixXd& S, Method method, const std::vector<double>& etas,
    const std::vector<double>& thetas, const std::vector<double>& lambdas,
    int k, double theta_l, double eps, std::uint64_t seed) {
  const int n = static_cast<int>(X.rows());
  if (k < 2 || k > n)
    throw std::invalid_argument("cv: fold count must lie in [2, n]");
  check_grid(etas, "eta", true);
  check_grid(thetas, "theta", false);
  check_grid(lambdas, "lambda", false);

  const int E = static_cast<int>(etas.size());
  const int Tn = static_cast<int>(thetas.size());
  const int Ln = static_cast<int>(lambdas.size());
  std::vector<Eigen::MatrixXd> tables(E, Eigen::MatrixXd::Zero(Tn, Ln));

  const std::vector<std::vector<int>> folds = kfold_indices(n, k, seed);
  for (int f = 0; f < k; ++f) {
    std::vector<int> tr;
    tr.reserve(n - folds[f].size());
    for (int g = 0; g < k; ++g)
      if (g != f) tr.insert(tr.end(), folds[g].begin(), folds[g].end());
    const std::vector<int>& va = folds[f];
    const int nf = static_cast<int>(tr.size());
    const int mf = static_cast<int>(va.size());

    Eigen::MatrixXd Xtr(nf, X.cols()), Str(nf, S.cols()), Xva(mf, X.cols());
    Eigen::VectorXd ytr(nf), yva(mf);
    for (int i = 0; i < nf; ++i) {
      Xtr.row(i) = X.row(tr[i]);
      Str.row(i) = S.row(tr[i]);
      ytr(i) = y(tr[i]);
    }
    for (int i = 0; i < mf; ++i) {
      Xva.row(i) = X.row(va[i]);
      yva(i) = y(va[i]);
    }
    const double ym = ytr.mean();
    const Eigen::VectorXd yc = ytr.array() - ym;

    const Eigen::MatrixXd B =
        center_gram(gram(KernelSpec::rbf(theta_l), Str).values);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(B);
    const double mu_max = eig.eigenvalues().size() > 0
                              ? std::max(0.0, eig.eigenvalues().maxCoeff())
                              : 0.0;
    const double mu_tol = 1e-13 * mu_max;
    int r = 0;
    for (int j = 0; j < eig.eigenvalues().size(); ++j)
      if (eig.eigenvalues()(j) > mu_tol) ++r;
    Eigen::MatrixXd U(nf, r);
    Eigen::VectorXd mu(r);
    for (int j = 0, c = 0; j < eig.eigenvalues().size(); ++j) {
      if (eig.eigenvalues()(j) > mu_tol) {
        U.col(c) = eig.eigenvectors().col(j);
        mu(c) = eig.eigenvalues()(j);
        ++c;
      }
    }

    const Eigen::MatrixXd D2tt = squared_distances(Xtr);
    const Eigen::MatrixXd D2vt = squared_distances(Xva, Xtr);

    for (int ti = 0; ti < Tn; ++ti) {
      const Eigen::MatrixXd K = rbf_gram_from_sqdist(D2tt, thetas[ti]);
      const Eigen::MatrixXd Kv = rbf_gram_from_sqdist(D2vt, thetas[ti]);
      const Eigen::MatrixXd KU = K * U;
      const double jit = 1e-10 * K.trace() / nf;

      for (int li = 0; li < Ln; ++li) {
        Eigen::MatrixXd P = K;
        P.diagonal().array() += lambdas[li] + jit;
        const Eigen::LLT<Eigen::MatrixXd> llt(P);
        if (llt.info() != Eigen::Success)
          throw std::runtime_error("cv: base system not positive definite");
        const Eigen::VectorXd zy = llt.solve(yc);
        Eigen::MatrixXd ZU;
        Eigen::MatrixXd M0;
        Eigen::VectorXd my;
        if (r > 0) {
          ZU = llt.solve(U);
          M0 = KU.transpose() * ZU;
          my = KU.transpose() * zy;
        }

        for (int ei = 0; ei < E; ++ei) {
          Eigen::VectorXd alpha;
          if (etas[ei] == 0.0 || r == 0) {
            alpha = zy;
          } else {
            Eigen::MatrixXd cap = M0;
            for (int j = 0; j < r; ++j) {
              const double cj = method == Method::Nfkl
                                    ? etas[ei] * mu(j) / (mu(j) + nf * eps)
                                    : (etas[ei] / nf) * mu(j);
              cap(j, j) += 1.0 / cj;
            }
            const Eigen::VectorXd sv =
                Eigen::PartialPivLU<Eigen::MatrixXd>(cap).solve(my);
            alpha = zy - ZU * sv;
          }
          const Eigen::VectorXd pred =
              (Kv * alpha).array() + ym;
          tables[ei](ti, li) +=
              std::sqrt((pred - yva).squaredNorm() / mf) / k;
        }
      }
    }
  }
  return tables;
}

struct GridPick {
  int ti = -1, li = -1;
  double val = std::numeric_limits<double>::quiet_NaN();
};

GridPick pick_best(const Eigen::MatrixXd& table,
                   const std::vector<double>& thetas,
                   const std::vector<double>& lambdas) {
  GridPick best;
  for (int ti = 0; ti < table.rows(); ++ti) {
    for (int li = 0; li < table.cols(); ++li) {
      const double v = table(ti, li);
      if (!std::isfinite(v)) continue;
      bool take = best.ti < 0 || v < best.val;
      if (!take && v == best.val) {
        take = lambdas[li] < lambdas[best.li] ||
               (lambdas[li] == lambdas[best.li] &&
                thetas[ti] < thetas[best.ti]);
      }
      if (take) {
        best.ti = ti;
        best.li = li;
        best.val = v;
      }
    }
  }
  if (best.ti < 0)
    throw std::runtime_error("cv: no finite score on the whole grid");
  return best;
}

SweepRecord make_record(const SweepSpec& spec, const TrialData& td, int trial,
                        double eta, const Eigen::VectorXd& pred_fit_space,
                        double theta, double lambda,
                        std::optional<double> nlml) {
  Eigen::VectorXd pred = pred_fit_space;
  if (td.standardized) pred = destandardize_predictions(td.std_rec, pred);

  SweepRecord rec;
  rec.trial = trial;
  rec.eta = eta;
  rec.theta = theta;
  rec.lambda = lambda;
  rec.nlml = nlml;
  rec.rmse = rmse(pred, td.yte_raw);
  rec.r2_obs = r_squared(pred, td.yte_raw);
  if (td.has_f_true) rec.r2_true = r_squared(pred, td.f_true_raw);

  const Eigen::MatrixXd L =
      gram(KernelSpec::rbf(spec.theta_l), td.Ste_raw).values;
  const DependenceReport rep = dependence_report(
      pred, L, td.Ste_raw.col(0), spec.eps, spec.mi_bins);
  rec.hsic = rep.hsic;
  rec.nocco = rep.nocco;
  rec.mi = rep.mi;
  rec.corr_sensitive = rep.corr;
  return rec;
}

std::vector<AggregateRow> aggregate_records(
    const std::vector<double>& etas,
    const std::vector<std::optional<SweepRecord>>& slots, int trials) {
  const int E = static_cast<int>(etas.size());
  std::vector<AggregateRow> out;
  out.reserve(E);
  for (int e = 0; e < E; ++e) {
    AggregateRow row;
    row.eta = etas[e];
    std::vector<const SweepRecord*> recs;
    for (int t = 0; t < trials; ++t)
      if (slots[static_cast<std::size_t>(t) * E + e])
        recs.push_back(&*slots[static_cast<std::size_t>(t) * E + e]);
    row.count = static_cast<int>(recs.size());
    if (row.count == 0) {
      out.push_back(row);
      continue;
    }
    auto mean_se = [&](auto get, double& m, double& se) {
      double s = 0.0;
      for (auto* r : recs) s += get(*r);
      m = s / row.count;
      double v = 0.0;
      for (auto* r : recs) v += (get(*r) - m) * (get(*r) - m);
      se = row.count > 1 ? std::sqrt(v / (row.count - 1) / row.count) : 0.0;
    };
    mean_se([](const SweepRecord& r) { return r.rmse; }, row.rmse_mean,
            row.rmse_se);
    mean_se([](const SweepRecord& r) { return r.r2_obs; }, row.r2_obs_mean,
            row.r2_obs_se);
    mean_se([](const SweepRecord& r) { return r.hsic; }, row.hsic_mean,
            row.hsic_se);
    mean_se([](const SweepRecord& r) { return r.nocco; }, row.nocco_mean,
            row.nocco_se);
    mean_se([](const SweepRecord& r) { return r.mi; }, row.mi_mean, row.mi_se);
    mean_se([](const SweepRecord& r) { return r.corr_sensitive; },
            row.corr_mean, row.corr_se);
    const bool all_true = std::all_of(
        recs.begin(), recs.end(),
        [](const SweepRecord* r) { return r->r2_true.has_value(); });
    if (all_true) {
      double m = 0.0, se = 0.0;
      mean_se([](const SweepRecord& r) { return *r.r2_true; }, m, se);
      row.r2_true_mean = m;
      row.r2_true_se = se;
    }
    out.push_back(row);
  }
  return out;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::Krr: return "krr";
    case Method::Fkl: return "fkl";
    case Method::Nfkl: return "nfkl";
    case Method::Gp: return "gp";
    case Method::FairGp: return "fair_gp";
  }
  return "unknown";
}

std::string baseline_name(BaselineTransform b) {
  switch (b) {
    case BaselineTransform::None: return "none";
    case BaselineTransform::Osv: return "osv";
    case BaselineTransform::Frl: return "frl";
  }
  return "unknown";
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 1 || lo <= 0.0 || hi < lo)
    throw std::invalid_argument("log_spaced: need 0 < lo <= hi, count >= 1");
  std::vector<double> g(count);
  if (count == 1) {
    g[0] = lo;
    return g;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < count; ++i)
    g[i] = std::exp(llo + (lhi - llo) * i / (count - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_eta_grid() {
  std::vector<double> g{0.0};
  const std::vector<double> pos = log_spaced(1e-7, 1e3, 25);
  g.insert(g.end(), pos.begin(), pos.end());
  return g;
}

std::vector<double> default_theta_grid() { return log_spaced(1e-4, 1e3, 10); }

std::vector<double> default_lambda_grid() { return log_spaced(1e-4, 1e4, 10); }

std::vector<double> theta_grid_around_median(const Eigen::MatrixXd& X,
                                             int count, std::uint64_t seed,
                                             double sigma_log) {
  if (count < 0 || sigma_log < 0.0)
    throw std::invalid_argument(
        "theta_grid_around_median: count and sigma_log must be >= 0");
  const double med = median_heuristic(X);
  std::vector<double> g{med};
  CounterRng rng(seed);
  for (int i = 0; i < count; ++i)
    g.push_back(med * std::exp(sigma_log * rng.next_normal()));
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

EffectiveGrids effective_grids(const SweepSpec& spec) {
  EffectiveGrids g;
  if (spec.method == Method::Krr || spec.method == Method::Gp)
    g.etas = {0.0};
  else
    g.etas = spec.eta_grid.empty() ? default_eta_grid() : spec.eta_grid;
  g.thetas = spec.theta_grid.empty() ? default_theta_grid() : spec.theta_grid;
  g.lambdas =
      spec.lambda_grid.empty() ? default_lambda_grid() : spec.lambda_grid;
  return g;
}

CvChoice cv_select(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                   const Eigen::MatrixXd& S, Method method, double eta,
                   const std::vector<double>& theta_grid,
                   const std::vector<double>& lambda_grid, int k,
                   double theta_l, double eps, std::uint64_t seed) {
  if (!is_erm(method))
    throw std::invalid_argument("cv_select: only the ridge-family methods "
                                "use grid cross-validation");
  const std::vector<double> etas{method == Method::Krr ? 0.0 : eta};
  const std::vector<Eigen::MatrixXd> tabs =
      cv_tables(X, y, S, method, etas, theta_grid, lambda_grid, k, theta_l,
                eps, seed);
  const GridPick p = pick_best(tabs[0], theta_grid, lambda_grid);
  CvChoice out;
  out.theta = theta_grid[p.ti];
  out.lambda = lambda_grid[p.li];
  out.cv_rmse = p.val;
  out.table = tabs[0];
  return out;
}

TradeoffCurve run_sweep(const SweepSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (spec.n_train < 4 || spec.n_test < 2)
    throw std::invalid_argument("sweep: need n_train >= 4 and n_test >= 2");
  if (spec.theta_l <= 0.0 || spec.eps <= 0.0)
    throw std::invalid_argument("sweep: theta_l and eps must be positive");
  if (spec.mi_bins < 2)
    throw std::invalid_argument("sweep: mi_bins must be >= 2");

  const EffectiveGrids grids = effective_grids(spec);
  const std::vector<double>& etas = grids.etas;
  const std::vector<double>& thetas = grids.thetas;
  const std::vector<double>& lambdas = grids.lambdas;
  check_grid(etas, "eta", true);
  if (is_erm(spec.method)) {
    check_grid(thetas, "theta", false);
    check_grid(lambdas, "lambda", false);
    if (spec.cv_folds < 2 || spec.cv_folds > spec.n_train)
      throw std::invalid_argument("sweep: cv_folds must lie in [2, n_train]");
  }

  std::optional<Dataset> file_data;
  if (spec.data.kind == DataSource::Kind::File) {
    file_data = load_csv(spec.data.file.path, spec.data.file.target,
                         spec.data.file.sensitive, spec.data.file.drop,
                         spec.data.file.sensitive_in_x);
  }

  const int T = spec.trials;
  const int E = static_cast<int>(etas.size());
  std::vector<std::optional<SweepRecord>> slots(
      static_cast<std::size_t>(T) * E);
  std::vector<std::optional<SweepError>> eslots(
      static_cast<std::size_t>(T) * E);

  // trials are the independent work items; every cell writes only its own slot
#pragma omp parallel for schedule(dynamic)
  for (int t = 0; t < T; ++t) {
    const std::uint64_t trial_seed = derive_seed(spec.seed, t);
    auto fail_all = [&](const std::string& msg) {
      for (int e = 0; e < E; ++e)
        eslots[static_cast<std::size_t>(t) * E + e] =
            SweepError{t, etas[e], msg};
    };
    try {
      const TrialData td =
          make_trial_data(spec, file_data ? &*file_data : nullptr,
                          derive_seed(trial_seed, kDataStream));

      std::vector<Eigen::MatrixXd> tabs;
      if (is_erm(spec.method)) {
        tabs = cv_tables(td.Xtr, td.ytr, td.Str, spec.method, etas, thetas,
                         lambdas, spec.cv_folds, spec.theta_l, spec.eps,
                         derive_seed(trial_seed, kFoldStream));
      }

      for (int e = 0; e < E; ++e) {
        const std::size_t cell = static_cast<std::size_t>(t) * E + e;
        try {
          if (is_erm(spec.method)) {
            const GridPick p = pick_best(tabs[e], thetas, lambdas);
            const double theta = thetas[p.ti], lambda = lambdas[p.li];
            Eigen::VectorXd pred;
            if (spec.method == Method::Nfkl) {
              NfklConfig c;
              c.kernel_x = KernelSpec::rbf(theta);
              c.kernel_s = KernelSpec::rbf(spec.theta_l);
              c.lambda = lambda / td.Xtr.rows();  // plain-ridge value in
              c.eta = etas[e];
              c.eps = spec.eps;
              pred = predict_nfkl(fit_nfkl(td.Xtr, td.ytr, td.Str, c), td.Xte);
            } else {
              FairKrrConfig c;
              c.kernel_x = KernelSpec::rbf(theta);
              c.kernel_s = KernelSpec::rbf(spec.theta_l);
              c.lambda = lambda;
              c.eta = etas[e];
              pred = predict_fkl(fit_fkl(td.Xtr, td.ytr, td.Str, c), td.Xte);
            }
            slots[cell] = make_record(spec, td, t, etas[e], pred, theta,
                                      lambda, std::nullopt);
          } else {
            FairGpConfig base;
            base.kernel_x = KernelSpec::rbf(median_heuristic(td.Xtr));
            base.kernel_s = KernelSpec::rbf(spec.theta_l);
            base.lambda = 0.1;
            OptimizerSettings os = spec.optimizer;
            os.eta_link = etas[e];
            os.seed = derive_seed(derive_seed(trial_seed, kOptStream), e);
            const FairGpConfig tuned =
                optimize_hyperparams(td.Xtr, td.ytr, td.Str, base, os);
            const FairGpModel model =
                gp_fit(td.Xtr, td.ytr, td.Str, tuned);
            const Eigen::VectorXd pred =
                posterior_predict(model, td.Xte).mean;
            double theta = tuned.kernel_x.theta;
            if (tuned.kernel_x.family == KernelFamily::Ard) {
              double lg = 0.0;
              for (double v : tuned.kernel_x.lengthscales) lg += std::log(v);
              theta = std::exp(lg / tuned.kernel_x.lengthscales.size());
            }
            slots[cell] = make_record(spec, td, t, etas[e], pred, theta,
                                      tuned.lambda, model.nlml);
          }
        } catch (const std::exception& ex) {
          eslots[cell] = SweepError{t, etas[e], ex.what()};
        }
      }
    } catch (const std::exception& ex) {
      fail_all(ex.what());
    } catch (...) {
      fail_all("unknown failure");
    }
  }

  TradeoffCurve out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i]) out.records.push_back(*slots[i]);
    if (eslots[i]) out.errors.push_back(*eslots[i]);
  }
  out.aggregate = aggregate_records(etas, slots, T);
  return out;
}

std::vector<MethodRun> compare_methods(const std::vector<SweepSpec>& specs) {
  if (specs.empty())
    throw std::invalid_argument("compare_methods: no specs given");
  const SweepSpec& ref = specs.front();
  for (const SweepSpec& s : specs) {
    const bool same =
        s.data.kind == ref.data.kind && s.seed == ref.seed &&
        s.trials == ref.trials && s.n_train == ref.n_train &&
        s.n_test == ref.n_test && s.standardize == ref.standardize &&
        (s.data.kind != DataSource::Kind::File ||
         (s.data.file.path == ref.data.file.path &&
          s.data.file.target == ref.data.file.target));
    if (!same)
      throw std::invalid_argument(
          "compare_methods: specs disagree on the data protocol");
  }
  std::vector<MethodRun> out;
  out.reserve(specs.size());
  for (const SweepSpec& s : specs) {
    MethodRun run;
    run.label = method_name(s.method);
    if (s.baseline != BaselineTransform::None)
      run.label += "+" + baseline_name(s.baseline);
    run.spec = s;
    run.curve = run_sweep(s);
    out.push_back(std::move(run));
  }
  return out;
}

double rmse_hsic_auc(const std::vector<SweepRecord>& trial_records) {
  if (trial_records.size() < 2) return 0.0;
  std::vector<std::pair<double, double>> pts;
  pts.reserve(trial_records.size());
  for (const SweepRecord& r : trial_records) pts.emplace_back(r.hsic, r.rmse);
  std::sort(pts.begin(), pts.end());
  double area = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    area += (pts[i].first - pts[i - 1].first) *
            (pts[i].second + pts[i - 1].second) / 2.0;
  return area;
}

}  // namespace fairkl
