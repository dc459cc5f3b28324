#include "fairkl/datasets.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "fairkl/rng.hpp"

namespace fairkl {

namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

int find_name(const std::vector<std::string>& names, const std::string& want) {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == want) return static_cast<int>(i);
  return -1;
}

}  // namespace

Dataset Dataset::rows(const std::vector<int>& idx) const {
  Dataset out;
  out.feature_names = feature_names;
  out.sensitive_names = sensitive_names;
  out.has_f_true = has_f_true;
  out.X.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
  out.y.resize(static_cast<Eigen::Index>(idx.size()));
  out.S.resize(static_cast<Eigen::Index>(idx.size()), S.cols());
  if (has_f_true) out.f_true.resize(static_cast<Eigen::Index>(idx.size()));
  for (size_t r = 0; r < idx.size(); ++r) {
    const int i = idx[r];
    if (i < 0 || i >= X.rows())
      throw std::invalid_argument("Dataset::rows: index out of range");
    out.X.row(static_cast<Eigen::Index>(r)) = X.row(i);
    out.y(static_cast<Eigen::Index>(r)) = y(i);
    out.S.row(static_cast<Eigen::Index>(r)) = S.row(i);
    if (has_f_true) out.f_true(static_cast<Eigen::Index>(r)) = f_true(i);
  }
  return out;
}

Dataset gen_toy1(const Toy1Config& cfg) {
  if (cfg.n < 4) throw std::invalid_argument("gen_toy1: n must be >= 4");
  if (!(cfg.noise_sd > 0.0))
    throw std::invalid_argument("gen_toy1: noise_sd must be > 0");
  CounterRng rng(cfg.seed);
  Dataset ds;
  ds.X.resize(cfg.n, 3);
  ds.y.resize(cfg.n);
  ds.S.resize(cfg.n, 1);
  ds.f_true.resize(cfg.n);
  ds.has_f_true = true;
  ds.feature_names = {"x1", "x2", "x3"};
  ds.sensitive_names = {"x3"};
  const double root_half = std::sqrt(0.5);
  for (int i = 0; i < cfg.n; ++i) {
    // draw order per row: x1, x2, z, noise
    const double x1 = rng.next_normal();
    const double x2 = rng.next_normal();
    const double z = rng.next_normal();
    const double eps = cfg.noise_sd * rng.next_normal();
    const double x3 = (x1 + z) * root_half;
    const double f = sign((x1 - z) * x3) * std::abs(x2);
    ds.X(i, 0) = x1;
    ds.X(i, 1) = x2;
    ds.X(i, 2) = x3;
    ds.S(i, 0) = x3;
    ds.f_true(i) = f;
    ds.y(i) = f + (x3 > 0.0 ? cfg.bias : -cfg.bias) + eps;
  }
  return ds;
}

Dataset gen_toy2(const Toy2Config& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("gen_toy2: n must be >= 1");
  if (!(cfg.sigma_x > 0.0) || !(cfg.sigma_s > 0.0) || !(cfg.sigma_y > 0.0))
    throw std::invalid_argument("gen_toy2: scales must be > 0");
  CounterRng rng(cfg.seed);
  Dataset ds;
  ds.X.resize(cfg.n, 1);
  ds.y.resize(cfg.n);
  ds.S.resize(cfg.n, 1);
  ds.f_true.resize(cfg.n);
  ds.has_f_true = true;
  ds.feature_names = {"x"};
  ds.sensitive_names = {"s"};
  for (int i = 0; i < cfg.n; ++i) {
    // draw order per row: s, x, noise
    const double s = cfg.sigma_s * rng.next_normal();
    const double xm = std::log(std::max(std::abs(s), 1e-300));
    const double x = xm + cfg.sigma_x * rng.next_normal();
    const double eps = cfg.sigma_y * rng.next_normal();
    ds.X(i, 0) = x;
    ds.S(i, 0) = s;
    ds.f_true(i) = x * x + s * s;
    ds.y(i) = ds.f_true(i) + eps;
  }
  return ds;
}

std::pair<Dataset, StandardizationRecord> standardize(const Dataset& ds) {
  const Eigen::Index n = ds.n();
  if (n < 2) throw std::invalid_argument("standardize: need at least 2 rows");
  StandardizationRecord rec;
  std::vector<double> means, sds;
  for (Eigen::Index j = 0; j < ds.X.cols(); ++j) {
    const double m = ds.X.col(j).mean();
    const double sd = std::sqrt((ds.X.col(j).array() - m).square().sum() /
                                static_cast<double>(n - 1));
    if (sd == 0.0) {
      rec.dropped_constant.push_back(ds.feature_names[j]);
      continue;
    }
    rec.kept_columns.push_back(static_cast<int>(j));
    means.push_back(m);
    sds.push_back(sd);
  }
  if (rec.kept_columns.empty())
    throw std::invalid_argument("standardize: every feature column is constant");
  rec.x_mean = Eigen::Map<Eigen::VectorXd>(means.data(), means.size());
  rec.x_sd = Eigen::Map<Eigen::VectorXd>(sds.data(), sds.size());
  rec.y_mean = ds.y.mean();
  rec.y_sd = std::sqrt((ds.y.array() - rec.y_mean).square().sum() /
                       static_cast<double>(n - 1));
  if (rec.y_sd == 0.0) rec.y_sd = 1.0;

  bool all_in_x = !ds.sensitive_names.empty();
  for (const auto& s : ds.sensitive_names) {
    const int j = find_name(ds.feature_names, s);
    if (j < 0 ||
        std::find(rec.kept_columns.begin(), rec.kept_columns.end(), j) ==
            rec.kept_columns.end()) {
      all_in_x = false;
      break;
    }
  }
  rec.s_from_features = all_in_x;
  if (!all_in_x && ds.S.cols() > 0) {
    rec.s_mean.resize(ds.S.cols());
    rec.s_sd.resize(ds.S.cols());
    for (Eigen::Index j = 0; j < ds.S.cols(); ++j) {
      rec.s_mean(j) = ds.S.col(j).mean();
      const double sd =
          std::sqrt((ds.S.col(j).array() - rec.s_mean(j)).square().sum() /
                    static_cast<double>(n - 1));
      rec.s_sd(j) = sd == 0.0 ? 1.0 : sd;
    }
  }
  return {apply_standardization(rec, ds), rec};
}

Dataset apply_standardization(const StandardizationRecord& rec,
                              const Dataset& ds) {
  Dataset out;
  const Eigen::Index n = ds.n();
  const Eigen::Index p = static_cast<Eigen::Index>(rec.kept_columns.size());
  out.X.resize(n, p);
  out.feature_names.reserve(rec.kept_columns.size());
  for (Eigen::Index c = 0; c < p; ++c) {
    const int j = rec.kept_columns[static_cast<size_t>(c)];
    out.X.col(c) = (ds.X.col(j).array() - rec.x_mean(c)) / rec.x_sd(c);
    out.feature_names.push_back(ds.feature_names[j]);
  }
  out.y = (ds.y.array() - rec.y_mean) / rec.y_sd;
  out.has_f_true = ds.has_f_true;
  if (ds.has_f_true)
    out.f_true = (ds.f_true.array() - rec.y_mean) / rec.y_sd;

  out.sensitive_names.clear();
  if (rec.s_from_features) {
    std::vector<Eigen::Index> cols;
    for (const auto& s : ds.sensitive_names) {
      const int j = find_name(out.feature_names, s);
      if (j >= 0) {
        cols.push_back(j);
        out.sensitive_names.push_back(s);
      }
    }
    out.S.resize(n, static_cast<Eigen::Index>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
      out.S.col(static_cast<Eigen::Index>(c)) = out.X.col(cols[c]);
  } else {
    out.sensitive_names = ds.sensitive_names;
    out.S.resize(n, ds.S.cols());
    for (Eigen::Index j = 0; j < ds.S.cols(); ++j)
      out.S.col(j) = (ds.S.col(j).array() - rec.s_mean(j)) / rec.s_sd(j);
  }
  return out;
}

Eigen::VectorXd destandardize_predictions(const StandardizationRecord& rec,
                                          const Eigen::VectorXd& pred) {
  return (pred.array() * rec.y_sd + rec.y_mean).matrix();
}

Dataset baseline_osv(const Dataset& ds) {
  if (ds.sensitive_names.empty())
    throw std::invalid_argument("baseline_osv: no sensitive columns declared");
  std::vector<int> sens_idx;
  for (const auto& s : ds.sensitive_names) {
    const int j = find_name(ds.feature_names, s);
    if (j < 0)
      throw std::invalid_argument("baseline_osv: sensitive column '" + s +
                                  "' not present in X");
    sens_idx.push_back(j);
  }
  Dataset out = ds;
  std::vector<int> keep;
  for (int j = 0; j < static_cast<int>(ds.feature_names.size()); ++j)
    if (std::find(sens_idx.begin(), sens_idx.end(), j) == sens_idx.end())
      keep.push_back(j);
  if (keep.empty())
    throw std::invalid_argument(
        "baseline_osv: removing sensitive columns would empty X");
  out.X.resize(ds.n(), static_cast<Eigen::Index>(keep.size()));
  out.feature_names.clear();
  for (size_t c = 0; c < keep.size(); ++c) {
    out.X.col(static_cast<Eigen::Index>(c)) = ds.X.col(keep[c]);
    out.feature_names.push_back(ds.feature_names[keep[c]]);
  }
  return out;
}

FrlTransform frl_fit(const Dataset& ds) {
  const Eigen::Index n = ds.n();
  const Eigen::Index q = ds.S.cols();
  if (q == 0)
    throw std::invalid_argument("frl_fit: no sensitive columns");
  std::vector<int> sens_idx;
  for (const auto& s : ds.sensitive_names) {
    const int j = find_name(ds.feature_names, s);
    if (j >= 0) sens_idx.push_back(j);
  }
  FrlTransform t;
  for (int j = 0; j < static_cast<int>(ds.feature_names.size()); ++j)
    if (std::find(sens_idx.begin(), sens_idx.end(), j) == sens_idx.end()) {
      t.kept_columns.push_back(j);
      t.kept_names.push_back(ds.feature_names[j]);
    }
  if (t.kept_columns.empty())
    throw std::invalid_argument("frl_fit: every column is sensitive");

  Eigen::MatrixXd G(n, q + 1);
  G.leftCols(q) = ds.S;
  G.col(q).setOnes();
  Eigen::MatrixXd A = G.transpose() * G;
  // tiny ridge keeps rank-deficient sensitive designs solvable
  A.diagonal().array() += 1e-10 * std::max(1.0, A.trace() / (q + 1.0));
  const Eigen::LDLT<Eigen::MatrixXd> solver(A);
  t.coef.resize(q + 1, static_cast<Eigen::Index>(t.kept_columns.size()));
  for (size_t c = 0; c < t.kept_columns.size(); ++c)
    t.coef.col(static_cast<Eigen::Index>(c)) =
        solver.solve(G.transpose() * ds.X.col(t.kept_columns[c]));
  return t;
}

Dataset frl_apply(const FrlTransform& t, const Dataset& ds) {
  const Eigen::Index n = ds.n();
  const Eigen::Index q = ds.S.cols();
  if (t.coef.rows() != q + 1)
    throw std::invalid_argument("frl_apply: sensitive width mismatch");
  Eigen::MatrixXd G(n, q + 1);
  G.leftCols(q) = ds.S;
  G.col(q).setOnes();
  Dataset out = ds;
  out.feature_names = t.kept_names;
  out.X.resize(n, static_cast<Eigen::Index>(t.kept_columns.size()));
  for (size_t c = 0; c < t.kept_columns.size(); ++c)
    out.X.col(static_cast<Eigen::Index>(c)) =
        ds.X.col(t.kept_columns[c]) -
        G * t.coef.col(static_cast<Eigen::Index>(c));
  return out;
}

Dataset baseline_frl(const Dataset& ds) { return frl_apply(frl_fit(ds), ds); }

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

bool is_missing(const std::string& tok) {
  return tok.empty() || tok == "NA" || tok == "?";
}

double parse_cell(const std::string& tok, int line_no,
                  const std::string& col) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || p != last)
    throw std::invalid_argument("load_csv: line " + std::to_string(line_no) +
                                ", column '" + col + "': cannot parse '" +
                                tok + "'");
  return v;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& target_column,
                 const std::vector<std::string>& sensitive_columns,
                 const std::vector<std::string>& drop_columns,
                 bool sensitive_in_x, CsvLoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("load_csv: empty file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_csv_line(line);
  std::unordered_map<std::string, int> col_of;
  for (size_t i = 0; i < header.size(); ++i) {
    if (col_of.count(header[i]))
      throw std::invalid_argument("load_csv: duplicate column '" + header[i] +
                                  "'");
    col_of[header[i]] = static_cast<int>(i);
  }
  auto require = [&](const std::string& name) {
    auto it = col_of.find(name);
    if (it == col_of.end())
      throw std::invalid_argument("load_csv: no column named '" + name + "'");
    return it->second;
  };
  const int target_idx = require(target_column);
  std::vector<int> sens_idx;
  for (const auto& s : sensitive_columns) {
    if (s == target_column)
      throw std::invalid_argument("load_csv: target cannot be sensitive");
    sens_idx.push_back(require(s));
  }
  std::vector<bool> dropped(header.size(), false);
  for (const auto& d : drop_columns) {
    if (d == target_column)
      throw std::invalid_argument("load_csv: cannot drop the target column");
    dropped[static_cast<size_t>(require(d))] = true;
  }
  for (int j : sens_idx)
    if (dropped[static_cast<size_t>(j)])
      throw std::invalid_argument("load_csv: cannot drop a sensitive column");

  std::vector<int> feature_idx;
  std::vector<std::string> feature_names;
  for (size_t j = 0; j < header.size(); ++j) {
    if (static_cast<int>(j) == target_idx || dropped[j]) continue;
    const bool is_sens =
        std::find(sens_idx.begin(), sens_idx.end(), static_cast<int>(j)) !=
        sens_idx.end();
    if (is_sens && !sensitive_in_x) continue;
    feature_idx.push_back(static_cast<int>(j));
    feature_names.push_back(header[j]);
  }
  if (feature_idx.empty())
    throw std::invalid_argument("load_csv: no feature columns remain");

  std::vector<std::vector<double>> rows;
  CsvLoadReport rep;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw std::invalid_argument("load_csv: line " + std::to_string(line_no) +
                                  " has " + std::to_string(cells.size()) +
                                  " cells, expected " +
                                  std::to_string(header.size()));
    ++rep.rows_read;
    bool missing = false;
    for (size_t j = 0; j < header.size() && !missing; ++j) {
      if (dropped[j]) continue;
      if (is_missing(cells[j])) missing = true;
    }
    if (missing) {
      ++rep.rows_dropped_missing;
      continue;
    }
    std::vector<double> row;
    row.reserve(1 + feature_idx.size() + sens_idx.size());
    row.push_back(parse_cell(cells[static_cast<size_t>(target_idx)], line_no,
                             target_column));
    for (int j : feature_idx)
      row.push_back(parse_cell(cells[static_cast<size_t>(j)], line_no,
                               header[static_cast<size_t>(j)]));
    for (int j : sens_idx)
      row.push_back(parse_cell(cells[static_cast<size_t>(j)], line_no,
                               header[static_cast<size_t>(j)]));
    rows.push_back(std::move(row));
  }
  if (rows.empty())
    throw std::runtime_error("load_csv: no usable rows in '" + path + "'");

  Dataset ds;
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  ds.X.resize(n, static_cast<Eigen::Index>(feature_idx.size()));
  ds.y.resize(n);
  ds.S.resize(n, static_cast<Eigen::Index>(sens_idx.size()));
  ds.feature_names = feature_names;
  ds.sensitive_names = sensitive_columns;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<size_t>(i)];
    ds.y(i) = r[0];
    for (size_t c = 0; c < feature_idx.size(); ++c)
      ds.X(i, static_cast<Eigen::Index>(c)) = r[1 + c];
    for (size_t c = 0; c < sens_idx.size(); ++c)
      ds.S(i, static_cast<Eigen::Index>(c)) = r[1 + feature_idx.size() + c];
  }
  if (report) *report = rep;
  return ds;
}

std::vector<std::vector<int>> kfold_indices(int n, int k, std::uint64_t seed) {
  if (k < 2 || k > n)
    throw std::invalid_argument("kfold_indices: need 2 <= k <= n");
  CounterRng rng(seed);
  const std::vector<int> perm = rng.permutation(n);
  std::vector<std::vector<int>> folds(static_cast<size_t>(k));
  const int base = n / k, extra = n % k;
  int pos = 0;
  for (int f = 0; f < k; ++f) {
    const int size = base + (f < extra ? 1 : 0);
    folds[static_cast<size_t>(f)].assign(perm.begin() + pos,
                                         perm.begin() + pos + size);
    pos += size;
  }
  return folds;
}

}  // namespace fairkl
