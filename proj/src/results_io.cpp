#include "fairkl/results_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fairkl {

namespace {

using nlohmann::json;

std::string jnum(double v) {
  return std::isfinite(v) ? format_double(v) : "null";
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string jarr(const std::vector<double>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += jnum(v[i]);
  }
  return out + "]";
}

std::string jarr(const std::vector<std::string>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += jstr(v[i]);
  }
  return out + "]";
}

void check_keys(const json& obj, const std::vector<std::string>& allowed,
                const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw std::invalid_argument(std::string("config: unknown key '") +
                                  it.key() + "' in " + where);
  }
}

Method parse_method(const std::string& s) {
  if (s == "krr") return Method::Krr;
  if (s == "fkl") return Method::Fkl;
  if (s == "nfkl") return Method::Nfkl;
  if (s == "gp") return Method::Gp;
  if (s == "fair_gp") return Method::FairGp;
  throw std::invalid_argument("config: unknown method '" + s + "'");
}

BaselineTransform parse_baseline(const std::string& s) {
  if (s == "none") return BaselineTransform::None;
  if (s == "osv") return BaselineTransform::Osv;
  if (s == "frl") return BaselineTransform::Frl;
  throw std::invalid_argument("config: unknown baseline '" + s + "'");
}

std::vector<double> parse_grid(const json& j, const char* what) {
  if (!j.is_array())
    throw std::invalid_argument(std::string("config: ") + what +
                                " must be an array of numbers");
  std::vector<double> g;
  for (const auto& v : j) {
    if (!v.is_number())
      throw std::invalid_argument(std::string("config: ") + what +
                                  " must contain only numbers");
    g.push_back(v.get<double>());
  }
  return g;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") +
                                ex.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("config: top level must be an object");
  check_keys(j,
             {"method", "baseline", "data", "n_train", "n_test", "trials",
              "seed", "eta_grid", "theta_grid", "lambda_grid", "cv_folds",
              "theta_l", "eps", "standardize", "optimizer", "mi_bins",
              "output", "format"},
             "top level");

  RunConfig cfg;
  try {
    if (!j.contains("method"))
      throw std::invalid_argument("config: 'method' is required");
    cfg.spec.method = parse_method(j.at("method").get<std::string>());
    if (j.contains("baseline"))
      cfg.spec.baseline = parse_baseline(j.at("baseline").get<std::string>());

    if (!j.contains("data") || !j.at("data").is_object())
      throw std::invalid_argument("config: 'data' object is required");
    const json& d = j.at("data");
    const std::string kind = d.value("kind", "");
    if (kind == "toy1") {
      check_keys(d, {"kind", "bias", "noise_sd"}, "data");
      cfg.spec.data.kind = DataSource::Kind::Toy1;
      if (d.contains("bias"))
        cfg.spec.data.toy1.bias = d.at("bias").get<double>();
      if (d.contains("noise_sd"))
        cfg.spec.data.toy1.noise_sd = d.at("noise_sd").get<double>();
    } else if (kind == "toy2") {
      check_keys(d, {"kind", "sigma_x", "sigma_s", "sigma_y"}, "data");
      cfg.spec.data.kind = DataSource::Kind::Toy2;
      if (d.contains("sigma_x"))
        cfg.spec.data.toy2.sigma_x = d.at("sigma_x").get<double>();
      if (d.contains("sigma_s"))
        cfg.spec.data.toy2.sigma_s = d.at("sigma_s").get<double>();
      if (d.contains("sigma_y"))
        cfg.spec.data.toy2.sigma_y = d.at("sigma_y").get<double>();
    } else if (kind == "file") {
      check_keys(d, {"kind", "path", "target", "sensitive", "drop",
                     "sensitive_in_x"},
                 "data");
      cfg.spec.data.kind = DataSource::Kind::File;
      cfg.spec.data.file.path = d.value("path", "");
      cfg.spec.data.file.target = d.value("target", "");
      if (cfg.spec.data.file.path.empty() ||
          cfg.spec.data.file.target.empty())
        throw std::invalid_argument(
            "config: file data needs 'path' and 'target'");
      if (d.contains("sensitive"))
        cfg.spec.data.file.sensitive =
            d.at("sensitive").get<std::vector<std::string>>();
      if (cfg.spec.data.file.sensitive.empty())
        throw std::invalid_argument(
            "config: file data needs a nonempty 'sensitive' list");
      if (d.contains("drop"))
        cfg.spec.data.file.drop =
            d.at("drop").get<std::vector<std::string>>();
      if (d.contains("sensitive_in_x"))
        cfg.spec.data.file.sensitive_in_x =
            d.at("sensitive_in_x").get<bool>();
    } else {
      throw std::invalid_argument(
          "config: data.kind must be toy1, toy2 or file");
    }

    if (j.contains("n_train")) cfg.spec.n_train = j.at("n_train").get<int>();
    if (j.contains("n_test")) cfg.spec.n_test = j.at("n_test").get<int>();
    if (j.contains("trials")) cfg.spec.trials = j.at("trials").get<int>();
    if (j.contains("seed"))
      cfg.spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("eta_grid"))
      cfg.spec.eta_grid = parse_grid(j.at("eta_grid"), "eta_grid");
    if (j.contains("theta_grid"))
      cfg.spec.theta_grid = parse_grid(j.at("theta_grid"), "theta_grid");
    if (j.contains("lambda_grid"))
      cfg.spec.lambda_grid = parse_grid(j.at("lambda_grid"), "lambda_grid");
    if (j.contains("cv_folds"))
      cfg.spec.cv_folds = j.at("cv_folds").get<int>();
    if (j.contains("theta_l")) cfg.spec.theta_l = j.at("theta_l").get<double>();
    if (j.contains("eps")) cfg.spec.eps = j.at("eps").get<double>();
    if (j.contains("standardize"))
      cfg.spec.standardize = j.at("standardize").get<bool>();
    if (j.contains("mi_bins")) cfg.spec.mi_bins = j.at("mi_bins").get<int>();
    if (j.contains("optimizer")) {
      const json& o = j.at("optimizer");
      check_keys(o, {"restarts", "max_iters", "fd_step", "grad_tol"},
                 "optimizer");
      if (o.contains("restarts"))
        cfg.spec.optimizer.restarts = o.at("restarts").get<int>();
      if (o.contains("max_iters"))
        cfg.spec.optimizer.max_iters = o.at("max_iters").get<int>();
      if (o.contains("fd_step"))
        cfg.spec.optimizer.fd_step = o.at("fd_step").get<double>();
      if (o.contains("grad_tol"))
        cfg.spec.optimizer.grad_tol = o.at("grad_tol").get<double>();
    }
    if (!j.contains("output") || !j.at("output").is_string() ||
        j.at("output").get<std::string>().empty())
      throw std::invalid_argument("config: 'output' path prefix is required");
    cfg.output = j.at("output").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both")
      throw std::invalid_argument("config: format must be json, csv or both");
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& ex) {
    throw std::invalid_argument(std::string("config: ") + ex.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::invalid_argument("config: cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string render_config_json(const RunConfig& cfg) {
  const SweepSpec& s = cfg.spec;
  const EffectiveGrids grids = effective_grids(s);
  std::string d;
  if (s.data.kind == DataSource::Kind::Toy1) {
    d = "{\"kind\":\"toy1\",\"bias\":" + jnum(s.data.toy1.bias) +
        ",\"noise_sd\":" + jnum(s.data.toy1.noise_sd) + "}";
  } else if (s.data.kind == DataSource::Kind::Toy2) {
    d = "{\"kind\":\"toy2\",\"sigma_x\":" + jnum(s.data.toy2.sigma_x) +
        ",\"sigma_s\":" + jnum(s.data.toy2.sigma_s) +
        ",\"sigma_y\":" + jnum(s.data.toy2.sigma_y) + "}";
  } else {
    d = "{\"kind\":\"file\",\"path\":" + jstr(s.data.file.path) +
        ",\"target\":" + jstr(s.data.file.target) +
        ",\"sensitive\":" + jarr(s.data.file.sensitive) +
        ",\"drop\":" + jarr(s.data.file.drop) + ",\"sensitive_in_x\":" +
        (s.data.file.sensitive_in_x ? "true" : "false") + "}";
  }
  std::string out = "{";
  out += "\"method\":" + jstr(method_name(s.method));
  out += ",\"baseline\":" + jstr(baseline_name(s.baseline));
  out += ",\"data\":" + d;
  out += ",\"n_train\":" + std::to_string(s.n_train);
  out += ",\"n_test\":" + std::to_string(s.n_test);
  out += ",\"trials\":" + std::to_string(s.trials);
  out += ",\"seed\":" + std::to_string(s.seed);
  out += ",\"eta_grid\":" + jarr(grids.etas);
  out += ",\"theta_grid\":" + jarr(grids.thetas);
  out += ",\"lambda_grid\":" + jarr(grids.lambdas);
  out += ",\"cv_folds\":" + std::to_string(s.cv_folds);
  out += ",\"theta_l\":" + jnum(s.theta_l);
  out += ",\"eps\":" + jnum(s.eps);
  out += std::string(",\"standardize\":") + (s.standardize ? "true" : "false");
  out += ",\"optimizer\":{\"restarts\":" + std::to_string(s.optimizer.restarts);
  out += ",\"max_iters\":" + std::to_string(s.optimizer.max_iters);
  out += ",\"fd_step\":" + jnum(s.optimizer.fd_step);
  out += ",\"grad_tol\":" + jnum(s.optimizer.grad_tol) + "}";
  out += ",\"mi_bins\":" + std::to_string(s.mi_bins);
  out += ",\"output\":" + jstr(cfg.output);
  out += ",\"format\":" + jstr(cfg.format);
  out += "}";
  return out;
}

std::string render_result_json(const RunConfig& cfg,
                               const TradeoffCurve& curve) {
  std::string out = "{\n\"meta\":{\"version\":" +
                    jstr(kToolkitVersion) +
                    ",\"seed\":" + std::to_string(cfg.spec.seed) +
                    ",\"config\":" + render_config_json(cfg) + "},\n";
  out += "\"records\":[";
  for (std::size_t i = 0; i < curve.records.size(); ++i) {
    const SweepRecord& r = curve.records[i];
    out += i == 0 ? "\n" : ",\n";
    out += "{\"trial\":" + std::to_string(r.trial);
    out += ",\"eta\":" + jnum(r.eta);
    out += ",\"rmse\":" + jnum(r.rmse);
    out += ",\"r2_obs\":" + jnum(r.r2_obs);
    out += ",\"r2_true\":" + (r.r2_true ? jnum(*r.r2_true) : "null");
    out += ",\"hsic\":" + jnum(r.hsic);
    out += ",\"nocco\":" + jnum(r.nocco);
    out += ",\"mi\":" + jnum(r.mi);
    out += ",\"corr_sensitive\":" + jnum(r.corr_sensitive);
    out += ",\"theta\":" + jnum(r.theta);
    out += ",\"lambda\":" + jnum(r.lambda);
    out += ",\"nlml\":" + (r.nlml ? jnum(*r.nlml) : "null");
    out += "}";
  }
  out += "\n],\n\"errors\":[";
  for (std::size_t i = 0; i < curve.errors.size(); ++i) {
    const SweepError& e = curve.errors[i];
    out += i == 0 ? "\n" : ",\n";
    out += "{\"trial\":" + std::to_string(e.trial) +
           ",\"eta\":" + jnum(e.eta) + ",\"message\":" + jstr(e.message) + "}";
  }
  out += "\n]\n}\n";
  return out;
}

std::string render_result_csv(const TradeoffCurve& curve) {
  std::string out =
      "trial,eta,rmse,r2_obs,r2_true,hsic,nocco,mi,corr_sensitive,theta,"
      "lambda,nlml\n";
  for (const SweepRecord& r : curve.records) {
    out += std::to_string(r.trial);
    out += "," + format_double(r.eta);
    out += "," + format_double(r.rmse);
    out += "," + format_double(r.r2_obs);
    out += "," + (r.r2_true ? format_double(*r.r2_true) : std::string());
    out += "," + format_double(r.hsic);
    out += "," + format_double(r.nocco);
    out += "," + format_double(r.mi);
    out += "," + format_double(r.corr_sensitive);
    out += "," + format_double(r.theta);
    out += "," + format_double(r.lambda);
    out += "," + (r.nlml ? format_double(*r.nlml) : std::string());
    out += "\n";
  }
  return out;
}

std::string render_comparison_table(const std::vector<MethodRun>& runs) {
  std::ostringstream out;
  for (const MethodRun& run : runs) {
    out << "# " << run.label << "\n";
    out << "eta  rmse  rmse_se  r2_obs  r2_true  hsic  nocco  mi  corr  "
           "count\n";
    for (const AggregateRow& a : run.curve.aggregate) {
      char r2t[32] = "-";
      if (a.r2_true_mean)
        std::snprintf(r2t, sizeof(r2t), "%.6g", *a.r2_true_mean);
      char line[512];
      std::snprintf(line, sizeof(line),
                    "%.6g  %.6g  %.6g  %.6g  %s  %.6g  %.6g  %.6g  %.6g  %d\n",
                    a.eta, a.rmse_mean, a.rmse_se, a.r2_obs_mean, r2t,
                    a.hsic_mean, a.nocco_mean, a.mi_mean, a.corr_mean,
                    a.count);
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace fairkl
