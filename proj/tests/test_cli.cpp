#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fairkl/cli.hpp"
#include "fairkl/datasets.hpp"
#include "fairkl/kernels.hpp"
#include "fairkl/results_io.hpp"
#include "json.hpp"

using namespace fairkl;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path dir;
  TempDir() {
    static std::atomic<int> counter{0};
    dir = fs::temp_directory_path() /
          ("fairkl_cli_" + std::to_string(counter.fetch_add(1)));
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  std::string path(const std::string& name) const {
    return (dir / name).string();
  }
};

struct Redirect {
  std::ostream& os;
  std::ostringstream buf;
  std::streambuf* old;
  explicit Redirect(std::ostream& s) : os(s), old(s.rdbuf(buf.rdbuf())) {}
  ~Redirect() { os.rdbuf(old); }
};

struct CliResult {
  int rc;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("fairkl");
  for (const auto& a : args) argv.push_back(a.c_str());
  CliResult res;
  {
    Redirect cap_out(std::cout), cap_err(std::cerr);
    res.rc = run_cli(static_cast<int>(argv.size()), argv.data());
    res.out = cap_out.buf.str();
    res.err = cap_err.buf.str();
  }
  return res;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

json jload(const std::string& p) { return json::parse(slurp(p)); }

std::string toy1_csv(const TempDir& td, const std::string& name, int n,
                     std::uint64_t seed) {
  const std::string p = td.path(name);
  const CliResult r = run({"synth", "toy1", "--n", std::to_string(n), "--seed",
                           std::to_string(seed), "--out", p});
  REQUIRE(r.rc == 0);
  return p;
}

std::string toy2_csv(const TempDir& td, const std::string& name, int n,
                     std::uint64_t seed) {
  const std::string p = td.path(name);
  const CliResult r = run({"synth", "toy2", "--n", std::to_string(n), "--seed",
                           std::to_string(seed), "--out", p});
  REQUIRE(r.rc == 0);
  return p;
}

}  // namespace

TEST_CASE("cli synth writes a toy1 csv and reports its shape") {
  TempDir td;
  const std::string p = td.path("a.csv");
  const CliResult r = run({"synth", "toy1", "--n", "200", "--b", "1", "--seed",
                           "7", "--out", p});
  CHECK(r.rc == 0);
  CHECK(r.out == "rows=200 cols=5\n");

  const std::string body = slurp(p);
  const std::vector<std::string> rows = lines_of(body);
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "x1,x2,x3,y,f_true");
  for (const auto& row : rows)
    CHECK(std::count(row.begin(), row.end(), ',') == 4);

  // same command, second file: byte-identical output
  const std::string p2 = td.path("b.csv");
  const CliResult r2 = run({"synth", "toy1", "--n", "200", "--b", "1",
                            "--seed", "7", "--out", p2});
  CHECK(r2.rc == 0);
  CHECK(slurp(p2) == body);

  // the 17-digit cells round-trip: loading the file reproduces the generator
  Toy1Config cfg;
  cfg.n = 200;
  cfg.bias = 1.0;
  cfg.noise_sd = 0.5;
  cfg.seed = 7;
  const Dataset direct = gen_toy1(cfg);
  const Dataset back = load_csv(p, "y", {"x3"}, {"f_true"}, true);
  REQUIRE(back.n() == 200);
  CHECK(back.feature_names == std::vector<std::string>{"x1", "x2", "x3"});
  CHECK(back.X == direct.X);
  CHECK(back.y == direct.y);
}

TEST_CASE("cli synth toy2 keeps the sensitive column beside the features") {
  TempDir td;
  const std::string p = td.path("t2.csv");
  const CliResult r = run({"synth", "toy2", "--n", "50", "--seed", "3",
                           "--out", p});
  CHECK(r.rc == 0);
  CHECK(r.out == "rows=50 cols=4\n");
  const std::vector<std::string> rows = lines_of(slurp(p));
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] == "x,s,y,f_true");
}

TEST_CASE("cli synth rejects bad arguments") {
  TempDir td;
  const std::string p = td.path("x.csv");
  CHECK(run({"synth", "toy3", "--out", p}).rc == 2);
  CHECK(run({"synth"}).rc == 2);
  CHECK(run({"synth", "toy1", "--n", "2", "--out", p}).rc == 2);
  CHECK(run({"synth", "toy2", "--n", "0", "--out", p}).rc == 2);
  CHECK(run({"synth", "toy1", "--noise", "0", "--out", p}).rc == 2);
  CHECK(run({"synth", "toy2", "--sigma-x", "-1", "--out", p}).rc == 2);
}

TEST_CASE("cli fit reports kernel ridge metrics as json") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 120, 11);
  const std::string out = td.path("fit.json");
  const CliResult r =
      run({"fit", "--method", "krr", "--data", data, "--sensitive", "x3",
           "--drop", "f_true", "--theta", "1", "--lambda", "0.1", "--out",
           out});
  REQUIRE(r.rc == 0);

  const json doc = jload(out);
  CHECK(doc["meta"]["version"] == kToolkitVersion);
  CHECK(doc["meta"]["command"] == "fit");
  CHECK(doc["meta"]["config"]["method"] == "krr");
  CHECK(doc["meta"]["config"]["sensitive"] == json::array({"x3"}));
  CHECK(doc["meta"]["config"]["sensitive_in_x"] == true);
  CHECK(doc["meta"]["config"]["theta"] == 1.0);

  const json& fit = doc["fit"];
  CHECK(fit["method"] == "krr");
  CHECK(fit["kernel"] == "rbf");
  CHECK(fit["theta"] == 1.0);
  CHECK(fit["lambda"] == 0.1);
  CHECK(fit["eta"] == 0.0);
  CHECK(fit["nlml"].is_null());
  CHECK(!fit.contains("predictive_var"));
  CHECK(!fit.contains("cv"));
  CHECK(!fit.contains("test"));

  const json& ins = fit["in_sample"];
  CHECK(ins["rmse"].get<double>() > 0.0);
  CHECK(ins["r2_obs"].get<double>() <= 1.0);
  CHECK(ins["r2_true"].is_null());  // csv input carries no clean target
  CHECK(ins["hsic"].get<double>() >= 0.0);
  CHECK(ins["nocco"].get<double>() >= 0.0);
  CHECK(ins["mi"].get<double>() >= 0.0);
  CHECK(std::abs(ins["corr_sensitive"].get<double>()) <= 1.0);
}

TEST_CASE("cli fit falls back to the median heuristic lengthscale") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 80, 5);
  const std::string out = td.path("fit.json");
  const CliResult r =
      run({"fit", "--method", "krr", "--data", data, "--sensitive", "x3",
           "--drop", "f_true", "--out", out});
  REQUIRE(r.rc == 0);
  const json doc = jload(out);
  CHECK(doc["meta"]["config"]["theta"].is_null());
  const Dataset ds = load_csv(data, "y", {"x3"}, {"f_true"}, true);
  CHECK(doc["fit"]["theta"].get<double>() == median_heuristic(ds.X));
}

TEST_CASE("cli fit fkl at eta zero matches plain kernel ridge") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 90, 2);
  const std::string out_krr = td.path("krr.json");
  const std::string out_fkl = td.path("fkl.json");
  const std::vector<std::string> common = {
      "--data", data,  "--sensitive", "x3",  "--drop", "f_true",
      "--theta", "1",  "--lambda",    "0.2", "--out"};
  std::vector<std::string> a = {"fit", "--method", "krr"};
  a.insert(a.end(), common.begin(), common.end());
  a.push_back(out_krr);
  std::vector<std::string> b = {"fit", "--method", "fkl", "--eta", "0"};
  b.insert(b.end(), common.begin(), common.end());
  b.push_back(out_fkl);
  REQUIRE(run(a).rc == 0);
  REQUIRE(run(b).rc == 0);

  json krr = jload(out_krr), fkl = jload(out_fkl);
  CHECK(krr != fkl);
  krr["meta"]["config"].erase("method");
  fkl["meta"]["config"].erase("method");
  krr["fit"].erase("method");
  fkl["fit"].erase("method");
  CHECK(krr == fkl);
}

TEST_CASE("cli fit fair_gp at delta zero matches the plain gp") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 70, 4);
  const std::string out_gp = td.path("gp.json");
  const std::string out_fgp = td.path("fgp.json");
  const std::vector<std::string> common = {
      "--data", data, "--sensitive", "x3",  "--drop", "f_true",
      "--theta", "1", "--lambda",    "0.1", "--out"};
  std::vector<std::string> a = {"fit", "--method", "gp"};
  a.insert(a.end(), common.begin(), common.end());
  a.push_back(out_gp);
  std::vector<std::string> b = {"fit", "--method", "fair_gp", "--delta", "0"};
  b.insert(b.end(), common.begin(), common.end());
  b.push_back(out_fgp);
  REQUIRE(run(a).rc == 0);
  REQUIRE(run(b).rc == 0);

  json gp = jload(out_gp), fgp = jload(out_fgp);
  CHECK(gp["fit"]["nlml"].is_number());
  const json& var = gp["fit"]["predictive_var"];
  CHECK(var["min"].get<double>() > 0.0);
  CHECK(var["min"].get<double>() <= var["mean"].get<double>());
  CHECK(var["mean"].get<double>() <= var["max"].get<double>());

  gp["meta"]["config"].erase("method");
  fgp["meta"]["config"].erase("method");
  gp["meta"]["config"].erase("delta");
  fgp["meta"]["config"].erase("delta");
  gp["fit"].erase("method");
  fgp["fit"].erase("method");
  CHECK(gp == fgp);
}

TEST_CASE("cli fit test-set metrics come from the held-out file") {
  TempDir td;
  const std::string train = toy1_csv(td, "train.csv", 100, 11);
  const std::string test = toy1_csv(td, "test.csv", 60, 12);
  const std::string out = td.path("fit.json");
  const std::vector<std::string> args = {
      "fit",     "--method",    "fkl",  "--eta",  "0.5",    "--data", train,
      "--test",  test,          "--sensitive", "x3", "--drop", "f_true",
      "--theta", "1",           "--lambda", "0.1", "--out", out};
  REQUIRE(run(args).rc == 0);
  const json doc = jload(out);
  REQUIRE(doc["fit"].contains("test"));
  const json& te = doc["fit"]["test"];
  CHECK(te["rmse"].get<double>() > 0.0);
  CHECK(te["hsic"].get<double>() >= 0.0);
  CHECK(te["rmse"].get<double>() !=
        doc["fit"]["in_sample"]["rmse"].get<double>());

  // a rerun reproduces the document byte for byte
  const std::string bytes = slurp(out);
  REQUIRE(run(args).rc == 0);
  CHECK(slurp(out) == bytes);
}

TEST_CASE("cli fit cross-validation selects from the given grids") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 60, 9);
  const std::string out = td.path("fit.json");
  const std::vector<std::string> args = {
      "fit",          "--method",  "fkl",          "--eta",    "0.5",
      "--data",       data,        "--sensitive",  "x3",       "--drop",
      "f_true",       "--cv",      "--theta-grid", "0.5,1",    "--lambda-grid",
      "0.1,1",        "--cv-folds", "3",           "--seed",   "9",
      "--out",        out};
  REQUIRE(run(args).rc == 0);
  const json doc = jload(out);
  REQUIRE(doc["fit"].contains("cv"));
  const json& cv = doc["fit"]["cv"];
  const double th = cv["theta"].get<double>();
  const double la = cv["lambda"].get<double>();
  CHECK((th == 0.5 || th == 1.0));
  CHECK((la == 0.1 || la == 1.0));
  CHECK(doc["fit"]["theta"].get<double>() == th);
  CHECK(doc["fit"]["lambda"].get<double>() == la);
  CHECK(cv["cv_rmse"].get<double>() > 0.0);

  const std::string bytes = slurp(out);
  REQUIRE(run(args).rc == 0);
  CHECK(slurp(out) == bytes);
}

TEST_CASE("cli fit argument validation maps to exit code 2") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 40, 1);
  auto fit = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = {"fit",    "--data", data,
                                     "--drop", "f_true", "--out",
                                     td.path("o.json")};
    args.insert(args.end(), extra.begin(), extra.end());
    return run(args).rc;
  };
  CHECK(fit({"--method", "bogus", "--sensitive", "x3"}) == 2);
  CHECK(fit({"--method", "krr"}) == 2);  // --sensitive is required
  CHECK(fit({"--method", "krr", "--sensitive", "zz"}) == 2);
  CHECK(fit({"--method", "gp", "--sensitive", "x3", "--cv"}) == 2);
  CHECK(fit({"--method", "fkl", "--sensitive", "x3", "--delta", "1"}) == 2);
  CHECK(fit({"--method", "krr", "--sensitive", "x3", "--kernel", "poly"}) ==
        2);
  CHECK(fit({"--method", "krr", "--sensitive", "x3", "--lambda", "0"}) == 2);
  CHECK(fit({"--method", "fkl", "--sensitive", "x3", "--eta", "-1"}) == 2);
  CHECK(fit({"--method", "fkl", "--sensitive", "x3", "--cv", "--kernel",
             "ard"}) == 2);
  CHECK(fit({"--method", "krr", "--sensitive", "x3", "--optimize"}) == 2);
  CHECK(fit({"--method", "krr", "--sensitive", "x3", "--bogus"}) == 2);
  CHECK(run({"fit", "--method", "krr", "--sensitive", "x3"}).rc == 2);
}

TEST_CASE("cli fit io failures map to exit code 1") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 40, 1);
  CHECK(run({"fit", "--method", "krr", "--data", td.path("missing.csv"),
             "--sensitive", "x3"})
            .rc == 1);
  CHECK(run({"fit", "--method", "krr", "--data", data, "--sensitive", "x3",
             "--drop", "f_true", "--out",
             td.path("no_such_dir") + "/out.json"})
            .rc == 1);
}

TEST_CASE("cli tradeoff runs a sweep config and writes json and csv") {
  TempDir td;
  const std::string prefix = td.path("run");
  const std::string cfg_path = td.path("cfg.json");
  write_text_file(
      cfg_path,
      "{\"method\":\"fkl\","
      "\"data\":{\"kind\":\"toy2\",\"sigma_x\":0.5,\"sigma_s\":1.0,"
      "\"sigma_y\":0.5},"
      "\"n_train\":30,\"n_test\":15,\"trials\":2,\"seed\":5,"
      "\"eta_grid\":[0,0.5],\"theta_grid\":[1.0],\"lambda_grid\":[0.1],"
      "\"cv_folds\":3,\"output\":\"" +
          json_escape(prefix) + "\",\"format\":\"both\"}");

  const CliResult r = run({"tradeoff", cfg_path});
  CHECK(r.rc == 0);
  CHECK(r.err.find("tradeoff: records=4 errors=0") != std::string::npos);
  CHECK(r.out.empty());

  const json doc = jload(prefix + ".json");
  CHECK(doc["meta"]["version"] == kToolkitVersion);
  CHECK(doc["meta"]["config"]["method"] == "fkl");
  CHECK(doc["meta"]["config"]["cv_folds"] == 3);
  CHECK(doc["errors"].empty());
  REQUIRE(doc["records"].size() == 4);
  const std::vector<std::pair<int, double>> order = {
      {0, 0.0}, {0, 0.5}, {1, 0.0}, {1, 0.5}};
  for (size_t i = 0; i < 4; ++i) {
    const json& rec = doc["records"][i];
    CHECK(rec["trial"] == order[i].first);
    CHECK(rec["eta"] == order[i].second);
    CHECK(rec["rmse"].get<double>() > 0.0);
    CHECK(rec["r2_true"].is_number());  // toy data carries the clean target
    CHECK(rec["nlml"].is_null());
    CHECK(rec["theta"] == 1.0);
    CHECK(rec["lambda"] == 0.1);
  }

  const std::vector<std::string> csv = lines_of(slurp(prefix + ".csv"));
  REQUIRE(csv.size() == 5);
  CHECK(csv[0] ==
        "trial,eta,rmse,r2_obs,r2_true,hsic,nocco,mi,corr_sensitive,theta,"
        "lambda,nlml");
  // csv mirrors the json records; spot-check the rmse cell of the first row
  std::istringstream first(csv[1]);
  std::string cell;
  std::getline(first, cell, ',');
  CHECK(cell == "0");
  std::getline(first, cell, ',');
  std::getline(first, cell, ',');
  CHECK(std::stod(cell) == doc["records"][0]["rmse"].get<double>());

  const std::string jbytes = slurp(prefix + ".json");
  const std::string cbytes = slurp(prefix + ".csv");
  REQUIRE(run({"tradeoff", cfg_path}).rc == 0);
  CHECK(slurp(prefix + ".json") == jbytes);
  CHECK(slurp(prefix + ".csv") == cbytes);
}

TEST_CASE("cli tradeoff honors the format field") {
  TempDir td;
  const std::string prefix = td.path("csvonly");
  const std::string cfg_path = td.path("cfg.json");
  write_text_file(cfg_path,
                  "{\"method\":\"krr\","
                  "\"data\":{\"kind\":\"toy2\"},"
                  "\"n_train\":20,\"n_test\":10,\"trials\":1,\"seed\":1,"
                  "\"eta_grid\":[0],\"theta_grid\":[1.0],"
                  "\"lambda_grid\":[0.1],\"cv_folds\":3,"
                  "\"output\":\"" +
                      json_escape(prefix) + "\",\"format\":\"csv\"}");
  REQUIRE(run({"tradeoff", cfg_path}).rc == 0);
  CHECK(fs::exists(prefix + ".csv"));
  CHECK(!fs::exists(prefix + ".json"));
}

TEST_CASE("cli tradeoff config validation maps to exit code 2") {
  TempDir td;
  auto cfg_rc = [&](const std::string& body) {
    const std::string p = td.path("cfg.json");
    write_text_file(p, body);
    return run({"tradeoff", p}).rc;
  };
  const std::string out = json_escape(td.path("o"));
  CHECK(run({"tradeoff", td.path("absent.json")}).rc == 2);
  CHECK(run({"tradeoff"}).rc == 2);
  CHECK(cfg_rc("not json") == 2);
  CHECK(cfg_rc("[1,2]") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy2\"},"
               "\"output\":\"" + out + "\",\"bogus\":1}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy2\",\"bogus\":1},"
               "\"output\":\"" + out + "\"}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy2\"},"
               "\"optimizer\":{\"bogus\":1},\"output\":\"" + out + "\"}") ==
        2);
  CHECK(cfg_rc("{\"data\":{\"kind\":\"toy2\"},\"output\":\"" + out + "\"}") ==
        2);
  CHECK(cfg_rc("{\"method\":\"svm\",\"data\":{\"kind\":\"toy2\"},"
               "\"output\":\"" + out + "\"}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy9\"},"
               "\"output\":\"" + out + "\"}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy2\"}}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy2\"},"
               "\"output\":\"" + out + "\",\"format\":\"xml\"}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"toy2\"},"
               "\"output\":\"" + out + "\",\"eta_grid\":[\"a\"]}") == 2);
  CHECK(cfg_rc("{\"method\":\"krr\",\"data\":{\"kind\":\"file\","
               "\"path\":\"x.csv\"},\"output\":\"" + out + "\"}") == 2);
}

TEST_CASE("cli tradeoff with no usable records exits 1") {
  TempDir td;
  const std::string data = toy2_csv(td, "tiny.csv", 10, 2);
  const std::string prefix = td.path("run");
  const std::string cfg_path = td.path("cfg.json");
  write_text_file(
      cfg_path,
      "{\"method\":\"fkl\","
      "\"data\":{\"kind\":\"file\",\"path\":\"" + json_escape(data) +
          "\",\"target\":\"y\",\"sensitive\":[\"s\"],"
          "\"drop\":[\"f_true\"]},"
          "\"n_train\":30,\"n_test\":15,\"trials\":2,\"seed\":5,"
          "\"eta_grid\":[0],\"theta_grid\":[1.0],\"lambda_grid\":[0.1],"
          "\"cv_folds\":3,\"output\":\"" +
          json_escape(prefix) + "\",\"format\":\"json\"}");
  const CliResult r = run({"tradeoff", cfg_path});
  CHECK(r.rc == 1);
  CHECK(r.err.find("records=0 errors=2") != std::string::npos);
  const json doc = jload(prefix + ".json");
  CHECK(doc["records"].empty());
  REQUIRE(doc["errors"].size() == 2);
  for (const json& e : doc["errors"]) {
    CHECK(e["message"].is_string());
    CHECK(!e["message"].get<std::string>().empty());
  }
}

TEST_CASE("cli ard report contrasts plain and fair lengthscales") {
  TempDir td;
  const std::string data = toy1_csv(td, "train.csv", 100, 3);
  const std::string out = td.path("table.txt");
  const CliResult r =
      run({"ard-report", "--data", data, "--sensitive", "x3", "--drop",
           "f_true", "--eta", "10", "--restarts", "1", "--max-iters", "20",
           "--seed", "1", "--out", out});
  REQUIRE(r.rc == 0);

  const std::vector<std::string> rows = lines_of(slurp(out));
  REQUIRE(rows.size() == 6);
  const std::vector<std::string> labels = {"feature", "x1",   "x2",
                                           "x3",      "rmse", "unfairness"};
  std::vector<double> plain(rows.size(), 0.0), fair(rows.size(), 0.0);
  for (size_t i = 0; i < rows.size(); ++i) {
    std::istringstream ss(rows[i]);
    std::string label;
    ss >> label;
    CHECK(label == labels[i]);
    if (i == 0) continue;
    ss >> plain[i] >> fair[i];
    REQUIRE(!ss.fail());
  }
  for (size_t i = 1; i <= 3; ++i) {
    CHECK(plain[i] > 0.0);
    CHECK(fair[i] > 0.0);
  }
  CHECK(plain[4] > 0.0);
  CHECK(fair[4] > 0.0);
  // the deflated fit must depend less on the sensitive column
  CHECK(fair[5] < plain[5]);
}

TEST_CASE("cli ard report validation maps to exit code 2") {
  TempDir td;
  const std::string t1 = toy1_csv(td, "t1.csv", 40, 1);
  const std::string t2 = toy2_csv(td, "t2.csv", 40, 1);
  CHECK(run({"ard-report", "--data", t1, "--sensitive", "x3", "--drop",
             "f_true", "--kernel", "rbf"})
            .rc == 2);
  CHECK(run({"ard-report", "--data", t1, "--sensitive", "x3", "--drop",
             "f_true", "--eta", "0"})
            .rc == 2);
  // one remaining feature is not enough for a relevance profile
  CHECK(run({"ard-report", "--data", t2, "--sensitive", "s", "--drop",
             "f_true", "--sensitive-not-in-x"})
            .rc == 2);
}

TEST_CASE("cli help and usage exit codes") {
  CHECK(run({"--help"}).rc == 0);
  CHECK(run({"fit", "--help"}).rc == 0);
  CHECK(run({}).rc == 2);
  CHECK(run({"bogus"}).rc == 2);
  const CliResult help = run({"--help"});
  CHECK(help.out.find("synth") != std::string::npos);
  CHECK(help.out.find("tradeoff") != std::string::npos);
}
