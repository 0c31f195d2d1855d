// Config parsing, artifact writing and the experiment drivers.  The
// experiments must also be deterministic: two runs of the same config have
// to produce byte-identical artifacts.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "schatten/experiments.hpp"

using namespace schatten;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("schatten_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_tmp(const std::string& tag, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("schatten_cfg_" + tag + ".cfg");
  std::ofstream out(p);
  out << text;
  out.close();
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("config parses keys, comments and lists") {
  const std::string path = write_tmp("ok", R"(# comment line
run.shells = 14
theta.kind = pw   # trailing comment
run.p_list = 1.0, 2.5, 4
run.seed = 12345678901
run.gamma = 0.5

)");
  Config cfg = Config::from_file(path);
  CHECK(cfg.get_int("run.shells", 0) == 14);
  CHECK(cfg.get_str("theta.kind", "") == "pw");
  CHECK(cfg.get_double("run.gamma", 0.0) == 0.5);
  CHECK(cfg.get_u64("run.seed", 0) == 12345678901ull);
  auto lst = cfg.get_list("run.p_list", {});
  REQUIRE(lst.size() == 3);
  CHECK(lst[0] == 1.0);
  CHECK(lst[1] == 2.5);
  CHECK(lst[2] == 4.0);
  // defaults pass through untouched
  CHECK(cfg.get_int("run.depth", 16) == 16);
  CHECK(cfg.get_list("missing", {7.0})[0] == 7.0);
  // set() overrides the file value
  cfg.set("run.shells", "20");
  CHECK(cfg.get_int("run.shells", 0) == 20);
}

TEST_CASE("config rejects malformed input") {
  CHECK_THROWS_AS(Config::from_file("/nonexistent/path.cfg"), std::runtime_error);

  const std::string bad_line = write_tmp("badline", "this is not a key value pair\n");
  CHECK_THROWS_AS(Config::from_file(bad_line), std::runtime_error);

  const std::string bad_num = write_tmp("badnum", "run.tol = 1.5x\n");
  Config cfg = Config::from_file(bad_num);
  CHECK_THROWS_AS(cfg.get_double("run.tol", 0.0), std::runtime_error);

  const std::string frac = write_tmp("frac", "run.shells = 2.5\n");
  Config cfg2 = Config::from_file(frac);
  CHECK_THROWS_AS(cfg2.get_int("run.shells", 0), std::runtime_error);
}

TEST_CASE("write_result lays out artifacts and summary") {
  ExperimentResult res;
  res.experiment = "demo";
  res.params["alpha"] = 0.5;
  res.verdict = "converging";
  res.value = 1.25;
  res.files.push_back({"table.csv", "a,b\n1,2\n"});
  const fs::path root = fresh_dir("write");
  const std::string dir = write_result(res, root.string());

  CHECK(fs::exists(fs::path(dir) / "table.csv"));
  CHECK(slurp(fs::path(dir) / "table.csv") == "a,b\n1,2\n");

  auto summary = nlohmann::json::parse(slurp(fs::path(dir) / "summary.json"));
  CHECK(summary["experiment"] == "demo");
  CHECK(summary["verdict"] == "converging");
  CHECK(summary["params"]["alpha"] == 0.5);
  CHECK(summary["value_or_inf"] == 1.25);

  // a diverged headline records the sentinel string
  res.infinite = true;
  const std::string dir2 = write_result(res, fresh_dir("write2").string());
  auto s2 = nlohmann::json::parse(slurp(fs::path(dir2) / "summary.json"));
  CHECK(s2["value_or_inf"] == "inf");
}

TEST_CASE("hs crosscheck runs and agrees") {
  Config cfg;
  cfg.set("run.trials", "1");
  cfg.set("run.shells", "8");
  ExperimentResult res = run_hs_crosscheck(cfg);
  CHECK(res.experiment == "hs-crosscheck");
  CHECK(res.verdict == "agree");
  CHECK(res.value < 1e-3);  // worst relative spread between the routes
  bool has_csv = false;
  for (const auto& f : res.files) has_csv |= f.name.find(".csv") != std::string::npos;
  CHECK(has_csv);
}

TEST_CASE("experiments are deterministic across runs") {
  Config cfg;
  cfg.set("run.shells", "10");
  cfg.set("run.n_max", "6");
  ExperimentResult a = run_counterexample53(cfg);
  ExperimentResult b = run_counterexample53(cfg);
  CHECK(a.verdict == b.verdict);
  CHECK(a.value == b.value);
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(a.files[i].name == b.files[i].name);
    CHECK(a.files[i].text == b.files[i].text);
  }

  // the on-disk artifacts byte-match too
  const fs::path r1 = fresh_dir("det1"), r2 = fresh_dir("det2");
  const fs::path d1 = write_result(a, r1.string()), d2 = write_result(b, r2.string());
  for (const auto& entry : fs::directory_iterator(d1)) {
    const fs::path other = fs::path(d2) / entry.path().filename();
    REQUIRE(fs::exists(other));
    CHECK(slurp(entry.path()) == slurp(other));
  }
}
