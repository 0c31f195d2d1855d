#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "schatten/core.hpp"

namespace schatten {

// flat "dotted.key = value" text config; '#' starts a comment.  CLI flags
// override file values through set().
struct Config {
  std::map<std::string, std::string> kv;

  static Config from_file(const std::string& path);

  void set(const std::string& key, const std::string& value) { kv[key] = value; }
  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get_str(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  int get_int(const std::string& key, int dflt) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t dflt) const;
  std::vector<double> get_list(const std::string& key, std::vector<double> dflt) const;
};

struct ArtifactFile {
  std::string name;
  std::string text;
};

// the headline of a run plus every CSV it produced; write_result turns this
// into <out>/<experiment>/{*.csv, summary.json}
struct ExperimentResult {
  std::string experiment;
  nlohmann::json params = nlohmann::json::object();
  std::string verdict;
  double value = 0.0;
  bool infinite = false;  // headline total diverged; summary records "inf"
  std::vector<ArtifactFile> files;
};

// corner threshold sweep: Hardy test on the corner profile, model-space test
// on Paley-Wiener with the sector symbol, per p, plus a compactness sweep
ExperimentResult run_pw_corner(const Config& cfg);

// clustered zero sequence: transit values n * t_n and the cubed-kernel
// integral that stays finite while the operator is not Hilbert-Schmidt
ExperimentResult run_counterexample53(const Config& cfg);

// Hilbert-Schmidt norm by spectrum, pullback and the counting-function
// identity, on pinned and seeded random finite Blaschke data
ExperimentResult run_hs_crosscheck(const Config& cfg);

// level trace + decomposition + validation, binned pullback, and the
// discrete/integral criterion pair with per-p agreement flags
ExperimentResult run_whitney_report(const Config& cfg);

std::string write_result(const ExperimentResult& res, const std::string& out_root);

}  // namespace schatten
