#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "twistmat/random.hpp"

namespace twistmat::cli {

/// Settings of one run, merged from a JSON config file and flags (flags win).
struct ExperimentConfig {
  std::string command;
  std::string ring;
  int n = 4;
  std::optional<std::vector<int>> set_i;
  std::string quotient = "none";
  std::string aut;  // JSON array of atoms
  std::uint64_t seed = default_seed;
  int samples = 200;
  long bound = -1;  // command-specific default when negative
  int count = 100;
  int epsilon = 0;
  std::string alpha = "id";
  std::string dc;  // comma-separated d_c entries
  int exponent = 1;
  int degree = 2;
  std::size_t limit = 200;
  std::string out_dir;
  std::string format = "both";
  bool record_time = false;

  nlohmann::json to_json() const;
};

/// Full report of a subcommand: JSON document plus CSV summary.
struct Report {
  nlohmann::json json;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  bool ok = true;

  std::string csv() const;
};

/// Runs one subcommand against an already merged config.
Report execute(const ExperimentConfig& cfg);

/// Entry point shared by the binary and the tests; returns the exit status
/// (0 success, 1 mathematical failure or limit, 2 usage).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twistmat::cli
