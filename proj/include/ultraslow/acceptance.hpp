#pragma once

// The acceptance suite: one entry per criterion, each returning a pass/fail
// line.  Shared between the `verify-all` CLI subcommand and the acceptance
// test binary.

#include <cstdint>
#include <string>
#include <vector>

namespace ultraslow::accept {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct Options {
  int threads = 1;
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
  std::string out_dir;   // when nonempty, CSV artifacts are written here
  std::string cli_path;  // path to the CLI binary; enables the determinism criterion
  bool run_determinism = false;
};

// Runs criteria 1..10 (and 11 when requested and a CLI path is given).
std::vector<CriterionResult> run_all(const Options& opt);

// Prints one line per criterion; returns the exit code (0 iff all pass).
int report(const std::vector<CriterionResult>& results, bool machine_readable_json,
           const std::string& out_dir);

}  // namespace ultraslow::accept
