#pragma once

// Command implementations behind the rfh executable. Each returns the exit
// code; reports go to `out`, diagnostics to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace rfh::cli {

enum ExitCode { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

struct RunConfig {
  std::string input;
  std::string example;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string window;  // "lo:hi", either side may be empty
  int n_loops = 1000;
  int samples = 256;
  double eps = 1e-5;
  int grid = 128;
  int trials = 100;
};

int cmd_homology(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_gysin(const RunConfig& config, std::ostream& out, std::ostream& err);
// action: validate, verify-main or hrf.
int cmd_rf(const std::string& action, const RunConfig& config, std::ostream& out, std::ostream& err);
// name: levrel, fenchel, gradient or aleksandrov.
int cmd_check(const std::string& name, const RunConfig& config, std::ostream& out, std::ostream& err);
// Model from a random skeleton, or the shipped model re-synthesized.
int cmd_synth(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line, including argument parsing and RFH_SEED.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rfh::cli
