#ifndef LWRNODE_TOOLS_COMMANDS_HPP_
#define LWRNODE_TOOLS_COMMANDS_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lwrnode::cli {

enum ExitCode : int { kOk = 0, kInvariant = 1, kBadInput = 2 };

/// Bad command-line input, unreadable files, unwritable output.
class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SimulateArgs {
  std::string scenario;
  std::filesystem::path out_dir;
  bool baseline = false;
  std::optional<std::filesystem::path> control_csv;
  std::vector<double> snapshot_times;  // empty: 0, T/2, T
};

struct OptimizeArgs {
  std::string scenario;
  std::filesystem::path out_dir;
  unsigned threads = 0;
  std::vector<double> snapshot_times;
};

struct SweepArgs {
  std::string scenario;
  std::filesystem::path out_dir;
  std::vector<double> deltas;
  bool exhaustive = false;
  std::size_t pieces = 2;
  std::vector<double> levels;  // fractions of fmax; empty: 0, 1/2, 1
  unsigned threads = 0;
};

int run_simulate(const SimulateArgs& args);
int run_optimize(const OptimizeArgs& args);
int run_sweep(const SweepArgs& args);
/// Oracle suites; prints one PASS/FAIL line each. Returns the exit code.
int run_validate();

}  // namespace lwrnode::cli

#endif  // LWRNODE_TOOLS_COMMANDS_HPP_
