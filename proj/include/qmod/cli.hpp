#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qmod/report.hpp"

namespace qmod {

/// Exit codes.
inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_config = 2;

struct RunConfig {
  std::string command;   // verify, pair, sweep, relations
  std::string quantity;  // pair / sweep
  ModuleKind kind = ModuleKind::podles;
  bool kind_set = false;
  double q = 0.5;
  double s = 1.0;
  int N = 0;  // 0: default for the module kind
  int L = 0;
  int jmax = 0;
  int margin = 2;
  double tol = 1e-8;
  Format format = Format::table;
  std::string output;
  bool dump_symbolic = false;
  std::string dump_operator;
  int k = 0;
  int sign = 1;
  std::vector<double> grid_q;
  std::vector<double> grid_s;

  /// Window with defaults filled in for the kind.
  Window window() const;
};

/// Fills defaults, checks ranges and the quantity/kind match. Throws ConfigError.
void validate(RunConfig& c);

/// key=value lines; '#' starts a comment. Keys are the long flag names.
std::map<std::string, std::string> read_config_file(const std::string& path);
void apply_config(RunConfig& c, const std::map<std::string, std::string>& kv);

std::vector<double> parse_grid(const std::string& text);

std::vector<CheckRecord> verify_suite(const RunConfig& c);
std::vector<CheckRecord> relations_suite(const RunConfig& c);
PairingReport compute_pair(const RunConfig& c, double q, double s);
/// Grid points evaluated on a worker pool of QMOD_THREADS threads, sorted by (q, s).
std::vector<PairingReport> run_sweep(const RunConfig& c);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmod
