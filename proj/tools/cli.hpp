#ifndef SWNET_TOOLS_CLI_HPP
#define SWNET_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace swnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // tuning did not reach its targets
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNotFound = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileNotFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AnnealOptions {
  std::optional<double> t0;
  double cooling = 0.95;
  std::uint64_t epoch_len = 50;
  std::uint64_t max_iters = 200'000;
  std::uint64_t stall_iters = 25'000;
  std::uint64_t apl_sources = 64;

  friend bool operator==(const AnnealOptions&, const AnnealOptions&) = default;
};

/// Everything a command needs. The JSON form (to_json / from_json) is what
/// the provenance sidecar stores, and parsing to_args(cfg) gives back cfg.
struct RunConfig {
  std::string command;
  std::string in;
  std::string out;
  std::uint64_t seed = 1;
  int workers = 1;

  // generate
  int nodes = 10'000;
  int degree = 6;
  double p = 0.2;

  // tune-apl / tune-cc use `target`; tune-joint uses cc_target and apl_target
  std::optional<double> target;
  std::optional<double> cc_target;
  std::optional<double> apl_target;
  double tol_apl = 0.05;
  double tol_cc = 0.005;
  AnnealOptions anneal_apl;
  AnnealOptions anneal_cc;
  std::uint64_t max_rounds = 6;

  // simulate
  int tau_i = 4;
  int tau_r = 9;
  double init_infected = 0.1;
  double init_recovered = 0.0;
  long steps = 2000;
  std::optional<long> burn_in;  // default: half of steps

  // regime classifier
  int window = 256;
  int hop = 64;
  double peak_ratio = 5.0;
  double min_amplitude = 0.05;

  // sweep
  std::string axis = "apl";
  std::optional<double> fixed;
  std::vector<double> targets;
  int replicas = 3;
  bool fixed_point = true;
  long horizon = 20;
  long healing = 20;
  int coarse_replicas = 32;
  double fd_step = 0.01;
  double newton_tol = 1e-3;
  int newton_iters = 20;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig from_json(const nlohmann::json& j);

/// Command line equivalent of cfg, without the program name.
std::vector<std::string> to_args(const RunConfig& cfg);

/// Throws UsageError for malformed or inconsistent options and FileNotFound
/// for a missing input, before any computation. Returns nullopt when help
/// was requested (already printed to `out`).
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// Runs the command; returns the process exit status.
int execute(const RunConfig& cfg, std::ostream& out);

/// parse_args + execute with error reporting on `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swnet::cli

#endif  // SWNET_TOOLS_CLI_HPP
