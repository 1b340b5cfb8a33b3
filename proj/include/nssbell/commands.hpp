// commands.hpp -- batch experiments behind the nssbell CLI. Each command
// writes a CSV file: a block of `#` metadata lines (tool version, command,
// seed, workers, full config), one header row, then data rows.

#pragma once

#include "nssbell/chsh.hpp"
#include "nssbell/spacetime.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace nssbell {

inline constexpr const char* kToolVersion = "nssbell 0.1.0";

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out;  // "-" writes to stdout

  // chsh-scan
  int phi_steps = 200;
  std::size_t trials = 2000;  // per setting
  Channel channel = Channel::independent;

  // twirl-converge
  std::vector<std::size_t> sample_counts{1, 10, 100, 1000, 10000};
  int repeats = 20;

  // orthogonality
  std::size_t samples = 100000;

  // biref
  BirefringenceParams biref{};
  int mu_steps = 21;
  double mu_min = 0.05;

  // tetrad-check
  std::string metric = "schwarzschild";
  double mass = 1.0;
  std::vector<double> radii{3.0, 10.0, 100.0};  // in units of M
  double theta = 1.5707963267948966;
  double tolerance = 1e-12;
};

std::string to_string(Channel channel);
/// Parses none|independent|shared; throws std::invalid_argument otherwise.
Channel parse_channel(const std::string& text);

struct ConvergenceRow {
  std::size_t samples = 0;  // 0 marks the exact-vs-exact control row
  double median = 0.0;
  double p05 = 0.0;
  double p95 = 0.0;
};

/// Trace distance between the Monte Carlo and exact single-block twirls of
/// `repeats` random 3-qubit pure states, summarized per sample count.
std::vector<ConvergenceRow> twirl_convergence(const std::vector<std::size_t>& sample_counts,
                                              int repeats, std::uint64_t seed, int workers);

void write_chsh_scan(const RunConfig& config, std::ostream& os);
void write_twirl_converge(const RunConfig& config, std::ostream& os);
void write_orthogonality(const RunConfig& config, std::ostream& os);
void write_biref(const RunConfig& config, std::ostream& os);
void write_tetrad_check(const RunConfig& config, std::ostream& os);

/// Write to config.out; throw OutputError if it cannot be opened.
void cmd_chsh_scan(const RunConfig& config);
void cmd_twirl_converge(const RunConfig& config);
void cmd_orthogonality(const RunConfig& config);
void cmd_biref(const RunConfig& config);
void cmd_tetrad_check(const RunConfig& config);

}  // namespace nssbell
