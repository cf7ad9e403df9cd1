#ifndef SPDC_CLI_HPP
#define SPDC_CLI_HPP

// Command front end: config parsing, dispatch, and table/CSV emission.
//
// Config format: flat key = value lines under [section] headers, '#'
// comments. All lengths are meters in plain or scientific notation; unit
// suffixes are rejected so nm/um mistakes cannot slip through. Unknown keys
// and sections are rejected by name.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spdc/experiment.hpp"
#include "spdc/gaussfit.hpp"
#include "spdc/temporal.hpp"

namespace spdc {

enum class EstimatorChoice { moment, peak, exact, all };
enum class OutputFormat { report, csv };

struct RunConfig {
  std::optional<SpdcConfig> spdc;

  // [propagation]
  std::vector<double> z_list;   // diagonal z1 = z2 rows
  std::vector<double> z1_list;  // cartesian grid rows when both lists set
  std::vector<double> z2_list;

  std::optional<SpectralFilter> filter;

  // [temporal]
  std::string material;
  std::optional<double> pump_coherence_time;  // interpreted as sigma_(t1+t2)

  // [slit_scan] (pairs_per_step xor total_pairs must be set)
  std::optional<SlitScanConfig> slit_scan;
  std::optional<std::uint64_t> total_pairs;

  // [density]
  std::string density_which = "x_minus";  // k_minus | x_minus
  double grid_min = 0.0;
  double grid_max = 0.0;
  int grid_points = 0;

  // [output]
  LogBase log_base = LogBase::two;
  EstimatorChoice estimator = EstimatorChoice::all;
};

// Parses; throws ConfigError with the offending key/line named.
RunConfig parse_run_config(std::istream& in);
RunConfig parse_run_config_file(const std::string& path);

// Canonical '#'-prefixed echo of every populated key; re-parses (after
// stripping the '# ') to an identical RunConfig.
std::string echo_run_config(const RunConfig& cfg);

// Subcommand bodies. All emit to `out`; errors are thrown (main converts
// to exit codes: 1 validation, 2 numerical).
void cmd_analyze(const RunConfig& cfg, OutputFormat format, std::ostream& out);
void cmd_density(const RunConfig& cfg, std::ostream& out);
void cmd_propagate(const RunConfig& cfg, std::ostream& out);
void cmd_schmidt(const RunConfig& cfg, int n_max, std::ostream& out);
void cmd_temporal(const RunConfig& cfg, const std::string& materials_path,
                  OutputFormat format, std::ostream& out);
void cmd_slit_scan(const RunConfig& cfg, std::ostream& out);

// Oracle cross-check suite; prints one PASS/FAIL line per check and returns
// 0 when everything passes (nonzero otherwise -> exit code 3).
int cmd_verify(std::ostream& out);

// Resolve the Double-Gaussian for commands that need exactly one estimator;
// throws ConfigError for EstimatorChoice::all.
DoubleGaussian resolve_estimator(const SpdcConfig& spdc, EstimatorChoice choice);

}  // namespace spdc

#endif  // SPDC_CLI_HPP
