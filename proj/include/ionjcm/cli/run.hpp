// Executes a RunConfig: computes the series for a mode, writes the data file
// and its `<out>.manifest.json` sidecar.
//
// Exit codes: 0 success, 2 config error, 3 numerical invariant failure,
// 4 I/O error.

#ifndef IONJCM_CLI_RUN_HPP
#define IONJCM_CLI_RUN_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ionjcm/cli/config.hpp"
#include "ionjcm/scan.hpp"

namespace ionjcm::cli {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInvariant = 3;
inline constexpr int kExitIo = 4;

/// A numerical invariant (trace, positivity, agreement) failed inside `module`.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string module, const std::string& what)
      : std::runtime_error(what), module_(std::move(module)) {}
  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct CutoffUse {
  std::string series;
  int cutoff = 0;
};

struct OracleSample {
  int family = 0;  // 0 coherent, 1 superposition, 2 distribution
  double t = 0.0;
  int cutoff = 0;
  double occupation_dev = 0.0;
  double motional_dev = 0.0;
  double propagator_dev = 0.0;
};

struct OracleReport {
  std::vector<OracleSample> samples;
  double max_occupation_dev = 0.0;
  double max_motional_dev = 0.0;
  double max_propagator_dev = 0.0;

  double max_deviation() const;
  int count(int family) const;
};

inline constexpr double kOracleTolerance = 1e-9;

/// Randomized closed-form vs oracle comparison. Families cycle coherent,
/// superposition, distribution; t is uniform in (0, 600 us]. A `cutoff`
/// forces every sample onto that cutoff.
OracleReport verify_oracle(double eta, double omega_rabi, int samples, std::uint64_t seed,
                           std::optional<int> cutoff = std::nullopt);

struct RunOutput {
  Table table;
  std::vector<CutoffUse> cutoffs;
  /// Largest truncation deficit over all rows.
  double truncation_deficit = 0.0;
  std::optional<ScanResult> scan;
  std::optional<OracleReport> oracle;
};

/// t_start_us .. t_end_us inclusive, `samples` points.
std::vector<double> time_grid_us(const RunConfig& config);

/// Computes the data for `config` without touching the file system.
/// Throws InvariantError or std::invalid_argument.
RunOutput compute(const RunConfig& config);

/// 17 significant digits.
std::string format_value(double value);
std::string render_csv(const Table& table);
std::string render_json(const Table& table);
std::string render_manifest(const RunConfig& config, const RunOutput& output, double wall_time_s);

/// compute + write; diagnostics go to `err`, a one-line summary to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ionjcm::cli

#endif  // IONJCM_CLI_RUN_HPP
