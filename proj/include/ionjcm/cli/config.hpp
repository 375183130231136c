// Run configuration: a strict `key = value` text format.
//
//   # comment
//   mode = custom-evolve
//   eta = 0.1
//   omega_hz = 500000        # Omega = 2 pi * omega_hz
//   init = coherent
//   n0_mean = 0.51
//
// Unknown keys, duplicate keys and keys that do not apply to the chosen mode
// or initial condition are errors.

#ifndef IONJCM_CLI_CONFIG_HPP
#define IONJCM_CLI_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ionjcm/model.hpp"
#include "ionjcm/states.hpp"

namespace ionjcm::cli {

enum class Mode {
  figure1,
  figure2,
  figure3,
  figure4,
  figure5,
  figure6,
  figure7,
  figure8,
  custom_evolve,
  custom_scan,
  verify_oracle,
};

enum class OutputFormat { csv, json };
enum class ScanFamily { case1, case2 };

std::string_view to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view name);
std::vector<Mode> all_modes();
bool is_figure(Mode mode);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Mode mode = Mode::figure1;
  double eta = kDefaultEta;
  double omega_hz = kDefaultOmegaHz;
  double g = 1.0;
  /// When absent each series picks its own cutoff from its initial state.
  std::optional<int> cutoff;
  std::optional<InitialCondition> init;
  double t_start_us = 0.0;
  double t_end_us = 600.0;
  int samples = 4000;
  std::string out;
  OutputFormat format = OutputFormat::csv;
  std::optional<ScanFamily> scan_family;
  int verify_samples = 200;
  std::uint64_t seed = 20240601;

  /// Physical parameters with the given cutoff, unless one was configured.
  PhysicalParams params(int fallback_cutoff) const;
  /// out, or "<mode>.<format>" when empty.
  std::string output_path() const;

  bool operator==(const RunConfig&) const = default;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses and validates. `overrides` replace (or add) keys after the text is
/// read. Throws ConfigError naming the line and key at fault.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Unvalidated value of `key` in config text, if present.
std::optional<std::string> raw_value(std::string_view text, std::string_view key);

/// Text that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

/// Ordered key/value view of a config, as written by serialize_config.
std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& config);

/// Shortest round-trip decimal form.
std::string format_double(double value);

}  // namespace ionjcm::cli

#endif  // IONJCM_CLI_CONFIG_HPP
