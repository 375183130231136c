// ionjcm <mode> [--config FILE] [--cutoff N] [--eta X] [--omega-hz X]
//              [--out PATH] [--format csv|json] [--set key=value ...]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ionjcm/cli/config.hpp"
#include "ionjcm/cli/run.hpp"

namespace {

struct Flags {
  std::string config;
  std::string cutoff;
  std::string eta;
  std::string omega_hz;
  std::string out;
  std::string format;
  std::vector<std::string> sets;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "Configuration file (key = value lines)");
  sub->add_option("--cutoff", f.cutoff, "Phonon-number cutoff");
  sub->add_option("--eta", f.eta, "Lamb-Dicke parameter");
  sub->add_option("--omega-hz", f.omega_hz, "Rabi frequency Omega / 2pi in Hz");
  sub->add_option("--out", f.out, "Data file path; the manifest goes to <out>.manifest.json");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--set", f.sets, "Any config key, as key=value");
}

std::string describe(ionjcm::cli::Mode mode) {
  using ionjcm::cli::Mode;
  switch (mode) {
    case Mode::figure1: return "Internal populations, coherent phonons |alpha|^2 = 8";
    case Mode::figure2: return "Population of |-1>, equal internal superposition";
    case Mode::figure3: return "Population of |+1> for number, thermal and squeezed phonons";
    case Mode::figure4: return "Mean phonon number, coherent phonons |alpha|^2 = 8";
    case Mode::figure5: return "Coherence ratio gamma for |alpha|^2 = 0.5..8";
    case Mode::figure6: return "Momentum variance for |alpha|^2 = 0.1..2.5";
    case Mode::figure7: return "Quadrature variances, coherent phonons |alpha|^2 = 0.51";
    case Mode::figure8: return "Quadrature variances, superposition a = 0.28, c = 0.96";
    case Mode::custom_evolve: return "All observables for a configured initial condition";
    case Mode::custom_scan: return "Search for the deepest momentum squeezing";
    case Mode::verify_oracle: return "Compare closed forms with the brute-force oracle";
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ionjcm::cli;

  CLI::App app{"Two-ion red-sideband dynamics: figure series, scans and oracle checks"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Flags flags;
  for (Mode mode : all_modes()) {
    add_flags(app.add_subcommand(std::string(to_string(mode)), describe(mode)), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  std::string text;
  if (!flags.config.empty()) {
    std::ifstream file(flags.config, std::ios::binary);
    if (!file) {
      std::cerr << "error [io]: cannot read '" << flags.config << "'\n";
      return kExitIo;
    }
    std::ostringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  }

  Overrides overrides{{"mode", mode}};
  for (const auto& s : flags.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error [config]: --set expects key=value, got '" << s << "'\n";
      return kExitConfig;
    }
    overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  const std::pair<const char*, const std::string*> named[] = {
      {"cutoff", &flags.cutoff}, {"eta", &flags.eta},       {"omega_hz", &flags.omega_hz},
      {"out", &flags.out},       {"format", &flags.format}};
  for (const auto& [key, value] : named) {
    if (!value->empty()) overrides.emplace_back(key, *value);
  }

  RunConfig config;
  try {
    // A file naming another mode conflicts with the subcommand.
    if (const auto file_mode = raw_value(text, "mode"); file_mode && *file_mode != mode) {
      std::cerr << "error [config]: " << flags.config << " sets mode = " << *file_mode
                << " but the subcommand is " << mode << "\n";
      return kExitConfig;
    }
    config = parse_config(text, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "error [config]: " << e.what() << "\n";
    return kExitConfig;
  }
  return run(config, std::cout, std::cerr);
}
