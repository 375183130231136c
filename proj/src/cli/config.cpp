#include "ionjcm/cli/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace ionjcm::cli {

namespace {

struct ModeName {
  Mode mode;
  std::string_view name;
};

constexpr std::array<ModeName, 11> kModeNames{{
    {Mode::figure1, "figure1"},
    {Mode::figure2, "figure2"},
    {Mode::figure3, "figure3"},
    {Mode::figure4, "figure4"},
    {Mode::figure5, "figure5"},
    {Mode::figure6, "figure6"},
    {Mode::figure7, "figure7"},
    {Mode::figure8, "figure8"},
    {Mode::custom_evolve, "custom-evolve"},
    {Mode::custom_scan, "custom-scan"},
    {Mode::verify_oracle, "verify-oracle"},
}};

const std::set<std::string, std::less<>> kInitKeys{
    "init", "n0_mean", "phi", "alpha_re", "alpha_im", "a", "b", "c", "phi1", "phi2",
    "distribution", "mean"};

const std::set<std::string, std::less<>> kKnownKeys{
    "mode", "eta", "omega_hz", "g", "cutoff", "t_start_us", "t_end_us", "samples", "out",
    "format", "scan_family", "verify_samples", "seed", "init", "n0_mean", "phi", "alpha_re",
    "alpha_im", "a", "b", "c", "phi1", "phi2", "distribution", "mean"};

constexpr int kMaxCutoff = 2000;
constexpr int kMaxSamples = 10'000'000;

struct Entry {
  std::string value;
  std::string where;  // "line N" or "override"
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char ch) {
    return (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_';
  });
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry, std::less<>> entries)
      : entries_(std::move(entries)) {}

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  [[noreturn]] void fail(std::string_view key, std::string_view expected) const {
    const auto it = entries_.find(key);
    std::string msg = it->second.where + ": key '" + std::string(key) + "': expected " +
                      std::string(expected) + ", got '" + it->second.value + "'";
    throw ConfigError(msg);
  }

  [[noreturn]] void reject(std::string_view key, std::string_view reason) const {
    const auto it = entries_.find(key);
    throw ConfigError(it->second.where + ": key '" + std::string(key) + "' " + std::string(reason));
  }

  const std::string& raw(std::string_view key) const {
    return entries_.find(key)->second.value;
  }

  std::string require_raw(std::string_view key, std::string_view context) {
    if (!has(key)) {
      throw ConfigError("missing required key '" + std::string(key) + "' (" +
                        std::string(context) + ")");
    }
    return raw(key);
  }

  double real(std::string_view key, std::string_view expected) {
    const std::string& text = raw(key);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      fail(key, expected);
    }
    return value;
  }

  template <class Int>
  Int integer(std::string_view key, std::string_view expected) {
    const std::string& text = raw(key);
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) fail(key, expected);
    return value;
  }

  const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

double positive(Reader& r, std::string_view key) {
  const double v = r.real(key, "a finite number > 0");
  if (!(v > 0.0)) r.fail(key, "a finite number > 0");
  return v;
}

double non_negative(Reader& r, std::string_view key) {
  const double v = r.real(key, "a finite number >= 0");
  if (v < 0.0) r.fail(key, "a finite number >= 0");
  return v;
}

double optional_real(Reader& r, std::string_view key, double fallback) {
  return r.has(key) ? r.real(key, "a finite number") : fallback;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const std::string where = "line " + std::to_string(number);
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + ": expected 'key = value', got '" + std::string(view) + "'");
    }
    Line l{number, std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1)))};
    if (!valid_key(l.key)) throw ConfigError(where + ": malformed key '" + l.key + "'");
    if (l.value.empty()) throw ConfigError(where + ": key '" + l.key + "' has an empty value");
    out.push_back(std::move(l));
  }
  return out;
}

InitialCondition read_init(Reader& r) {
  const std::string kind = r.require_raw("init", "custom-evolve needs an initial condition");
  auto only = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, entry] : r.entries()) {
      if (key == "init" || !kInitKeys.contains(key)) continue;
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        r.reject(key, "does not apply to init = " + kind);
      }
    }
  };
  if (kind == "coherent") {
    only({"n0_mean", "phi", "alpha_re", "alpha_im"});
    if (r.has("alpha_re") || r.has("alpha_im")) {
      if (r.has("n0_mean")) r.reject("n0_mean", "cannot be combined with alpha_re/alpha_im");
      if (r.has("phi")) r.reject("phi", "cannot be combined with alpha_re/alpha_im");
      const double re = r.has("alpha_re") ? r.real("alpha_re", "a finite number") : 0.0;
      const double im = r.has("alpha_im") ? r.real("alpha_im", "a finite number") : 0.0;
      return CaseOneInit{cplx(re, im)};
    }
    r.require_raw("n0_mean", "init = coherent needs n0_mean or alpha_re/alpha_im");
    const double mean = non_negative(r, "n0_mean");
    return case_one_state(mean, optional_real(r, "phi", 0.0));
  }
  if (kind == "superposition") {
    only({"a", "b", "c", "phi1", "phi2"});
    for (const char* key : {"a", "b", "c"}) r.require_raw(key, "init = superposition");
    const double a = non_negative(r, "a");
    const double b = non_negative(r, "b");
    const double c = non_negative(r, "c");
    const double phi1 = optional_real(r, "phi1", 0.0);
    const double phi2 = optional_real(r, "phi2", 0.0);
    try {
      return case_two_state(a, b, c, phi1, phi2);
    } catch (const std::invalid_argument& e) {
      r.reject("c", std::string("gives an invalid superposition: ") + e.what());
    }
  }
  if (kind == "distribution") {
    only({"distribution", "mean"});
    const std::string name = r.require_raw("distribution", "init = distribution");
    DistributionKind dk{};
    try {
      dk = distribution_kind_from_string(name);
    } catch (const std::invalid_argument&) {
      r.fail("distribution", "one of poisson, number, thermal, squeezed_vacuum");
    }
    r.require_raw("mean", "init = distribution");
    const double mean = non_negative(r, "mean");
    if (dk == DistributionKind::number && mean != std::floor(mean)) {
      r.fail("mean", "an integer phonon number for distribution = number");
    }
    return DistributionInit{dk, mean};
  }
  r.fail("init", "one of coherent, superposition, distribution");
}

}  // namespace

std::string_view to_string(Mode mode) {
  for (const auto& m : kModeNames) {
    if (m.mode == mode) return m.name;
  }
  return "unknown";
}

std::optional<Mode> mode_from_string(std::string_view name) {
  for (const auto& m : kModeNames) {
    if (m.name == name) return m.mode;
  }
  return std::nullopt;
}

std::vector<Mode> all_modes() {
  std::vector<Mode> out;
  for (const auto& m : kModeNames) out.push_back(m.mode);
  return out;
}

bool is_figure(Mode mode) {
  return mode != Mode::custom_evolve && mode != Mode::custom_scan && mode != Mode::verify_oracle;
}

PhysicalParams RunConfig::params(int fallback_cutoff) const {
  return PhysicalParams(eta, 2.0 * std::numbers::pi * omega_hz, g, cutoff.value_or(fallback_cutoff));
}

std::string RunConfig::output_path() const {
  if (!out.empty()) return out;
  return std::string(to_string(mode)) + (format == OutputFormat::csv ? ".csv" : ".json");
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  std::map<std::string, Entry, std::less<>> entries;
  for (auto& line : tokenize(text)) {
    const std::string where = "line " + std::to_string(line.number);
    if (const auto it = entries.find(line.key); it != entries.end()) {
      throw ConfigError(where + ": duplicate key '" + line.key + "' (first set on " +
                        it->second.where + ")");
    }
    entries.emplace(std::move(line.key), Entry{std::move(line.value), where});
  }
  for (const auto& [key, value] : overrides) {
    if (!valid_key(key)) throw ConfigError("override: malformed key '" + key + "'");
    if (value.empty()) throw ConfigError("override: key '" + key + "' has an empty value");
    entries[key] = Entry{value, "override"};
  }
  for (const auto& [key, entry] : entries) {
    if (!kKnownKeys.contains(key)) throw ConfigError(entry.where + ": unknown key '" + key + "'");
  }

  Reader r(std::move(entries));
  RunConfig cfg;
  const std::string mode_name = r.require_raw("mode", "one of figure1..figure8, custom-evolve, custom-scan, verify-oracle");
  const auto mode = mode_from_string(mode_name);
  if (!mode) r.fail("mode", "one of figure1..figure8, custom-evolve, custom-scan, verify-oracle");
  cfg.mode = *mode;

  for (const auto& [key, entry] : r.entries()) {
    const bool init_key = kInitKeys.contains(key);
    if (init_key && cfg.mode != Mode::custom_evolve) r.reject(key, "only applies to mode = custom-evolve");
    if (key == "scan_family" && cfg.mode != Mode::custom_scan) r.reject(key, "only applies to mode = custom-scan");
    if ((key == "verify_samples" || key == "seed") && cfg.mode != Mode::verify_oracle) {
      r.reject(key, "only applies to mode = verify-oracle");
    }
    if ((key == "t_start_us" || key == "t_end_us" || key == "samples") &&
        (cfg.mode == Mode::custom_scan || cfg.mode == Mode::verify_oracle)) {
      r.reject(key, "does not apply to mode = " + mode_name);
    }
  }

  if (r.has("eta")) cfg.eta = positive(r, "eta");
  if (r.has("omega_hz")) cfg.omega_hz = positive(r, "omega_hz");
  if (r.has("g")) cfg.g = positive(r, "g");
  if (r.has("cutoff")) {
    const int c = r.integer<int>("cutoff", "an integer in [2, 2000]");
    if (c < 2 || c > kMaxCutoff) r.fail("cutoff", "an integer in [2, 2000]");
    cfg.cutoff = c;
  }
  if (r.has("t_start_us")) cfg.t_start_us = non_negative(r, "t_start_us");
  if (r.has("t_end_us")) cfg.t_end_us = positive(r, "t_end_us");
  if (!(cfg.t_end_us > cfg.t_start_us)) {
    throw ConfigError("key 't_end_us': expected a value greater than t_start_us (" +
                      format_double(cfg.t_start_us) + "), got " + format_double(cfg.t_end_us));
  }
  if (r.has("samples")) {
    const int s = r.integer<int>("samples", "an integer in [2, 10000000]");
    if (s < 2 || s > kMaxSamples) r.fail("samples", "an integer in [2, 10000000]");
    cfg.samples = s;
  }
  if (r.has("out")) cfg.out = r.raw("out");
  if (r.has("format")) {
    const std::string f = r.raw("format");
    if (f == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (f == "json") {
      cfg.format = OutputFormat::json;
    } else {
      r.fail("format", "csv or json");
    }
  }
  if (cfg.mode == Mode::custom_scan) {
    const std::string fam = r.require_raw("scan_family", "custom-scan needs case1 or case2");
    if (fam == "case1") {
      cfg.scan_family = ScanFamily::case1;
    } else if (fam == "case2") {
      cfg.scan_family = ScanFamily::case2;
    } else {
      r.fail("scan_family", "case1 or case2");
    }
  }
  if (r.has("verify_samples")) {
    const int v = r.integer<int>("verify_samples", "an integer in [1, 100000]");
    if (v < 1 || v > 100000) r.fail("verify_samples", "an integer in [1, 100000]");
    cfg.verify_samples = v;
  }
  if (r.has("seed")) cfg.seed = r.integer<std::uint64_t>("seed", "an unsigned 64-bit integer");
  if (cfg.mode == Mode::custom_evolve) cfg.init = read_init(r);
  return cfg;
}

std::optional<std::string> raw_value(std::string_view text, std::string_view key) {
  for (auto& line : tokenize(text)) {
    if (line.key == key) return std::move(line.value);
  }
  return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> config_entries(const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("mode", std::string(to_string(cfg.mode)));
  out.emplace_back("eta", format_double(cfg.eta));
  out.emplace_back("omega_hz", format_double(cfg.omega_hz));
  out.emplace_back("g", format_double(cfg.g));
  if (cfg.cutoff) out.emplace_back("cutoff", std::to_string(*cfg.cutoff));
  if (cfg.mode != Mode::custom_scan && cfg.mode != Mode::verify_oracle) {
    out.emplace_back("t_start_us", format_double(cfg.t_start_us));
    out.emplace_back("t_end_us", format_double(cfg.t_end_us));
    out.emplace_back("samples", std::to_string(cfg.samples));
  }
  if (!cfg.out.empty()) out.emplace_back("out", cfg.out);
  out.emplace_back("format", cfg.format == OutputFormat::csv ? "csv" : "json");
  if (cfg.scan_family) {
    out.emplace_back("scan_family", *cfg.scan_family == ScanFamily::case1 ? "case1" : "case2");
  }
  if (cfg.mode == Mode::verify_oracle) {
    out.emplace_back("verify_samples", std::to_string(cfg.verify_samples));
    out.emplace_back("seed", std::to_string(cfg.seed));
  }
  if (cfg.init) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, CaseOneInit>) {
            out.emplace_back("init", "coherent");
            out.emplace_back("alpha_re", format_double(s.alpha.real()));
            out.emplace_back("alpha_im", format_double(s.alpha.imag()));
          } else if constexpr (std::is_same_v<T, CaseTwoInit>) {
            out.emplace_back("init", "superposition");
            out.emplace_back("a", format_double(s.a));
            out.emplace_back("b", format_double(s.b));
            out.emplace_back("c", format_double(s.c));
            out.emplace_back("phi1", format_double(s.phi1));
            out.emplace_back("phi2", format_double(s.phi2));
          } else {
            out.emplace_back("init", "distribution");
            out.emplace_back("distribution", std::string(to_string(s.kind)));
            out.emplace_back("mean", format_double(s.mean));
          }
        },
        *cfg.init);
  }
  return out;
}

std::string serialize_config(const RunConfig& cfg) {
  std::string text;
  for (const auto& [key, value] : config_entries(cfg)) text += key + " = " + value + "\n";
  return text;
}

}  // namespace ionjcm::cli
