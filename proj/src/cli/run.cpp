#include "ionjcm/cli/run.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <random>

#include <json.hpp>

#include "ionjcm/closed_form.hpp"
#include "ionjcm/observables.hpp"
#include "ionjcm/oracle.hpp"
#include "ionjcm/propagator.hpp"
#include "ionjcm/states.hpp"

namespace ionjcm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kOccupationTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-11;
constexpr double kPositivityTolerance = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Preset initial conditions.
constexpr double kFigure1Mean = 8.0;
constexpr double kFigure3Mean = 3.0;
constexpr double kFigure7Mean = 0.51;
constexpr double kFigure8A = 0.28;
constexpr double kFigure8C = 0.96;

double seconds(double t_us) { return t_us * 1e-6; }

void check_occupations(const InternalOccupations& occ, double t_us, const std::string& series) {
  const double total = occ.sum() + occ.truncation_deficit;
  if (!(std::abs(total - 1.0) <= kOccupationTolerance)) {
    throw InvariantError("closed_form", "occupations of series '" + series + "' sum to " +
                                            format_value(total) + " at t = " +
                                            format_value(t_us) + " us");
  }
}

void check_motional(const MotionalDensityMatrix& rho, double t_us, const std::string& series) {
  const double total = rho.trace() + rho.truncation_deficit();
  if (!(std::abs(total - 1.0) <= kTraceTolerance)) {
    throw InvariantError("closed_form", "motional trace of series '" + series + "' is " +
                                            format_value(total) + " at t = " +
                                            format_value(t_us) + " us");
  }
  const double least = rho.min_eigenvalue();
  if (!(least >= -kPositivityTolerance)) {
    throw InvariantError("closed_form", "motional matrix of series '" + series +
                                            "' has eigenvalue " + format_value(least) +
                                            " at t = " + format_value(t_us) + " us");
  }
}

struct Recorder {
  RunOutput out;

  void use(std::string series, int cutoff) { out.cutoffs.push_back({std::move(series), cutoff}); }
  void deficit(double d) { out.truncation_deficit = std::max(out.truncation_deficit, d); }
};

std::vector<double> n0_axis(int first_tenths, int last_tenths, int step_tenths) {
  std::vector<double> out;
  for (int k = first_tenths; k <= last_tenths; k += step_tenths) out.push_back(k / 10.0);
  return out;
}

RunOutput coherent_occupations(const RunConfig& cfg) {
  Recorder rec;
  const auto init = case_one_state(kFigure1Mean, 0.0);
  const auto params = cfg.params(default_cutoff(kFigure1Mean));
  rec.use("coherent", params.fock_cutoff());
  rec.out.table.columns = {"t_us", "rho_11", "rho_00", "rho_m1m1"};
  for (double t_us : time_grid_us(cfg)) {
    const auto occ = occupations_case1(init, seconds(t_us), params);
    check_occupations(occ, t_us, "coherent");
    rec.deficit(occ.truncation_deficit);
    rec.out.table.rows.push_back({t_us, occ.p_up, occ.p_mid, occ.p_down});
  }
  return std::move(rec.out);
}

RunOutput equal_superposition(const RunConfig& cfg) {
  Recorder rec;
  const double amp = 1.0 / std::sqrt(3.0);
  const auto init = case_two_state(amp, amp, amp, 0.0, 0.0);
  const auto params = cfg.params(2);
  rec.use("superposition", params.fock_cutoff());
  rec.out.table.columns = {"t_us", "rho_m1m1"};
  for (double t_us : time_grid_us(cfg)) {
    const auto occ = occupations_case2(init, seconds(t_us), params);
    check_occupations(occ, t_us, "superposition");
    rec.out.table.rows.push_back({t_us, occ.p_down});
  }
  return std::move(rec.out);
}

RunOutput distributions(const RunConfig& cfg) {
  Recorder rec;
  const std::array kinds{DistributionKind::number, DistributionKind::thermal,
                         DistributionKind::squeezed_vacuum};
  const std::array<std::string, 3> names{"number", "thermal", "squeezed"};
  std::vector<PhysicalParams> params;
  std::vector<PhononDistribution> dists;
  rec.out.table.columns = {"t_us"};
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    params.push_back(cfg.params(required_cutoff(kinds[k], kFigure3Mean)));
    dists.push_back(phonon_distribution(kinds[k], kFigure3Mean, params.back().fock_cutoff()));
    rec.use(names[k], params.back().fock_cutoff());
    rec.out.table.columns.push_back("rho_11_" + names[k]);
  }
  for (double t_us : time_grid_us(cfg)) {
    std::vector<double> row{t_us};
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const auto occ = occupations_case1(dists[k], seconds(t_us), params[k]);
      check_occupations(occ, t_us, names[k]);
      rec.deficit(occ.truncation_deficit);
      row.push_back(occ.p_up);
    }
    rec.out.table.rows.push_back(std::move(row));
  }
  return std::move(rec.out);
}

RunOutput mean_number(const RunConfig& cfg) {
  Recorder rec;
  const auto init = case_one_state(kFigure1Mean, 0.0);
  const auto params = cfg.params(default_cutoff(kFigure1Mean));
  rec.use("coherent", params.fock_cutoff());
  rec.out.table.columns = {"t_us", "n_mean"};
  for (double t_us : time_grid_us(cfg)) {
    const double t = seconds(t_us);
    check_occupations(occupations_case1(init, t, params), t_us, "coherent");
    const auto rho = motional_case1(init, t, params);
    check_motional(rho, t_us, "coherent");
    rec.deficit(rho.truncation_deficit());
    rec.out.table.rows.push_back({t_us, case1_moments(init, t, params).n_mean});
  }
  return std::move(rec.out);
}

// Long-format grid over initial mean phonon number; `column` picks the value.
template <class Value>
RunOutput case1_grid(const RunConfig& cfg, const std::vector<double>& n0_values,
                     const std::string& column, Value value) {
  Recorder rec;
  rec.out.table.columns = {"t_us", "n0_mean", column};
  const auto times = time_grid_us(cfg);
  for (double n0 : n0_values) {
    const auto init = case_one_state(n0, 0.0);
    const auto params = cfg.params(default_cutoff(n0));
    const std::string series = "n0_mean=" + format_double(n0);
    rec.use(series, params.fock_cutoff());
    for (double t_us : times) {
      const double t = seconds(t_us);
      const auto occ = occupations_case1(init, t, params);
      check_occupations(occ, t_us, series);
      rec.deficit(occ.truncation_deficit);
      const auto q = quadrature_variances(case1_moments(init, t, params), 1.0);
      rec.out.table.rows.push_back({t_us, n0, value(q)});
    }
  }
  return std::move(rec.out);
}

RunOutput case1_variances(const RunConfig& cfg) {
  Recorder rec;
  const auto init = case_one_state(kFigure7Mean, 0.0);
  const auto params = cfg.params(default_cutoff(kFigure7Mean));
  rec.use("coherent", params.fock_cutoff());
  rec.out.table.columns = {"t_us", "var_x_over_g2", "var_p_over_g2"};
  for (double t_us : time_grid_us(cfg)) {
    const double t = seconds(t_us);
    const auto occ = occupations_case1(init, t, params);
    check_occupations(occ, t_us, "coherent");
    rec.deficit(occ.truncation_deficit);
    const auto q = quadrature_variances(case1_moments(init, t, params), 1.0);
    rec.out.table.rows.push_back({t_us, q.var_x, q.var_p});
  }
  return std::move(rec.out);
}

RunOutput case2_variances(const RunConfig& cfg) {
  Recorder rec;
  const auto init = case_two_state(kFigure8A, 0.0, kFigure8C, 0.0, 0.0);
  const auto params = cfg.params(2);
  rec.use("superposition", params.fock_cutoff());
  rec.out.table.columns = {"t_us", "var_x_over_g2", "var_p_over_g2"};
  for (double t_us : time_grid_us(cfg)) {
    const double t = seconds(t_us);
    check_occupations(occupations_case2(init, t, params), t_us, "superposition");
    const auto rho = motional_case2(init, t, params);
    check_motional(rho, t_us, "superposition");
    const auto q = quadrature_variances(rho, 1.0);
    rec.out.table.rows.push_back({t_us, q.var_x, q.var_p});
  }
  return std::move(rec.out);
}

int natural_cutoff(const InitialCondition& init) {
  return std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, CaseOneInit>) {
          return default_cutoff(s.mean_phonons());
        } else if constexpr (std::is_same_v<T, CaseTwoInit>) {
          return 2;
        } else {
          return required_cutoff(s.kind, s.mean);
        }
      },
      init);
}

RunOutput custom_evolve(const RunConfig& cfg) {
  Recorder rec;
  const auto& init = *cfg.init;
  const auto params = cfg.params(natural_cutoff(init));
  rec.use("custom", params.fock_cutoff());
  rec.out.table.columns = {"t_us",   "rho_11",        "rho_00",        "rho_m1m1",
                           "n_mean", "gamma",         "var_x_over_g2", "var_p_over_g2",
                           "truncation_deficit"};
  for (double t_us : time_grid_us(cfg)) {
    const auto point = evolution_point(init, seconds(t_us), params);
    check_occupations(point.occupations, t_us, "custom");
    check_motional(point.motional, t_us, "custom");
    rec.deficit(point.occupations.truncation_deficit);
    const auto q = quadrature_variances(point.motional, 1.0);
    rec.out.table.rows.push_back({t_us, point.occupations.p_up, point.occupations.p_mid,
                                  point.occupations.p_down, q.n_mean, q.gamma.value_or(kNaN),
                                  q.var_x, q.var_p, point.occupations.truncation_deficit});
  }
  return std::move(rec.out);
}

RunOutput custom_scan(const RunConfig& cfg) {
  Recorder rec;
  const bool case1 = *cfg.scan_family == ScanFamily::case1;
  const auto params = cfg.params(case1 ? default_cutoff(2.5) : 2);
  rec.use(case1 ? "case1" : "case2", params.fock_cutoff());
  ScanResult result = case1 ? scan_case1(default_case1_grid(params), params)
                            : scan_case2(default_case2_grid(params), params);
  const double check = case1 ? reevaluate_case1(result.location, params)
                             : reevaluate_case2(result.location, params);
  if (!(std::abs(check - result.optimum_value) <= 1e-12)) {
    throw InvariantError("scan", "optimum does not re-evaluate: " + format_value(check) +
                                     " vs " + format_value(result.optimum_value));
  }
  rec.out.table.columns = result.location_names;
  rec.out.table.columns.push_back("var_p_over_g2");
  for (const auto& p : result.near_optimal) {
    std::vector<double> row = p.location;
    row.push_back(p.value);
    rec.out.table.rows.push_back(std::move(row));
  }
  rec.out.scan = std::move(result);
  return std::move(rec.out);
}

RunOutput oracle_check(const RunConfig& cfg) {
  Recorder rec;
  auto report = verify_oracle(cfg.eta, 2.0 * std::numbers::pi * cfg.omega_hz, cfg.verify_samples,
                              cfg.seed, cfg.cutoff);
  rec.out.table.columns = {"sample",         "family",       "t_us",          "cutoff",
                           "occupation_dev", "motional_dev", "propagator_dev"};
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    const auto& s = report.samples[i];
    rec.out.table.rows.push_back({static_cast<double>(i), static_cast<double>(s.family), s.t * 1e6,
                                  static_cast<double>(s.cutoff), s.occupation_dev, s.motional_dev,
                                  s.propagator_dev});
  }
  rec.out.oracle = std::move(report);
  return std::move(rec.out);
}

ordered_json scan_json(const ScanResult& r) {
  auto point = [&](const ScanPoint& p) {
    ordered_json loc = ordered_json::object();
    for (std::size_t k = 0; k < r.location_names.size(); ++k) loc[r.location_names[k]] = p.location[k];
    return ordered_json{{"location", loc}, {"var_p_over_g2", p.value}};
  };
  ordered_json j;
  j["optimum"] = point({r.location, r.optimum_value});
  j["grid_evaluations"] = r.grid_evaluations;
  j["refinement_history"] = ordered_json::array();
  for (const auto& p : r.refinement_history) j["refinement_history"].push_back(point(p));
  j["near_optimal"] = ordered_json::array();
  for (const auto& p : r.near_optimal) j["near_optimal"].push_back(point(p));
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace

double OracleReport::max_deviation() const {
  return std::max({max_occupation_dev, max_motional_dev, max_propagator_dev});
}

int OracleReport::count(int family) const {
  return static_cast<int>(std::count_if(samples.begin(), samples.end(),
                                        [&](const OracleSample& s) { return s.family == family; }));
}

OracleReport verify_oracle(double eta, double omega_rabi, int samples, std::uint64_t seed,
                           std::optional<int> cutoff) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double pi = std::numbers::pi;
  constexpr double t_max = 600e-6;
  const std::array kinds{DistributionKind::poisson, DistributionKind::number,
                         DistributionKind::thermal, DistributionKind::squeezed_vacuum};
  std::map<int, oracle::Evolver> evolvers;
  OracleReport report;

  for (int i = 0; i < samples; ++i) {
    OracleSample s;
    s.family = i % 3;
    s.t = t_max * (1.0 - unit(rng));  // (0, t_max]
    InitialCondition init;
    int natural = 2;
    if (s.family == 0) {
      const auto state = case_one_state(4.0 * unit(rng), pi * (2.0 * unit(rng) - 1.0));
      natural = default_cutoff(state.mean_phonons());
      init = state;
    } else if (s.family == 1) {
      const double theta = 0.5 * pi * unit(rng);
      const double psi = 0.5 * pi * unit(rng);
      const double phi1 = pi * (2.0 * unit(rng) - 1.0);
      const double phi2 = pi * (2.0 * unit(rng) - 1.0);
      init = case_two_state(std::sin(theta) * std::cos(psi), std::sin(theta) * std::sin(psi),
                            std::cos(theta), phi1, phi2);
    } else {
      const auto kind = kinds[(i / 3) % kinds.size()];
      double mean = 3.0 * unit(rng);
      if (kind == DistributionKind::number) mean = std::floor(4.0 * unit(rng));
      natural = required_cutoff(kind, mean);
      init = DistributionInit{kind, mean};
    }
    s.cutoff = cutoff.value_or(natural);
    const PhysicalParams params(eta, omega_rabi, 1.0, s.cutoff);

    auto it = evolvers.find(s.cutoff);
    if (it == evolvers.end()) {
      it = evolvers.emplace(s.cutoff, oracle::Evolver(oracle::build_hamiltonian(params))).first;
    }
    const auto& evolver = it->second;

    Eigen::MatrixXcd rho0;
    if (const auto* c1 = std::get_if<CaseOneInit>(&init)) {
      rho0 = oracle::projector(oracle::coherent_ground_state(c1->alpha, s.cutoff));
    } else if (const auto* c2 = std::get_if<CaseTwoInit>(&init)) {
      rho0 = oracle::projector(
          oracle::superposition_vacuum_state(c2->a, c2->b, c2->c, c2->phi1, c2->phi2, s.cutoff));
    } else {
      const auto& d = std::get<DistributionInit>(init);
      rho0 = oracle::ground_mixture(phonon_distribution(d.kind, d.mean, s.cutoff).weights);
    }
    const Eigen::MatrixXcd u = evolver.unitary(s.t);
    const Eigen::MatrixXcd rho_t = u * rho0 * u.adjoint();

    const auto point = evolution_point(init, s.t, params);
    const auto internal = oracle::partial_trace_motional(rho_t);
    s.occupation_dev = std::max({std::abs(point.occupations.p_up - internal.occupations.p_up),
                                 std::abs(point.occupations.p_mid - internal.occupations.p_mid),
                                 std::abs(point.occupations.p_down - internal.occupations.p_down)});
    const auto motional = oracle::partial_trace_internal(rho_t);
    s.motional_dev = (point.motional.entries() - motional.entries()).cwiseAbs().maxCoeff();

    const oracle::TruncatedHamiltonian h(params);
    for (int n = 0; n <= s.cutoff; ++n) {
      const auto block = subspace_propagator(n, s.t, params);
      const auto members = subspace_members(n);
      for (std::size_t r = 0; r < members.size(); ++r) {
        for (std::size_t c = 0; c < members.size(); ++c) {
          const cplx exact = u(h.index(members[r]), h.index(members[c]));
          s.propagator_dev = std::max(s.propagator_dev, std::abs(exact - block.matrix(r, c)));
        }
      }
    }

    report.max_occupation_dev = std::max(report.max_occupation_dev, s.occupation_dev);
    report.max_motional_dev = std::max(report.max_motional_dev, s.motional_dev);
    report.max_propagator_dev = std::max(report.max_propagator_dev, s.propagator_dev);
    report.samples.push_back(s);
  }
  return report;
}

std::vector<double> time_grid_us(const RunConfig& cfg) {
  std::vector<double> out(cfg.samples);
  const double span = cfg.t_end_us - cfg.t_start_us;
  for (int i = 0; i < cfg.samples; ++i) {
    out[i] = i + 1 == cfg.samples ? cfg.t_end_us : cfg.t_start_us + span * i / (cfg.samples - 1);
  }
  return out;
}

RunOutput compute(const RunConfig& cfg) {
  switch (cfg.mode) {
    case Mode::figure1: return coherent_occupations(cfg);
    case Mode::figure2: return equal_superposition(cfg);
    case Mode::figure3: return distributions(cfg);
    case Mode::figure4: return mean_number(cfg);
    case Mode::figure5:
      return case1_grid(cfg, n0_axis(5, 80, 5), "gamma",
                        [](const QuadratureVariances& q) { return q.gamma.value_or(kNaN); });
    case Mode::figure6:
      return case1_grid(cfg, n0_axis(1, 25, 1), "var_p_over_g2",
                        [](const QuadratureVariances& q) { return q.var_p; });
    case Mode::figure7: return case1_variances(cfg);
    case Mode::figure8: return case2_variances(cfg);
    case Mode::custom_evolve:
      if (!cfg.init) throw std::invalid_argument("custom-evolve needs an initial condition");
      return custom_evolve(cfg);
    case Mode::custom_scan:
      if (!cfg.scan_family) throw std::invalid_argument("custom-scan needs a scan family");
      return custom_scan(cfg);
    case Mode::verify_oracle: return oracle_check(cfg);
  }
  throw std::invalid_argument("unknown mode");
}

std::string format_value(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

std::string render_csv(const Table& table) {
  std::string text = "# ";
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) text += ',';
    text += table.columns[k];
  }
  text += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) text += ',';
      text += format_value(row[k]);
    }
    text += '\n';
  }
  return text;
}

std::string render_json(const Table& table) {
  std::string text = "{\n  \"columns\": [";
  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    if (k) text += ", ";
    text += '"' + table.columns[k] + '"';
  }
  text += "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    text += r ? ",\n    [" : "\n    [";
    for (std::size_t k = 0; k < table.rows[r].size(); ++k) {
      if (k) text += ", ";
      const double v = table.rows[r][k];
      text += std::isfinite(v) ? format_value(v) : "null";
    }
    text += ']';
  }
  text += table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return text;
}

std::string render_manifest(const RunConfig& cfg, const RunOutput& output, double wall_time_s) {
  ordered_json j;
  j["artifact"] = "ionjcm";
  j["version"] = kVersion;
  j["mode"] = std::string(to_string(cfg.mode));
  ordered_json echo = ordered_json::object();
  for (const auto& [key, value] : config_entries(cfg)) echo[key] = value;
  j["config"] = echo;
  j["data_file"] = cfg.output_path();
  j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
  j["columns"] = output.table.columns;
  j["rows"] = output.table.rows.size();
  if (output.cutoffs.size() == 1) {
    j["cutoff"] = output.cutoffs.front().cutoff;
  } else {
    ordered_json cut = ordered_json::object();
    for (const auto& c : output.cutoffs) cut[c.series] = c.cutoff;
    j["cutoff"] = cut;
  }
  j["truncation_deficit"] = output.truncation_deficit;
  j["wall_time_s"] = wall_time_s;
  if (output.scan) j["scan"] = scan_json(*output.scan);
  if (output.oracle) {
    const auto& o = *output.oracle;
    j["oracle"] = {{"samples", o.samples.size()},
                   {"coherent", o.count(0)},
                   {"superposition", o.count(1)},
                   {"distribution", o.count(2)},
                   {"max_occupation_dev", o.max_occupation_dev},
                   {"max_motional_dev", o.max_motional_dev},
                   {"max_propagator_dev", o.max_propagator_dev},
                   {"max_deviation", o.max_deviation()},
                   {"tolerance", kOracleTolerance}};
  }
  return j.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput output;
  try {
    output = compute(cfg);
  } catch (const InvariantError& e) {
    err << "error [" << e.module() << "]: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error [config]: " << e.what() << "\n";
    return kExitConfig;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string path = cfg.output_path();
  try {
    write_file(path, cfg.format == OutputFormat::csv ? render_csv(output.table)
                                                     : render_json(output.table));
    write_file(path + ".manifest.json", render_manifest(cfg, output, wall));
  } catch (const IoError& e) {
    err << "error [io]: " << e.what() << "\n";
    return kExitIo;
  }

  if (output.oracle) {
    const auto& o = *output.oracle;
    out << "oracle check: " << o.samples.size() << " samples (" << o.count(0) << " coherent, "
        << o.count(1) << " superposition, " << o.count(2) << " distribution)\n"
        << "  max occupation deviation  " << format_value(o.max_occupation_dev) << "\n"
        << "  max motional deviation    " << format_value(o.max_motional_dev) << "\n"
        << "  max propagator deviation  " << format_value(o.max_propagator_dev) << "\n"
        << "  max deviation             " << format_value(o.max_deviation()) << "\n";
    if (!(o.max_deviation() <= kOracleTolerance)) {
      err << "error [oracle]: closed form deviates from the oracle by "
          << format_value(o.max_deviation()) << " (tolerance " << format_value(kOracleTolerance)
          << ")\n";
      return kExitInvariant;
    }
  }
  if (output.scan) {
    out << "scan optimum var_p/g^2 = " << format_value(output.scan->optimum_value) << " at";
    for (std::size_t k = 0; k < output.scan->location.size(); ++k) {
      out << ' ' << output.scan->location_names[k] << '=' << format_value(output.scan->location[k]);
    }
    out << "\n";
  }
  out << "wrote " << path << " (" << output.table.rows.size() << " rows) and " << path
      << ".manifest.json\n";
  return kExitOk;
}

}  // namespace ionjcm::cli
