#include "ionjcm/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ionjcm/closed_form.hpp"
#include "ionjcm/observables.hpp"
#include "ionjcm/states.hpp"

namespace ionjcm {

namespace {

using Objective = std::function<double(std::span<const double>)>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCase1Horizon = 500e-6;
constexpr double kCase2Horizon = 100e-6;
constexpr int kRefinedTimeMinima = 5;

bool better(double v, std::span<const double> x, double best_v, std::span<const double> best_x) {
  if (v != best_v) return v < best_v;
  return std::lexicographical_compare(x.begin(), x.end(), best_x.begin(), best_x.end());
}

// Evaluates f over the Cartesian product of `values`, keeping the best point.
// With keep_on_tie the first point reaching a value wins; refinement brackets
// list their centre first, so flat directions stay at the incumbent.
void sweep(const std::vector<std::vector<double>>& values, const Objective& f,
           std::vector<double>& best_x, double& best_v, std::size_t& evaluations,
           bool keep_on_tie = false) {
  const std::size_t dims = values.size();
  std::vector<std::size_t> idx(dims, 0);
  std::vector<double> x(dims);
  while (true) {
    for (std::size_t d = 0; d < dims; ++d) x[d] = values[d][idx[d]];
    const double v = f(x);
    ++evaluations;
    if (best_x.empty() || (keep_on_tie ? v < best_v : better(v, x, best_v, best_x))) {
      best_v = v;
      best_x = x;
    }
    std::size_t d = dims;
    while (d > 0) {
      --d;
      if (++idx[d] < values[d].size()) break;
      idx[d] = 0;
      if (d == 0) return;
    }
  }
}

std::vector<double> bracket_values(const Axis& axis, double center, double half_width, int points) {
  if (axis.points == 1 || half_width == 0.0) return {center};
  std::vector<double> out;
  for (int k = 0; k < points; ++k) {
    const double x = 2 * k == points - 1 ? center : center - half_width + 2.0 * half_width * k / (points - 1);
    if (!axis.periodic && (x < axis.lo || x > axis.hi)) continue;
    out.push_back(x);
  }
  if (out.empty()) out.push_back(center);
  std::stable_sort(out.begin(), out.end(), [center](double l, double r) {
    return std::abs(l - center) < std::abs(r - center);
  });
  return out;
}

struct SearchOutcome {
  std::vector<double> best;
  double value = 0.0;
  std::size_t evaluations = 0;
  std::vector<ScanPoint> history;
};

SearchOutcome grid_then_refine(const ScanGrid& grid, const Objective& f) {
  grid.validate();
  SearchOutcome out;
  std::vector<std::vector<double>> values;
  std::vector<double> half_width;
  for (const auto& axis : grid.axes) {
    std::vector<double> v(axis.points);
    for (int i = 0; i < axis.points; ++i) v[i] = axis.value(i);
    values.push_back(std::move(v));
    half_width.push_back(axis.points == 1 ? 0.0 : axis.step());
  }
  sweep(values, f, out.best, out.value, out.evaluations);
  out.history.push_back({out.best, out.value});

  for (int round = 0; round < grid.refinement_rounds; ++round) {
    std::vector<std::vector<double>> local;
    for (std::size_t d = 0; d < grid.axes.size(); ++d) {
      local.push_back(bracket_values(grid.axes[d], out.best[d], half_width[d], grid.refine_points));
      half_width[d] /= 10.0;
    }
    sweep(local, f, out.best, out.value, out.evaluations, true);
    out.history.push_back({out.best, out.value});
  }
  return out;
}

// One-dimensional grid-then-refine around `t0`, clamped to [lo, hi].
TimeMinimum refine_time(const std::function<double(double)>& g, double t0, double step, double lo,
                        double hi, int rounds = 4, int points = 21) {
  TimeMinimum best{t0, g(t0)};
  double h = step;
  for (int r = 0; r < rounds; ++r) {
    const double center = best.t;
    for (int k = 0; k < points; ++k) {
      const double t = center - h + 2.0 * h * k / (points - 1);
      if (t < lo || t > hi) continue;
      const double v = g(t);
      if (v < best.value || (v == best.value && t < best.t)) best = {t, v};
    }
    h /= 10.0;
  }
  return best;
}

// Local minima of f along the last axis at fixed other coordinates, refined
// and filtered to within kNearOptimalWindow of the incumbent.
void collect_near_optimal(const ScanGrid& grid, const Objective& f, SearchOutcome& outcome,
                          std::vector<ScanPoint>& near) {
  const Axis& t_axis = grid.axes.back();
  std::vector<double> x = outcome.best;
  auto along_t = [&](double t) {
    x.back() = t;
    return f(x);
  };
  const double step = t_axis.points > 1 ? t_axis.step() : 0.0;
  std::vector<double> samples(t_axis.points);
  for (int i = 0; i < t_axis.points; ++i) samples[i] = along_t(t_axis.value(i));

  std::vector<TimeMinimum> minima;
  for (int i = 0; i < t_axis.points; ++i) {
    const bool left = i == 0 || samples[i] <= samples[i - 1];
    const bool right = i + 1 == t_axis.points || samples[i] <= samples[i + 1];
    if (!left || !right || samples[i] > outcome.value + 100.0 * kNearOptimalWindow) continue;
    minima.push_back(step > 0.0 ? refine_time(along_t, t_axis.value(i), step, t_axis.lo, t_axis.hi)
                                : TimeMinimum{t_axis.value(i), samples[i]});
  }
  outcome.evaluations += t_axis.points;

  for (const auto& m : minima) {
    if (m.value < outcome.value) {
      outcome.value = m.value;
      outcome.best.back() = m.t;
      outcome.history.push_back({outcome.best, outcome.value});
    }
  }
  std::vector<double> base = outcome.best;
  for (const auto& m : minima) {
    if (m.value > outcome.value + kNearOptimalWindow) continue;
    if (std::abs(m.t - outcome.best.back()) <= step) continue;
    base.back() = m.t;
    near.push_back({base, m.value});
  }
  near.push_back({outcome.best, outcome.value});
  std::sort(near.begin(), near.end(),
            [](const ScanPoint& l, const ScanPoint& r) { return l.location.back() < r.location.back(); });
}

std::vector<double> case1_location(std::span<const double> x) {
  return {x[0], wrap_phase(x[1]), x[2]};
}

std::vector<double> case2_location(std::span<const double> x) {
  const double theta = x[0];
  const double psi = x[1];
  return {std::sin(theta) * std::cos(psi), std::sin(theta) * std::sin(psi), std::cos(theta),
          wrap_phase(x[2]), wrap_phase(x[3]), x[4]};
}

ScanResult finish(const ScanGrid& grid, const Objective& f, SearchOutcome outcome,
                  std::vector<std::string> names,
                  std::vector<double> (*to_location)(std::span<const double>)) {
  std::vector<ScanPoint> near;
  collect_near_optimal(grid, f, outcome, near);

  ScanResult result;
  result.location_names = std::move(names);
  result.location = to_location(outcome.best);
  result.optimum_value = outcome.value;
  result.grid_evaluations = outcome.evaluations;
  for (const auto& p : outcome.history) result.refinement_history.push_back({to_location(p.location), p.value});
  for (const auto& p : near) result.near_optimal.push_back({to_location(p.location), p.value});
  return result;
}

}  // namespace

double Axis::step() const {
  if (points <= 1) return 0.0;
  return periodic ? (hi - lo) / points : (hi - lo) / (points - 1);
}

double Axis::value(int i) const { return points == 1 ? lo : lo + i * step(); }

void ScanGrid::validate() const {
  if (axes.empty()) throw std::invalid_argument("scan grid has no axes");
  for (const auto& axis : axes) {
    if (axis.points < 1) throw std::invalid_argument("axis '" + axis.name + "' is empty");
    if (axis.points == 1 && axis.lo != axis.hi) {
      throw std::invalid_argument("axis '" + axis.name + "' needs at least two points");
    }
    if (axis.points > 1 && !(axis.hi > axis.lo)) {
      throw std::invalid_argument("axis '" + axis.name + "' has an empty range");
    }
  }
  if (refinement_rounds < 0) throw std::invalid_argument("refinement_rounds must be >= 0");
  if (refine_points < 3) throw std::invalid_argument("refine_points must be >= 3");
  const Axis& t = axes.back();
  if (t.name != "t" || !(t.lo > 0.0)) throw std::invalid_argument("last axis must be a positive time range 't'");
}

int time_samples(double t_span, int cutoff, double xi) {
  const double period = kTwoPi / (std::sqrt(2.0 * cutoff - 1.0) * xi);
  return static_cast<int>(std::ceil(40.0 * t_span / period)) + 1;
}

ScanGrid default_case1_grid(const PhysicalParams& params) {
  const int cutoff = std::max(params.fock_cutoff(), default_cutoff(2.5));
  const int nt = time_samples(kCase1Horizon, cutoff, params.xi());
  ScanGrid grid;
  grid.axes = {
      {"n0_mean", 0.1, 2.5, 25, false},
      {"phi", 0.0, kTwoPi, 16, true},
      {"t", kCase1Horizon / nt, kCase1Horizon, nt, false},
  };
  return grid;
}

ScanGrid default_case2_grid(const PhysicalParams& params) {
  const int nt = time_samples(kCase2Horizon, 2, params.xi());
  ScanGrid grid;
  grid.axes = {
      {"theta", 0.0, 0.5 * std::numbers::pi, 31, false},
      {"psi", 0.0, 0.5 * std::numbers::pi, 16, false},
      {"phi1", 0.0, kTwoPi, 8, true},
      {"phi2", 0.0, kTwoPi, 16, true},
      {"t", kCase2Horizon / nt, kCase2Horizon, nt, false},
  };
  return grid;
}

double case1_var_p(double n0_mean, double phi, double t, const PhysicalParams& params) {
  const auto p = params.with_cutoff(std::max(params.fock_cutoff(), default_cutoff(n0_mean)));
  return quadrature_variances(case1_moments(case_one_state(n0_mean, phi), t, p), 1.0).var_p;
}

double case2_var_p(double a, double b, double c, double phi1, double phi2, double t,
                   const PhysicalParams& params) {
  const CaseTwoInit init{a, b, c, wrap_phase(phi1), wrap_phase(phi2)};
  return quadrature_variances(case2_moments(init, t, params), 1.0).var_p;
}

double reevaluate_case1(std::span<const double> location, const PhysicalParams& params) {
  if (location.size() != 3) throw std::invalid_argument("case-1 location has 3 coordinates");
  return case1_var_p(location[0], location[1], location[2], params);
}

double reevaluate_case2(std::span<const double> location, const PhysicalParams& params) {
  if (location.size() != 6) throw std::invalid_argument("case-2 location has 6 coordinates");
  return case2_var_p(location[0], location[1], location[2], location[3], location[4], location[5], params);
}

ScanResult scan_case1(const ScanGrid& grid, const PhysicalParams& params) {
  if (grid.axes.size() != 3) throw std::invalid_argument("case-1 grid needs axes n0_mean, phi, t");
  const Objective f = [&](std::span<const double> x) {
    return case1_var_p(x[0], wrap_phase(x[1]), x[2], params);
  };
  return finish(grid, f, grid_then_refine(grid, f), {"n0_mean", "phi", "t"}, case1_location);
}

ScanResult scan_case2(const ScanGrid& grid, const PhysicalParams& params) {
  if (grid.axes.size() != 5) throw std::invalid_argument("case-2 grid needs axes theta, psi, phi1, phi2, t");
  const Objective f = [&](std::span<const double> x) {
    const auto loc = case2_location(x);
    return case2_var_p(loc[0], loc[1], loc[2], loc[3], loc[4], loc[5], params);
  };
  return finish(grid, f, grid_then_refine(grid, f), {"a", "b", "c", "phi1", "phi2", "t"},
                case2_location);
}

TimeMinimum min_over_time(const std::function<double(double)>& f, double t_lo, double t_hi,
                          int samples) {
  if (samples < 2 || !(t_hi > t_lo)) throw std::invalid_argument("time range needs >= 2 samples");
  const double step = (t_hi - t_lo) / (samples - 1);
  std::vector<double> v(samples);
  for (int i = 0; i < samples; ++i) v[i] = f(t_lo + i * step);

  std::vector<int> minima;
  for (int i = 0; i < samples; ++i) {
    const bool left = i == 0 || v[i] <= v[i - 1];
    const bool right = i + 1 == samples || v[i] <= v[i + 1];
    if (left && right) minima.push_back(i);
  }
  std::stable_sort(minima.begin(), minima.end(), [&](int l, int r) { return v[l] < v[r]; });
  if (minima.size() > kRefinedTimeMinima) minima.resize(kRefinedTimeMinima);

  TimeMinimum best{t_lo, v[0]};
  for (int i : minima) {
    const auto m = refine_time(f, t_lo + i * step, step, t_lo, t_hi);
    if (m.value < best.value || (m.value == best.value && m.t < best.t)) best = m;
  }
  return best;
}

TimeMinimum case1_min_over_time(double n0_mean, double phi, const PhysicalParams& params,
                                double t_max) {
  const int cutoff = std::max(params.fock_cutoff(), default_cutoff(n0_mean));
  const int samples = time_samples(t_max, cutoff, params.xi());
  const double t_lo = t_max / samples;
  return min_over_time([&](double t) { return case1_var_p(n0_mean, phi, t, params); }, t_lo, t_max,
                       samples);
}

ThresholdResult threshold_no_squeezing(const PhysicalParams& params, double phi, double bracket_lo,
                                       double bracket_hi, double resolution, double t_max) {
  auto min_var = [&](double n0) { return case1_min_over_time(n0, phi, params, t_max).value; };
  ThresholdResult r;
  r.lower = bracket_lo;
  r.upper = bracket_hi;
  r.min_var_p_lower = min_var(bracket_lo);
  r.min_var_p_upper = min_var(bracket_hi);
  if (!(r.min_var_p_lower < -kNoSqueezingTolerance) || r.min_var_p_upper < -kNoSqueezingTolerance) {
    throw std::runtime_error("threshold bracket does not straddle the onset of squeezing");
  }
  while (r.upper - r.lower > resolution) {
    const double mid = 0.5 * (r.lower + r.upper);
    const double v = min_var(mid);
    if (v < -kNoSqueezingTolerance) {
      r.lower = mid;
      r.min_var_p_lower = v;
    } else {
      r.upper = mid;
      r.min_var_p_upper = v;
    }
    ++r.iterations;
  }
  r.value = r.upper;
  return r;
}

}  // namespace ionjcm
