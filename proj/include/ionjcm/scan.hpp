// Deterministic grid-then-refine search for the deepest momentum squeezing.
//
// A coarse uniform grid over every axis is evaluated first; each refinement
// round then lays a grid of `refine_points` per axis across +-h around the
// incumbent and shrinks h by 10x. Ties in the coarse pass go to the
// lexicographically smallest coordinates; refinement keeps the incumbent on
// ties.

#ifndef IONJCM_SCAN_HPP
#define IONJCM_SCAN_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ionjcm/model.hpp"

namespace ionjcm {

struct Axis {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  int points = 2;
  /// Periodic axes cover [lo, hi) and wrap during refinement.
  bool periodic = false;

  static Axis pinned(std::string name, double value) { return {std::move(name), value, value, 1, false}; }

  double step() const;
  double value(int i) const;
};

struct ScanGrid {
  std::vector<Axis> axes;
  int refinement_rounds = 3;
  int refine_points = 21;

  /// Throws std::invalid_argument on an empty grid, an axis without points,
  /// or an unpinned axis with fewer than two points.
  void validate() const;
};

struct ScanPoint {
  std::vector<double> location;
  double value = 0.0;
};

struct ScanResult {
  std::vector<std::string> location_names;
  std::vector<double> location;
  double optimum_value = 0.0;
  std::size_t grid_evaluations = 0;
  /// Incumbent after the coarse pass and after every refinement round.
  std::vector<ScanPoint> refinement_history;
  /// Every local minimizer in t within kNearOptimalWindow of the optimum,
  /// ordered by t.
  std::vector<ScanPoint> near_optimal;
};

inline constexpr double kNearOptimalWindow = 1e-4;

/// Squeezing is present when min var_p / g^2 < -kNoSqueezingTolerance.
inline constexpr double kNoSqueezingTolerance = 1e-9;

/// At least 40 samples per period 2 pi / (sqrt(2 cutoff - 1) xi).
int time_samples(double t_span, int cutoff, double xi);

/// Axes n0_mean in [0.1, 2.5] (25), phi in [0, 2 pi) (16), t in (0, 500 us].
ScanGrid default_case1_grid(const PhysicalParams& params);
/// Axes theta, psi (a = sin(theta) cos(psi), b = sin(theta) sin(psi),
/// c = cos(theta)), phi1, phi2 and t in (0, 100 us].
ScanGrid default_case2_grid(const PhysicalParams& params);

/// var_p / g^2 for case 1. The cutoff is raised to default_cutoff(n0_mean)
/// if params carries a smaller one.
double case1_var_p(double n0_mean, double phi, double t, const PhysicalParams& params);
double case2_var_p(double a, double b, double c, double phi1, double phi2, double t,
                   const PhysicalParams& params);

/// Location (n0_mean, phi, t).
ScanResult scan_case1(const ScanGrid& grid, const PhysicalParams& params);
/// Location (a, b, c, phi1, phi2, t).
ScanResult scan_case2(const ScanGrid& grid, const PhysicalParams& params);

/// Re-evaluates var_p / g^2 at a reported location.
double reevaluate_case1(std::span<const double> location, const PhysicalParams& params);
double reevaluate_case2(std::span<const double> location, const PhysicalParams& params);

struct TimeMinimum {
  double t = 0.0;
  double value = 0.0;
};

/// Minimum over (t_lo, t_hi] of f: sampled at `samples` points, then the
/// lowest few local minima are refined.
TimeMinimum min_over_time(const std::function<double(double)>& f, double t_lo, double t_hi,
                          int samples);

/// min over t in (0, t_max] of case-1 var_p / g^2 at fixed (n0_mean, phi).
TimeMinimum case1_min_over_time(double n0_mean, double phi, const PhysicalParams& params,
                                double t_max = 600e-6);

struct ThresholdResult {
  /// Smallest n0_mean found without squeezing (upper end of the bracket).
  double value = 0.0;
  double lower = 0.0;  // squeezing present
  double upper = 0.0;  // squeezing absent
  double min_var_p_lower = 0.0;
  double min_var_p_upper = 0.0;
  int iterations = 0;
};

/// Bisection on n0_mean over [bracket_lo, bracket_hi] for the onset of
/// min_t var_p >= -kNoSqueezingTolerance. Throws std::runtime_error if the
/// bracket does not straddle the change.
ThresholdResult threshold_no_squeezing(const PhysicalParams& params, double phi = 0.0,
                                       double bracket_lo = 0.51, double bracket_hi = 3.0,
                                       double resolution = 1e-3, double t_max = 600e-6);

}  // namespace ionjcm

#endif  // IONJCM_SCAN_HPP
