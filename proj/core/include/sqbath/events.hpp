#pragma once

// Entanglement sudden death and revival: detection on sampled concurrence
// curves, the N = 0 closed-form event equations, and parameter sweeps.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sqbath/model.hpp"

namespace sqbath {

inline constexpr double kZeroThreshold = 1e-9;
inline constexpr double kRefineTolerance = 1e-6;

struct EventReport {
  std::vector<double> deaths;    // ascending; C reaches zero from above
  std::vector<double> revivals;  // ascending; C leaves zero
  double asymptotic_value = 0.0;  // C at the last sample
  double refined_tolerance = kRefineTolerance;
  bool initially_separable = false;
  /// Set when a dead interval spans fewer than three samples.
  bool resolution_warning = false;
};

using ConcurrenceEvaluator = std::function<double(double)>;

/// Finds threshold crossings of C(t) against `zero_tol` on the sample grid and
/// refines each by bisection on `evaluator` to `refine_tol` in time (linear
/// interpolation when no evaluator is given). Local minima between samples
/// that dip below the threshold are found by golden-section search; an
/// isolated zero is reported as a coincident death and revival.
/// Throws InsufficientResolution when the evaluator disagrees with the
/// samples about which side of the threshold a bracket end lies on.
EventReport detect_events(std::span<const double> times, std::span<const double> concurrence,
                          const ConcurrenceEvaluator& evaluator = {},
                          double zero_tol = kZeroThreshold, double refine_tol = kRefineTolerance);

/// Roots of t e^{-t} = eps / sqrt(1 - eps^2), ascending: two roots
/// (t_d < 1 < t_r), a double root t = 1 when the right side equals 1/e within
/// 1e-12, or none. Throws InvalidArgument unless 0 < eps < 1.
std::vector<double> psi1_event_times_n0(double epsilon);

/// Death-revival time t = ln((1 - eps^2) / eps^2) / 2 for eps < 1/sqrt(2);
/// empty otherwise. Throws InvalidArgument unless 0 < eps < 1.
std::optional<double> psi2_touching_time_n0(double epsilon);

/// Largest eps for which psi1_event_times_n0 still has roots, located by bisection on
/// the root count to 1e-13.
double psi1_critical_epsilon_n0();

enum class SweepFamily {
  Psi1OverEpsilon,  // fixed: N
  Psi2OverEpsilon,  // fixed: N
  Phi3OverN,
  Phi4OverN,
};

std::string_view to_string(SweepFamily family) noexcept;

struct EventSettings {
  double t_max = 0.0;  // <= 0 selects 20 / (gamma (2N + 1))
  double sample_step = 0.01;
  double zero_tol = kZeroThreshold;
  double refine_tol = kRefineTolerance;
  double psi = 0.0;
  double gamma = 1.0;
};

/// Evolves the state exactly on a uniform grid and detects its events, using
/// on-demand exact propagation for refinement.
EventReport events_for(const InitialStateSpec& spec, const BathParams& bath,
                       const EventSettings& settings = {});

struct SweepResult {
  std::vector<double> parameter_grid;
  std::vector<EventReport> reports;
  SweepFamily family = SweepFamily::Psi1OverEpsilon;
  double fixed = 0.0;  // N for the epsilon families
};

/// One EventReport per grid point. Grid points are independent and are spread
/// over up to `threads` worker threads; the result does not depend on the count.
SweepResult sweep(SweepFamily family, std::span<const double> grid, double fixed,
                  const EventSettings& settings = {}, unsigned threads = 1);

/// start, start + step, ..., up to stop (inclusive within 1e-9 step).
std::vector<double> linear_grid(double start, double stop, double step);

struct CurveMaximum {
  std::size_t index = 0;  // grid argmax
  double location = 0.0;  // vertex of the parabola through the argmax and its neighbours
  double value = 0.0;
};

/// Interior maximum of a sampled curve. Throws InvalidArgument if the largest
/// sample sits on either end of the grid.
CurveMaximum interior_maximum(std::span<const double> grid, std::span<const double> values);

}  // namespace sqbath
