#include "sqbath/events.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "sqbath/dynamics.hpp"
#include "sqbath/entanglement.hpp"
#include "sqbath/error.hpp"

namespace sqbath {

namespace {

constexpr double kGoldenTimeTolerance = 1e-11;
constexpr double kDipSignificance = 1e-12;
constexpr double kShallowValue = 1e-6;

class EventFinder {
 public:
  EventFinder(std::span<const double> times, std::span<const double> values,
              const ConcurrenceEvaluator& evaluator, double zero_tol, double refine_tol)
      : times_(times), values_(values), evaluator_(evaluator), zero_tol_(zero_tol),
        refine_tol_(refine_tol) {}

  EventReport run() {
    EventReport report;
    report.refined_tolerance = refine_tol_;
    report.asymptotic_value = values_.back();
    report.initially_separable = !above(values_[0]);

    std::optional<std::size_t> last_death_index;
    for (std::size_t i = 1; i < times_.size(); ++i) {
      const bool was = above(values_[i - 1]);
      const bool is = above(values_[i]);
      if (was && !is) {
        report.deaths.push_back(crossing(i - 1, i));
        last_death_index = i;
      } else if (!was && is) {
        report.revivals.push_back(crossing(i - 1, i));
        if (last_death_index && i - *last_death_index < 3) report.resolution_warning = true;
      }
    }

    for (std::size_t i = 0; i < times_.size(); ++i) {
      const auto bracket = dip_bracket(i);
      if (!bracket) continue;
      probe_dip(bracket->first, bracket->second, report);
    }

    std::sort(report.deaths.begin(), report.deaths.end());
    std::sort(report.revivals.begin(), report.revivals.end());
    return report;
  }

 private:
  bool above(double c) const { return c > zero_tol_; }

  double eval(double t) const { return evaluator_(t); }

  // Bisection on the threshold predicate; returns the bracket end on the
  // side of the later sample.
  double bisect(double lo, double hi, bool above_lo) const {
    while (hi - lo > refine_tol_) {
      const double mid = 0.5 * (lo + hi);
      if (above(eval(mid)) == above_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return hi;
  }

  double crossing(std::size_t i, std::size_t j) const {
    const double t0 = times_[i];
    const double t1 = times_[j];
    const bool above0 = above(values_[i]);
    if (!evaluator_) {
      const double c0 = values_[i] - zero_tol_;
      const double c1 = values_[j] - zero_tol_;
      return t0 + (t1 - t0) * c0 / (c0 - c1);
    }
    if (above(eval(t0)) != above0 || above(eval(t1)) == above0) {
      throw Error(ErrorCode::InsufficientResolution,
                  "cannot bracket threshold crossing in [" + std::to_string(t0) + ", " +
                      std::to_string(t1) + "]");
    }
    return bisect(t0, t1, above0);
  }

  // A sample that is a strict local minimum of an all-positive neighbourhood
  // may hide a zero between samples.
  std::optional<std::pair<std::size_t, std::size_t>> dip_bracket(std::size_t i) const {
    if (!evaluator_) return std::nullopt;
    const std::size_t n = times_.size();
    if (n < 2 || !above(values_[i])) return std::nullopt;
    const auto significant = [&](double neighbour) {
      return neighbour - values_[i] > kDipSignificance * std::max(1.0, values_[i]) ||
             (values_[i] < kShallowValue && neighbour > values_[i]);
    };
    if (i == 0) {
      if (above(values_[1]) && significant(values_[1])) return std::pair{0UL, 1UL};
      return std::nullopt;
    }
    if (i == n - 1) {
      if (above(values_[n - 2]) && significant(values_[n - 2])) return std::pair{n - 2, n - 1};
      return std::nullopt;
    }
    if (!above(values_[i - 1]) || !above(values_[i + 1])) return std::nullopt;
    if (values_[i] > values_[i - 1] || values_[i] > values_[i + 1]) return std::nullopt;
    if (!significant(values_[i - 1]) && !significant(values_[i + 1])) return std::nullopt;
    return std::pair{i - 1, i + 1};
  }

  void probe_dip(std::size_t lo_index, std::size_t hi_index, EventReport& report) const {
    double a = times_[lo_index];
    double b = times_[hi_index];
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    while (b - a > kGoldenTimeTolerance) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_phi * (b - a);
        f1 = eval(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_phi * (b - a);
        f2 = eval(x2);
      }
      if (!above(std::min(f1, f2))) break;
    }
    const double t_min = f1 <= f2 ? x1 : x2;
    if (above(std::min(f1, f2))) return;

    const double t_lo = times_[lo_index];
    const double t_hi = times_[hi_index];
    if (!above(eval(t_lo)) || !above(eval(t_hi))) {
      throw Error(ErrorCode::InsufficientResolution, "dip bracket ends are not above threshold");
    }
    const double death = bisect(t_lo, t_min, true);
    // Revival: first time after t_min back above threshold.
    double lo = t_min;
    double hi = t_hi;
    while (hi - lo > refine_tol_) {
      const double mid = 0.5 * (lo + hi);
      if (above(eval(mid))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const double revival = hi;
    if (revival - death <= refine_tol_) {
      report.deaths.push_back(t_min);
      report.revivals.push_back(t_min);
    } else {
      report.deaths.push_back(death);
      report.revivals.push_back(revival);
    }
  }

  std::span<const double> times_;
  std::span<const double> values_;
  const ConcurrenceEvaluator& evaluator_;
  double zero_tol_;
  double refine_tol_;
};

InitialStateSpec spec_for(SweepFamily family, double epsilon) {
  switch (family) {
    case SweepFamily::Psi1OverEpsilon: return InitialStateSpec::psi1(epsilon);
    case SweepFamily::Psi2OverEpsilon: return InitialStateSpec::psi2(epsilon);
    case SweepFamily::Phi3OverN: return InitialStateSpec::phi(3);
    case SweepFamily::Phi4OverN: return InitialStateSpec::phi(4);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown sweep family");
}

}  // namespace

EventReport detect_events(std::span<const double> times, std::span<const double> concurrence,
                          const ConcurrenceEvaluator& evaluator, double zero_tol,
                          double refine_tol) {
  if (times.size() != concurrence.size() || times.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "need matching time and concurrence samples (>= 2)");
  }
  if (!(zero_tol >= 0.0) || !(refine_tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "zero_tol must be >= 0 and refine_tol > 0");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sample times must be strictly ascending");
    }
  }
  return EventFinder(times, concurrence, evaluator, zero_tol, refine_tol).run();
}

std::vector<double> psi1_event_times_n0(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  }
  const double k = epsilon / std::sqrt(1.0 - epsilon * epsilon);
  const double peak = 1.0 / std::numbers::e;
  if (std::abs(k - peak) <= 1e-12) return {1.0};
  if (k > peak) return {};

  const auto f = [k](double t) { return t * std::exp(-t) - k; };
  // f is increasing on [0, 1] and decreasing on [1, inf).
  const auto solve = [&](double lo, double hi, bool increasing) {
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
      const double mid = 0.5 * (lo + hi);
      if ((f(mid) < 0.0) == increasing) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  double upper = 2.0;
  while (f(upper) >= 0.0) upper *= 2.0;
  return {solve(0.0, 1.0, true), solve(1.0, upper, false)};
}

std::optional<double> psi2_touching_time_n0(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 1)");
  }
  if (epsilon >= std::numbers::sqrt2 / 2.0) return std::nullopt;
  const double eps2 = epsilon * epsilon;
  const double t = 0.5 * std::log((1.0 - eps2) / eps2);
  if (!(t > 0.0)) return std::nullopt;
  return t;
}

double psi1_critical_epsilon_n0() {
  double lo = 1e-6;  // has roots
  double hi = 0.9;   // none
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (psi1_event_times_n0(mid).empty()) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(SweepFamily family) noexcept {
  switch (family) {
    case SweepFamily::Psi1OverEpsilon: return "psi1_over_eps";
    case SweepFamily::Psi2OverEpsilon: return "psi2_over_eps";
    case SweepFamily::Phi3OverN: return "phi3_over_N";
    case SweepFamily::Phi4OverN: return "phi4_over_N";
  }
  return "unknown";
}

EventReport events_for(const InitialStateSpec& spec, const BathParams& bath,
                       const EventSettings& settings) {
  const double t_max = settings.t_max > 0.0
                           ? settings.t_max
                           : 20.0 / (bath.gamma() * (2.0 * bath.n_bar() + 1.0));
  const DensityMatrix rho0 = initial_state(spec, bath);
  const auto times = uniform_times(t_max, settings.sample_step);
  const Trajectory traj = evolve_exact(rho0, bath, times);

  std::vector<double> values;
  values.reserve(traj.states.size());
  for (const auto& state : traj.states) values.push_back(concurrence_wootters(state, bath).value);

  const ExactPropagator propagator(rho0, bath);
  const ConcurrenceEvaluator evaluator = [&](double t) {
    return concurrence_wootters(propagator.state_at(t), bath).value;
  };
  return detect_events(traj.times, values, evaluator, settings.zero_tol, settings.refine_tol);
}

SweepResult sweep(SweepFamily family, std::span<const double> grid, double fixed,
                  const EventSettings& settings, unsigned threads) {
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw Error(ErrorCode::InvalidArgument, "sweep grid must be strictly ascending");
    }
  }
  const bool over_epsilon =
      family == SweepFamily::Psi1OverEpsilon || family == SweepFamily::Psi2OverEpsilon;

  SweepResult result;
  result.parameter_grid.assign(grid.begin(), grid.end());
  result.reports.resize(grid.size());
  result.family = family;
  result.fixed = fixed;

  std::vector<std::exception_ptr> failures(grid.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        const double n_bar = over_epsilon ? fixed : grid[i];
        const double eps = over_epsilon ? grid[i] : 0.0;
        const BathParams bath(n_bar, settings.psi, settings.gamma);
        result.reports[i] = events_for(spec_for(family, eps), bath, settings);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  const unsigned count = std::max(1u, std::min<unsigned>(threads, grid.size()));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned k = 0; k < count; ++k) pool.emplace_back(worker);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return result;
}

std::vector<double> linear_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
    throw Error(ErrorCode::InvalidArgument, "grid needs step > 0 and stop >= start");
  }
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t k = 0; k < count; ++k) grid[k] = start + static_cast<double>(k) * step;
  return grid;
}

CurveMaximum interior_maximum(std::span<const double> grid, std::span<const double> values) {
  if (grid.size() != values.size() || grid.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "need at least three matching samples");
  }
  const auto it = std::max_element(values.begin(), values.end());
  const auto k = static_cast<std::size_t>(std::distance(values.begin(), it));
  if (k == 0 || k + 1 == values.size()) {
    throw Error(ErrorCode::InvalidArgument, "maximum lies on the grid boundary");
  }
  // Parabola through (x_{k-1}, y_{k-1}), (x_k, y_k), (x_{k+1}, y_{k+1}).
  const double x0 = grid[k - 1], x1 = grid[k], x2 = grid[k + 1];
  const double y0 = values[k - 1], y1 = values[k], y2 = values[k + 1];
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  CurveMaximum out{k, x1, y1};
  if (curvature < 0.0) {
    out.location = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
    const double x = out.location;
    out.value = y0 + d01 * (x - x0) + curvature * (x - x0) * (x - x1);
  }
  return out;
}

}  // namespace sqbath
