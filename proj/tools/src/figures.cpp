#include "figures.hpp"

#include <cmath>

#include "sqbath/dynamics.hpp"
#include "sqbath/entanglement.hpp"
#include "sqbath/error.hpp"
#include "sqbath/events.hpp"

namespace sqbath::cli {

namespace {

struct Context {
  int figure;
  const FigureOverrides& over;
  unsigned threads;

  BathParams bath(double n) const { return BathParams(n, over.psi.value_or(0.0), over.gamma.value_or(1.0)); }

  std::vector<double> set_or(std::optional<double> single, std::vector<double> caption) const {
    if (single) return {*single};
    return caption;
  }

  std::vector<double> times(double caption_t_max, double caption_step) const {
    return uniform_times(over.t_max.value_or(caption_t_max), over.sample_step.value_or(caption_step));
  }

  std::vector<double> grid(double start, double stop, double step) const {
    if (over.grid) return *over.grid;
    return linear_grid(start, stop, step);
  }

  std::vector<std::string> header(const std::string& initial) const {
    return {"figure = " + std::to_string(figure), "initial = " + initial,
            "psi = " + format_number(over.psi.value_or(0.0)),
            "gamma = " + format_number(over.gamma.value_or(1.0))};
  }

  EventSettings event_settings() const {
    EventSettings s;
    if (over.t_max) s.t_max = *over.t_max;
    if (over.sample_step) s.sample_step = *over.sample_step;
    s.psi = over.psi.value_or(0.0);
    s.gamma = over.gamma.value_or(1.0);
    return s;
  }
};

std::string number_or_nan(const std::vector<double>& values, std::size_t index) {
  return index < values.size() ? format_number(values[index]) : "nan";
}

Table concurrence_table(const InitialStateSpec& spec, const BathParams& bath,
                        const std::vector<double>& times, bool with_ppt) {
  const Trajectory traj = evolve_exact(initial_state(spec, bath), bath, times);
  Table table;
  table.columns = {"t", "concurrence"};
  if (with_ppt) table.columns.push_back("ppt_min_eig");
  for (std::size_t k = 0; k < times.size(); ++k) {
    std::vector<std::string> row{format_number(times[k]),
                                 format_number(concurrence_wootters(traj.states[k], bath).value)};
    if (with_ppt) row.push_back(format_number(ppt_min_eigenvalue(traj.states[k], bath).min_eigenvalue));
    table.add_row(std::move(row));
  }
  return table;
}

// One series per epsilon (or per N) of C(t).
std::vector<Series> time_series(const Context& ctx, InitialKind kind, std::vector<double> epsilons,
                                std::vector<double> baths, double t_max) {
  std::vector<Series> out;
  const auto times = ctx.times(t_max, 0.01);
  const bool by_eps = kind == InitialKind::Psi1 || kind == InitialKind::Psi2;
  for (double n : baths) {
    for (double eps : epsilons) {
      const InitialStateSpec spec = kind == InitialKind::Psi1   ? InitialStateSpec::psi1(eps)
                                    : kind == InitialKind::Psi2 ? InitialStateSpec::psi2(eps)
                                                                : InitialStateSpec{kind, 0.0, std::nullopt};
      Series s;
      s.name = by_eps ? "eps_" + format_number(eps) : "N_" + format_number(n);
      s.table = concurrence_table(spec, ctx.bath(n), times, false);
      s.table.comments = ctx.header(std::string(to_string(kind)));
      s.table.comments.push_back("N = " + format_number(n));
      if (kind == InitialKind::Psi1 || kind == InitialKind::Psi2) {
        s.table.comments.push_back("eps = " + format_number(eps));
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<Series> figure1(const Context& ctx) {
  const auto grid = ctx.grid(0.0, 10.0, 0.1);
  const double t = ctx.over.t_max.value_or(10.0);
  Series s{"phi1", {}};
  s.table.comments = ctx.header("phi1");
  s.table.comments.push_back("t = " + format_number(t));
  s.table.columns = {"N", "concurrence", "formula"};
  for (double n : grid) {
    const BathParams bath = ctx.bath(n);
    const ExactPropagator prop(initial_state(InitialStateSpec::phi(1), bath), bath);
    const double c = concurrence_wootters(prop.state_at(t), bath).value;
    const double formula = 2.0 * std::sqrt(n * (n + 1.0)) / (2.0 * n + 1.0);
    s.table.add_row({format_number(n), format_number(c), format_number(formula)});
  }
  return {std::move(s)};
}

std::vector<Series> figure2(const Context& ctx) {
  const double n = ctx.over.n_bar.value_or(0.0);
  Series s{"phi3", concurrence_table(InitialStateSpec::phi(3), ctx.bath(n), ctx.times(10.0, 0.05), true)};
  s.table.comments = ctx.header("phi3");
  s.table.comments.push_back("N = " + format_number(n));
  return {std::move(s)};
}

// Death and revival times over a sweep axis; a missing event is written as nan.
Table event_sweep_table(const Context& ctx, SweepFamily family, const std::vector<double>& grid,
                        double fixed, const std::string& axis, bool with_n0_roots) {
  const SweepResult result = sweep(family, grid, fixed, ctx.event_settings(), ctx.threads);
  Table table;
  table.columns = {axis, "death", "revival"};
  if (with_n0_roots) {
    table.columns.push_back("death_closed");
    table.columns.push_back("revival_closed");
  }
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const EventReport& r = result.reports[k];
    std::vector<std::string> row{format_number(grid[k]), number_or_nan(r.deaths, 0),
                                 number_or_nan(r.revivals, 0)};
    if (with_n0_roots) {
      const auto roots = psi1_event_times_n0(grid[k]);
      row.push_back(roots.empty() ? "nan" : format_number(roots.front()));
      row.push_back(roots.empty() ? "nan" : format_number(roots.back()));
    }
    table.add_row(std::move(row));
  }
  return table;
}

std::vector<Series> figure4(const Context& ctx) {
  const double n = ctx.over.n_bar.value_or(0.0);
  Series s{"psi1_events", event_sweep_table(ctx, SweepFamily::Psi1OverEpsilon,
                                            ctx.grid(0.005, 0.345, 0.005), n, "eps", n == 0.0)};
  s.table.comments = ctx.header("psi1");
  s.table.comments.insert(s.table.comments.begin() + 2, "N = " + format_number(n));
  return {std::move(s)};
}

std::vector<Series> figure6(const Context& ctx) {
  Series s{"touching_time", {}};
  s.table.comments = {"figure = 6", "initial = psi2", "N = 0"};
  s.table.columns = {"eps", "time"};
  for (double eps : ctx.grid(0.005, 0.705, 0.005)) {
    const auto t = psi2_touching_time_n0(eps);
    s.table.add_row({format_number(eps), t ? format_number(*t) : "nan"});
  }
  return {std::move(s)};
}

std::vector<Series> n_sweep_figure(const Context& ctx, SweepFamily family, const std::string& initial,
                                   double start, double step) {
  const auto grid = ctx.grid(start, 1.0, step);
  Series s{initial + "_events", event_sweep_table(ctx, family, grid, 0.0, "N", false)};
  s.table.comments = ctx.header(initial);
  if (family == SweepFamily::Phi4OverN) {
    std::vector<double> deaths;
    for (const auto& row : s.table.rows) deaths.push_back(parse_number(row[1]));
    try {
      const CurveMaximum m = interior_maximum(grid, deaths);
      s.table.comments.push_back("death_time_maximum_N = " + format_number(m.location));
      s.table.comments.push_back("death_time_maximum = " + format_number(m.value));
    } catch (const Error&) {
      s.table.comments.push_back("death_time_maximum_N = nan");
    }
  }
  return {std::move(s)};
}

std::vector<Series> figure11_12(const Context& ctx, bool revivals) {
  std::vector<Series> out;
  for (double n : ctx.set_or(ctx.over.n_bar, {0.0, 0.1, 0.2})) {
    Table sweep_table = event_sweep_table(ctx, SweepFamily::Psi1OverEpsilon,
                                          ctx.grid(0.01, 0.6, 0.01), n, "eps", false);
    Series s{"N_" + format_number(n), {}};
    s.table.comments = ctx.header("psi1");
    s.table.comments.push_back("N = " + format_number(n));
    const std::string column = revivals ? "revival" : "death";
    s.table.columns = {"eps", column};
    const std::size_t col = sweep_table.column_index(column);
    for (const auto& row : sweep_table.rows) s.table.add_row({row[0], row[col]});
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::vector<Series> figure_series(int figure, const FigureOverrides& overrides, unsigned threads) {
  const Context ctx{figure, overrides, threads};
  const auto eps = [&](std::vector<double> caption) { return ctx.set_or(overrides.epsilon, caption); };
  const auto ns = [&](std::vector<double> caption) { return ctx.set_or(overrides.n_bar, caption); };
  switch (figure) {
    case 1: return figure1(ctx);
    case 2: return figure2(ctx);
    case 3: return time_series(ctx, InitialKind::Psi1, eps({0.28, 0.345, 0.9}), ns({0.0}), 6.0);
    case 4: return figure4(ctx);
    case 5: return time_series(ctx, InitialKind::Psi2, eps({0.3, 0.5, 0.707, 0.9}), ns({0.0}), 6.0);
    case 6: return figure6(ctx);
    case 7: return time_series(ctx, InitialKind::Phi3, {0.0}, ns({0.1, 0.5, 1.0}), 5.0);
    case 8: return n_sweep_figure(ctx, SweepFamily::Phi3OverN, "phi3", 0.01, 0.01);
    case 9: return n_sweep_figure(ctx, SweepFamily::Phi4OverN, "phi4", 0.05, 0.005);
    case 10:
      return time_series(ctx, InitialKind::Psi1, eps({0.1, 0.2, 0.29, 0.5, 0.9}), ns({0.1}), 6.0);
    case 11: return figure11_12(ctx, false);
    case 12: return figure11_12(ctx, true);
    case 13:
      return time_series(ctx, InitialKind::Psi2, eps({0.1, 0.4, 0.49, 0.54, 0.6, 0.9}), ns({0.1}), 5.0);
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown figure " + std::to_string(figure) + " (expected 1.." + std::to_string(kFigureCount) + ")");
}

}  // namespace sqbath::cli
