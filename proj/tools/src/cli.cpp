#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "CLI11.hpp"

#include "figures.hpp"
#include "records.hpp"
#include "sqbath/dynamics.hpp"
#include "sqbath/error.hpp"
#include "sqbath/events.hpp"
#include "validate.hpp"

namespace sqbath::cli {

namespace {

struct RunConfig {
  std::vector<std::string> initial{"phi1"};
  double epsilon = 0.0;
  double n_bar = 0.0;
  double psi = 0.0;
  double gamma = 1.0;
  std::string method = "exact";
  double t_max = 5.0;
  double dt = 1e-3;
  double sample = 0.01;
  std::string grid;
  std::string out_path;
  std::string format = "csv";

  CLI::Option* eps_opt = nullptr;
  CLI::Option* n_opt = nullptr;
  CLI::Option* psi_opt = nullptr;
  CLI::Option* gamma_opt = nullptr;
  CLI::Option* tmax_opt = nullptr;
  CLI::Option* dt_opt = nullptr;
  CLI::Option* initial_opt = nullptr;
};

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::InvalidSettings, what); }

Format parse_format(const std::string& text) {
  if (text == "csv") return Format::Csv;
  if (text == "jsonl") return Format::JsonLines;
  config_error("--format must be csv or jsonl");
}

std::vector<double> parse_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? first : text.find(':', first + 1);
  if (second == std::string::npos) config_error("--grid expects START:STOP:STEP");
  try {
    return linear_grid(parse_number(text.substr(0, first)),
                       parse_number(text.substr(first + 1, second - first - 1)),
                       parse_number(text.substr(second + 1)));
  } catch (const Error& e) {
    config_error(std::string("--grid: ") + e.what());
  }
}

InitialStateSpec resolve_initial(const RunConfig& cfg) {
  const std::string& name = cfg.initial.front();
  if (name == "custom") {
    if (cfg.initial.size() != 2) config_error("--initial custom needs a FILE argument");
    return InitialStateSpec::from_matrix(read_custom_state(cfg.initial[1]));
  }
  if (cfg.initial.size() != 1) config_error("only --initial custom takes a FILE argument");
  for (int k = 1; k <= 4; ++k) {
    if (name == "phi" + std::to_string(k)) return InitialStateSpec::phi(k);
  }
  if (name == "psi1" || name == "psi2") {
    if (cfg.eps_opt->count() == 0) config_error("--initial " + name + " needs --eps");
    return name == "psi1" ? InitialStateSpec::psi1(cfg.epsilon) : InitialStateSpec::psi2(cfg.epsilon);
  }
  config_error("unknown initial state '" + name + "'");
}

Method parse_method(const std::string& text) {
  for (Method m : {Method::RK4, Method::Exact, Method::ClosedForm}) {
    if (to_string(m) == text) return m;
  }
  config_error("--method must be rk4, exact or closed");
}

void add_state_options(CLI::App& sub, RunConfig& cfg) {
  cfg.initial_opt = sub.add_option("--initial", cfg.initial,
                                   "phi1|phi2|phi3|phi4|psi1|psi2|custom FILE")
                        ->expected(1, 2)
                        ->capture_default_str();
  cfg.eps_opt = sub.add_option("--eps", cfg.epsilon, "superposition weight for psi1/psi2");
  cfg.n_opt = sub.add_option("--N", cfg.n_bar, "mean bath photon number")->capture_default_str();
  cfg.psi_opt = sub.add_option("--psi", cfg.psi, "squeezing phase")->capture_default_str();
  cfg.gamma_opt = sub.add_option("--gamma", cfg.gamma, "spontaneous decay rate")->capture_default_str();
}

void add_output_options(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--out", cfg.out_path, "output file (stdout when absent)");
  sub.add_option("--format", cfg.format, "csv|jsonl")->capture_default_str();
}

// Writes to --out if given, otherwise to `fallback`.
void emit(const RunConfig& cfg, std::ostream& fallback, const Table& table) {
  const Format format = parse_format(cfg.format);
  if (cfg.out_path.empty()) {
    write_table(fallback, table, format);
    return;
  }
  std::ofstream file(cfg.out_path);
  if (!file) config_error("cannot write '" + cfg.out_path + "'");
  write_table(file, table, format);
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
  const BathParams bath(cfg.n_bar, cfg.psi, cfg.gamma);
  const InitialStateSpec spec = resolve_initial(cfg);
  const Method method = parse_method(cfg.method);
  Trajectory traj;
  if (method == Method::RK4) {
    const double ratio = cfg.sample / cfg.dt;
    const int stride = static_cast<int>(std::lround(ratio));
    if (stride < 1 || std::abs(ratio - stride) > 1e-9 * ratio) {
      config_error("--sample must be a whole multiple of --dt for rk4");
    }
    traj = evolve_rk4(initial_state(spec, bath), bath,
                      PropagatorSettings{cfg.dt, cfg.t_max, stride, Method::RK4});
  } else {
    const auto times = uniform_times(cfg.t_max, cfg.sample);
    traj = method == Method::Exact ? evolve_exact(initial_state(spec, bath), bath, times)
                                   : evolve_closed_form(spec, bath, times);
  }
  Table table = trajectory_table(traj);
  table.comments.insert(table.comments.begin(), "initial = " + std::string(to_string(spec.kind)));
  if (spec.kind == InitialKind::Psi1 || spec.kind == InitialKind::Psi2) {
    table.comments.insert(table.comments.begin() + 1, "eps = " + format_number(spec.epsilon));
  }
  emit(cfg, out, table);
  return kExitOk;
}

int cmd_events(const RunConfig& cfg, std::ostream& out) {
  EventSettings settings;
  settings.t_max = cfg.tmax_opt->count() ? cfg.t_max : 0.0;
  settings.sample_step = cfg.dt_opt->count() ? cfg.dt : 0.01;
  settings.psi = cfg.psi;
  settings.gamma = cfg.gamma;

  if (cfg.grid.empty()) {
    const BathParams bath(cfg.n_bar, cfg.psi, cfg.gamma);
    Table table = events_table(events_for(resolve_initial(cfg), bath, settings));
    table.comments.insert(table.comments.begin(), "N = " + format_number(cfg.n_bar));
    table.comments.insert(table.comments.begin(), "initial = " + cfg.initial.front());
    emit(cfg, out, table);
    return kExitOk;
  }

  const std::string& name = cfg.initial.front();
  SweepFamily family{};
  std::string axis = "eps";
  if (name == "psi1") {
    family = SweepFamily::Psi1OverEpsilon;
  } else if (name == "psi2") {
    family = SweepFamily::Psi2OverEpsilon;
  } else if (name == "phi3" || name == "phi4") {
    family = name == "phi3" ? SweepFamily::Phi3OverN : SweepFamily::Phi4OverN;
    axis = "N";
  } else {
    config_error("--grid sweeps need --initial psi1, psi2, phi3 or phi4");
  }
  const auto grid = parse_grid(cfg.grid);
  const SweepResult result = sweep(family, grid, cfg.n_bar, settings, sweep_threads());
  Table table;
  table.comments = {"initial = " + name, "sweep = " + std::string(to_string(family))};
  if (axis == "eps") table.comments.push_back("N = " + format_number(cfg.n_bar));
  table.columns = {axis, "event", "time", "tolerance"};
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Table events = events_table(result.reports[k]);
    if (events.rows.empty()) table.add_row({format_number(grid[k]), "none", "nan", "nan"});
    for (const auto& row : events.rows) table.add_row({format_number(grid[k]), row[0], row[1], row[2]});
  }
  emit(cfg, out, table);
  return kExitOk;
}

int cmd_figure(int figure, const RunConfig& cfg, std::ostream& out) {
  FigureOverrides over;
  if (cfg.eps_opt->count()) over.epsilon = cfg.epsilon;
  if (cfg.n_opt->count()) over.n_bar = cfg.n_bar;
  if (cfg.psi_opt->count()) over.psi = cfg.psi;
  if (cfg.gamma_opt->count()) over.gamma = cfg.gamma;
  if (cfg.tmax_opt->count()) over.t_max = cfg.t_max;
  if (cfg.dt_opt->count()) over.sample_step = cfg.dt;
  if (!cfg.grid.empty()) over.grid = parse_grid(cfg.grid);
  const Format format = parse_format(cfg.format);

  const auto series = figure_series(figure, over, sweep_threads());
  if (cfg.out_path.empty()) {
    for (const auto& s : series) {
      out << "# series: " << s.name << '\n';
      write_table(out, s.table, format);
    }
    return kExitOk;
  }
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_path, ec);
  if (ec) config_error("cannot create directory '" + cfg.out_path + "'");
  const char* ext = format == Format::Csv ? ".csv" : ".jsonl";
  for (const auto& s : series) {
    const auto path = std::filesystem::path(cfg.out_path) /
                      ("fig" + std::to_string(figure) + "_" + s.name + ext);
    std::ofstream file(path);
    if (!file) config_error("cannot write '" + path.string() + "'");
    write_table(file, s.table, format);
  }
  return kExitOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  ValidationOptions options;
  if (cfg.n_opt->count()) options.n_bar = cfg.n_bar;
  if (cfg.initial_opt->count()) {
    const std::string& name = cfg.initial.front();
    for (InitialKind kind : {InitialKind::Phi1, InitialKind::Phi2, InitialKind::Phi3, InitialKind::Phi4,
                             InitialKind::Psi1, InitialKind::Psi2}) {
      if (to_string(kind) == name) options.initial = kind;
    }
    if (!options.initial) config_error("validate --initial must be one of phi1..phi4, psi1, psi2");
  }
  const auto rows = run_validation(options);
  emit(cfg, out, validation_table(rows));
  if (!all_gated_pass(rows)) {
    err << "validation failed: a gated check exceeded its tolerance\n";
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace

unsigned sweep_threads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SQBATH_THREADS"); env && *env) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (*end != '\0' || cap < 1) config_error("SQBATH_THREADS must be a positive integer");
    threads = std::min<unsigned long>(threads, static_cast<unsigned long>(cap));
  }
  return threads;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two qubits in a common squeezed vacuum bath: evolution, entanglement and figure data",
               "sqbath"};
  app.require_subcommand(1);

  RunConfig evolve_cfg;
  auto* evolve = app.add_subcommand("evolve", "evolve a state and tabulate rho(t), concurrence and PT eigenvalue");
  add_state_options(*evolve, evolve_cfg);
  evolve->add_option("--method", evolve_cfg.method, "rk4|exact|closed")->capture_default_str();
  evolve_cfg.tmax_opt = evolve->add_option("--tmax", evolve_cfg.t_max, "final time")->capture_default_str();
  evolve_cfg.dt_opt = evolve->add_option("--dt", evolve_cfg.dt, "rk4 step")->capture_default_str();
  evolve->add_option("--sample", evolve_cfg.sample, "output spacing")->capture_default_str();
  add_output_options(*evolve, evolve_cfg);

  RunConfig events_cfg;
  auto* events = app.add_subcommand("events", "detect entanglement sudden death and revival times");
  add_state_options(*events, events_cfg);
  events_cfg.tmax_opt =
      events->add_option("--tmax", events_cfg.t_max, "search horizon (default 20/(gamma(2N+1)))");
  events_cfg.dt_opt = events->add_option("--dt", events_cfg.dt, "sample spacing before refinement (default 0.01)");
  events->add_option("--grid", events_cfg.grid, "sweep START:STOP:STEP over eps (psi1/psi2) or N (phi3/phi4)");
  add_output_options(*events, events_cfg);

  RunConfig figure_cfg;
  int figure_id = 0;
  auto* figure = app.add_subcommand("figure", "emit the data series of figure 1..13");
  figure->add_option("n", figure_id, "figure number")->required();
  add_state_options(*figure, figure_cfg);
  figure_cfg.tmax_opt = figure->add_option("--tmax", figure_cfg.t_max, "time horizon override");
  figure_cfg.dt_opt = figure->add_option("--dt", figure_cfg.dt, "sample spacing override");
  figure->add_option("--grid", figure_cfg.grid, "sweep axis override START:STOP:STEP");
  figure->add_option("--out", figure_cfg.out_path, "directory for fig<n>_<series> files (stdout when absent)");
  figure->add_option("--format", figure_cfg.format, "csv|jsonl")->capture_default_str();

  RunConfig validate_cfg;
  auto* validate = app.add_subcommand("validate", "cross-check closed forms against exact propagation");
  validate_cfg.initial_opt =
      validate->add_option("--initial", validate_cfg.initial, "restrict to one initial state")->expected(1, 2);
  validate_cfg.n_opt = validate->add_option("--N", validate_cfg.n_bar, "restrict to one bath");
  add_output_options(*validate, validate_cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*evolve) return cmd_evolve(evolve_cfg, out);
    if (*events) return cmd_events(events_cfg, out);
    if (*figure) return cmd_figure(figure_id, figure_cfg, out);
    if (*validate) return cmd_validate(validate_cfg, out, err);
  } catch (const Error& e) {
    err << "sqbath: " << e.what() << '\n';
    return is_config_error(e.code()) ? kExitConfig : kExitNumeric;
  } catch (const std::exception& e) {
    err << "sqbath: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace sqbath::cli
