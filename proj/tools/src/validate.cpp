#include "validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "sqbath/dynamics.hpp"
#include "sqbath/entanglement.hpp"

namespace sqbath::cli {

namespace {

const std::vector<double> kEpsilons{0.28, 0.345, 0.5, 0.9};
const std::vector<double> kGeneralTimes{0.2, 1.0, 3.0};
constexpr double kHorizon = 6.0;
constexpr double kStep = 0.05;

struct Case {
  InitialStateSpec spec;
  std::string label;
};

std::vector<Case> cases_for(const ValidationOptions& options) {
  std::vector<Case> out;
  const auto wanted = [&](InitialKind kind) { return !options.initial || *options.initial == kind; };
  for (int k = 1; k <= 4; ++k) {
    const auto spec = InitialStateSpec::phi(k);
    if (wanted(spec.kind)) out.push_back({spec, std::string(to_string(spec.kind))});
  }
  for (double eps : kEpsilons) {
    if (wanted(InitialKind::Psi1)) out.push_back({InitialStateSpec::psi1(eps), "psi1"});
    if (wanted(InitialKind::Psi2)) out.push_back({InitialStateSpec::psi2(eps), "psi2"});
  }
  return out;
}

std::vector<double> baths_for(const ValidationOptions& options) {
  if (options.n_bar) return {*options.n_bar};
  return {0.0, 0.1, 0.5, 1.0};
}

std::string list(const std::vector<double>& values) {
  std::string out = "{";
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += " ";
    out += format_number(values[k]);
  }
  return out + "}";
}

// Seeded, library-independent uniform numbers in [-1, 1).
class Uniform {
 public:
  explicit Uniform(std::uint64_t seed) : engine_(seed) {}
  double operator()() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  }

 private:
  std::mt19937_64 engine_;
};

DensityMatrix full_rank_state() {
  Uniform u(20240611);
  ComplexMatrix g(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) g(i, j) = {u(), u()};
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix(rho, BasisTag::DFS);
}

double psi1_concurrence_n0(double eps, double t) {
  const double s = 1.0 - eps * eps;
  return std::max(0.0, 2.0 * eps * std::sqrt(s) * std::exp(-t) - 2.0 * t * std::exp(-2.0 * t) * s);
}

class Accumulator {
 public:
  Accumulator(std::string check, std::string scope, double tolerance = kClosedFormTolerance)
      : row_{std::move(check), std::move(scope), 0.0, tolerance, true, true} {}
  void add(double deviation) {
    row_.max_deviation = std::max(row_.max_deviation, std::isfinite(deviation) ? deviation : INFINITY);
    used_ = true;
  }
  void flush(std::vector<ValidationRow>& rows) {
    if (!used_) return;
    row_.within = row_.max_deviation <= row_.tolerance;
    rows.push_back(row_);
  }

 private:
  ValidationRow row_;
  bool used_ = false;
};

}  // namespace

std::vector<ValidationRow> run_validation(const ValidationOptions& options) {
  std::vector<ValidationRow> rows;
  const auto cases = cases_for(options);
  const auto baths = baths_for(options);
  const auto times = uniform_times(kHorizon, kStep);
  const std::string time_scope = "t in [0 6] step 0.05";
  const std::string eps_scope = "; eps in " + list(kEpsilons);

  // Closed forms at N = 0.
  if (std::find(baths.begin(), baths.end(), 0.0) != baths.end()) {
    const BathParams bath(0.0);
    for (const char* label : {"phi1", "phi2", "phi3", "phi4", "psi1", "psi2"}) {
      const bool psi = label[1] == 's';
      Accumulator acc(std::string("closed_form_") + label,
                      "N = 0; " + time_scope + (psi ? eps_scope : ""));
      for (const auto& c : cases) {
        if (c.label != label) continue;
        const Trajectory exact = evolve_exact(initial_state(c.spec, bath), bath, times);
        for (std::size_t k = 0; k < times.size(); ++k) {
          acc.add(max_abs_diff(closed_form_special(c.spec, bath, times[k]).mat(),
                               exact.states[k].mat()));
        }
      }
      acc.flush(rows);
    }
    Accumulator conc("concurrence_psi1_n0", "N = 0; " + time_scope + eps_scope);
    for (const auto& c : cases) {
      if (c.spec.kind != InitialKind::Psi1) continue;
      const Trajectory exact = evolve_exact(initial_state(c.spec, bath), bath, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        conc.add(std::abs(psi1_concurrence_n0(c.spec.epsilon, times[k]) -
                          concurrence_wootters(exact.states[k], bath).value));
      }
    }
    conc.flush(rows);
  }

  // Invariance of the decoherence-free states and concurrence cross-checks.
  const std::string bath_scope = "N in " + list(baths) + "; " + time_scope;
  Accumulator invariant("invariant_phi1_phi2", bath_scope);
  Accumulator xstate("concurrence_xstate", bath_scope);
  Accumulator dfs1("concurrence_dfs_psi1_family", bath_scope);
  Accumulator dfs2("concurrence_dfs_psi2_family", bath_scope);
  for (double n : baths) {
    const BathParams bath(n);
    for (const auto& c : cases) {
      const DensityMatrix rho0 = initial_state(c.spec, bath);
      const Trajectory traj = evolve_exact(rho0, bath, times);
      const bool is_invariant = c.spec.kind == InitialKind::Phi1 || c.spec.kind == InitialKind::Phi2;
      std::optional<DfsFamily> family;
      if (c.spec.kind == InitialKind::Psi1 || c.spec.kind == InitialKind::Phi4 ||
          c.spec.kind == InitialKind::Phi1) {
        family = DfsFamily::Psi1Family;
      } else if (c.spec.kind == InitialKind::Psi2 || c.spec.kind == InitialKind::Phi3 ||
                 c.spec.kind == InitialKind::Phi2) {
        family = DfsFamily::Psi2Family;
      }
      for (const auto& state : traj.states) {
        if (is_invariant) invariant.add(max_abs_diff(state.mat(), rho0.mat()));
        const double reference = concurrence_wootters(state, bath).value;
        const DensityMatrix standard = change_basis(state, BasisTag::Standard, bath);
        xstate.add(std::abs(concurrence_xstate(standard).value - reference));
        if (family) {
          auto& acc = *family == DfsFamily::Psi1Family ? dfs1 : dfs2;
          acc.add(std::abs(concurrence_dfs_closed(state, bath, *family).value - reference));
        }
      }
    }
  }
  invariant.flush(rows);
  xstate.flush(rows);
  dfs1.flush(rows);
  dfs2.flush(rows);

  // General N > 0 solution, entry by entry, on a full-rank state.
  std::vector<double> general_baths;
  for (double n : baths) {
    if (n > 0.0) general_baths.push_back(n);
  }
  if (!options.initial && !general_baths.empty()) {
    const DensityMatrix rho0 = full_rank_state();
    std::array<double, 16> worst{};
    for (double n : general_baths) {
      for (double t : kGeneralTimes) {
        const GeneralSolutionResult r = closed_form_general(rho0, BathParams(n), t);
        for (std::size_t k = 0; k < 16; ++k) worst[k] = std::max(worst[k], r.entry_deviation[k]);
      }
    }
    const std::string scope = "N in " + list(general_baths) + "; t in " + list(kGeneralTimes);
    for (std::size_t k = 0; k < 16; ++k) {
      ValidationRow row{"general_rho" + std::to_string(k / 4 + 1) + std::to_string(k % 4 + 1),
                        scope, worst[k], kGeneralSolutionTolerance, false, worst[k] <= kGeneralSolutionTolerance};
      rows.push_back(row);
    }
  }
  return rows;
}

Table validation_table(const std::vector<ValidationRow>& rows) {
  Table table;
  table.columns = {"check", "scope", "max_deviation", "tolerance", "status"};
  for (const auto& r : rows) {
    const char* status = r.gated ? (r.within ? "pass" : "fail") : (r.within ? "verified" : "deviates");
    table.add_row({r.check, r.scope, format_number(r.max_deviation),
                   format_number(r.tolerance), status});
  }
  return table;
}

bool all_gated_pass(const std::vector<ValidationRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return !r.gated || r.within; });
}

}  // namespace sqbath::cli
