#pragma once

// Time evolution of the two-qubit state under the squeezed-bath master
// equation: classical RK4, the exact e^{Lt} propagator, and closed-form
// solutions in the DFS basis.

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "sqbath/model.hpp"

namespace sqbath {

enum class Method { RK4, Exact, ClosedForm };

std::string_view to_string(Method method) noexcept;

struct PropagatorSettings {
  double dt = 1e-3;        // RK4 step
  double t_max = 1.0;
  int sample_stride = 10;  // RK4 steps between stored samples
  Method method = Method::RK4;
};

/// Largest RK4 step accepted for a bath: 0.01 / (gamma (2N + 1)).
double max_stable_step(const BathParams& bath);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;  // same basis throughout
  BathParams bath;
  Method method = Method::Exact;
  /// Largest |tr(rho) - 1| seen at a sample before renormalization (RK4 only).
  double max_trace_drift = 0.0;
};

/// Evenly spaced sample times 0, step, 2 step, ..., t_max (t_max included when
/// it lies on the grid within 1e-9 step).
std::vector<double> uniform_times(double t_max, double step);

/// Classical RK4 on vec(rho). Samples are re-Hermitized and, when the trace
/// drift exceeds 1e-12, renormalized; the integrator state itself is never
/// touched. Throws StiffStepRejected when dt > max_stable_step(bath) and
/// PositivityLost if a sample's smallest eigenvalue drops below -1e-6.
Trajectory evolve_rk4(const DensityMatrix& rho0, const BathParams& bath,
                      const PropagatorSettings& settings);

/// e^{Lt} propagation in the basis of rho0. Reuses the one-step propagator
/// whenever consecutive time increments coincide.
Trajectory evolve_exact(const DensityMatrix& rho0, const BathParams& bath,
                        std::span<const double> times);

/// On-demand exact evaluation of rho(t) for a fixed initial state.
class ExactPropagator {
 public:
  ExactPropagator(const DensityMatrix& rho0, const BathParams& bath);

  ComplexMatrix matrix_at(double t) const;
  DensityMatrix state_at(double t) const;

  const Liouvillian& liouvillian() const noexcept { return liouvillian_; }
  BasisTag basis() const noexcept { return liouvillian_.basis; }

 private:
  Liouvillian liouvillian_;
  std::vector<cplx> rho0_vec_;
};

/// Closed-form N = 0 solutions in the DFS basis (phi1..phi4, Psi1, Psi2).
/// Throws UnsupportedSpec for Custom and UnsupportedBath when N != 0.
DensityMatrix closed_form_special(const InitialStateSpec& spec, const BathParams& bath, double t);

/// closed_form_special sampled on a time grid.
Trajectory evolve_closed_form(const InitialStateSpec& spec, const BathParams& bath,
                              std::span<const double> times);

inline constexpr double kGeneralSolutionTolerance = 1e-8;

struct GeneralSolutionResult {
  ComplexMatrix rho{4};  // raw formula values, DFS basis, not necessarily a valid state
  bool validation_ran = false;
  bool validated = false;  // every entry within kGeneralSolutionTolerance of e^{Lt}
  double max_deviation = 0.0;
  std::array<double, 16> entry_deviation{};  // row-major |formula - exact|
};

/// General N > 0 solution evaluated entry by entry from the printed
/// DFS-basis expressions. With `validate` on, every entry is compared against
/// the exact propagator. Throws SingularBath when N <= 0.
GeneralSolutionResult closed_form_general(const DensityMatrix& rho0, const BathParams& bath, double t,
                                    bool validate = true);

/// Throws ValidationError unless the result passed the gate.
const ComplexMatrix& require_validated(const GeneralSolutionResult& result);

}  // namespace sqbath
