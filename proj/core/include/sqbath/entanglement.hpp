#pragma once

// Two-qubit entanglement: Wootters concurrence (generic, X-state and
// DFS-basis closed forms) and the partial-transpose separability test.

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "sqbath/dynamics.hpp"
#include "sqbath/model.hpp"

namespace sqbath {

enum class ConcurrenceBranch { Generic, XStateC1, XStateC2, DFSC1, DFSC2, Zero };

std::string_view to_string(ConcurrenceBranch branch) noexcept;

struct ConcurrenceResult {
  double value = 0.0;
  ConcurrenceBranch branch = ConcurrenceBranch::Zero;
  /// (C1, C2) before clamping; only set by the closed-form routes.
  std::optional<std::pair<double, double>> raw_candidates;
};

inline constexpr double kPptTolerance = 1e-10;
inline constexpr double kStructureTolerance = 1e-10;

struct PPTResult {
  double min_eigenvalue = 0.0;
  bool entangled = false;  // min_eigenvalue < -kPptTolerance
};

/// sigma_y (x) sigma_y in the standard basis.
ComplexMatrix spin_flip_operator();

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y) for a standard-basis matrix.
ComplexMatrix spin_flipped(const ComplexMatrix& rho_std);

/// |<psi|(sigma_y (x) sigma_y)|psi^*>|. Throws NotNormalized if ||psi|| is not 1
/// within 1e-10. `bath` fixes the DFS basis when `basis` is DFS.
double concurrence_pure(const Ket& psi, BasisTag basis, const BathParams& bath = BathParams{});

/// Eigenvalues of rho below this (relative to the trace) are treated as zero
/// when factorizing rho for Wootters' formula.
inline constexpr double kRankTolerance = 1e-13;

/// sqrt(lambda_i) of Wootters' formula in descending order: the singular values
/// of W^T (sigma_y (x) sigma_y) W for rho = W W^dagger, so that
/// sigma_i^2 are the eigenvalues of sqrt(rho) rho~ sqrt(rho).
std::array<double, 4> wootters_singular_values(const ComplexMatrix& rho_std);

/// The lambda_i themselves, descending.
std::array<double, 4> wootters_lambdas(const ComplexMatrix& rho_std);

/// max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4)). DFS-tagged states are
/// converted with `bath` first.
ConcurrenceResult concurrence_wootters(const DensityMatrix& rho, const BathParams& bath = BathParams{});

/// max{0, C1, C2} for X-shaped standard-basis states. With `check_structure`
/// any off-X entry above 1e-10 throws NotXState; otherwise off-X entries are ignored.
ConcurrenceResult concurrence_xstate(const DensityMatrix& rho, bool check_structure = true);

enum class DfsFamily {
  Psi1Family,  // support on rho11, rho14, rho41, rho33, rho44
  Psi2Family,  // adds rho22, rho23, rho32
};

/// Closed forms for DFS-basis states of the two solution families at psi = 0.
/// Throws PatternMismatch when entries outside the family's pattern (or the
/// imaginary parts of its coherences) exceed 1e-10 and UnsupportedBath when psi != 0.
ConcurrenceResult concurrence_dfs_closed(const DensityMatrix& rho, const BathParams& bath,
                                         DfsFamily family, bool check_structure = true);

enum class TransposedQubit { First, Second };

ComplexMatrix partial_transpose(const ComplexMatrix& rho_std,
                                TransposedQubit qubit = TransposedQubit::Second);

PPTResult ppt_min_eigenvalue(const DensityMatrix& rho, const BathParams& bath = BathParams{},
                             TransposedQubit qubit = TransposedQubit::Second);

struct StateMetrics {
  double concurrence = 0.0;
  double ppt_min_eigenvalue = 0.0;
};

std::vector<StateMetrics> measure_trajectory(const Trajectory& traj);

}  // namespace sqbath
