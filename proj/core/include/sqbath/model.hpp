#pragma once

// Physical objects for two qubits in a common broadband squeezed vacuum:
// bath parameters, the collective jump operator, the Liouvillian, and the
// decoherence-free-subspace (DFS) basis.

#include <array>
#include <optional>
#include <string_view>

#include "sqbath/matkernel.hpp"

namespace sqbath {

/// Squeezed-reservoir parameters. The correlation M = sqrt(N(N+1)) is always
/// derived from N and never stored.
class BathParams {
 public:
  /// Throws InvalidBath unless n_bar >= 0, gamma > 0 and all values finite.
  explicit BathParams(double n_bar = 0.0, double psi = 0.0, double gamma = 1.0);

  double n_bar() const noexcept { return n_bar_; }
  double psi() const noexcept { return psi_; }
  double gamma() const noexcept { return gamma_; }

  double m() const noexcept;
  /// Squeeze parameter r with N = sinh^2 r.
  double squeeze_r() const noexcept;

  BathParams with_n_bar(double n_bar) const { return BathParams(n_bar, psi_, gamma_); }

 private:
  double n_bar_;
  double psi_;
  double gamma_;
};

/// Standard: |++>, |+->, |-+>, |--> with |+> excited.
/// DFS: |phi1>, |phi2>, |phi3>, |phi4>.
enum class BasisTag { Standard, DFS };

std::string_view to_string(BasisTag basis) noexcept;

inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-8;

/// Two-qubit state: Hermitian, unit trace, positive semidefinite, tagged with
/// the basis its entries refer to.
class DensityMatrix {
 public:
  /// Throws InvalidState when the invariants fail. `positivity_tol` is the
  /// most negative eigenvalue accepted.
  DensityMatrix(ComplexMatrix mat, BasisTag basis, double positivity_tol = kPositivityTolerance);

  const ComplexMatrix& mat() const noexcept { return mat_; }
  BasisTag basis() const noexcept { return basis_; }
  const cplx& operator()(std::size_t row, std::size_t col) const noexcept { return mat_(row, col); }

  double purity() const;

 private:
  ComplexMatrix mat_;
  BasisTag basis_;
};

using Ket = std::array<cplx, 4>;

/// Standard-basis indices.
inline constexpr std::size_t kPP = 0;  // |++>
inline constexpr std::size_t kPM = 1;  // |+->
inline constexpr std::size_t kMP = 2;  // |-+>
inline constexpr std::size_t kMM = 3;  // |-->

/// Collective lowering operator sigma_1 + sigma_2 in the standard basis.
ComplexMatrix collective_lowering();

/// S = sqrt(N+1)(sigma_1 + sigma_2) - sqrt(N) e^{i psi}(sigma_1^dag + sigma_2^dag).
ComplexMatrix lindblad_operator(const BathParams& bath);

/// phi1..phi4 as standard-basis amplitudes. phi1 and phi2 span the kernel of
/// S. Each vector's largest-magnitude amplitude (last one on ties) is real and
/// positive; at N = 0 phi1 = |--> and phi4 = |++>.
std::array<Ket, 4> dfs_basis_vectors(const BathParams& bath);

/// Unitary whose columns are the DFS vectors; rho_std = U rho_dfs U^dag.
ComplexMatrix dfs_transform(const BathParams& bath);

struct Liouvillian {
  ComplexMatrix mat;  // 16x16 acting on column-stacked vec(rho)
  BasisTag basis;
  BathParams bath;
};

/// L with L vec(rho) = vec(gamma/2 (2 S rho S^dag - S^dag S rho - rho S^dag S)),
/// expressed in the requested basis.
Liouvillian build_liouvillian(const BathParams& bath, BasisTag basis);

/// Superoperator of the generic dissipator D[S] for any 4x4 jump operator.
ComplexMatrix lindblad_superoperator(const ComplexMatrix& jump, double gamma);

DensityMatrix change_basis(const DensityMatrix& rho, BasisTag target, const BathParams& bath);

enum class InitialKind { Phi1, Phi2, Phi3, Phi4, Psi1, Psi2, Custom };

std::string_view to_string(InitialKind kind) noexcept;

/// Psi1(eps) = eps phi1 + sqrt(1-eps^2) phi4; Psi2(eps) = eps phi2 + sqrt(1-eps^2) phi3.
struct InitialStateSpec {
  InitialKind kind = InitialKind::Phi1;
  double epsilon = 0.0;
  std::optional<DensityMatrix> custom;

  static InitialStateSpec phi(int index);
  static InitialStateSpec psi1(double eps) { return {InitialKind::Psi1, eps, std::nullopt}; }
  static InitialStateSpec psi2(double eps) { return {InitialKind::Psi2, eps, std::nullopt}; }
  static InitialStateSpec from_matrix(DensityMatrix rho) {
    return {InitialKind::Custom, 0.0, std::move(rho)};
  }
};

/// Initial state in the DFS basis (Custom states keep their own basis).
/// Throws InvalidEpsilon if eps is outside [0, 1].
DensityMatrix initial_state(const InitialStateSpec& spec, const BathParams& bath);

/// Pure initial state amplitudes in the DFS basis.
Ket initial_ket_dfs(const InitialStateSpec& spec);

DensityMatrix projector(const Ket& psi, BasisTag basis);

}  // namespace sqbath
