#include "sqbath/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqbath/error.hpp"

namespace sqbath {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

// Multiply by a global phase so the largest-magnitude amplitude (last on ties)
// is real and positive.
Ket fix_global_phase(Ket v) {
  std::size_t pivot = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) >= std::abs(v[pivot])) pivot = i;
  const double mag = std::abs(v[pivot]);
  if (mag == 0.0) return v;
  const cplx phase = std::conj(v[pivot]) / mag;
  for (auto& z : v) z *= phase;
  v[pivot] = mag;
  return v;
}

double ket_norm(const Ket& v) {
  double sum = 0.0;
  for (const auto& z : v) sum += std::norm(z);
  return std::sqrt(sum);
}

}  // namespace

BathParams::BathParams(double n_bar, double psi, double gamma)
    : n_bar_(n_bar), psi_(psi), gamma_(gamma) {
  if (!std::isfinite(n_bar) || n_bar < 0.0) {
    throw Error(ErrorCode::InvalidBath, "N must be finite and >= 0, got " + std::to_string(n_bar));
  }
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw Error(ErrorCode::InvalidBath, "gamma must be finite and > 0, got " + std::to_string(gamma));
  }
  if (!std::isfinite(psi)) throw Error(ErrorCode::InvalidBath, "psi must be finite");
}

double BathParams::m() const noexcept { return std::sqrt(n_bar_ * (n_bar_ + 1.0)); }

double BathParams::squeeze_r() const noexcept { return std::asinh(std::sqrt(n_bar_)); }

std::string_view to_string(BasisTag basis) noexcept {
  return basis == BasisTag::Standard ? "standard" : "dfs";
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, BasisTag basis, double positivity_tol)
    : mat_(std::move(mat)), basis_(basis) {
  if (mat_.dim() != 4) throw Error(ErrorCode::InvalidState, "density matrix must be 4x4");
  if (hermiticity_defect(mat_) > kDensityTolerance) {
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  const cplx tr = mat_.trace();
  if (std::abs(tr - 1.0) > kDensityTolerance) {
    throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
  }
  const double min_eig = herm_eigenvalues(mat_).front();
  if (min_eig < -positivity_tol) {
    throw Error(ErrorCode::InvalidState,
                "density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

double DensityMatrix::purity() const { return (mat_ * mat_).trace().real(); }

ComplexMatrix collective_lowering() {
  // sigma = |-><+| on each qubit; index bit 1 means |->.
  ComplexMatrix s(4);
  s(kMP, kPP) = 1.0;  // sigma_1 |++> = |-+>
  s(kMM, kPM) = 1.0;  // sigma_1 |+-> = |-->
  s(kPM, kPP) = 1.0;  // sigma_2 |++> = |+->
  s(kMM, kMP) = 1.0;  // sigma_2 |-+> = |-->
  return s;
}

ComplexMatrix lindblad_operator(const BathParams& bath) {
  const ComplexMatrix lower = collective_lowering();
  const double n = bath.n_bar();
  const cplx raise_coeff = std::sqrt(n) * std::polar(1.0, bath.psi());
  return std::sqrt(n + 1.0) * lower - raise_coeff * lower.adjoint();
}

std::array<Ket, 4> dfs_basis_vectors(const BathParams& bath) {
  const double n = bath.n_bar();
  // N/sqrt(N^2+M^2) and M/sqrt(N^2+M^2), written so N = 0 needs no limit.
  const double a = std::sqrt(n / (2.0 * n + 1.0));
  const double b = std::sqrt((n + 1.0) / (2.0 * n + 1.0));
  const cplx e = std::polar(1.0, -bath.psi());

  std::array<Ket, 4> basis{};
  basis[0] = {a, 0.0, 0.0, b * e};
  basis[1] = {0.0, -kInvSqrt2, kInvSqrt2, 0.0};
  basis[2] = {0.0, kInvSqrt2, kInvSqrt2, 0.0};
  basis[3] = {b, 0.0, 0.0, -a * e};
  for (auto& v : basis) {
    v = fix_global_phase(v);
    if (std::abs(ket_norm(v) - 1.0) > 1e-12) {
      throw Error(ErrorCode::DegenerateBasis, "DFS basis vector lost normalization");
    }
  }
  return basis;
}

ComplexMatrix dfs_transform(const BathParams& bath) {
  const auto basis = dfs_basis_vectors(bath);
  ComplexMatrix u(4);
  for (std::size_t col = 0; col < 4; ++col)
    for (std::size_t row = 0; row < 4; ++row) u(row, col) = basis[col][row];
  return u;
}

ComplexMatrix lindblad_superoperator(const ComplexMatrix& jump, double gamma) {
  if (jump.dim() != 4) throw Error(ErrorCode::DimensionMismatch, "jump operator must be 4x4");
  const ComplexMatrix id = ComplexMatrix::identity(4);
  const ComplexMatrix sds = jump.adjoint() * jump;
  ComplexMatrix l = 2.0 * kron(jump.conj(), jump);
  l -= kron(id, sds);
  l -= kron(sds.transpose(), id);
  l *= 0.5 * gamma;
  return l;
}

Liouvillian build_liouvillian(const BathParams& bath, BasisTag basis) {
  ComplexMatrix s = lindblad_operator(bath);
  if (basis == BasisTag::DFS) {
    const ComplexMatrix u = dfs_transform(bath);
    s = u.adjoint() * s * u;
  }
  return Liouvillian{lindblad_superoperator(s, bath.gamma()), basis, bath};
}

DensityMatrix change_basis(const DensityMatrix& rho, BasisTag target, const BathParams& bath) {
  if (rho.basis() == target) return rho;
  const ComplexMatrix u = dfs_transform(bath);
  ComplexMatrix out = target == BasisTag::Standard ? u * rho.mat() * u.adjoint()
                                                   : u.adjoint() * rho.mat() * u;
  // The input was validated already and unitary conjugation preserves the
  // spectrum, so accept whatever positivity slack the caller's state carried.
  return DensityMatrix(std::move(out), target, 1e-6);
}

std::string_view to_string(InitialKind kind) noexcept {
  switch (kind) {
    case InitialKind::Phi1: return "phi1";
    case InitialKind::Phi2: return "phi2";
    case InitialKind::Phi3: return "phi3";
    case InitialKind::Phi4: return "phi4";
    case InitialKind::Psi1: return "psi1";
    case InitialKind::Psi2: return "psi2";
    case InitialKind::Custom: return "custom";
  }
  return "unknown";
}

InitialStateSpec InitialStateSpec::phi(int index) {
  switch (index) {
    case 1: return {InitialKind::Phi1, 0.0, std::nullopt};
    case 2: return {InitialKind::Phi2, 0.0, std::nullopt};
    case 3: return {InitialKind::Phi3, 0.0, std::nullopt};
    case 4: return {InitialKind::Phi4, 0.0, std::nullopt};
    default:
      throw Error(ErrorCode::InvalidArgument, "phi index must be 1..4, got " + std::to_string(index));
  }
}

Ket initial_ket_dfs(const InitialStateSpec& spec) {
  const auto check_eps = [&] {
    if (!std::isfinite(spec.epsilon) || spec.epsilon < 0.0 || spec.epsilon > 1.0) {
      throw Error(ErrorCode::InvalidEpsilon,
                  "epsilon must lie in [0, 1], got " + std::to_string(spec.epsilon));
    }
  };
  switch (spec.kind) {
    case InitialKind::Phi1: return {1.0, 0.0, 0.0, 0.0};
    case InitialKind::Phi2: return {0.0, 1.0, 0.0, 0.0};
    case InitialKind::Phi3: return {0.0, 0.0, 1.0, 0.0};
    case InitialKind::Phi4: return {0.0, 0.0, 0.0, 1.0};
    case InitialKind::Psi1: {
      check_eps();
      const double eps = spec.epsilon;
      return {eps, 0.0, 0.0, std::sqrt(1.0 - eps * eps)};
    }
    case InitialKind::Psi2: {
      check_eps();
      const double eps = spec.epsilon;
      return {0.0, eps, std::sqrt(1.0 - eps * eps), 0.0};
    }
    case InitialKind::Custom: break;
  }
  throw Error(ErrorCode::UnsupportedSpec, "custom states have no ket representation");
}

DensityMatrix projector(const Ket& psi, BasisTag basis) {
  ComplexMatrix m(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  return DensityMatrix(std::move(m), basis);
}

DensityMatrix initial_state(const InitialStateSpec& spec, const BathParams& bath) {
  (void)bath;  // DFS-basis amplitudes of every named state are independent of N.
  if (spec.kind == InitialKind::Custom) {
    if (!spec.custom) throw Error(ErrorCode::InvalidCustom, "custom spec carries no matrix");
    return *spec.custom;
  }
  return projector(initial_ket_dfs(spec), BasisTag::DFS);
}

}  // namespace sqbath
