#include "sqbath/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sqbath/error.hpp"

namespace sqbath {

namespace {

double safe_sqrt(double x) { return x > 0.0 ? std::sqrt(x) : 0.0; }

ConcurrenceResult pick(double c1, double c2, ConcurrenceBranch b1, ConcurrenceBranch b2) {
  ConcurrenceResult r;
  r.raw_candidates = std::make_pair(c1, c2);
  if (c1 <= 0.0 && c2 <= 0.0) {
    r.value = 0.0;
    r.branch = ConcurrenceBranch::Zero;
  } else if (c1 >= c2) {
    r.value = c1;
    r.branch = b1;
  } else {
    r.value = c2;
    r.branch = b2;
  }
  return r;
}

ComplexMatrix to_standard(const DensityMatrix& rho, const BathParams& bath) {
  if (rho.basis() == BasisTag::Standard) return rho.mat();
  return change_basis(rho, BasisTag::Standard, bath).mat();
}

}  // namespace

std::string_view to_string(ConcurrenceBranch branch) noexcept {
  switch (branch) {
    case ConcurrenceBranch::Generic: return "generic";
    case ConcurrenceBranch::XStateC1: return "xstate_c1";
    case ConcurrenceBranch::XStateC2: return "xstate_c2";
    case ConcurrenceBranch::DFSC1: return "dfs_c1";
    case ConcurrenceBranch::DFSC2: return "dfs_c2";
    case ConcurrenceBranch::Zero: return "zero";
  }
  return "unknown";
}

ComplexMatrix spin_flip_operator() {
  ComplexMatrix y(4);
  y(kPP, kMM) = -1.0;
  y(kPM, kMP) = 1.0;
  y(kMP, kPM) = 1.0;
  y(kMM, kPP) = -1.0;
  return y;
}

ComplexMatrix spin_flipped(const ComplexMatrix& rho_std) {
  const ComplexMatrix y = spin_flip_operator();
  return y * rho_std.conj() * y;
}

double concurrence_pure(const Ket& psi, BasisTag basis, const BathParams& bath) {
  double norm2 = 0.0;
  for (const auto& z : psi) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) {
    throw Error(ErrorCode::NotNormalized, "state vector norm is " + std::to_string(std::sqrt(norm2)));
  }
  Ket v = psi;
  if (basis == BasisTag::DFS) {
    const auto phis = dfs_basis_vectors(bath);
    v = {};
    for (std::size_t k = 0; k < 4; ++k)
      for (std::size_t i = 0; i < 4; ++i) v[i] += psi[k] * phis[k][i];
  }
  const ComplexMatrix y = spin_flip_operator();
  cplx overlap{};
  for (std::size_t i = 0; i < 4; ++i) {
    cplx flipped{};
    for (std::size_t j = 0; j < 4; ++j) flipped += y(i, j) * std::conj(v[j]);
    overlap += std::conj(v[i]) * flipped;
  }
  return std::min(1.0, std::abs(overlap));
}

std::array<double, 4> wootters_singular_values(const ComplexMatrix& rho_std) {
  // rho = W W^dagger with W = V sqrt(mu); the sqrt(lambda_i) are the singular
  // values of the symmetric matrix tau = W^T Y W. Eigenvalues at roundoff
  // level are dropped so they cannot leak in as sqrt(1e-16) ~ 1e-8.
  const HermitianEigenResult eig = herm_eig(rho_std);
  const double scale = std::max(1.0, std::abs(rho_std.trace()));
  ComplexMatrix w(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double mu = eig.eigenvalues[k];
    if (mu <= kRankTolerance * scale) continue;
    const double root = std::sqrt(mu);
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = eig.eigenvectors(i, k) * root;
  }
  const ComplexMatrix tau = w.transpose() * spin_flip_operator() * w;

  // [[0, tau], [tau^dagger, 0]] has eigenvalues +-sigma_i with absolute accuracy.
  ComplexMatrix embed(8);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      embed(i, 4 + j) = tau(i, j);
      embed(4 + j, i) = std::conj(tau(i, j));
    }
  }
  const auto ev = herm_eigenvalues(embed);
  std::array<double, 4> sigma{};
  for (std::size_t k = 0; k < 4; ++k) sigma[k] = std::max(0.0, ev[7 - k]);
  return sigma;
}

std::array<double, 4> wootters_lambdas(const ComplexMatrix& rho_std) {
  auto lambdas = wootters_singular_values(rho_std);
  for (auto& x : lambdas) x *= x;
  return lambdas;
}

ConcurrenceResult concurrence_wootters(const DensityMatrix& rho, const BathParams& bath) {
  const auto s = wootters_singular_values(to_standard(rho, bath));
  const double c = s[0] - s[1] - s[2] - s[3];
  ConcurrenceResult r;
  if (c > 0.0) {
    r.value = std::min(1.0, c);
    r.branch = ConcurrenceBranch::Generic;
  }
  return r;
}

ConcurrenceResult concurrence_xstate(const DensityMatrix& rho, bool check_structure) {
  if (rho.basis() != BasisTag::Standard) {
    throw Error(ErrorCode::InvalidArgument, "X-state formula needs a standard-basis state");
  }
  if (check_structure) {
    static constexpr std::array<std::pair<int, int>, 8> off_x{
        {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}}};
    for (const auto& [i, j] : off_x) {
      if (std::abs(rho(i, j)) > kStructureTolerance) {
        throw Error(ErrorCode::NotXState, "entry (" + std::to_string(i + 1) + "," +
                                              std::to_string(j + 1) + ") is outside the X pattern");
      }
    }
  }
  const double c1 = 2.0 * (safe_sqrt((rho(1, 2) * rho(2, 1)).real()) -
                           safe_sqrt(rho(0, 0).real() * rho(3, 3).real()));
  const double c2 = 2.0 * (safe_sqrt((rho(0, 3) * rho(3, 0)).real()) -
                           safe_sqrt(rho(1, 1).real() * rho(2, 2).real()));
  return pick(c1, c2, ConcurrenceBranch::XStateC1, ConcurrenceBranch::XStateC2);
}

ConcurrenceResult concurrence_dfs_closed(const DensityMatrix& rho, const BathParams& bath,
                                         DfsFamily family, bool check_structure) {
  if (rho.basis() != BasisTag::DFS) {
    throw Error(ErrorCode::InvalidArgument, "DFS closed forms need a DFS-basis state");
  }
  if (std::abs(bath.psi()) > 1e-12) {
    throw Error(ErrorCode::UnsupportedBath, "DFS closed forms assume psi = 0");
  }
  if (check_structure) {
    // Allowed support, 0-based (row, col).
    std::array<std::array<bool, 4>, 4> allowed{};
    for (auto [i, j] : {std::pair{0, 0}, {0, 3}, {3, 0}, {2, 2}, {3, 3}}) allowed[i][j] = true;
    if (family == DfsFamily::Psi2Family) {
      for (auto [i, j] : {std::pair{1, 1}, {1, 2}, {2, 1}}) allowed[i][j] = true;
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        if (!allowed[i][j] && std::abs(rho(i, j)) > kStructureTolerance) {
          throw Error(ErrorCode::PatternMismatch, "entry (" + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) +
                                                      ") is outside the family pattern");
        }
      }
    }
    if (std::abs(rho(0, 3).imag()) > kStructureTolerance ||
        std::abs(rho(1, 2).imag()) > kStructureTolerance) {
      throw Error(ErrorCode::PatternMismatch, "family coherences must be real");
    }
  }

  const double n = bath.n_bar();
  const double m = bath.m();
  const double k = 2.0 * n + 1.0;
  const double r11 = rho(0, 0).real();
  const double r22 = rho(1, 1).real();
  const double r33 = rho(2, 2).real();
  const double r44 = rho(3, 3).real();
  const double r14 = rho(0, 3).real();
  const double r23 = rho(1, 2).real();

  if (family == DfsFamily::Psi1Family) {
    const double c1 = 2.0 * (r33 / 2.0 - safe_sqrt((r11 * n + r44 * (n + 1.0) + 2.0 * r14 * m) / k) *
                                             safe_sqrt((r44 * n + r11 * (n + 1.0) - 2.0 * r14 * m) / k));
    const double c2 = 2.0 * (std::abs(m * (r11 - r44) + r14) / k - r33 / 2.0);
    return pick(c1, c2, ConcurrenceBranch::DFSC1, ConcurrenceBranch::DFSC2);
  }
  const double c1 = std::abs(r33 - r22) -
                    2.0 * safe_sqrt((n * (r11 + r44) + r44 + 2.0 * r14 * m) / k) *
                        safe_sqrt((n * (r11 + r44) + r11 - 2.0 * r14 * m) / k);
  const double c2 = 2.0 / k * std::abs(m * (r11 - r44) + r14) -
                    safe_sqrt((r22 - 2.0 * r23 + r33) * (r22 + 2.0 * r23 + r33));
  return pick(c1, c2, ConcurrenceBranch::DFSC1, ConcurrenceBranch::DFSC2);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho_std, TransposedQubit qubit) {
  // Index = 2 a + b with a the first qubit, b the second.
  ComplexMatrix out(4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) {
          const cplx value = qubit == TransposedQubit::Second ? rho_std(2 * a + d, 2 * c + b)
                                                              : rho_std(2 * c + b, 2 * a + d);
          out(2 * a + b, 2 * c + d) = value;
        }
  return out;
}

PPTResult ppt_min_eigenvalue(const DensityMatrix& rho, const BathParams& bath,
                             TransposedQubit qubit) {
  const double min_eig = herm_eigenvalues(partial_transpose(to_standard(rho, bath), qubit)).front();
  return PPTResult{min_eig, min_eig < -kPptTolerance};
}

std::vector<StateMetrics> measure_trajectory(const Trajectory& traj) {
  std::vector<StateMetrics> out;
  out.reserve(traj.states.size());
  for (const auto& state : traj.states) {
    const ComplexMatrix std_mat = to_standard(state, traj.bath);
    const DensityMatrix std_state(std_mat, BasisTag::Standard, 1e-6);
    out.push_back({concurrence_wootters(std_state).value, ppt_min_eigenvalue(std_state).min_eigenvalue});
  }
  return out;
}

}  // namespace sqbath
