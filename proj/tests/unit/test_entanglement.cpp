#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "sqbath/entanglement.hpp"
#include "sqbath/error.hpp"
#include "test_support.hpp"

using namespace sqbath;
using sqbath::testing::Rng;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an sqbath::Error");
  return ErrorCode::InvalidArgument;
}

DensityMatrix standard(const ComplexMatrix& m) { return DensityMatrix(m, BasisTag::Standard); }

ComplexMatrix diag(std::initializer_list<double> values) {
  std::vector<double> v(values);
  return ComplexMatrix::diagonal(v);
}

// Werner state p |Phi+><Phi+| + (1 - p) I / 4 has C = max(0, (3p - 1) / 2).
ComplexMatrix werner(double p) {
  ComplexMatrix m = testing::ket_projector(testing::bell_phi_plus());
  m *= p;
  m += (1.0 - p) / 4.0 * ComplexMatrix::identity(4);
  return m;
}

}  // namespace

TEST_CASE("pure-state concurrence") {
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(concurrence_pure(testing::bell_phi_plus(), BasisTag::Standard) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(concurrence_pure({1.0, 0.0, 0.0, 0.0}, BasisTag::Standard) == 0.0);
  CHECK(concurrence_pure({r, r, 0.0, 0.0}, BasisTag::Standard) < 1e-15);
  // a|00> + b|11> has C = 2|ab|.
  const double a = 0.6, b = 0.8;
  CHECK(std::abs(concurrence_pure({a, 0.0, 0.0, b}, BasisTag::Standard) - 2 * a * b) < 1e-15);
  CHECK(code_of([] { concurrence_pure({1.0, 1.0, 0.0, 0.0}, BasisTag::Standard); }) ==
        ErrorCode::NotNormalized);
}

TEST_CASE("DFS vectors: phi2 and phi3 are maximally entangled") {
  for (double n : {0.0, 0.3, 2.0}) {
    const BathParams bath(n);
    CHECK(concurrence_pure({0.0, 1.0, 0.0, 0.0}, BasisTag::DFS, bath) == doctest::Approx(1.0));
    CHECK(concurrence_pure({0.0, 0.0, 1.0, 0.0}, BasisTag::DFS, bath) == doctest::Approx(1.0));
    // phi1 = a|++> + b|-->, a = sqrt(N/(2N+1)), b = sqrt((N+1)/(2N+1)).
    const double expected = 2.0 * std::sqrt(n * (n + 1.0)) / (2.0 * n + 1.0);
    CHECK(std::abs(concurrence_pure({1.0, 0.0, 0.0, 0.0}, BasisTag::DFS, bath) - expected) < 1e-14);
  }
}

TEST_CASE("Wootters concurrence on known mixed states") {
  CHECK(concurrence_wootters(standard(diag({0.25, 0.25, 0.25, 0.25}))).value == 0.0);
  CHECK(concurrence_wootters(standard(diag({1, 0, 0, 0}))).value == 0.0);
  for (double p : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const double expected = std::max(0.0, (3.0 * p - 1.0) / 2.0);
    CHECK(std::abs(concurrence_wootters(standard(werner(p))).value - expected) < 1e-14);
  }
  const auto lambdas = wootters_lambdas(werner(1.0));
  CHECK(lambdas[0] == doctest::Approx(1.0));
  CHECK(lambdas[1] < 1e-28);
}

TEST_CASE("Wootters concurrence matches oracles on psi1(0.28) at N = 0") {
  const BathParams bath(0.0);
  const ExactPropagator prop(initial_state(InitialStateSpec::psi1(0.28), bath), bath);
  CHECK(std::abs(concurrence_wootters(prop.state_at(0.0), bath).value - oracles::kPsi1C0028) < 1e-14);
  CHECK(std::abs(concurrence_wootters(prop.state_at(0.2), bath).value - oracles::kPsi1C028T02) < 1e-12);
  CHECK(concurrence_wootters(prop.state_at(0.5), bath).value == oracles::kPsi1C028T05);
}

TEST_CASE("Wootters concurrence equals the pure-state formula on random kets") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const Ket v = testing::random_ket(rng);
    const double pure = concurrence_pure(v, BasisTag::Standard);
    const double mixed = concurrence_wootters(standard(testing::ket_projector(v))).value;
    CHECK(std::abs(pure - mixed) < 1e-13);
  }
}

TEST_CASE("Wootters concurrence is invariant under local unitaries") {
  Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix rho = testing::random_density(rng, 1 + trial % 4);
    const ComplexMatrix u = testing::random_local_unitary(rng);
    const double c0 = concurrence_wootters(standard(rho)).value;
    const double c1 = concurrence_wootters(standard(u * rho * u.adjoint())).value;
    CHECK(std::abs(c0 - c1) < 1e-12);
  }
}

TEST_CASE("positive concurrence coincides with a negative partial transpose") {
  Rng rng(43);
  int entangled = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho = standard(testing::random_density(rng, 1 + trial % 4));
    const double c = concurrence_wootters(rho).value;
    const PPTResult ppt = ppt_min_eigenvalue(rho);
    if (c > 1e-8) {
      ++entangled;
      CHECK(ppt.entangled);
    }
    if (ppt.min_eigenvalue > 1e-8) CHECK(c < 1e-8);
    // Both transposes have the same spectrum.
    const double other = ppt_min_eigenvalue(rho, BathParams{}, TransposedQubit::First).min_eigenvalue;
    CHECK(std::abs(other - ppt.min_eigenvalue) < 1e-12);
  }
  CHECK(entangled > 100);
}

TEST_CASE("partial transpose on known states") {
  CHECK(ppt_min_eigenvalue(standard(testing::ket_projector(testing::bell_phi_plus()))).min_eigenvalue ==
        doctest::Approx(-0.5));
  const PPTResult product = ppt_min_eigenvalue(standard(diag({0.5, 0.5, 0, 0})));
  CHECK(product.min_eigenvalue > -1e-15);
  CHECK_FALSE(product.entangled);
  const ComplexMatrix pt = partial_transpose(testing::ket_projector(testing::bell_phi_plus()));
  CHECK(std::abs(pt(1, 2) - 0.5) < 1e-15);
  CHECK(std::abs(pt(0, 3)) == 0.0);
}

TEST_CASE("X-state formula agrees with Wootters on random X states") {
  Rng rng(44);
  for (int trial = 0; trial < 500; ++trial) {
    const DensityMatrix rho = standard(testing::random_x_state(rng));
    const ConcurrenceResult x = concurrence_xstate(rho);
    CHECK(std::abs(x.value - concurrence_wootters(rho).value) < 1e-12);
    REQUIRE(x.raw_candidates.has_value());
    CHECK(x.value == doctest::Approx(std::max({0.0, x.raw_candidates->first, x.raw_candidates->second})));
  }
}

TEST_CASE("X-state formula rejects states outside the pattern") {
  Rng rng(45);
  const DensityMatrix rho = standard(testing::random_density(rng));
  CHECK(code_of([&] { concurrence_xstate(rho); }) == ErrorCode::NotXState);
  CHECK_NOTHROW(concurrence_xstate(rho, false));
  const DensityMatrix dfs(diag({1, 0, 0, 0}), BasisTag::DFS);
  CHECK(code_of([&] { concurrence_xstate(dfs); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("DFS closed forms agree with Wootters along trajectories") {
  const auto times = uniform_times(4.0, 0.1);
  for (double n : {0.0, 0.1, 0.5, 1.0}) {
    const BathParams bath(n);
    for (double eps : {0.1, 0.28, 0.5, 0.9}) {
      const Trajectory t1 = evolve_exact(initial_state(InitialStateSpec::psi1(eps), bath), bath, times);
      const Trajectory t2 = evolve_exact(initial_state(InitialStateSpec::psi2(eps), bath), bath, times);
      for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(std::abs(concurrence_dfs_closed(t1.states[k], bath, DfsFamily::Psi1Family).value -
                       concurrence_wootters(t1.states[k], bath).value) < 1e-12);
        CHECK(std::abs(concurrence_dfs_closed(t2.states[k], bath, DfsFamily::Psi2Family).value -
                       concurrence_wootters(t2.states[k], bath).value) < 1e-12);
      }
    }
  }
}

TEST_CASE("DFS closed forms reject unsupported input") {
  const BathParams bath(0.2);
  const DensityMatrix psi2 = initial_state(InitialStateSpec::psi2(0.4), bath);
  CHECK(code_of([&] { concurrence_dfs_closed(psi2, bath, DfsFamily::Psi1Family); }) ==
        ErrorCode::PatternMismatch);
  CHECK_NOTHROW(concurrence_dfs_closed(psi2, bath, DfsFamily::Psi2Family));
  CHECK(code_of([&] { concurrence_dfs_closed(psi2, BathParams(0.2, 0.5), DfsFamily::Psi2Family); }) ==
        ErrorCode::UnsupportedBath);
  const DensityMatrix std_state = change_basis(psi2, BasisTag::Standard, bath);
  CHECK(code_of([&] { concurrence_dfs_closed(std_state, bath, DfsFamily::Psi2Family); }) ==
        ErrorCode::InvalidArgument);

  // A complex coherence breaks the family pattern.
  ComplexMatrix m = initial_state(InitialStateSpec::psi1(0.6), bath).mat();
  m(0, 3) *= cplx(0.0, 1.0);
  m(3, 0) = std::conj(m(0, 3));
  CHECK(code_of([&] { concurrence_dfs_closed(DensityMatrix(m, BasisTag::DFS), bath, DfsFamily::Psi1Family); }) ==
        ErrorCode::PatternMismatch);
}

TEST_CASE("measure_trajectory reports concurrence and partial-transpose eigenvalue") {
  const BathParams bath(0.0);
  const Trajectory traj =
      evolve_exact(initial_state(InitialStateSpec::phi(2), bath), bath, uniform_times(1.0, 0.5));
  const auto metrics = measure_trajectory(traj);
  REQUIRE(metrics.size() == 3);
  for (const auto& m : metrics) {
    CHECK(m.concurrence == doctest::Approx(1.0));
    CHECK(m.ppt_min_eigenvalue == doctest::Approx(-0.5));
  }
}
