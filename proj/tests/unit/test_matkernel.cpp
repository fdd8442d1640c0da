#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sqbath/error.hpp"
#include "sqbath/matkernel.hpp"
#include "test_support.hpp"

using namespace sqbath;
using sqbath::testing::Rng;

namespace {

ComplexMatrix diag(std::initializer_list<double> values) {
  std::vector<double> v(values);
  return ComplexMatrix::diagonal(v);
}

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

cplx det4(const ComplexMatrix& a) {
  // Laplace expansion along the first row.
  const auto minor3 = [&](std::size_t skip) {
    std::array<std::size_t, 3> cols{};
    for (std::size_t c = 0, k = 0; c < 4; ++c)
      if (c != skip) cols[k++] = c;
    const auto m = [&](std::size_t r, std::size_t c) { return a(r + 1, cols[c]); };
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  };
  cplx d{};
  for (std::size_t c = 0; c < 4; ++c) d += (c % 2 ? -1.0 : 1.0) * a(0, c) * minor3(c);
  return d;
}

}  // namespace

TEST_CASE("herm_eig on trivial spectra") {
  auto ev = herm_eigenvalues(ComplexMatrix::identity(4));
  for (double x : ev) CHECK(x == doctest::Approx(1.0).epsilon(1e-15));

  ev = herm_eigenvalues(diag({0.5, 0.25, 0.0, 0.25}));
  const std::vector<double> expected{0.0, 0.25, 0.25, 0.5};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ev[k] - expected[k]) < 1e-15);
}

TEST_CASE("herm_eig on the phi3 state at t = ln 2") {
  // DFS-basis diagonal (3/4, 0, 1/4, 0).
  const auto ev = herm_eigenvalues(diag({0.75, 0.0, 0.25, 0.0}));
  const std::vector<double> expected{0.0, 0.0, 0.25, 0.75};
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(ev[k] - expected[k]) < 1e-15);
}

TEST_CASE("herm_eig reconstructs random Hermitian matrices") {
  Rng rng(11);
  for (std::size_t dim : {4UL, 8UL, 16UL}) {
    for (int trial = 0; trial < 20; ++trial) {
      const ComplexMatrix a = testing::random_hermitian(rng, dim);
      const HermitianEigenResult r = herm_eig(a);
      const ComplexMatrix& v = r.eigenvectors;
      CHECK(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(dim)) < 1e-12);
      const ComplexMatrix rebuilt = v * ComplexMatrix::diagonal(r.eigenvalues) * v.adjoint();
      CHECK(max_abs_diff(rebuilt, a) < 1e-12);
      for (std::size_t k = 1; k < dim; ++k) CHECK(r.eigenvalues[k - 1] <= r.eigenvalues[k]);
    }
  }
}

TEST_CASE("herm_eig agrees with the characteristic polynomial invariants") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = testing::random_hermitian(rng, 4);
    const auto ev = herm_eigenvalues(a);
    ComplexMatrix power = ComplexMatrix::identity(4);
    for (int k = 1; k <= 4; ++k) {
      power = power * a;
      double sum = 0.0;
      for (double x : ev) sum += std::pow(x, k);
      CHECK(std::abs(power.trace().real() - sum) < 1e-11 * std::max(1.0, std::abs(sum)));
    }
    CHECK(std::abs(det4(a).real() - ev[0] * ev[1] * ev[2] * ev[3]) < 1e-11);
  }
}

TEST_CASE("herm_eig rejects bad input") {
  ComplexMatrix a = ComplexMatrix::identity(4);
  a(0, 1) = 0.5;
  CHECK(code_of([&] { herm_eig(a); }) == ErrorCode::NotHermitian);
  CHECK(code_of([] { ComplexMatrix bad(5); }) == ErrorCode::DimensionMismatch);
  std::vector<cplx> data(16, cplx{});
  data[3] = cplx(NAN, 0.0);
  CHECK(code_of([&] { ComplexMatrix bad(4, data); }) == ErrorCode::NonFinite);
}

TEST_CASE("matrix_sqrt_psd on exact cases") {
  CHECK(max_abs_diff(matrix_sqrt_psd(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-15);
  CHECK(max_abs_diff(matrix_sqrt_psd(diag({4, 1, 0, 0})), diag({2, 1, 0, 0})) < 1e-15);
  const ComplexMatrix bell = testing::ket_projector(testing::bell_phi_plus());
  CHECK(max_abs_diff(matrix_sqrt_psd(bell), bell) < 1e-14);
}

TEST_CASE("matrix_sqrt_psd squares back") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix rho = testing::random_density(rng, 1 + trial % 4);
    // Zero eigenvalues of rho^2 carry roundoff of order 1e-17, whose square root is ~3e-9.
    const ComplexMatrix b = matrix_sqrt_psd(rho * rho);
    CHECK(max_abs_diff(b, rho) < (trial % 4 == 3 ? 1e-10 : 1e-7));
    const ComplexMatrix root = matrix_sqrt_psd(rho);
    CHECK(max_abs_diff(root * root, rho) < 1e-12);
  }
}

TEST_CASE("matrix_sqrt_psd clamps roundoff and rejects real negativity") {
  CHECK(max_abs_diff(matrix_sqrt_psd(diag({1, -1e-12, 0, 0})), diag({1, 0, 0, 0})) < 1e-15);
  CHECK(code_of([] { matrix_sqrt_psd(diag({1, -1e-6, 0, 0})); }) == ErrorCode::NotPSD);
}

TEST_CASE("matrix_exp on exact cases") {
  CHECK(max_abs_diff(matrix_exp(ComplexMatrix(16), 3.0), ComplexMatrix::identity(16)) == 0.0);
  const ComplexMatrix e = matrix_exp(diag({-2, -1, 0, 0}), 1.0);
  CHECK(std::abs(e(0, 0) - std::exp(-2.0)) < 1e-15);
  CHECK(std::abs(e(1, 1) - std::exp(-1.0)) < 1e-15);
  CHECK(std::abs(e(2, 2) - 1.0) < 1e-15);
  CHECK(std::abs(e(0, 1)) == 0.0);
}

TEST_CASE("matrix_exp matches the spectral exponential of Hermitian matrices") {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix h = testing::random_hermitian(rng, 4);
    const HermitianEigenResult r = herm_eig(h);
    std::vector<double> decay(4);
    const double t = 0.3 + 2.0 * rng.unit();
    ComplexMatrix d(4);
    for (std::size_t k = 0; k < 4; ++k) d(k, k) = std::exp(-r.eigenvalues[k] * t);
    const ComplexMatrix expected = r.eigenvectors * d * r.eigenvectors.adjoint();
    const ComplexMatrix got = matrix_exp(-1.0 * h, t);
    CHECK(max_abs_diff(got, expected) < 1e-12 * std::max(1.0, expected.max_abs()));
  }
}

TEST_CASE("matrix_exp semigroup and unitarity") {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix a = testing::random_matrix(rng, 16);
    const double s = rng.unit(), t = rng.unit();
    const ComplexMatrix lhs = matrix_exp(a, s + t);
    const ComplexMatrix rhs = matrix_exp(a, s) * matrix_exp(a, t);
    CHECK(max_abs_diff(lhs, rhs) < 1e-11 * lhs.max_abs());

    const ComplexMatrix h = testing::random_hermitian(rng, 4);
    const ComplexMatrix u = matrix_exp(cplx(0.0, 1.0) * h, 5.0);
    CHECK(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(4)) < 1e-12);
  }
}

TEST_CASE("vectorize is column stacking and matches kron identities") {
  Rng rng(16);
  const ComplexMatrix a = testing::random_matrix(rng, 4);
  const ComplexMatrix x = testing::random_matrix(rng, 4);
  const ComplexMatrix b = testing::random_matrix(rng, 4);
  const auto v = vectorize(x);
  CHECK(v[1] == x(1, 0));
  CHECK(v[4] == x(0, 1));
  CHECK(max_abs_diff(unvectorize(v), x) == 0.0);
  // vec(A X B) = (B^T (x) A) vec(X)
  const auto lhs = vectorize(a * x * b);
  const auto rhs = kron(b.transpose(), a) * std::span<const cplx>(v);
  double worst = 0.0;
  for (std::size_t k = 0; k < 16; ++k) worst = std::max(worst, std::abs(lhs[k] - rhs[k]));
  CHECK(worst < 1e-13);
}
