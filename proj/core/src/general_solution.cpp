// General N > 0 solution of the squeezed-bath master equation in the DFS
// basis, entry by entry as printed. Several expressions do not reproduce
// rho(0) at t = 0; they are evaluated as written and the gate reports how far
// each entry is from e^{Lt}.

#include <algorithm>
#include <cmath>
#include <string>

#include "sqbath/dynamics.hpp"
#include "sqbath/error.hpp"

namespace sqbath {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Coefficients {
  double n, sqrt_n, sqrt_n1, m, k, q, r2;
  double rate_plus, rate_minus;  // 2(sqrt N +- sqrt(N+1))^2
  double cubic, quad;            // 24N^3+36N^2+10N-1, 12N^2+12N-1
  cplx eip;                      // e^{i psi}
  cplx emip;
};

Coefficients coefficients(const BathParams& bath) {
  Coefficients c{};
  c.n = bath.n_bar();
  c.sqrt_n = std::sqrt(c.n);
  c.sqrt_n1 = std::sqrt(c.n + 1.0);
  c.m = std::sqrt(c.n * (c.n + 1.0));
  c.k = 2.0 * c.n + 1.0;
  c.q = std::sqrt(2.0 * c.n * c.n + c.n);
  c.r2 = std::sqrt(2.0 * c.n + 1.0);
  c.rate_plus = 2.0 * (c.sqrt_n + c.sqrt_n1) * (c.sqrt_n + c.sqrt_n1);
  c.rate_minus = 2.0 * (c.sqrt_n - c.sqrt_n1) * (c.sqrt_n - c.sqrt_n1);
  c.cubic = 24.0 * c.n * c.n * c.n + 36.0 * c.n * c.n + 10.0 * c.n - 1.0;
  c.quad = 12.0 * c.n * c.n + 12.0 * c.n - 1.0;
  c.eip = std::polar(1.0, bath.psi());
  c.emip = std::conj(c.eip);
  return c;
}

}  // namespace

GeneralSolutionResult closed_form_general(const DensityMatrix& rho0_in, const BathParams& bath, double t,
                                    bool validate) {
  if (!(bath.n_bar() > 0.0)) {
    throw Error(ErrorCode::SingularBath, "general solution needs N > 0 (contains 1/sqrt(N))");
  }
  const DensityMatrix rho0 = change_basis(rho0_in, BasisTag::DFS, bath);
  const auto p = [&](int i, int j) { return rho0(i - 1, j - 1); };
  const Coefficients c = coefficients(bath);
  const double n = c.n;
  const double half = n + 0.5;  // N + 1/2
  const double e_k = std::exp(-c.k * t);
  const double e_plus = std::exp(-c.rate_plus * t);
  const double e_minus = std::exp(-c.rate_minus * t);
  const cplx p11 = p(1, 1), p33 = p(3, 3), p44 = p(4, 4);
  const cplx p34 = p(3, 4), p43 = p(4, 3);

  ComplexMatrix r(4);
  const auto set = [&](int i, int j, cplx value) { r(i - 1, j - 1) = value; };

  {
    const cplx s = p44 + p33;
    const double root = std::sqrt(n * (n + 1.0) / 4.0);
    const cplx fast = ((-c.k * s * root + s) * n * n + s * n + 0.25 * p44) * e_plus;
    const cplx slow = ((-c.k * s * root - s) * n * n - s * n - 0.25 * p44) * e_minus;
    const cplx steady = c.k * (p44 + p33 + p11) * c.m;
    set(1, 1, 4.0 / (c.m * (8.0 * n + 4.0)) * (fast + slow + steady));
  }

  set(1, 2, p(1, 2));

  {
    const double a = n * c.sqrt_n1 + 0.25 * c.r2 * c.q;
    const double b = n * c.sqrt_n1 - 0.25 * c.r2 * c.q;
    const double x1 = t * (-c.q * c.k + 4.0 * n * c.sqrt_n1 * c.r2) / c.q;
    const double x2 = -t * (c.q * c.k + 4.0 * n * c.sqrt_n1 * c.r2) / c.q;
    const cplx bracket =
        -(2.0 / 3.0) * half * a * (p43 - c.eip * p34) * std::exp(x1) -
        (2.0 / 3.0) * half * b * (c.eip * p34 + p43) * std::exp(x2) +
        (-(1.0 / 3.0) * half * p34 * c.eip + p(1, 3) * (n * n + n - 1.0 / 12.0)) * c.r2 * c.q +
        (4.0 / 3.0) * half * c.sqrt_n1 * p43;
    set(1, 3, 12.0 * e_k / (c.sqrt_n * c.cubic) * bracket);
  }

  {
    const cplx w = 2.0 * p44 + p33;
    const cplx v = 0.5 * p44 + p33;
    const cplx fast = std::exp(-(c.k + 4.0 * c.m) * t) *
                      (-0.5 * half * w * c.m + v * (n * n + n) + 0.125 * p44);
    const cplx slow = std::exp(-(c.k - 4.0 * c.m) * t) *
                      (0.5 * half * w * c.m + v * (n * n + n) + 0.125 * p44);
    const cplx steady = 1.5 * (c.r2 * p(1, 4) * (n * n + n - 1.0 / 12.0) * c.q +
                               (2.0 / 3.0) * half * w * n * c.sqrt_n1);
    set(1, 4, 8.0 * e_k / (c.k * c.quad) * (fast - slow + steady));
  }

  set(2, 1, p(2, 1));
  set(2, 2, p(2, 2));
  set(2, 3, p(2, 3) * e_k);
  set(2, 4, p(2, 4) * e_k);

  {
    const double a = n * c.sqrt_n1 - 0.25 * c.r2 * c.q;
    const double b = n * c.sqrt_n1 + 0.25 * c.r2 * c.q;
    const cplx x1 = (-(c.k * t + kI * bath.psi()) * c.q + 4.0 * t * n * c.sqrt_n1 * c.r2) / c.q;
    const cplx x2 = (-(c.k * t + kI * bath.psi()) * c.q - 4.0 * t * n * c.sqrt_n1 * c.r2) / c.q;
    const cplx bracket =
        a * half * (c.eip * p34 + p43) * std::exp(x1) +
        c.eip * half * b * (c.eip * p34 - p43) * std::exp(x2) -
        (2.0 / 3.0) * c.r2 * c.q *
            (p(3, 1) * c.eip * (n * n + n - 0.5) - (1.0 / 3.0) * half * p43) -
        c.k * n * c.sqrt_n1 * p34 * c.eip;
    set(3, 1, -8.0 * c.emip * e_k / (c.sqrt_n * c.cubic) * bracket);
  }

  set(3, 2, p(3, 2) * e_k);
  set(3, 3, 0.5 * (e_minus * (p33 + p44) * (n + 1.0) / c.m +
                   e_plus * (p33 - p44) * (n + 1.0) / c.m));
  set(3, 4, 0.5 * (p34 - c.emip * p43) * e_minus + 0.5 * (p34 + c.emip * p43) * e_plus);

  {
    const cplx w = 0.5 * p33 + p44;
    const cplx v = 2.0 * p33 + p44;
    const double pre = (1.0 / 3.0) * n * c.sqrt_n1;
    const cplx fast = pre * (-0.5 * half * w * c.m + v * (n * n + n) + 0.25 * p44) *
                      std::exp(-(c.k + 4.0 * c.m) * t);
    const cplx slow = pre * (c.k * w * c.m + v * (n * n + n) + 0.25 * p44) * n *
                      std::exp(-(c.k - 4.0 * c.m) * t);
    const cplx steady = c.m * (c.r2 * p(4, 1) * (n * n - 1.0 / 12.0 + n) * c.q +
                               (4.0 / 3.0) * half * n * c.sqrt_n1 * n * w);
    set(4, 1, 12.0 * e_k / (n * c.sqrt_n1 * c.k * c.quad) * (fast - slow + steady));
  }

  set(4, 2, p(4, 2) * e_k);
  set(4, 3, 0.5 * (p43 - c.eip * p34) * e_minus + 0.5 * (p43 + c.eip * p34) * e_plus);
  set(4, 4, (0.5 * p44 - c.m / c.k * p33) * e_plus + (0.5 * p44 + c.m / c.k * p33) * e_minus);

  GeneralSolutionResult result;
  result.rho = std::move(r);
  if (validate) {
    const ComplexMatrix exact = ExactPropagator(rho0, bath).matrix_at(t);
    result.validation_ran = true;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        const double dev = std::abs(result.rho(i, j) - exact(i, j));
        result.entry_deviation[i * 4 + j] = std::isfinite(dev) ? dev : INFINITY;
        result.max_deviation = std::max(result.max_deviation, result.entry_deviation[i * 4 + j]);
      }
    }
    result.validated = result.max_deviation <= kGeneralSolutionTolerance;
  }
  return result;
}

const ComplexMatrix& require_validated(const GeneralSolutionResult& result) {
  if (!result.validation_ran) {
    throw ValidationError("general solution was not validated against e^{Lt}", INFINITY);
  }
  if (!result.validated) {
    throw ValidationError("general solution deviates from e^{Lt} by " +
                              std::to_string(result.max_deviation),
                          result.max_deviation);
  }
  return result.rho;
}

}  // namespace sqbath
