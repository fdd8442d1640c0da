#include "sqbath/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqbath/error.hpp"

namespace sqbath {

namespace {

constexpr double kTraceDriftThreshold = 1e-12;
constexpr double kRk4PositivityFloor = 1e-6;

ComplexMatrix hermitize(const ComplexMatrix& m) {
  ComplexMatrix out = m + m.adjoint();
  out *= 0.5;
  return out;
}

void require_times(std::span<const double> times) {
  if (times.empty()) throw Error(ErrorCode::InvalidSettings, "time grid is empty");
  if (!(times.front() >= 0.0)) throw Error(ErrorCode::InvalidSettings, "times must start at t >= 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw Error(ErrorCode::InvalidSettings, "times must be strictly ascending");
    }
  }
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::RK4: return "rk4";
    case Method::Exact: return "exact";
    case Method::ClosedForm: return "closed";
  }
  return "unknown";
}

double max_stable_step(const BathParams& bath) {
  return 0.01 / (bath.gamma() * (2.0 * bath.n_bar() + 1.0));
}

std::vector<double> uniform_times(double t_max, double step) {
  if (!(step > 0.0) || !(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw Error(ErrorCode::InvalidSettings, "uniform_times needs step > 0 and finite t_max >= 0");
  }
  const auto count = static_cast<std::size_t>(std::floor(t_max / step + 1e-9)) + 1;
  std::vector<double> times(count);
  for (std::size_t k = 0; k < count; ++k) times[k] = static_cast<double>(k) * step;
  return times;
}

Trajectory evolve_rk4(const DensityMatrix& rho0, const BathParams& bath,
                      const PropagatorSettings& settings) {
  if (!(settings.dt > 0.0) || !(settings.t_max > 0.0) || settings.sample_stride < 1) {
    throw Error(ErrorCode::InvalidSettings, "RK4 needs dt > 0, t_max > 0, sample_stride >= 1");
  }
  if (settings.dt > max_stable_step(bath) * (1.0 + 1e-12)) {
    throw Error(ErrorCode::StiffStepRejected,
                "dt = " + std::to_string(settings.dt) + " exceeds 0.01/(gamma(2N+1)) = " +
                    std::to_string(max_stable_step(bath)));
  }

  const auto steps = static_cast<long>(std::ceil(settings.t_max / settings.dt - 1e-9));
  const double h = settings.t_max / static_cast<double>(steps);
  const Liouvillian liou = build_liouvillian(bath, rho0.basis());
  const ComplexMatrix& l = liou.mat;

  Trajectory traj{{}, {}, bath, Method::RK4, 0.0};
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  std::vector<cplx> v = vectorize(rho0.mat());
  std::vector<cplx> tmp(v.size());
  const auto axpy = [&](const std::vector<cplx>& base, double scale, const std::vector<cplx>& k) {
    for (std::size_t i = 0; i < base.size(); ++i) tmp[i] = base[i] + scale * k[i];
    return tmp;
  };

  for (long step = 1; step <= steps; ++step) {
    const auto k1 = l * std::span<const cplx>(v);
    const auto k2 = l * std::span<const cplx>(axpy(v, 0.5 * h, k1));
    const auto k3 = l * std::span<const cplx>(axpy(v, 0.5 * h, k2));
    const auto k4 = l * std::span<const cplx>(axpy(v, h, k3));
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }

    if (step % settings.sample_stride != 0 && step != steps) continue;

    ComplexMatrix sample = hermitize(unvectorize(v));
    const double tr = sample.trace().real();
    const double drift = std::abs(tr - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (drift > kTraceDriftThreshold) sample *= 1.0 / tr;

    const double t = static_cast<double>(step) * h;
    const double min_eig = herm_eigenvalues(sample).front();
    if (min_eig < -kRk4PositivityFloor) {
      throw Error(ErrorCode::PositivityLost,
                  "RK4 sample at t = " + std::to_string(t) + " has eigenvalue " + std::to_string(min_eig));
    }
    traj.times.push_back(t);
    traj.states.emplace_back(std::move(sample), rho0.basis(), kRk4PositivityFloor);
  }
  return traj;
}

ExactPropagator::ExactPropagator(const DensityMatrix& rho0, const BathParams& bath)
    : liouvillian_(build_liouvillian(bath, rho0.basis())), rho0_vec_(vectorize(rho0.mat())) {}

ComplexMatrix ExactPropagator::matrix_at(double t) const {
  const ComplexMatrix prop = matrix_exp(liouvillian_.mat, t);
  return unvectorize(prop * std::span<const cplx>(rho0_vec_));
}

DensityMatrix ExactPropagator::state_at(double t) const {
  return DensityMatrix(hermitize(matrix_at(t)), liouvillian_.basis);
}

Trajectory evolve_exact(const DensityMatrix& rho0, const BathParams& bath,
                        std::span<const double> times) {
  require_times(times);
  const Liouvillian liou = build_liouvillian(bath, rho0.basis());

  Trajectory traj{{}, {}, bath, Method::Exact, 0.0};
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());

  std::vector<cplx> v = vectorize(rho0.mat());
  double prev_t = 0.0;
  double cached_step = -1.0;
  ComplexMatrix step_prop(16);
  for (const double t : times) {
    const double dt = t - prev_t;
    if (dt > 0.0) {
      if (std::abs(dt - cached_step) > 1e-12 * std::max(1.0, dt)) {
        step_prop = matrix_exp(liou.mat, dt);
        cached_step = dt;
      }
      v = step_prop * std::span<const cplx>(v);
    }
    prev_t = t;
    if (dt == 0.0 && t == 0.0) {
      traj.states.push_back(rho0);
    } else {
      traj.states.emplace_back(hermitize(unvectorize(v)), rho0.basis());
    }
  }
  return traj;
}

DensityMatrix closed_form_special(const InitialStateSpec& spec, const BathParams& bath, double t) {
  if (spec.kind == InitialKind::Custom) {
    throw Error(ErrorCode::UnsupportedSpec, "closed forms exist only for phi1..phi4, psi1, psi2");
  }
  if (bath.n_bar() != 0.0) {
    throw Error(ErrorCode::UnsupportedBath, "closed forms are for N = 0 only");
  }
  if (!(t >= 0.0)) throw Error(ErrorCode::InvalidArgument, "closed form needs t >= 0");
  const double tau = bath.gamma() * t;
  const double e2t = std::exp(2.0 * tau);
  const double em2t = std::exp(-2.0 * tau);

  ComplexMatrix rho(4);
  switch (spec.kind) {
    case InitialKind::Phi1:
      rho(0, 0) = 1.0;
      break;
    case InitialKind::Phi2:
      rho(1, 1) = 1.0;
      break;
    case InitialKind::Phi3:
      rho(0, 0) = (e2t - 1.0) * em2t;
      rho(2, 2) = em2t;
      break;
    case InitialKind::Phi4:
      rho(0, 0) = (-1.0 - 2.0 * tau + e2t) * em2t;
      rho(2, 2) = 2.0 * tau * em2t;
      rho(3, 3) = em2t;
      break;
    case InitialKind::Psi1: {
      const double eps = initial_ket_dfs(spec)[0].real();
      const double eps2 = eps * eps;
      const double coh = eps * std::sqrt(1.0 - eps2) / std::exp(tau);
      rho(0, 0) = (-2.0 * tau - 1.0 + 2.0 * tau * eps2 + eps2 + e2t) / e2t;
      rho(0, 3) = coh;
      rho(3, 0) = coh;
      rho(2, 2) = 2.0 * tau * (1.0 - eps2) / e2t;
      rho(3, 3) = (1.0 - eps2) / e2t;
      break;
    }
    case InitialKind::Psi2: {
      const double eps = initial_ket_dfs(spec)[1].real();
      const double eps2 = eps * eps;
      const double coh = eps * std::sqrt(1.0 - eps2) / std::exp(tau);
      rho(0, 0) = (e2t - eps2 * e2t - 1.0 + eps2) / e2t;
      rho(1, 1) = eps2;
      rho(1, 2) = coh;
      rho(2, 1) = coh;
      rho(2, 2) = (1.0 - eps2) / e2t;
      break;
    }
    case InitialKind::Custom:
      break;
  }
  return DensityMatrix(std::move(rho), BasisTag::DFS);
}

Trajectory evolve_closed_form(const InitialStateSpec& spec, const BathParams& bath,
                              std::span<const double> times) {
  require_times(times);
  Trajectory traj{{}, {}, bath, Method::ClosedForm, 0.0};
  traj.times.assign(times.begin(), times.end());
  traj.states.reserve(times.size());
  for (const double t : times) traj.states.push_back(closed_form_special(spec, bath, t));
  return traj;
}

}  // namespace sqbath
