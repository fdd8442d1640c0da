#include "sqbath/matkernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sqbath/error.hpp"

namespace sqbath {

namespace {

void require_supported_dim(std::size_t dim) {
  if (dim != 4 && dim != 8 && dim != 16) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix dimension must be 4, 8 or 16, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operand dimensions differ");
  }
}

constexpr int kTaylorDegree = 18;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, cplx{}) {
  require_supported_dim(dim);
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  require_supported_dim(dim);
  if (data_.size() != dim * dim) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(dim * dim) +
                                                  " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix has NaN or Inf entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw Error(ErrorCode::NonFinite, "non-finite diagonal entry");
    m(i, i) = values[i];
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out(*this);
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

cplx ComplexMatrix::trace() const noexcept {
  cplx sum{};
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const noexcept {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

double ComplexMatrix::one_norm() const noexcept {
  double best = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) col += std::abs((*this)(i, j));
    best = std::max(best, col);
  }
  return best;
}

double ComplexMatrix::max_abs() const noexcept {
  double best = 0.0;
  for (const auto& z : data_) best = std::max(best, std::abs(z));
  return best;
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) noexcept {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cplx scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  require_same_dim(lhs, rhs);
  const std::size_t n = lhs.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

std::vector<cplx> operator*(const ComplexMatrix& m, std::span<const cplx> v) {
  const std::size_t n = m.dim();
  if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

std::vector<cplx> vectorize(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<cplx> v(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) v[i + n * j] = m(i, j);
  return v;
}

ComplexMatrix unvectorize(std::span<const cplx> v) {
  const auto n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw Error(ErrorCode::DimensionMismatch, "vector length is not square");
  ComplexMatrix m(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) m(i, j) = v[i + n * j];
  return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  double best = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    best = std::max(best, std::abs(a.data()[k] - b.data()[k]));
  return best;
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).frobenius_norm() / std::max(1.0, m.frobenius_norm());
}

HermitianEigenResult herm_eig(const ComplexMatrix& input) {
  if (!input.all_finite()) throw Error(ErrorCode::NonFinite, "herm_eig input has NaN or Inf");
  if (hermiticity_defect(input) > kHermitianTolerance) {
    throw Error(ErrorCode::NotHermitian, "herm_eig input is not Hermitian");
  }
  const std::size_t n = input.dim();
  ComplexMatrix a = input + input.adjoint();
  a *= 0.5;
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double tol = kJacobiOffDiagonalTolerance * a.frobenius_norm();
  bool converged = false;
  for (int sweep = 0; sweep <= kJacobiMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) off += std::norm(a(p, q));
    off = std::sqrt(off);
    if (off <= tol) {
      converged = true;
      break;
    }
    if (sweep == kJacobiMaxSweeps) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx phase_c = std::conj(phase);

        // A <- A G, V <- V G with G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = c * akp - s * phase_c * akq;
          a(k, q) = s * akp + c * phase_c * akq;
          const cplx vkp = v(k, p);
          const cplx vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_c * vkq;
          v(k, q) = s * vkp + c * phase_c * vkq;
        }
        // A <- G^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
      }
    }
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence, "Jacobi eigensolver exceeded the sweep cap");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigenResult result{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = v(i, order[k]);
  }
  return result;
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& a) { return herm_eig(a).eigenvalues; }

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a) {
  const auto eig = herm_eig(a);
  const std::size_t n = a.dim();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lambda = eig.eigenvalues[k];
    if (lambda < -kPsdRejectTolerance) {
      throw Error(ErrorCode::NotPSD, "eigenvalue " + std::to_string(lambda) + " is negative");
    }
    roots[k] = lambda > 0.0 ? std::sqrt(lambda) : 0.0;
  }
  ComplexMatrix out(n);
  const auto& v = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      cplx acc{};
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * roots[k] * std::conj(v(j, k));
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
    out(i, i) = out(i, i).real();
  }
  return out;
}

ComplexMatrix matrix_exp(const ComplexMatrix& a, double t) {
  if (!std::isfinite(t) || !a.all_finite()) {
    throw Error(ErrorCode::NonFinite, "matrix_exp received non-finite input");
  }
  const std::size_t n = a.dim();
  ComplexMatrix x = t * a;
  const double norm = x.one_norm();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  x *= std::ldexp(1.0, -squarings);

  // Horner: I + X (I + X/2 (I + X/3 (...))).
  const ComplexMatrix id = ComplexMatrix::identity(n);
  ComplexMatrix result = id;
  for (int k = kTaylorDegree; k >= 1; --k) {
    result = x * result;
    result *= 1.0 / k;
    result += id;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

}  // namespace sqbath
