#pragma once

// Dense complex linear algebra for the 4x4 density matrices and 16x16
// superoperators used throughout the library.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sqbath {

using cplx = std::complex<double>;

/// Square complex matrix, row-major. Dimension is 4 (states and operators),
/// 8 (Hermitian embeddings for singular values) or 16 (superoperators);
/// entries are finite on construction.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  cplx& operator()(std::size_t row, std::size_t col) noexcept { return data_[row * dim_ + col]; }
  const cplx& operator()(std::size_t row, std::size_t col) const noexcept {
    return data_[row * dim_ + col];
  }

  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;

  cplx trace() const noexcept;
  double frobenius_norm() const noexcept;
  double one_norm() const noexcept;
  double max_abs() const noexcept;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx scale) noexcept;

 private:
  std::size_t dim_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx scale, ComplexMatrix m);
std::vector<cplx> operator*(const ComplexMatrix& m, std::span<const cplx> v);

/// Kronecker product; only 4x4 (x) 4x4 -> 16x16 is meaningful here.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Column-stacking vectorization: vec(A)[i + n*j] = A(i, j).
/// With this convention vec(A X B) = (B^T (x) A) vec(X).
std::vector<cplx> vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(std::span<const cplx> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||A - A^dagger||_F / max(1, ||A||_F).
double hermiticity_defect(const ComplexMatrix& m);

struct HermitianEigenResult {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagonalTolerance = 1e-14;

/// Cyclic complex Jacobi eigensolver.
/// Throws NotHermitian when hermiticity_defect(a) > 1e-10 and NoConvergence
/// when the off-diagonal norm is not below 1e-14 ||A||_F after 100 sweeps.
HermitianEigenResult herm_eig(const ComplexMatrix& a);

/// Eigenvalues only, ascending.
std::vector<double> herm_eigenvalues(const ComplexMatrix& a);

inline constexpr double kPsdClampTolerance = 1e-10;
inline constexpr double kPsdRejectTolerance = 1e-8;

/// Principal square root of a Hermitian positive semidefinite matrix.
/// Eigenvalues in [-1e-8, 0) are treated as zero; anything more negative
/// throws NotPSD.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& a);

/// exp(t A) by scaling and squaring around a degree-18 Taylor core.
ComplexMatrix matrix_exp(const ComplexMatrix& a, double t);

}  // namespace sqbath
