#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cplab {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense complex matrix, row-major. Carrier for states, Hamiltonians, basis
/// operators and superoperator matrices alike.
class ComplexMatrix {
 public:
  /// 1x1 zero.
  ComplexMatrix() : ComplexMatrix(1, 1) {}
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws ShapeMismatch if entries.size() != rows*cols, NonFinite on NaN/Inf.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }
  static ComplexMatrix diagonal(std::span<const cplx> diag);
  /// |v><u| for column vectors v, u.
  static ComplexMatrix outer(std::span<const cplx> v, std::span<const cplx> u);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);
  /// this += s * other
  ComplexMatrix& add_scaled(cplx s, const ComplexMatrix& other);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<cplx> data_;
};

/// Matrix-vector product.
ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hilbert-Schmidt inner product Tr(a^dagger b).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// <x|y>
cplx inner(std::span<const cplx> x, std::span<const cplx> y);
double norm(std::span<const cplx> x);

/// Column-stacking vectorisation: vec(A)[i + j*rows] = A(i, j).
ComplexVector vec(const ComplexMatrix& a);
ComplexMatrix unvec(std::span<const cplx> v, std::size_t rows, std::size_t cols);

/// Row-major flattening: the coefficients of sum_jk M(j,k) |j>|k> in C^r (x) C^c.
ComplexVector flatten(const ComplexMatrix& m);
ComplexMatrix unflatten(std::span<const cplx> v, std::size_t rows, std::size_t cols);

/// Relative deviation used by all Hermiticity checks: ||M - M^dagger||_F.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double rel_tol);

}  // namespace cplab
