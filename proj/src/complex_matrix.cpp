#include "cplab/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cplab/error.hpp"
#include "cplab/kernels.hpp"

namespace cplab {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::ShapeMismatch, "expected " + std::to_string(rows * cols) + " entries, got " +
                                              std::to_string(data_.size()));
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive");
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged initializer list");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> v, std::span<const cplx> u) {
  ComplexMatrix m(v.size(), u.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) m(i, j) = v[i] * std::conj(u[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r = *this;
  for (auto& z : r.data_) z = std::conj(z);
  return r;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorCode::NonSquare, "trace of a non-square matrix");
  cplx t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const { return std::sqrt(kernels::norm_sq(data_)); }

bool ComplexMatrix::all_finite() const noexcept {
  for (const auto& z : data_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, std::string(op) + ": " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                              std::to_string(b.cols()));
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+");
  kernels::axpy(1.0, other.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-");
  kernels::axpy(-1.0, other.data_, data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix& ComplexMatrix::add_scaled(cplx s, const ComplexMatrix& other) {
  require_same_shape(*this, other, "add_scaled");
  kernels::axpy(s, other.data_, data_);
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                              " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix c(a.rows(), b.cols());
  kernels::gemm(a.rows(), b.cols(), a.cols(), a.data(), b.data(), c.data());
  return c;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.cols() != v.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector product size mismatch");
  ComplexVector out(a.rows());
  kernels::gemm(a.rows(), 1, a.cols(), a.data(), v, out);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = s * b(k, l);
    }
  return r;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b + b * a; }

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "hs_inner");
  return kernels::dotc(a.data(), b.data());
}

cplx inner(std::span<const cplx> x, std::span<const cplx> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::ShapeMismatch, "inner product of vectors of different length");
  return kernels::dotc(x, y);
}

double norm(std::span<const cplx> x) { return std::sqrt(kernels::norm_sq(x)); }

ComplexVector vec(const ComplexMatrix& a) {
  ComplexVector v(a.size());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v[i + j * a.rows()] = a(i, j);
  return v;
}

ComplexMatrix unvec(std::span<const cplx> v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) throw Error(ErrorCode::ShapeMismatch, "unvec: length does not match shape");
  ComplexMatrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = v[i + j * rows];
  return a;
}

ComplexVector flatten(const ComplexMatrix& m) { return ComplexVector(m.data().begin(), m.data().end()); }

ComplexMatrix unflatten(std::span<const cplx> v, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, ComplexVector(v.begin(), v.end()));
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::NonSquare, "Hermiticity check on a non-square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& m, double rel_tol) {
  return hermiticity_defect(m) <= rel_tol * std::max(1.0, m.frobenius_norm());
}

}  // namespace cplab
