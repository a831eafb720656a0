#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the code paths being checked beyond ComplexMatrix element access.

#include <cmath>
#include <complex>
#include <vector>

#include "cplab/complex_matrix.hpp"
#include "cplab/operator_basis.hpp"

namespace oracle {

using cplab::ComplexMatrix;
using cplab::ComplexVector;
using cplab::cplx;

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cplx s{};
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = std::conj(a(i, j));
  return r;
}

inline ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b, cplx s = 1.0) {
  ComplexMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += s * b(i, j);
  return r;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

inline double frob_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - b(i, j));
  return std::sqrt(s);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

/// The GKS generator evaluated term by term, one (a, b) pair at a time.
inline ComplexMatrix gks_term_by_term(const ComplexMatrix& h, const ComplexMatrix& c, const cplab::OperatorBasis& f,
                                      const ComplexMatrix& rho) {
  const cplx minus_i{0.0, -1.0};
  ComplexMatrix out = add(matmul(h, rho), matmul(rho, h), -1.0);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) *= minus_i;
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (c(a, b) == cplx{}) continue;
      const ComplexMatrix fbd = dagger(f[b]);
      const ComplexMatrix jump = matmul(matmul(f[a], rho), fbd);
      const ComplexMatrix k = matmul(fbd, f[a]);
      const ComplexMatrix anti = add(matmul(k, rho), matmul(rho, k));
      out = add(out, add(jump, anti, -0.5), c(a, b));
    }
  return out;
}

/// Truncated Taylor series with scaling and squaring; independent of the Pade route.
inline ComplexMatrix exp_taylor(const ComplexMatrix& m, int terms = 30) {
  double norm = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) norm += std::norm(m(i, j));
  norm = std::sqrt(norm);
  int s = 0;
  while (norm > 0.5) {
    norm /= 2.0;
    ++s;
  }
  ComplexMatrix a = m;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = std::ldexp(1.0, -s) * m(i, j);
  ComplexMatrix sum = ComplexMatrix::identity(m.rows());
  ComplexMatrix term = ComplexMatrix::identity(m.rows());
  for (int k = 1; k <= terms; ++k) {
    term = matmul(term, a);
    for (std::size_t i = 0; i < term.rows(); ++i)
      for (std::size_t j = 0; j < term.cols(); ++j) term(i, j) /= static_cast<double>(k);
    sum = add(sum, term);
  }
  for (int k = 0; k < s; ++k) sum = matmul(sum, sum);
  return sum;
}

/// <x|A|x>
inline cplx expectation(const ComplexVector& x, const ComplexMatrix& a) {
  cplx s{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::conj(x[i]) * a(i, j) * x[j];
  return s;
}

/// Pauli matrices.
inline ComplexMatrix sx() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix sy() { return ComplexMatrix{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}}; }
inline ComplexMatrix sz() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }

}  // namespace oracle
