#pragma once

#include <vector>

#include "cplab/complex_matrix.hpp"

namespace cplab {

/// Orthonormal traceless operators F_1..F_{d^2-1} on C^d. The identity
/// 1_d / sqrt(d) completes them to an orthonormal basis of M_d(C).
class OperatorBasis {
 public:
  /// Checks shapes only (ShapeMismatch / InvalidDimension); orthonormality is
  /// reported by validate_basis and enforced by require_valid_basis.
  OperatorBasis(std::size_t dim, std::vector<ComplexMatrix> elements);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const ComplexMatrix& operator[](std::size_t a) const { return elements_[a]; }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }

  bool all_hermitian(double tol = 1e-10) const;

  /// Tr(F_a^dagger K) for every a.
  ComplexVector coefficients(const ComplexMatrix& k) const;
  /// sum_a c_a F_a
  ComplexMatrix combine(std::span<const cplx> coeffs) const;

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> elements_;
};

/// Generalised Gell-Mann matrices at unit Hilbert-Schmidt norm: the symmetric
/// family for j < k first, then the antisymmetric family, then the diagonal
/// ones. For d = 2 this is {sigma_x, sigma_y, sigma_z} / sqrt(2).
OperatorBasis standard_basis(std::size_t d);

struct BasisReport {
  double max_trace_deviation = 0.0;  // max_a |Tr F_a|
  double max_gram_deviation = 0.0;   // max_ab |Tr(F_a^dagger F_b) - delta_ab|
  bool pass = false;
};

BasisReport validate_basis(const OperatorBasis& basis, double tol = 1e-10);

/// Throws InvalidBasis if validate_basis fails.
void require_valid_basis(const OperatorBasis& basis, double tol = 1e-10);

}  // namespace cplab
