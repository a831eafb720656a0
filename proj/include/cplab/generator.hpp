#pragma once

#include <vector>

#include "cplab/complex_matrix.hpp"
#include "cplab/linalg.hpp"
#include "cplab/operator_basis.hpp"

namespace cplab {

/// Generator in GKS form
///   L[rho] = -i[H, rho] + sum_ab c_ab (F_a rho F_b^dagger - 1/2 {F_b^dagger F_a, rho}).
///
/// H must be Hermitian and traceless, C Hermitian of size d^2-1, and the
/// basis orthonormal and traceless. Violations are rejected, never projected.
class GKSGenerator {
 public:
  GKSGenerator(ComplexMatrix hamiltonian, ComplexMatrix coeff, OperatorBasis basis, const Tolerances& tol = {});

  /// Null generator on C^d in the standard basis.
  static GKSGenerator null(std::size_t d);

  std::size_t dim() const noexcept { return basis_.dim(); }
  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const ComplexMatrix& coeff() const noexcept { return coeff_; }
  const OperatorBasis& basis() const noexcept { return basis_; }

  /// G_a = sum_b conj(c_ab) F_b, so that the dissipator's jump part is sum_a F_a rho G_a^dagger.
  const std::vector<ComplexMatrix>& partner_operators() const noexcept { return partners_; }
  /// sum_ab c_ab F_b^dagger F_a
  const ComplexMatrix& anticommutator_operator() const noexcept { return anti_; }

 private:
  ComplexMatrix hamiltonian_;
  ComplexMatrix coeff_;
  OperatorBasis basis_;
  std::vector<ComplexMatrix> partners_;
  ComplexMatrix anti_;
};

/// L[rho] = -i[H, rho] + sum_r (V_r rho V_r^dagger - 1/2 {V_r^dagger V_r, rho}).
class LindbladGenerator {
 public:
  /// Throws NonTraceless for H, NonTracelessJump for a jump operator with a
  /// trace component, ShapeMismatch on dimension errors.
  LindbladGenerator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jump_ops, const Tolerances& tol = {});

  std::size_t dim() const noexcept { return hamiltonian_.rows(); }
  const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<ComplexMatrix>& jump_ops() const noexcept { return jumps_; }

 private:
  ComplexMatrix hamiltonian_;
  std::vector<ComplexMatrix> jumps_;
};

/// Matrix of a linear map on d x d matrices acting on column-stacked vectors:
/// vec(M[rho]) = matrix * vec(rho). A rho B is represented by B^T (x) A.
struct Superoperator {
  std::size_t dim;
  ComplexMatrix matrix;

  ComplexMatrix apply(const ComplexMatrix& rho) const;

  static Superoperator identity(std::size_t d);
  static Superoperator zero(std::size_t d);
};

/// Builds the superoperator of an arbitrary linear map by acting on matrix units.
template <typename Map>
Superoperator superoperator_from_map(std::size_t d, Map&& map) {
  Superoperator s{d, ComplexMatrix(d * d, d * d)};
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) {
      ComplexMatrix unit(d, d);
      unit(i, j) = 1.0;
      const ComplexVector image = vec(map(unit));
      for (std::size_t r = 0; r < d * d; ++r) s.matrix(r, i + j * d) = image[r];
    }
  return s;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b);

ComplexMatrix apply_generator(const GKSGenerator& g, const ComplexMatrix& rho);
ComplexMatrix apply_lindblad(const LindbladGenerator& l, const ComplexMatrix& rho);

/// c_ab = sum_r v_ra conj(v_rb) with v_ra = Tr(F_a^dagger V_r).
GKSGenerator lindblad_to_gks(const LindbladGenerator& l, const OperatorBasis& basis, const Tolerances& tol = {});

/// Factorises C = A^dagger A through its eigendecomposition and returns
/// V_r = sum_a conj(A_ra) F_a for every nonzero eigenvalue. Eigenvalues in
/// [-eps_pos, 0] are clamped; anything more negative throws NotCompletelyPositive.
LindbladGenerator gks_to_lindblad(const GKSGenerator& g, const Tolerances& tol = {});

Superoperator superoperator_of(const GKSGenerator& g);
Superoperator superoperator_of(const LindbladGenerator& l);

}  // namespace cplab
