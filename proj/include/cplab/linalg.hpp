#pragma once

#include <cstdint>
#include <vector>

#include "cplab/complex_matrix.hpp"

namespace cplab {

/// Tolerance knobs shared by every module. All are relative to max(1, ||M||_F)
/// of the matrix under test.
struct Tolerances {
  double hermiticity = 1e-10;
  double positivity = 1e-9;

  double hermiticity_abs(const ComplexMatrix& m) const;
  double positivity_abs(const ComplexMatrix& m) const;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, eigenvectors in columns

  ComplexVector eigenvector(std::size_t k) const;
  ComplexMatrix reconstruct() const;
};

/// Throws NonSquare / NonHermitian when the input is not Hermitian to within
/// hermiticity_tol * max(1, ||M||_F). The Hermitian part of M is decomposed.
EigenDecomposition hermitian_eig(const ComplexMatrix& m, double hermiticity_tol = Tolerances{}.hermiticity);

double min_eigenvalue(const ComplexMatrix& m, double hermiticity_tol = Tolerances{}.hermiticity);

/// e^M by scaling and squaring with a degree-13 Pade approximant.
ComplexMatrix matrix_exp(const ComplexMatrix& m);

/// LU factorisation with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& m);

  cplx determinant() const;
  /// Smallest |pivot| / largest |pivot|; zero for exactly singular input.
  double pivot_ratio() const;
  bool singular() const { return singular_; }
  ComplexMatrix solve(const ComplexMatrix& rhs) const;
  ComplexMatrix inverse() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int perm_sign_ = 1;
  bool singular_ = false;
};

ComplexMatrix inverse(const ComplexMatrix& m);
cplx determinant(const ComplexMatrix& m);

/// Orthonormal basis (as columns) of the numerical null space of M: right
/// singular vectors whose singular value is at most rel_tol * max(1, ||M||_F),
/// and never fewer than min_dim of them.
ComplexMatrix null_space(const ComplexMatrix& m, double rel_tol, std::size_t min_dim = 0);

struct SimilarityOptions {
  std::uint64_t seed = 0x5eed;
  std::size_t draws = 64;
  std::size_t dense_draws = 192;
  double det_threshold = 1e-10;
  double residual_tol = 1e-8;
};

/// Invertible Phi with Phi^{-1} W Phi = W^T (transpose in the standard basis).
/// Phi is scaled to ||Phi||_F = sqrt(d). Throws SolverFailure if no draw from
/// the solution space of W X = X W^T meets both the determinant and residual
/// bounds.
ComplexMatrix similarity_to_transpose(const ComplexMatrix& w, const SimilarityOptions& opts = {});

/// ||Phi^{-1} W Phi - W^T||_F
double similarity_residual(const ComplexMatrix& w, const ComplexMatrix& phi);

}  // namespace cplab
