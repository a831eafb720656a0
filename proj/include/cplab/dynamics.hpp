#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cplab/generator.hpp"

namespace cplab {

/// Hermitian, unit-trace, positive semidefinite d x d matrix.
class DensityMatrix {
 public:
  /// Throws InvalidState when any of the three conditions fails.
  explicit DensityMatrix(ComplexMatrix rho, const Tolerances& tol = {});
  /// |v><v| / <v|v>. Throws ZeroVector for v = 0.
  static DensityMatrix pure(std::span<const cplx> v);

  std::size_t dim() const noexcept { return rho_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  ComplexMatrix rho_;
};

struct ChoiMatrix {
  std::size_t dim;
  ComplexMatrix matrix;  // d^2 x d^2
};

struct CPVerdict {
  bool is_cp = false;
  double min_choi_eigenvalue = 0.0;
  double min_C_eigenvalue = 0.0;
  double tolerance = 0.0;
  std::vector<double> sampled_times;  // includes any extra probe times
};

struct PositivityReport {
  double min_eigenvalue = 0.0;
  ComplexVector worst_input;  // normalised pure state achieving the minimum
  std::size_t samples = 0;
};

/// gamma_t = exp(t L). Throws NegativeTime for t < 0.
Superoperator evolution_map(const GKSGenerator& g, double t);

/// a (x) b on (d_a d_b) x (d_a d_b) matrices, the first tensor factor being the
/// slow (outer) index of the Kronecker ordering |j>|k> -> j*d_b + k.
Superoperator tensor_product(const Superoperator& a, const Superoperator& b);

/// L (x) 1 + 1 (x) L, the generator of gamma_t (x) gamma_t.
Superoperator tensor_extension(const GKSGenerator& g);

/// sum_ij E_ij (x) m[E_ij], unnormalised.
ChoiMatrix choi_matrix(const Superoperator& m);

inline const std::vector<double> kDefaultCpTimes{0.01, 0.1, 1.0};

/// C-matrix criterion decides; Choi matrices of exp(tL) at the sampled times
/// must agree with it. When C is indefinite but no sample shows a negative Choi
/// eigenvalue, shorter times t/10, t/100, ... down to 1e-8 are probed. Throws
/// InconsistentVerdict if C is positive but some Choi matrix is not, or if C
/// has an eigenvalue below -sqrt(eps_pos) * scale that no probe can see.
CPVerdict is_completely_positive(const GKSGenerator& g, std::span<const double> t_samples = kDefaultCpTimes,
                                 const Tolerances& tol = {});

/// Applies m to n Haar-random pure states (plus any explicit inputs, which are
/// normalised first) and reports the smallest output eigenvalue.
PositivityReport positivity_preserving_sampled(const Superoperator& m, std::size_t n, std::uint64_t seed,
                                               std::span<const ComplexVector> extra_inputs = {});

/// The transposition rho -> rho^T on d x d matrices.
Superoperator transposition_map(std::size_t d);

}  // namespace cplab
