#pragma once

// Entangled witness states for gamma_t (x) gamma_t.
//
// Vectors in C^d (x) C^d are identified with d x d coefficient matrices by
// |phi> = sum_jk Phi(j, k) |j>|k>, i.e. phi = flatten(Phi) (row-major).
//
// For a direction w in C^{d^2-1} put W = 1/2 sum_a conj(w_a) F_a. If
// Phi Psi^dagger = W and Psi^dagger Phi = +-W^T then <phi|psi> = 0 and
//   L_{phi,psi} = 1/2 sum_ab c_ab w_a conj(w_b),
// so a negative direction of C yields a state |psi><psi| that gamma_t (x) gamma_t
// drives out of the positive cone at small t. WitnessCandidate::quadratic_form
// holds sum_ab c_ab w_a conj(w_b); `value` is measured independently.

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "cplab/dynamics.hpp"
#include "cplab/generator.hpp"

namespace cplab {

struct WitnessCandidate {
  ComplexVector direction;    // w
  ComplexMatrix w_matrix;     // W = 1/2 sum_a conj(w_a) F_a
  ComplexMatrix phi_matrix;   // Phi, invertible
  ComplexMatrix psi_matrix;   // Psi, with Psi^dagger = Phi^{-1} W
  ComplexVector phi;          // flatten(Phi), unnormalised
  ComplexVector psi;          // flatten(Psi), unnormalised
  double value = 0.0;         // L_{phi,psi}
  double quadratic_form = 0.0;
  int transpose_sign = 1;     // Psi^dagger Phi = transpose_sign * W^T
};

struct NoNegativeDirection {};
struct NotApplicable {
  std::string reason;
};

struct NegativityScan {
  std::vector<double> times;
  std::vector<double> min_eigenvalues;
  std::vector<double> overlap_values;  // G(t) = <phi|rho(t)|phi> for unit phi, psi
  std::optional<double> first_negative_time;
};

struct WitnessOptions {
  Tolerances tol{};
  std::uint64_t seed = 0x5eed;
};

/// <phi|(L (x) 1 + 1 (x) L)[|psi><psi|]|phi>. Requires |<phi|psi>| <= 1e-10 |phi||psi|
/// (NotOrthogonal) and nonzero vectors (ZeroVector).
double l_functional(const GKSGenerator& g, std::span<const cplx> phi, std::span<const cplx> psi);

/// The same quantity from the coefficient matrix alone:
///   sum_ab c_ab [Tr(Psi Phi^dag F_a) Tr(Phi Psi^dag F_b^dag)
///              + Tr((Phi^dag Psi)^T F_a) Tr((Psi^dag Phi)^T F_b^dag)].
/// Throws TraceConditionViolated if |Tr(Psi Phi^dag)| > 1e-10 |Phi|_F |Psi|_F.
double l_functional_trace_form(const ComplexMatrix& coeff, const OperatorBasis& basis, const ComplexMatrix& phi,
                               const ComplexMatrix& psi);

/// Builds the candidate for W from a given similarity Phi (Phi^{-1} W Phi = +-W^T).
/// Throws DegenerateW for W = 0, SolverFailure if Phi does not map W to +-W^T.
WitnessCandidate witness_from_similarity(const GKSGenerator& g, const ComplexMatrix& w_matrix,
                                         const ComplexMatrix& phi_matrix);

/// Direction w = conj(v) for the eigenvector v of C's most negative eigenvalue,
/// Phi from similarity_to_transpose. nullopt when C >= -eps_pos.
std::optional<WitnessCandidate> construct_witness(const GKSGenerator& g, const WitnessOptions& opts = {});

/// Witness with Phi = 1_d/d in the eigenbasis of a Hermitian W, available
/// when every F_a is Hermitian and C is real symmetric.
std::variant<WitnessCandidate, NoNegativeDirection, NotApplicable> symmetric_case_witness(
    const GKSGenerator& g, const Tolerances& tol = {});

/// Evolves |psi><psi| (psi normalised) under gamma_t (x) gamma_t over the grid.
/// Throws InvalidGrid unless the grid is nonempty, nonnegative and strictly increasing.
NegativityScan negativity_scan(const GKSGenerator& g, std::span<const cplx> psi, std::span<const cplx> phi,
                               std::span<const double> t_grid, const Tolerances& tol = {});

/// n points from start to stop inclusive, geometric (log) or arithmetic spacing.
std::vector<double> make_grid(double start, double stop, std::size_t n, bool log_spacing);

/// 30 log-spaced points on [1e-4, 1].
std::vector<double> default_scan_grid();

/// The singlet (|01> - |10>)/sqrt(2) as a coefficient matrix (1/sqrt2)[[0,1],[-1,0]].
ComplexMatrix singlet_matrix();

}  // namespace cplab
