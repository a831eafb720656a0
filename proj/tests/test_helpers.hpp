#pragma once

#include <vector>

#include "cplab/generator.hpp"
#include "cplab/linalg.hpp"
#include "cplab/random.hpp"

namespace testing_support {

using namespace cplab;

/// S J S^{-1} where J is a Jordan matrix with the given block sizes; the
/// eigenvalue of every block is drawn at random, and `shared_eigenvalue`
/// forces all blocks onto one eigenvalue (derogatory + defective).
inline ComplexMatrix jordan_conjugate(Rng& rng, const std::vector<std::size_t>& blocks, bool shared_eigenvalue) {
  std::size_t d = 0;
  for (auto b : blocks) d += b;
  ComplexMatrix j(d, d);
  std::size_t off = 0;
  const cplx common = rng.complex_normal();
  for (auto b : blocks) {
    const cplx lambda = shared_eigenvalue ? common : rng.complex_normal();
    for (std::size_t i = 0; i < b; ++i) {
      j(off + i, off + i) = lambda;
      if (i + 1 < b) j(off + i, off + i + 1) = 1.0;
    }
    off += b;
  }
  ComplexMatrix s = random_complex_matrix(rng, d, d);
  for (std::size_t i = 0; i < d; ++i) s(i, i) += 2.0;  // keep S comfortably invertible
  return s * j * inverse(s);
}

/// Random generator with the given coefficient matrix.
inline GKSGenerator generator_with(Rng& rng, std::size_t d, ComplexMatrix coeff) {
  return GKSGenerator(random_traceless_hermitian(rng, d), std::move(coeff), standard_basis(d));
}

/// Positive semidefinite B B^dagger of random rank in [1, n].
inline ComplexMatrix random_psd(Rng& rng, std::size_t n) {
  const std::size_t rank = 1 + static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)) % n;
  const ComplexMatrix b = random_complex_matrix(rng, n, rank);
  return b * b.adjoint();
}

}  // namespace testing_support
