#pragma once

#include <cstdint>
#include <random>

#include "cplab/complex_matrix.hpp"

namespace cplab {

/// Seeded source for every random draw in the library. Same seed, same
/// sequence on every platform (mt19937_64 plus our own normal transform).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0);
  double normal();
  /// Real and imaginary parts independent N(0, 1/2), so E|z|^2 = 1.
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
};

ComplexVector random_complex_vector(Rng& rng, std::size_t n);
ComplexMatrix random_complex_matrix(Rng& rng, std::size_t rows, std::size_t cols);
ComplexMatrix random_hermitian(Rng& rng, std::size_t n);
ComplexMatrix random_traceless_hermitian(Rng& rng, std::size_t n);

/// Unit vector with Haar-uniform direction.
ComplexVector haar_state(Rng& rng, std::size_t n);

/// Random full-rank density matrix G G^dagger / Tr(G G^dagger).
ComplexMatrix random_density_matrix(Rng& rng, std::size_t n);

}  // namespace cplab
