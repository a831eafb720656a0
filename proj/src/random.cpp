#include "cplab/random.hpp"

#include <cmath>
#include <numbers>

namespace cplab {

double Rng::uniform(double lo, double hi) {
  // 53 random bits -> [0, 1)
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

double Rng::normal() {
  // Box-Muller; std::normal_distribution is not reproducible across standard libraries.
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexVector random_complex_vector(Rng& rng, std::size_t n) {
  ComplexVector v(n);
  for (auto& z : v) z = rng.complex_normal();
  return v;
}

ComplexMatrix random_complex_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols, random_complex_vector(rng, rows * cols));
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t n) {
  const ComplexMatrix g = random_complex_matrix(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_traceless_hermitian(Rng& rng, std::size_t n) {
  ComplexMatrix h = random_hermitian(rng, n);
  const cplx shift = h.trace() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) h(i, i) -= shift;
  return h;
}

ComplexVector haar_state(Rng& rng, std::size_t n) {
  ComplexVector v = random_complex_vector(rng, n);
  const double nrm = norm(v);
  for (auto& z : v) z /= nrm;
  return v;
}

ComplexMatrix random_density_matrix(Rng& rng, std::size_t n) {
  const ComplexMatrix g = random_complex_matrix(rng, n, n);
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

}  // namespace cplab
