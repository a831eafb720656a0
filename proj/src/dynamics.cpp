#include "cplab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cplab/error.hpp"
#include "cplab/random.hpp"

namespace cplab {

DensityMatrix::DensityMatrix(ComplexMatrix rho, const Tolerances& tol) : rho_(std::move(rho)) {
  if (!rho_.is_square()) throw Error(ErrorCode::InvalidState, "density matrix must be square");
  if (!is_hermitian(rho_, tol.hermiticity)) throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  const cplx tr = rho_.trace();
  if (std::abs(tr - 1.0) > tol.hermiticity_abs(rho_)) {
    throw Error(ErrorCode::InvalidState, "density matrix trace is " + std::to_string(tr.real()));
  }
  const double lo = min_eigenvalue(rho_, tol.hermiticity);
  if (lo < -tol.positivity_abs(rho_)) {
    throw Error(ErrorCode::InvalidState, "density matrix has eigenvalue " + std::to_string(lo));
  }
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> v) {
  const double n = norm(v);
  if (n == 0.0) throw Error(ErrorCode::ZeroVector, "pure state from the zero vector");
  ComplexMatrix rho = ComplexMatrix::outer(v, v);
  rho *= 1.0 / (n * n);
  return DensityMatrix(std::move(rho));
}

Superoperator evolution_map(const GKSGenerator& g, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "evolution time must be >= 0, got " + std::to_string(t));
  if (t == 0.0) return Superoperator::identity(g.dim());
  Superoperator l = superoperator_of(g);
  l.matrix *= t;
  return {g.dim(), matrix_exp(l.matrix)};
}

Superoperator tensor_product(const Superoperator& a, const Superoperator& b) {
  const std::size_t da = a.dim;
  const std::size_t db = b.dim;
  const std::size_t d = da * db;
  Superoperator out{d, ComplexMatrix(d * d, d * d)};
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t k = 0; k < da; ++k)
      for (std::size_t ip = 0; ip < da; ++ip)
        for (std::size_t kp = 0; kp < da; ++kp) {
          const cplx av = a.matrix(i + k * da, ip + kp * da);
          if (av == cplx{}) continue;
          for (std::size_t j = 0; j < db; ++j)
            for (std::size_t l = 0; l < db; ++l)
              for (std::size_t jp = 0; jp < db; ++jp)
                for (std::size_t lp = 0; lp < db; ++lp) {
                  const cplx bv = b.matrix(j + l * db, jp + lp * db);
                  if (bv == cplx{}) continue;
                  const std::size_t row = (i * db + j) + (k * db + l) * d;
                  const std::size_t col = (ip * db + jp) + (kp * db + lp) * d;
                  out.matrix(row, col) += av * bv;
                }
        }
  return out;
}

Superoperator tensor_extension(const GKSGenerator& g) {
  const Superoperator l = superoperator_of(g);
  const Superoperator id = Superoperator::identity(g.dim());
  Superoperator out = tensor_product(l, id);
  out.matrix += tensor_product(id, l).matrix;
  return out;
}

ChoiMatrix choi_matrix(const Superoperator& m) {
  const std::size_t d = m.dim;
  ChoiMatrix c{d, ComplexMatrix(d * d, d * d)};
  // Block (i, j) is m[E_ij]; entry (p, q) of m[E_ij] sits in column i + j*d of m.
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < d; ++q) c.matrix(i * d + p, j * d + q) = m.matrix(p + q * d, i + j * d);
  return c;
}

namespace {

struct ChoiSample {
  double min_eigenvalue;
  double tolerance;
};

ChoiSample choi_at(const GKSGenerator& g, double t, const Tolerances& tol) {
  const ChoiMatrix c = choi_matrix(evolution_map(g, t));
  // The image of a Hermiticity-preserving map has a Hermitian Choi matrix up to
  // the rounding of the exponential; eigenvalues are taken of its Hermitian part.
  return {min_eigenvalue(c.matrix, 1e-8), tol.positivity_abs(c.matrix)};
}

}  // namespace

CPVerdict is_completely_positive(const GKSGenerator& g, std::span<const double> t_samples, const Tolerances& tol) {
  if (t_samples.empty()) throw Error(ErrorCode::InvalidGrid, "at least one time sample is required");
  for (double t : t_samples)
    if (!(t >= 0.0)) throw Error(ErrorCode::NegativeTime, "time samples must be >= 0");

  CPVerdict v;
  v.min_C_eigenvalue = min_eigenvalue(g.coeff(), tol.hermiticity);
  const double c_tol = tol.positivity_abs(g.coeff());
  v.is_cp = v.min_C_eigenvalue >= -c_tol;

  v.min_choi_eigenvalue = std::numeric_limits<double>::infinity();
  double choi_tol = 0.0;
  bool choi_negative = false;
  auto record = [&](double t) {
    const ChoiSample s = choi_at(g, t, tol);
    v.sampled_times.push_back(t);
    v.min_choi_eigenvalue = std::min(v.min_choi_eigenvalue, s.min_eigenvalue);
    choi_tol = std::max(choi_tol, s.tolerance);
    if (s.min_eigenvalue < -s.tolerance) choi_negative = true;
  };
  for (double t : t_samples) record(t);

  if (v.is_cp && choi_negative) {
    throw Error(ErrorCode::InconsistentVerdict, "C is positive semidefinite but a Choi matrix has eigenvalue " +
                                                    std::to_string(v.min_choi_eigenvalue));
  }
  if (!v.is_cp && !choi_negative) {
    // Negativity is first order in t with rate lambda_min(C); look closer to t = 0.
    double t = *std::min_element(t_samples.begin(), t_samples.end());
    if (t <= 0.0) t = kDefaultCpTimes.front();
    for (t /= 10.0; t >= 1e-8 && !choi_negative; t /= 10.0) record(t);
    const double resolvable = std::sqrt(tol.positivity) * std::max(1.0, g.coeff().frobenius_norm());
    if (!choi_negative && v.min_C_eigenvalue < -resolvable) {
      throw Error(ErrorCode::InconsistentVerdict, "C has eigenvalue " + std::to_string(v.min_C_eigenvalue) +
                                                      " but no Choi matrix of exp(tL) is negative");
    }
  }
  v.tolerance = choi_tol;
  return v;
}

PositivityReport positivity_preserving_sampled(const Superoperator& m, std::size_t n, std::uint64_t seed,
                                               std::span<const ComplexVector> extra_inputs) {
  if (n == 0 && extra_inputs.empty()) throw Error(ErrorCode::InvalidGrid, "sample count must be >= 1");
  PositivityReport report;
  report.min_eigenvalue = std::numeric_limits<double>::infinity();
  auto evaluate = [&](const ComplexVector& v) {
    const DensityMatrix rho = DensityMatrix::pure(v);
    const double lo = min_eigenvalue(m.apply(rho.matrix()), 1e-8);
    ++report.samples;
    if (lo < report.min_eigenvalue) {
      report.min_eigenvalue = lo;
      report.worst_input = v;
      const double nv = norm(v);
      for (auto& z : report.worst_input) z /= nv;
    }
  };
  for (const auto& v : extra_inputs) {
    if (v.size() != m.dim) throw Error(ErrorCode::DimensionMismatch, "explicit input has the wrong dimension");
    evaluate(v);
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < n; ++s) evaluate(haar_state(rng, m.dim));
  return report;
}

Superoperator transposition_map(std::size_t d) {
  return superoperator_from_map(d, [](const ComplexMatrix& x) { return x.transpose(); });
}

}  // namespace cplab
