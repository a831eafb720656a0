#include "cplab/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <string>

#include "cplab/error.hpp"
#include "cplab/random.hpp"

namespace cplab {
namespace {

using EMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

EMatrix to_eigen(const ComplexMatrix& m) {
  return Eigen::Map<const EMatrix>(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                                   static_cast<Eigen::Index>(m.cols()));
}

ComplexMatrix from_eigen(const EMatrix& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  Eigen::Map<EMatrix>(m.data().data(), e.rows(), e.cols()) = e;
  return m;
}

void require_square(const ComplexMatrix& m, const char* op) {
  if (!m.is_square()) {
    throw Error(ErrorCode::NonSquare,
                std::string(op) + " needs a square matrix, got " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

double one_norm(const ComplexMatrix& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

double Tolerances::hermiticity_abs(const ComplexMatrix& m) const {
  return hermiticity * std::max(1.0, m.frobenius_norm());
}

double Tolerances::positivity_abs(const ComplexMatrix& m) const {
  return positivity * std::max(1.0, m.frobenius_norm());
}

ComplexVector EigenDecomposition::eigenvector(std::size_t k) const {
  ComplexVector v(eigenvectors.rows());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

ComplexMatrix EigenDecomposition::reconstruct() const {
  ComplexMatrix scaled = eigenvectors;
  for (std::size_t i = 0; i < scaled.rows(); ++i)
    for (std::size_t k = 0; k < scaled.cols(); ++k) scaled(i, k) *= eigenvalues[k];
  return scaled * eigenvectors.adjoint();
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m, double hermiticity_tol) {
  require_square(m, "hermitian_eig");
  const double defect = hermiticity_defect(m);
  if (defect > hermiticity_tol * std::max(1.0, m.frobenius_norm())) {
    throw Error(ErrorCode::NonHermitian, "||M - M^dagger||_F = " + std::to_string(defect));
  }
  const EMatrix e = to_eigen(m);
  const EMatrix herm = 0.5 * (e + e.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "Hermitian eigensolver did not converge");

  EigenDecomposition out{{}, from_eigen(solver.eigenvectors())};
  out.eigenvalues.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  return out;
}

double min_eigenvalue(const ComplexMatrix& m, double hermiticity_tol) {
  return hermitian_eig(m, hermiticity_tol).eigenvalues.front();
}

ComplexMatrix matrix_exp(const ComplexMatrix& m) {
  require_square(m, "matrix_exp");
  const std::size_t n = m.rows();
  const double norm1 = one_norm(m);
  if (norm1 == 0.0) return ComplexMatrix::identity(n);

  constexpr std::array<double, 14> b = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                        1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                        670442572800.0,      33522128640.0,       1323241920.0,
                                        40840800.0,          960960.0,            16380.0,
                                        182.0,               1.0};
  constexpr double theta13 = 5.371920351148152;

  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  ComplexMatrix a = m * std::ldexp(1.0, -s);

  const ComplexMatrix id = ComplexMatrix::identity(n);
  const ComplexMatrix a2 = a * a;
  const ComplexMatrix a4 = a2 * a2;
  const ComplexMatrix a6 = a4 * a2;

  ComplexMatrix u_inner = a6 * b[13];
  u_inner.add_scaled(b[11], a4).add_scaled(b[9], a2);
  ComplexMatrix u = a6 * u_inner;
  u.add_scaled(b[7], a6).add_scaled(b[5], a4).add_scaled(b[3], a2).add_scaled(b[1], id);
  u = a * u;

  ComplexMatrix v_inner = a6 * b[12];
  v_inner.add_scaled(b[10], a4).add_scaled(b[8], a2);
  ComplexMatrix v = a6 * v_inner;
  v.add_scaled(b[6], a6).add_scaled(b[4], a4).add_scaled(b[2], a2).add_scaled(b[0], id);

  ComplexMatrix r = LuDecomposition(v - u).solve(v + u);
  for (int k = 0; k < s; ++k) r = r * r;
  return r;
}

LuDecomposition::LuDecomposition(const ComplexMatrix& m) : lu_(m), perm_(m.rows()) {
  require_square(m, "LU decomposition");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu_(i, k)) > best) {
        best = std::abs(lu_(i, k));
        piv = i;
      }
    }
    if (best == 0.0) {
      singular_ = true;
      continue;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      perm_sign_ = -perm_sign_;
    }
    const cplx pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == cplx{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
}

cplx LuDecomposition::determinant() const {
  cplx det = static_cast<double>(perm_sign_);
  for (std::size_t i = 0; i < lu_.rows(); ++i) det *= lu_(i, i);
  return det;
}

double LuDecomposition::pivot_ratio() const {
  double lo = std::abs(lu_(0, 0));
  double hi = lo;
  for (std::size_t i = 1; i < lu_.rows(); ++i) {
    lo = std::min(lo, std::abs(lu_(i, i)));
    hi = std::max(hi, std::abs(lu_(i, i)));
  }
  return hi == 0.0 ? 0.0 : lo / hi;
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& rhs) const {
  if (singular_) throw Error(ErrorCode::SolverFailure, "LU solve with a singular matrix");
  const std::size_t n = lu_.rows();
  if (rhs.rows() != n) throw Error(ErrorCode::ShapeMismatch, "LU solve: right-hand side has wrong row count");
  const std::size_t m = rhs.cols();
  ComplexMatrix x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = rhs(perm_[i], j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const cplx f = lu_(i, k);
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
    }
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < n; ++k) {
      const cplx f = lu_(ii, k);
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < m; ++j) x(ii, j) -= f * x(k, j);
    }
    const cplx pivot = lu_(ii, ii);
    for (std::size_t j = 0; j < m; ++j) x(ii, j) /= pivot;
  }
  return x;
}

ComplexMatrix LuDecomposition::inverse() const { return solve(ComplexMatrix::identity(lu_.rows())); }

ComplexMatrix inverse(const ComplexMatrix& m) { return LuDecomposition(m).inverse(); }

cplx determinant(const ComplexMatrix& m) { return LuDecomposition(m).determinant(); }

ComplexMatrix null_space(const ComplexMatrix& m, double rel_tol, std::size_t min_dim) {
  const EMatrix e = to_eigen(m);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const std::size_t ncols = m.cols();
  const double cut = rel_tol * std::max(1.0, m.frobenius_norm());

  // Singular values come sorted descending; columns of V past the numerical
  // rank span the null space (including the n - rows columns of a wide M).
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  std::size_t dim = ncols - rank;
  dim = std::max(dim, std::min(min_dim, ncols));
  if (dim == 0) return ComplexMatrix(ncols, 1);  // only the trivial solution; caller checks

  const Eigen::MatrixXcd v = svd.matrixV();
  ComplexMatrix out(ncols, dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t i = 0; i < ncols; ++i)
      out(i, k) = v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ncols - dim + k));
  return out;
}

double similarity_residual(const ComplexMatrix& w, const ComplexMatrix& phi) {
  const LuDecomposition lu(phi);
  if (lu.singular()) return std::numeric_limits<double>::infinity();
  return (lu.solve(w * phi) - w.transpose()).frobenius_norm();
}

ComplexMatrix similarity_to_transpose(const ComplexMatrix& w, const SimilarityOptions& opts) {
  require_square(w, "similarity_to_transpose");
  const std::size_t d = w.rows();
  const double w_scale = std::max(1.0, w.frobenius_norm());
  const double residual_bound = opts.residual_tol * w_scale;

  // vec(W X) = (1 (x) W) vec X and vec(X W^T) = (W (x) 1) vec X.
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix sylvester = kron(id, w) - kron(w, id);
  // The solution space has dimension at least d (the centraliser of a d x d
  // matrix never has smaller dimension).
  const ComplexMatrix basis = null_space(sylvester, 1e-10, d);
  const std::size_t nb = basis.cols();

  Rng rng(opts.seed);
  const double target_norm = std::sqrt(static_cast<double>(d));

  struct Best {
    ComplexMatrix phi;
    double residual = std::numeric_limits<double>::infinity();
    bool found = false;
  } best;
  std::size_t accepted = 0;

  auto try_coefficients = [&](const ComplexVector& coeff) {
    ComplexVector x(d * d);
    for (std::size_t k = 0; k < nb; ++k)
      for (std::size_t i = 0; i < d * d; ++i) x[i] += coeff[k] * basis(i, k);
    ComplexMatrix phi = unvec(x, d, d);
    const double nrm = phi.frobenius_norm();
    if (nrm == 0.0) return;
    phi *= target_norm / nrm;
    const LuDecomposition lu(phi);
    if (lu.singular() || std::abs(lu.determinant()) <= opts.det_threshold) return;
    const double res = (lu.solve(w * phi) - w.transpose()).frobenius_norm();
    if (res > residual_bound) return;
    ++accepted;
    if (res < best.residual) best = {std::move(phi), res, true};
  };

  constexpr std::size_t kEnough = 8;
  for (std::size_t draw = 0; draw < opts.draws && accepted < kEnough; ++draw) {
    try_coefficients(random_complex_vector(rng, nb));
  }
  if (!best.found) {
    // Densify: sparse combinations over random subsets of the solution basis
    // with heavier-tailed weights.
    for (std::size_t draw = 0; draw < opts.dense_draws && accepted < kEnough; ++draw) {
      ComplexVector coeff(nb);
      for (auto& c : coeff) {
        if (rng.uniform() < 0.5) c = rng.complex_normal() / std::max(1e-3, rng.uniform());
      }
      try_coefficients(coeff);
    }
  }
  if (!best.found) {
    throw Error(ErrorCode::SolverFailure,
                "no invertible solution of W X = X W^T found (solution space dimension " + std::to_string(nb) + ")");
  }
  return best.phi;
}

}  // namespace cplab
