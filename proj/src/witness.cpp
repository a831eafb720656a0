#include "cplab/witness.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cplab/error.hpp"

namespace cplab {
namespace {

double real_quadratic(const ComplexMatrix& coeff, std::span<const cplx> w) {
  cplx s{};
  for (std::size_t a = 0; a < w.size(); ++a)
    for (std::size_t b = 0; b < w.size(); ++b) s += coeff(a, b) * w[a] * std::conj(w[b]);
  return s.real();
}

// w with W = 1/2 sum_a conj(w_a) F_a, i.e. w_a = 2 conj(Tr(F_a^dagger W)).
ComplexVector direction_of(const OperatorBasis& basis, const ComplexMatrix& w_matrix) {
  ComplexVector w = basis.coefficients(w_matrix);
  for (auto& z : w) z = 2.0 * std::conj(z);
  return w;
}

}  // namespace

double l_functional(const GKSGenerator& g, std::span<const cplx> phi, std::span<const cplx> psi) {
  const std::size_t d = g.dim();
  if (phi.size() != d * d || psi.size() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "phi and psi must live in C^d (x) C^d");
  }
  const double nphi = norm(phi);
  const double npsi = norm(psi);
  if (nphi == 0.0 || npsi == 0.0) throw Error(ErrorCode::ZeroVector, "phi and psi must be nonzero");
  const double overlap = std::abs(inner(phi, psi));
  if (overlap > 1e-10 * nphi * npsi) {
    throw Error(ErrorCode::NotOrthogonal, "|<phi|psi>| = " + std::to_string(overlap));
  }
  const Superoperator ext = tensor_extension(g);
  const ComplexMatrix image = ext.apply(ComplexMatrix::outer(psi, psi));
  return inner(phi, image * phi).real();
}

double l_functional_trace_form(const ComplexMatrix& coeff, const OperatorBasis& basis, const ComplexMatrix& phi,
                               const ComplexMatrix& psi) {
  const std::size_t d = basis.dim();
  const std::size_t n = basis.size();
  if (phi.rows() != d || phi.cols() != d || psi.rows() != d || psi.cols() != d) {
    throw Error(ErrorCode::ShapeMismatch, "Phi and Psi must be d x d");
  }
  if (coeff.rows() != n || coeff.cols() != n) throw Error(ErrorCode::ShapeMismatch, "coefficient matrix size");
  const cplx tr = (psi * phi.adjoint()).trace();
  if (std::abs(tr) > 1e-10 * phi.frobenius_norm() * psi.frobenius_norm()) {
    throw Error(ErrorCode::TraceConditionViolated, "|Tr(Psi Phi^dagger)| = " + std::to_string(std::abs(tr)));
  }

  const ComplexMatrix psi_phidag = psi * phi.adjoint();
  const ComplexMatrix phi_psidag = phi * psi.adjoint();
  const ComplexMatrix left2 = (phi.adjoint() * psi).transpose();
  const ComplexMatrix right2 = (psi.adjoint() * phi).transpose();

  ComplexVector x1(n), y1(n), x2(n), y2(n);
  for (std::size_t a = 0; a < n; ++a) {
    x1[a] = (psi_phidag * basis[a]).trace();
    y1[a] = (phi_psidag * basis[a].adjoint()).trace();
    x2[a] = (left2 * basis[a]).trace();
    y2[a] = (right2 * basis[a].adjoint()).trace();
  }
  cplx s{};
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) s += coeff(a, b) * (x1[a] * y1[b] + x2[a] * y2[b]);
  return s.real();
}

WitnessCandidate witness_from_similarity(const GKSGenerator& g, const ComplexMatrix& w_matrix,
                                         const ComplexMatrix& phi_matrix) {
  const std::size_t d = g.dim();
  if (w_matrix.rows() != d || w_matrix.cols() != d || phi_matrix.rows() != d || phi_matrix.cols() != d) {
    throw Error(ErrorCode::ShapeMismatch, "W and Phi must be d x d");
  }
  const double w_norm = w_matrix.frobenius_norm();
  if (w_norm == 0.0) throw Error(ErrorCode::DegenerateW, "W vanishes");

  const LuDecomposition lu(phi_matrix);
  if (lu.singular()) throw Error(ErrorCode::SolverFailure, "Phi is singular");
  const ComplexMatrix psi_dag = lu.solve(w_matrix);
  const ComplexMatrix psi_dag_phi = psi_dag * phi_matrix;
  const ComplexMatrix wt = w_matrix.transpose();
  const double bound = 1e-8 * std::max(1.0, w_norm);

  WitnessCandidate c;
  if ((psi_dag_phi - wt).frobenius_norm() <= bound) {
    c.transpose_sign = 1;
  } else if ((psi_dag_phi + wt).frobenius_norm() <= bound) {
    c.transpose_sign = -1;
  } else {
    throw Error(ErrorCode::SolverFailure, "Phi^{-1} W Phi is neither W^T nor -W^T");
  }

  c.direction = direction_of(g.basis(), w_matrix);
  c.w_matrix = w_matrix;
  c.phi_matrix = phi_matrix;
  c.psi_matrix = psi_dag.adjoint();
  c.phi = flatten(c.phi_matrix);
  c.psi = flatten(c.psi_matrix);
  c.quadratic_form = real_quadratic(g.coeff(), c.direction);
  c.value = l_functional(g, c.phi, c.psi);
  return c;
}

std::optional<WitnessCandidate> construct_witness(const GKSGenerator& g, const WitnessOptions& opts) {
  const EigenDecomposition eig = hermitian_eig(g.coeff(), opts.tol.hermiticity);
  if (eig.eigenvalues.front() >= -opts.tol.positivity_abs(g.coeff())) return std::nullopt;

  // v is the eigenvector; the direction is w = conj(v) so that
  // W = 1/2 sum_a v_a F_a and sum_ab c_ab w_a conj(w_b) = v^dagger C v.
  const ComplexVector v = eig.eigenvector(0);
  ComplexMatrix w_matrix = g.basis().combine(v);
  w_matrix *= 0.5;
  if (w_matrix.frobenius_norm() == 0.0) throw Error(ErrorCode::DegenerateW, "W vanishes for a unit direction");

  SimilarityOptions sim;
  sim.seed = opts.seed;
  const ComplexMatrix phi = similarity_to_transpose(w_matrix, sim);
  return witness_from_similarity(g, w_matrix, phi);
}

std::variant<WitnessCandidate, NoNegativeDirection, NotApplicable> symmetric_case_witness(const GKSGenerator& g,
                                                                                          const Tolerances& tol) {
  if (!g.basis().all_hermitian(tol.hermiticity)) return NotApplicable{"basis elements are not all Hermitian"};
  const ComplexMatrix& c = g.coeff();
  const double imag_tol = tol.hermiticity_abs(c);
  for (const cplx& z : c.data())
    if (std::abs(z.imag()) > imag_tol) return NotApplicable{"coefficient matrix has complex entries"};

  const EigenDecomposition eig = hermitian_eig(c, tol.hermiticity);
  if (eig.eigenvalues.front() >= -tol.positivity_abs(c)) return NoNegativeDirection{};

  // C is real symmetric, so Re and Im of any eigenvector are eigenvectors too.
  // Rotate the largest component onto the real axis and keep the real part.
  ComplexVector v = eig.eigenvector(0);
  std::size_t big = 0;
  for (std::size_t a = 1; a < v.size(); ++a)
    if (std::abs(v[a]) > std::abs(v[big])) big = a;
  const cplx phase = std::conj(v[big]) / std::abs(v[big]);
  for (auto& z : v) z = cplx((z * phase).real(), 0.0);
  const double nv = norm(v);
  for (auto& z : v) z /= nv;

  ComplexMatrix w_matrix = g.basis().combine(v);
  w_matrix *= 0.5;

  // In the eigenbasis {U|i>} of W, Phi' = 1/d and Psi'^dagger = d D. Back in the
  // standard basis: Phi = U U^T / d, Psi = d U D U^T.
  const EigenDecomposition weig = hermitian_eig(w_matrix, 1e-8);
  const std::size_t d = g.dim();
  const ComplexMatrix& u = weig.eigenvectors;
  ComplexMatrix phi = u * u.transpose();
  phi *= 1.0 / static_cast<double>(d);
  ComplexMatrix ud = u;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) ud(i, k) *= weig.eigenvalues[k] * static_cast<double>(d);
  const ComplexMatrix psi = ud * u.transpose();

  WitnessCandidate cand;
  cand.direction = v;
  cand.w_matrix = w_matrix;
  cand.phi_matrix = phi;
  cand.psi_matrix = psi;
  cand.phi = flatten(phi);
  cand.psi = flatten(psi);
  cand.transpose_sign = 1;
  cand.quadratic_form = real_quadratic(c, v);
  cand.value = l_functional(g, cand.phi, cand.psi);
  return cand;
}

NegativityScan negativity_scan(const GKSGenerator& g, std::span<const cplx> psi, std::span<const cplx> phi,
                               std::span<const double> t_grid, const Tolerances& tol) {
  if (t_grid.empty()) throw Error(ErrorCode::InvalidGrid, "time grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] >= 0.0) || !std::isfinite(t_grid[i])) throw Error(ErrorCode::InvalidGrid, "negative time in grid");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw Error(ErrorCode::InvalidGrid, "grid must be strictly increasing");
  }
  const std::size_t d = g.dim();
  if (psi.size() != d * d || phi.size() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "psi and phi must live in C^d (x) C^d");
  }
  const DensityMatrix rho0 = DensityMatrix::pure(psi);
  const double nphi = norm(phi);
  if (nphi == 0.0) throw Error(ErrorCode::ZeroVector, "phi must be nonzero");
  ComplexVector phi_unit(phi.begin(), phi.end());
  for (auto& z : phi_unit) z /= nphi;

  NegativityScan scan;
  for (double t : t_grid) {
    // exp(t (L (x) 1 + 1 (x) L)) = exp(tL) (x) exp(tL)
    const Superoperator step = evolution_map(g, t);
    const ComplexMatrix rho = tensor_product(step, step).apply(rho0.matrix());
    const double lo = min_eigenvalue(rho, 1e-8);
    scan.times.push_back(t);
    scan.min_eigenvalues.push_back(lo);
    scan.overlap_values.push_back(inner(phi_unit, rho * phi_unit).real());
    if (!scan.first_negative_time && lo < -tol.positivity_abs(rho)) scan.first_negative_time = t;
  }
  return scan;
}

std::vector<double> make_grid(double start, double stop, std::size_t n, bool log_spacing) {
  if (n == 0) throw Error(ErrorCode::InvalidGrid, "grid needs at least one point");
  if (!(start >= 0.0) || !(stop >= start)) throw Error(ErrorCode::InvalidGrid, "grid needs 0 <= start <= stop");
  if (log_spacing && start <= 0.0) throw Error(ErrorCode::InvalidGrid, "log grid needs start > 0");
  if (n == 1) return {start};
  if (stop == start) throw Error(ErrorCode::InvalidGrid, "grid with several points needs start < stop");
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    g[i] = log_spacing ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start))) : start + f * (stop - start);
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

std::vector<double> default_scan_grid() { return make_grid(1e-4, 1.0, 30, true); }

ComplexMatrix singlet_matrix() {
  const double s = 1.0 / std::numbers::sqrt2;
  return ComplexMatrix{{0.0, s}, {-s, 0.0}};
}

}  // namespace cplab
