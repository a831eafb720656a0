#include "cplab/generator.hpp"

#include <cmath>
#include <string>

#include "cplab/error.hpp"

namespace cplab {
namespace {

constexpr cplx kI{0.0, 1.0};

void require_dim(const ComplexMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(ErrorCode::ShapeMismatch, what + " must be " + std::to_string(rows) + "x" + std::to_string(cols) +
                                              ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_hamiltonian(const ComplexMatrix& h, const Tolerances& tol) {
  if (!h.is_square()) throw Error(ErrorCode::NonSquare, "Hamiltonian must be square");
  if (!is_hermitian(h, tol.hermiticity)) throw Error(ErrorCode::NonHermitian, "Hamiltonian is not Hermitian");
  if (std::abs(h.trace()) > tol.hermiticity_abs(h)) {
    throw Error(ErrorCode::NonTraceless, "Hamiltonian must be traceless, Tr H = " + std::to_string(std::abs(h.trace())));
  }
}

// -i(1 (x) H - H^T (x) 1)
ComplexMatrix hamiltonian_part(const ComplexMatrix& h) {
  const ComplexMatrix id = ComplexMatrix::identity(h.rows());
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

// rho -> J rho K^dagger
ComplexMatrix sandwich(const ComplexMatrix& j, const ComplexMatrix& k) { return kron(k.conj(), j); }

ComplexMatrix anticommutator_part(const ComplexMatrix& a) {
  const ComplexMatrix id = ComplexMatrix::identity(a.rows());
  return -0.5 * (kron(id, a) + kron(a.transpose(), id));
}

}  // namespace

GKSGenerator::GKSGenerator(ComplexMatrix hamiltonian, ComplexMatrix coeff, OperatorBasis basis, const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), coeff_(std::move(coeff)), basis_(std::move(basis)) {
  const std::size_t d = basis_.dim();
  const std::size_t n = d * d - 1;
  require_dim(hamiltonian_, d, d, "Hamiltonian");
  require_dim(coeff_, n, n, "coefficient matrix");
  require_hamiltonian(hamiltonian_, tol);
  if (!is_hermitian(coeff_, tol.hermiticity)) throw Error(ErrorCode::NonHermitian, "coefficient matrix is not Hermitian");
  require_valid_basis(basis_);

  partners_.reserve(n);
  anti_ = ComplexMatrix(d, d);
  for (std::size_t a = 0; a < n; ++a) {
    ComplexVector row(n);
    for (std::size_t b = 0; b < n; ++b) row[b] = std::conj(coeff_(a, b));
    partners_.push_back(basis_.combine(row));
    // sum_b c_ab F_b^dagger F_a = G_a^dagger F_a
    anti_ += partners_.back().adjoint() * basis_[a];
  }
}

GKSGenerator GKSGenerator::null(std::size_t d) {
  return GKSGenerator(ComplexMatrix(d, d), ComplexMatrix(d * d - 1, d * d - 1), standard_basis(d));
}

LindbladGenerator::LindbladGenerator(ComplexMatrix hamiltonian, std::vector<ComplexMatrix> jump_ops,
                                     const Tolerances& tol)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jump_ops)) {
  require_hamiltonian(hamiltonian_, tol);
  const std::size_t d = hamiltonian_.rows();
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "generators need d >= 2");
  for (std::size_t r = 0; r < jumps_.size(); ++r) {
    require_dim(jumps_[r], d, d, "jump operator " + std::to_string(r));
    const double tr = std::abs(jumps_[r].trace());
    if (tr > tol.hermiticity_abs(jumps_[r])) {
      throw Error(ErrorCode::NonTracelessJump,
                  "jump operator " + std::to_string(r) + " has |Tr V| = " + std::to_string(tr));
    }
  }
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& rho) const {
  if (rho.rows() != dim || rho.cols() != dim) {
    throw Error(ErrorCode::ShapeMismatch, "superoperator on " + std::to_string(dim) + "x" + std::to_string(dim) +
                                              " matrices applied to " + std::to_string(rho.rows()) + "x" +
                                              std::to_string(rho.cols()));
  }
  return unvec(matrix * vec(rho), dim, dim);
}

Superoperator Superoperator::identity(std::size_t d) { return {d, ComplexMatrix::identity(d * d)}; }

Superoperator Superoperator::zero(std::size_t d) { return {d, ComplexMatrix(d * d, d * d)}; }

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (a.dim != b.dim) throw Error(ErrorCode::ShapeMismatch, "composing superoperators of different dimension");
  return {a.dim, a.matrix * b.matrix};
}

ComplexMatrix apply_generator(const GKSGenerator& g, const ComplexMatrix& rho) {
  require_dim(rho, g.dim(), g.dim(), "state");
  ComplexMatrix out = -kI * commutator(g.hamiltonian(), rho);
  const auto& partners = g.partner_operators();
  for (std::size_t a = 0; a < partners.size(); ++a) out += g.basis()[a] * rho * partners[a].adjoint();
  out.add_scaled(-0.5, anticommutator(g.anticommutator_operator(), rho));
  return out;
}

ComplexMatrix apply_lindblad(const LindbladGenerator& l, const ComplexMatrix& rho) {
  require_dim(rho, l.dim(), l.dim(), "state");
  ComplexMatrix out = -kI * commutator(l.hamiltonian(), rho);
  for (const auto& v : l.jump_ops()) {
    const ComplexMatrix vdag = v.adjoint();
    out += v * rho * vdag;
    out.add_scaled(-0.5, anticommutator(vdag * v, rho));
  }
  return out;
}

GKSGenerator lindblad_to_gks(const LindbladGenerator& l, const OperatorBasis& basis, const Tolerances& tol) {
  if (basis.dim() != l.dim()) throw Error(ErrorCode::ShapeMismatch, "basis dimension differs from generator dimension");
  require_valid_basis(basis);
  const std::size_t n = basis.size();
  ComplexMatrix c(n, n);
  for (const auto& v : l.jump_ops()) {
    const ComplexVector coeffs = basis.coefficients(v);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) c(a, b) += coeffs[a] * std::conj(coeffs[b]);
  }
  return GKSGenerator(l.hamiltonian(), std::move(c), basis, tol);
}

LindbladGenerator gks_to_lindblad(const GKSGenerator& g, const Tolerances& tol) {
  const EigenDecomposition eig = hermitian_eig(g.coeff(), tol.hermiticity);
  const double eps = tol.positivity_abs(g.coeff());
  if (eig.eigenvalues.front() < -eps) {
    throw Error(ErrorCode::NotCompletelyPositive,
                "coefficient matrix has eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  // Eigenvalues at rounding level carry no jump operator.
  const double drop = 1e-12 * std::max(1.0, g.coeff().frobenius_norm());
  std::vector<ComplexMatrix> jumps;
  for (std::size_t r = 0; r < eig.eigenvalues.size(); ++r) {
    const double lambda = eig.eigenvalues[r];
    if (lambda <= drop) continue;
    // A_ra = sqrt(lambda_r) conj(U_ar), so conj(A_ra) = sqrt(lambda_r) U_ar.
    ComplexVector col = eig.eigenvector(r);
    for (auto& z : col) z *= std::sqrt(lambda);
    jumps.push_back(g.basis().combine(col));
  }
  return LindbladGenerator(g.hamiltonian(), std::move(jumps), tol);
}

Superoperator superoperator_of(const GKSGenerator& g) {
  ComplexMatrix m = hamiltonian_part(g.hamiltonian());
  const auto& partners = g.partner_operators();
  for (std::size_t a = 0; a < partners.size(); ++a) m += sandwich(g.basis()[a], partners[a]);
  m += anticommutator_part(g.anticommutator_operator());
  return {g.dim(), std::move(m)};
}

Superoperator superoperator_of(const LindbladGenerator& l) {
  ComplexMatrix m = hamiltonian_part(l.hamiltonian());
  for (const auto& v : l.jump_ops()) {
    m += sandwich(v, v);
    m += anticommutator_part(v.adjoint() * v);
  }
  return {l.dim(), std::move(m)};
}

}  // namespace cplab
