#include "cplab/operator_basis.hpp"

#include <cmath>
#include <string>

#include "cplab/error.hpp"

namespace cplab {

OperatorBasis::OperatorBasis(std::size_t dim, std::vector<ComplexMatrix> elements)
    : dim_(dim), elements_(std::move(elements)) {
  if (dim < 2) throw Error(ErrorCode::InvalidDimension, "operator basis needs d >= 2");
  if (elements_.size() != dim * dim - 1) {
    throw Error(ErrorCode::InvalidDimension, "operator basis for d = " + std::to_string(dim) + " needs " +
                                                 std::to_string(dim * dim - 1) + " elements, got " +
                                                 std::to_string(elements_.size()));
  }
  for (std::size_t a = 0; a < elements_.size(); ++a) {
    if (elements_[a].rows() != dim || elements_[a].cols() != dim) {
      throw Error(ErrorCode::ShapeMismatch, "basis element " + std::to_string(a) + " is not " + std::to_string(dim) +
                                                "x" + std::to_string(dim));
    }
  }
}

bool OperatorBasis::all_hermitian(double tol) const {
  for (const auto& f : elements_)
    if (!is_hermitian(f, tol)) return false;
  return true;
}

ComplexVector OperatorBasis::coefficients(const ComplexMatrix& k) const {
  ComplexVector c(elements_.size());
  for (std::size_t a = 0; a < elements_.size(); ++a) c[a] = hs_inner(elements_[a], k);
  return c;
}

ComplexMatrix OperatorBasis::combine(std::span<const cplx> coeffs) const {
  if (coeffs.size() != elements_.size()) throw Error(ErrorCode::ShapeMismatch, "coefficient count != basis size");
  ComplexMatrix out(dim_, dim_);
  for (std::size_t a = 0; a < elements_.size(); ++a)
    if (coeffs[a] != cplx{}) out.add_scaled(coeffs[a], elements_[a]);
  return out;
}

OperatorBasis standard_basis(std::size_t d) {
  if (d < 2) throw Error(ErrorCode::InvalidDimension, "standard_basis needs d >= 2, got " + std::to_string(d));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> els;
  els.reserve(d * d - 1);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = inv_sqrt2;
      m(k, j) = inv_sqrt2;
      els.push_back(std::move(m));
    }
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      ComplexMatrix m(d, d);
      m(j, k) = cplx(0.0, -inv_sqrt2);
      m(k, j) = cplx(0.0, inv_sqrt2);
      els.push_back(std::move(m));
    }
  for (std::size_t l = 1; l < d; ++l) {
    ComplexMatrix m(d, d);
    const double s = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (std::size_t j = 0; j < l; ++j) m(j, j) = s;
    m(l, l) = -static_cast<double>(l) * s;
    els.push_back(std::move(m));
  }
  return OperatorBasis(d, std::move(els));
}

BasisReport validate_basis(const OperatorBasis& basis, double tol) {
  BasisReport r;
  const std::size_t n = basis.size();
  for (std::size_t a = 0; a < n; ++a) {
    r.max_trace_deviation = std::max(r.max_trace_deviation, std::abs(basis[a].trace()));
    for (std::size_t b = 0; b < n; ++b) {
      const cplx g = hs_inner(basis[a], basis[b]) - (a == b ? 1.0 : 0.0);
      r.max_gram_deviation = std::max(r.max_gram_deviation, std::abs(g));
    }
  }
  r.pass = r.max_trace_deviation <= tol && r.max_gram_deviation <= tol;
  return r;
}

void require_valid_basis(const OperatorBasis& basis, double tol) {
  const BasisReport r = validate_basis(basis, tol);
  if (!r.pass) {
    throw Error(ErrorCode::InvalidBasis, "operator basis is not orthonormal and traceless (trace deviation " +
                                                 std::to_string(r.max_trace_deviation) + ", Gram deviation " +
                                                 std::to_string(r.max_gram_deviation) + ")");
  }
}

}  // namespace cplab
