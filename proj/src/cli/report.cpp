#include "cplab/cli.hpp"

namespace cplab::cli {

using nlohmann::json;

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(std::span<const cplx> v) {
  json out = json::array();
  for (const cplx& z : v) out.push_back(to_json(z));
  return out;
}

json to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_json(m.data().subspan(i * m.cols(), m.cols())));
  return out;
}

json to_json(const CPVerdict& v) {
  return {{"is_cp", v.is_cp},
          {"min_choi_eigenvalue", v.min_choi_eigenvalue},
          {"min_C_eigenvalue", v.min_C_eigenvalue},
          {"tolerance", v.tolerance},
          {"sampled_times", v.sampled_times}};
}

json to_json(const WitnessCandidate& w) {
  return {{"direction", to_json(w.direction)},
          {"value", w.value},
          {"quadratic_form", w.quadratic_form},
          {"transpose_sign", w.transpose_sign},
          {"W", to_json(w.w_matrix)},
          {"Phi", to_json(w.phi_matrix)},
          {"Psi_dagger", to_json(w.psi_matrix.adjoint())},
          {"phi", to_json(w.phi)},
          {"psi", to_json(w.psi)}};
}

json to_json(const NegativityScan& s) {
  return {{"times", s.times},
          {"min_eigenvalues", s.min_eigenvalues},
          {"overlap_values", s.overlap_values},
          {"first_negative_time", s.first_negative_time ? json(*s.first_negative_time) : json(nullptr)}};
}

json generator_to_json(const GKSGenerator& g, bool include_basis) {
  json out = {{"hamiltonian", to_json(g.hamiltonian())}, {"coeff", to_json(g.coeff())}};
  if (include_basis) {
    json basis = json::array();
    for (const auto& f : g.basis().elements()) basis.push_back(to_json(f));
    out["basis"] = std::move(basis);
  }
  return out;
}

json generator_to_json(const LindbladGenerator& l) {
  json jumps = json::array();
  for (const auto& v : l.jump_ops()) jumps.push_back(to_json(v));
  return {{"hamiltonian", to_json(l.hamiltonian())}, {"jump_operators", std::move(jumps)}};
}

}  // namespace cplab::cli
