#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "cplab/dynamics.hpp"
#include "cplab/generator.hpp"
#include "cplab/witness.hpp"

namespace cplab::cli {

inline constexpr std::string_view kToolName = "cplab";
inline constexpr std::string_view kToolVersion = "1.0.0";

/// Exit status shared by every subcommand.
enum ExitCode : int { kSuccess = 0, kUsageError = 1, kNotCompletelyPositive = 2 };

struct GksSpec {
  ComplexMatrix hamiltonian;
  ComplexMatrix coeff;
  std::optional<OperatorBasis> basis;  // always set after parsing
};

struct LindbladSpec {
  ComplexMatrix hamiltonian;
  std::vector<ComplexMatrix> jump_ops;
  std::optional<OperatorBasis> basis;  // always set after parsing
};

struct ProblemConfig {
  std::size_t dim = 0;
  std::variant<GksSpec, LindbladSpec> generator;
  bool custom_basis = false;
  Tolerances tolerances{};
  bool tolerance_from_config = false;
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> time_grid;
  std::optional<std::vector<double>> cp_times;
  std::optional<ComplexMatrix> state;
  std::optional<double> time;
  std::optional<ComplexVector> psi;
  std::optional<ComplexVector> phi;
  std::optional<ComplexMatrix> explicit_w;
  nlohmann::json source;  // the document as read, echoed into reports

  bool is_gks() const { return std::holds_alternative<GksSpec>(generator); }
  const OperatorBasis& basis() const;
  GKSGenerator gks_generator() const;
};

/// Parses a config document. Throws Error(ConfigError) naming the offending
/// field path (e.g. "gks.hamiltonian[0]") or, for syntax errors, the line.
ProblemConfig parse_config_text(std::string_view text);
ProblemConfig parse_config(const nlohmann::json& doc);

/// Fills in the "meson-d2" preset: d = 2, singlet initial state.
void apply_preset(ProblemConfig& cfg, std::string_view preset);

// JSON encoding. Complex numbers are [re, im]; matrices are lists of rows.
nlohmann::json to_json(cplx z);
nlohmann::json to_json(std::span<const cplx> v);
nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const CPVerdict& v);
nlohmann::json to_json(const WitnessCandidate& w);
nlohmann::json to_json(const NegativityScan& s);
nlohmann::json generator_to_json(const GKSGenerator& g, bool include_basis);
nlohmann::json generator_to_json(const LindbladGenerator& l);

cplx complex_from_json(const nlohmann::json& j, const std::string& path);
ComplexVector vector_from_json(const nlohmann::json& j, const std::string& path, std::optional<std::size_t> len = {});
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path, std::optional<std::size_t> rows = {},
                               std::optional<std::size_t> cols = {});

/// "start:stop:points:log" or "start:stop:points:lin".
std::vector<double> parse_grid_flag(std::string_view spec);

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cplab::cli
