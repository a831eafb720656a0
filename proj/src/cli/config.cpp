#include <charconv>
#include <cmath>
#include <set>
#include <string>

#include "cplab/cli.hpp"
#include "cplab/error.hpp"

namespace cplab::cli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, "field '" + path + "': " + msg);
}

double number_from_json(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

std::vector<double> times_from_json(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of times");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double t = number_from_json(j[i], path + "[" + std::to_string(i) + "]");
    if (t < 0.0) fail(path + "[" + std::to_string(i) + "]", "times must be >= 0");
    out.push_back(t);
  }
  return out;
}

std::vector<ComplexMatrix> matrices_from_json(const json& j, const std::string& path, std::size_t d) {
  if (!j.is_array()) fail(path, "expected a list of matrices");
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], path + "[" + std::to_string(i) + "]", d, d));
  return out;
}

std::optional<OperatorBasis> basis_from_json(const json& section, const std::string& path, std::size_t d) {
  if (!section.contains("basis")) return std::nullopt;
  const std::string bpath = path + ".basis";
  std::vector<ComplexMatrix> els = matrices_from_json(section["basis"], bpath, d);
  if (els.size() != d * d - 1) {
    fail(bpath, "expected " + std::to_string(d * d - 1) + " matrices, got " + std::to_string(els.size()));
  }
  OperatorBasis basis(d, std::move(els));
  const BasisReport r = validate_basis(basis);
  if (!r.pass) {
    fail(bpath, "not an orthonormal traceless family (trace deviation " + std::to_string(r.max_trace_deviation) +
                    ", Gram deviation " + std::to_string(r.max_gram_deviation) + ")");
  }
  return basis;
}

void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) fail(path.empty() ? key : path + "." + key, "unknown key");
  }
}

ComplexMatrix hamiltonian_from(const json& section, const std::string& path, std::size_t d) {
  if (!section.contains("hamiltonian")) return ComplexMatrix(d, d);
  return matrix_from_json(section["hamiltonian"], path + ".hamiltonian", d, d);
}

}  // namespace

const OperatorBasis& ProblemConfig::basis() const {
  const auto& b = std::visit([](const auto& s) -> const std::optional<OperatorBasis>& { return s.basis; }, generator);
  if (!b) throw Error(ErrorCode::ConfigError, "operator basis not initialised");
  return *b;
}

GKSGenerator ProblemConfig::gks_generator() const {
  if (const auto* g = std::get_if<GksSpec>(&generator)) {
    return GKSGenerator(g->hamiltonian, g->coeff, basis(), tolerances);
  }
  const auto& l = std::get<LindbladSpec>(generator);
  return lindblad_to_gks(LindbladGenerator(l.hamiltonian, l.jump_ops, tolerances), basis(), tolerances);
}

cplx complex_from_json(const json& j, const std::string& path) {
  if (j.is_number()) return {number_from_json(j, path), 0.0};
  if (j.is_array() && j.size() == 2) {
    return {number_from_json(j[0], path + "[0]"), number_from_json(j[1], path + "[1]")};
  }
  fail(path, "complex entry must be a number or [re, im]");
}

ComplexVector vector_from_json(const json& j, const std::string& path, std::optional<std::size_t> len) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of complex entries");
  if (len && j.size() != *len) {
    fail(path, "expected " + std::to_string(*len) + " entries, got " + std::to_string(j.size()));
  }
  ComplexVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(complex_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  return v;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path, std::optional<std::size_t> rows,
                               std::optional<std::size_t> cols) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty list of rows");
  if (rows && j.size() != *rows) {
    fail(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(j.size()));
  }
  if (!j[0].is_array()) fail(path + "[0]", "expected a row (list of complex entries)");
  const std::size_t ncols = cols ? *cols : j[0].size();
  std::vector<cplx> entries;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rpath = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) fail(rpath, "expected a row (list of complex entries)");
    const ComplexVector row = vector_from_json(j[r], rpath, ncols);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(j.size(), ncols, std::move(entries));
}

ProblemConfig parse_config_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C" in its message.
    throw Error(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

ProblemConfig parse_config(const json& doc) {
  if (!doc.is_object()) fail("<root>", "config must be a JSON object");
  check_keys(doc, "", {"dim", "gks", "lindblad", "tolerance", "tolerances", "seed", "time_grid", "cp_times", "state",
                       "state_vector", "time", "psi", "phi", "explicit_w"});

  ProblemConfig cfg;
  cfg.source = doc;
  if (!doc.contains("dim")) fail("dim", "missing");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 2) fail("dim", "must be an integer >= 2");
  cfg.dim = doc["dim"].get<std::size_t>();
  const std::size_t d = cfg.dim;

  const bool has_gks = doc.contains("gks");
  const bool has_lindblad = doc.contains("lindblad");
  if (has_gks == has_lindblad) fail("gks|lindblad", "exactly one generator form must be given");

  try {
    if (has_gks) {
      const json& s = doc["gks"];
      if (!s.is_object()) fail("gks", "expected an object");
      check_keys(s, "gks", {"hamiltonian", "coeff", "basis"});
      if (!s.contains("coeff")) fail("gks.coeff", "missing");
      GksSpec spec{hamiltonian_from(s, "gks", d), matrix_from_json(s["coeff"], "gks.coeff", d * d - 1, d * d - 1),
                   basis_from_json(s, "gks", d)};
      cfg.generator = std::move(spec);
    } else {
      const json& s = doc["lindblad"];
      if (!s.is_object()) fail("lindblad", "expected an object");
      check_keys(s, "lindblad", {"hamiltonian", "jump_operators", "basis"});
      LindbladSpec spec{hamiltonian_from(s, "lindblad", d),
                        s.contains("jump_operators")
                            ? matrices_from_json(s["jump_operators"], "lindblad.jump_operators", d)
                            : std::vector<ComplexMatrix>{},
                        basis_from_json(s, "lindblad", d)};
      cfg.generator = std::move(spec);
    }
    std::visit(
        [&](auto& spec) {
          cfg.custom_basis = spec.basis.has_value();
          if (!spec.basis) spec.basis = standard_basis(d);
        },
        cfg.generator);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, std::string("generator: ") + e.what());
  }

  if (doc.contains("tolerance")) {
    cfg.tolerances.positivity = number_from_json(doc["tolerance"], "tolerance");
    cfg.tolerance_from_config = true;
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) fail("tolerances", "expected an object");
    check_keys(t, "tolerances", {"positivity", "hermiticity"});
    if (t.contains("positivity")) {
      cfg.tolerances.positivity = number_from_json(t["positivity"], "tolerances.positivity");
      cfg.tolerance_from_config = true;
    }
    if (t.contains("hermiticity")) cfg.tolerances.hermiticity = number_from_json(t["hermiticity"], "tolerances.hermiticity");
  }
  if (cfg.tolerances.positivity <= 0.0) fail("tolerance", "must be positive");
  if (cfg.tolerances.hermiticity <= 0.0) fail("tolerances.hermiticity", "must be positive");

  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) fail("seed", "must be a nonnegative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("time_grid")) cfg.time_grid = times_from_json(doc["time_grid"], "time_grid");
  if (doc.contains("cp_times")) cfg.cp_times = times_from_json(doc["cp_times"], "cp_times");
  if (doc.contains("time")) {
    const double t = number_from_json(doc["time"], "time");
    if (t < 0.0) fail("time", "must be >= 0");
    cfg.time = t;
  }
  if (doc.contains("state") && doc.contains("state_vector")) fail("state|state_vector", "give at most one initial state");
  if (doc.contains("state")) {
    const ComplexMatrix m = matrix_from_json(doc["state"], "state");
    if (!m.is_square() || (m.rows() != d && m.rows() != d * d)) {
      fail("state", "must be " + std::to_string(d) + "x" + std::to_string(d) + " or " + std::to_string(d * d) + "x" +
                        std::to_string(d * d));
    }
    cfg.state = m;
  }
  if (doc.contains("state_vector")) {
    const ComplexVector v = vector_from_json(doc["state_vector"], "state_vector");
    if (v.size() != d && v.size() != d * d) fail("state_vector", "length must be d or d^2");
    if (norm(v) == 0.0) fail("state_vector", "must be nonzero");
    cfg.state = DensityMatrix::pure(v).matrix();
  }
  if (doc.contains("psi")) cfg.psi = vector_from_json(doc["psi"], "psi", d * d);
  if (doc.contains("phi")) cfg.phi = vector_from_json(doc["phi"], "phi", d * d);
  if (doc.contains("explicit_w")) cfg.explicit_w = matrix_from_json(doc["explicit_w"], "explicit_w", d, d);
  return cfg;
}

void apply_preset(ProblemConfig& cfg, std::string_view preset) {
  if (preset != "meson-d2") throw Error(ErrorCode::ConfigError, "unknown preset '" + std::string(preset) + "'");
  if (cfg.dim != 2) fail("dim", "preset meson-d2 requires dim = 2");
  const ComplexVector singlet = flatten(singlet_matrix());
  if (!cfg.state) cfg.state = DensityMatrix::pure(singlet).matrix();
  if (!cfg.psi) cfg.psi = singlet;
}

std::vector<double> parse_grid_flag(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = spec.find(':', start);
    parts.emplace_back(spec.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  if (parts.size() != 4) throw Error(ErrorCode::ConfigError, "--grid expects start:stop:points:log|lin");
  auto to_double = [](const std::string& s) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw Error(ErrorCode::ConfigError, "--grid: '" + s + "' is not a number");
    }
    return v;
  };
  const double a = to_double(parts[0]);
  const double b = to_double(parts[1]);
  std::size_t n = 0;
  const auto res = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), n);
  if (res.ec != std::errc() || res.ptr != parts[2].data() + parts[2].size() || n == 0) {
    throw Error(ErrorCode::ConfigError, "--grid: point count must be a positive integer");
  }
  if (parts[3] != "log" && parts[3] != "lin") throw Error(ErrorCode::ConfigError, "--grid: spacing must be log or lin");
  try {
    return make_grid(a, b, n, parts[3] == "log");
  } catch (const Error& e) {
    throw Error(ErrorCode::ConfigError, std::string("--grid: ") + e.what());
  }
}

}  // namespace cplab::cli
