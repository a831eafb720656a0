#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cplab/cli.hpp"
#include "cplab/error.hpp"
#include "cplab/random.hpp"

namespace cplab::cli {

using nlohmann::json;

namespace {

struct Options {
  std::string command;
  std::string config_path;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> grid;
  std::optional<std::string> output;
  std::optional<std::string> preset;
  std::optional<double> time;
  bool explicit_w = false;
  bool singlet_phi = false;
  bool witness_state = false;
};

struct Outcome {
  json report;
  int exit_code = kSuccess;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<double> env_tolerance() {
  const char* env = std::getenv("CPLAB_TOL");
  if (env == nullptr || *env == '\0') return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) {
    throw Error(ErrorCode::ConfigError, std::string("CPLAB_TOL='") + env + "' is not a positive number");
  }
  return v;
}

json base_report(const Options& opt, const ProblemConfig& cfg) {
  json r = {{"tool", kToolName},
            {"version", kToolVersion},
            {"command", opt.command},
            {"seed", cfg.seed},
            {"tolerance", cfg.tolerances.positivity},
            {"config", cfg.source}};
  if (opt.preset) r["preset"] = *opt.preset;
  return r;
}

std::vector<double> scan_grid(const Options& opt, const ProblemConfig& cfg) {
  if (opt.grid) return parse_grid_flag(*opt.grid);
  if (cfg.time_grid) return *cfg.time_grid;
  return default_scan_grid();
}

CPVerdict verdict_for(const GKSGenerator& g, const ProblemConfig& cfg) {
  return cfg.cp_times ? is_completely_positive(g, *cfg.cp_times, cfg.tolerances)
                      : is_completely_positive(g, kDefaultCpTimes, cfg.tolerances);
}

WitnessOptions witness_options(const ProblemConfig& cfg) { return {cfg.tolerances, cfg.seed}; }

// Probe pair for generators without a negative direction: the maximally
// entangled state and the (orthogonal) vector built from F_1.
std::pair<ComplexVector, ComplexVector> default_probe(const ProblemConfig& cfg) {
  const std::size_t d = cfg.dim;
  return {flatten(ComplexMatrix::identity(d)), flatten(cfg.basis()[0])};
}

Outcome cmd_check_cp(const Options& opt, const ProblemConfig& cfg) {
  const GKSGenerator g = cfg.gks_generator();
  const CPVerdict v = verdict_for(g, cfg);
  Outcome o{base_report(opt, cfg)};
  o.report["verdict"] = to_json(v);
  o.report["witness"] = nullptr;
  if (!v.is_cp) {
    if (auto w = construct_witness(g, witness_options(cfg))) o.report["witness"] = to_json(*w);
    o.exit_code = kNotCompletelyPositive;
  }
  return o;
}

Outcome cmd_witness(const Options& opt, const ProblemConfig& cfg) {
  const GKSGenerator g = cfg.gks_generator();
  const CPVerdict v = verdict_for(g, cfg);
  const std::vector<double> grid = scan_grid(opt, cfg);
  Outcome o{base_report(opt, cfg)};
  o.report["verdict"] = to_json(v);

  if (opt.explicit_w) {
    if (!cfg.explicit_w) throw Error(ErrorCode::ConfigError, "field 'explicit_w': required by --explicit-w");
    ComplexMatrix phi;
    if (opt.singlet_phi) {
      if (cfg.dim != 2) throw Error(ErrorCode::ConfigError, "--singlet-phi needs dim = 2");
      phi = singlet_matrix();
    } else {
      SimilarityOptions sim;
      sim.seed = cfg.seed;
      phi = similarity_to_transpose(*cfg.explicit_w, sim);
    }
    o.report["fixture"] = to_json(witness_from_similarity(g, *cfg.explicit_w, phi));
  }

  if (auto w = construct_witness(g, witness_options(cfg))) {
    o.report["witness"] = to_json(*w);
    o.report["scan"] = to_json(negativity_scan(g, w->psi, w->phi, grid, cfg.tolerances));
  } else {
    o.report["witness"] = nullptr;
    o.report["no_negative_direction"] = true;
    const auto [psi, phi] = default_probe(cfg);
    o.report["scan"] = to_json(negativity_scan(g, psi, phi, grid, cfg.tolerances));
  }
  if (!v.is_cp) o.exit_code = kNotCompletelyPositive;
  return o;
}

Outcome cmd_scan(const Options& opt, const ProblemConfig& cfg) {
  const GKSGenerator g = cfg.gks_generator();
  const std::vector<double> grid = scan_grid(opt, cfg);
  ComplexVector psi, phi;
  std::string source;
  if (cfg.psi && cfg.phi) {
    psi = *cfg.psi;
    phi = *cfg.phi;
    source = "config";
  } else if (cfg.psi) {
    // Given psi, Phi = W (Psi^dagger)^{-1} makes Phi Psi^dagger = W; the pair is
    // a witness whenever Psi^dagger W (Psi^dagger)^{-1} = +-W^T, which holds for
    // the singlet and every traceless 2x2 W.
    psi = *cfg.psi;
    auto w = construct_witness(g, witness_options(cfg));
    if (!w) {
      phi = default_probe(cfg).second;
      source = "config psi, basis probe phi";
    } else {
      const ComplexMatrix psi_dag = unflatten(psi, cfg.dim, cfg.dim).adjoint();
      phi = flatten(w->w_matrix * inverse(psi_dag));
      source = "config psi, phi from negative direction";
    }
  } else if (auto w = construct_witness(g, witness_options(cfg))) {
    psi = w->psi;
    phi = w->phi;
    source = "witness";
  } else {
    std::tie(psi, phi) = default_probe(cfg);
    source = "default probe";
  }
  Outcome o{base_report(opt, cfg)};
  const NegativityScan scan = negativity_scan(g, psi, phi, grid, cfg.tolerances);
  o.report["vectors"] = {{"source", source}, {"psi", to_json(psi)}, {"phi", to_json(phi)}};
  o.report["scan"] = to_json(scan);
  if (scan.first_negative_time) o.exit_code = kNotCompletelyPositive;
  return o;
}

Outcome cmd_convert(const Options& opt, const ProblemConfig& cfg) {
  Outcome o{base_report(opt, cfg)};
  Rng rng(cfg.seed);
  double deviation = 0.0;
  json converted = {{"dim", cfg.dim}};
  if (const auto* spec = std::get_if<GksSpec>(&cfg.generator)) {
    const GKSGenerator g(spec->hamiltonian, spec->coeff, *spec->basis, cfg.tolerances);
    // NotCompletelyPositive propagates and maps to exit status 2.
    const LindbladGenerator l = gks_to_lindblad(g, cfg.tolerances);
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix rho = random_density_matrix(rng, cfg.dim);
      deviation = std::max(deviation, (apply_generator(g, rho) - apply_lindblad(l, rho)).frobenius_norm());
    }
    converted["lindblad"] = generator_to_json(l);
  } else {
    const auto& lspec = std::get<LindbladSpec>(cfg.generator);
    const LindbladGenerator l(lspec.hamiltonian, lspec.jump_ops, cfg.tolerances);
    const GKSGenerator g = lindblad_to_gks(l, *lspec.basis, cfg.tolerances);
    for (int k = 0; k < 20; ++k) {
      const ComplexMatrix rho = random_density_matrix(rng, cfg.dim);
      deviation = std::max(deviation, (apply_generator(g, rho) - apply_lindblad(l, rho)).frobenius_norm());
    }
    converted["gks"] = generator_to_json(g, cfg.custom_basis);
  }
  o.report["converted"] = std::move(converted);
  o.report["round_trip_max_deviation"] = deviation;
  return o;
}

Outcome cmd_evolve(const Options& opt, const ProblemConfig& cfg) {
  const GKSGenerator g = cfg.gks_generator();
  const std::optional<double> t = opt.time ? opt.time : cfg.time;
  if (!t) throw Error(ErrorCode::ConfigError, "field 'time': required by evolve (or pass --time)");

  ComplexMatrix rho0;
  if (opt.witness_state) {
    auto w = construct_witness(g, witness_options(cfg));
    if (!w) throw Error(ErrorCode::ConfigError, "--witness-state: generator has no negative direction");
    rho0 = DensityMatrix::pure(w->psi).matrix();
  } else if (cfg.state) {
    rho0 = *cfg.state;
  } else {
    throw Error(ErrorCode::ConfigError, "field 'state': required by evolve");
  }
  const std::size_t d = cfg.dim;
  if (rho0.rows() != d && rho0.rows() != d * d) {
    throw Error(ErrorCode::DimensionMismatch, "state must be d x d or d^2 x d^2");
  }
  const DensityMatrix input(rho0, cfg.tolerances);
  const bool tensor = input.dim() == d * d;
  const Superoperator step = evolution_map(g, *t);
  const ComplexMatrix rho = tensor ? tensor_product(step, step).apply(input.matrix()) : step.apply(input.matrix());
  const double lo = min_eigenvalue(rho, 1e-8);
  const bool positive = lo >= -cfg.tolerances.positivity_abs(rho);

  Outcome o{base_report(opt, cfg)};
  o.report["tensor"] = tensor;
  o.report["time"] = *t;
  o.report["evolved_state"] = to_json(rho);
  o.report["trace"] = to_json(rho.trace());
  o.report["hermiticity_defect"] = hermiticity_defect(rho);
  o.report["min_eigenvalue"] = lo;
  o.report["positive"] = positive;
  if (!positive) o.exit_code = kNotCompletelyPositive;
  return o;
}

void emit(const json& report, const Options& opt, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (opt.output) {
    std::ofstream f(*opt.output, std::ios::binary);
    if (!f) throw Error(ErrorCode::ConfigError, "cannot write output file '" + *opt.output + "'");
    f << text;
  } else {
    out << text;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete-positivity analysis of GKS/Lindblad semigroup generators", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options opt;
  app.add_option("--config", opt.config_path, "Problem config (JSON)")->required();
  app.add_option("--tol", opt.tol, "Positivity tolerance (relative)")->check(CLI::PositiveNumber);
  app.add_option("--seed", opt.seed, "Seed for every random draw");
  app.add_option("--grid", opt.grid, "Scan grid start:stop:points:log|lin");
  app.add_option("--output", opt.output, "Write the report here instead of stdout");
  app.add_option("--preset", opt.preset, "Named preset")->check(CLI::IsMember({"meson-d2"}));

  app.add_subcommand("check-cp", "Decide complete positivity; attach a witness when it fails");
  auto* witness = app.add_subcommand("witness", "Construct the entangled witness and scan gamma_t (x) gamma_t");
  witness->add_flag("--explicit-w", opt.explicit_w, "Also build the witness for the config's explicit_w matrix");
  witness->add_flag("--singlet-phi", opt.singlet_phi, "With --explicit-w in d = 2, use the singlet as Phi");
  app.add_subcommand("convert", "Convert between GKS and Lindblad form");
  auto* evolve = app.add_subcommand("evolve", "Evolve a d x d state, or a d^2 x d^2 state under gamma_t (x) gamma_t");
  evolve->add_option("--time", opt.time, "Evolution time")->check(CLI::NonNegativeNumber);
  evolve->add_flag("--witness-state", opt.witness_state, "Start from the witness state |psi><psi|");
  app.add_subcommand("scan", "Negativity scan of gamma_t (x) gamma_t [|psi><psi|]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kSuccess : kUsageError;
  }
  opt.command = app.get_subcommands().front()->get_name();

  Outcome outcome;
  json partial;
  try {
    ProblemConfig cfg = parse_config_text(read_file(opt.config_path));
    if (opt.preset) apply_preset(cfg, *opt.preset);
    if (!cfg.tolerance_from_config) {
      if (auto env = env_tolerance()) cfg.tolerances.positivity = *env;
    }
    if (opt.tol) cfg.tolerances.positivity = *opt.tol;
    if (opt.seed) cfg.seed = *opt.seed;
    partial = base_report(opt, cfg);

    if (opt.command == "check-cp") outcome = cmd_check_cp(opt, cfg);
    else if (opt.command == "witness") outcome = cmd_witness(opt, cfg);
    else if (opt.command == "scan") outcome = cmd_scan(opt, cfg);
    else if (opt.command == "convert") outcome = cmd_convert(opt, cfg);
    else outcome = cmd_evolve(opt, cfg);
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << "\n";
    json report = partial.is_null() ? json{{"tool", kToolName}, {"version", kToolVersion}, {"command", opt.command}}
                                    : partial;
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    const int rc = e.code() == ErrorCode::NotCompletelyPositive ? kNotCompletelyPositive : kUsageError;
    try {
      emit(report, opt, out);
    } catch (const Error&) {
    }
    return rc;
  } catch (const std::exception& e) {
    err << kToolName << ": internal error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    emit(outcome.report, opt, out);
  } catch (const Error& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kUsageError;
  }
  return outcome.exit_code;
}

}  // namespace cplab::cli
