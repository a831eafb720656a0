#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cplab/cli.hpp"
#include "cplab/error.hpp"

using namespace cplab;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

std::string data(const std::string& name) { return std::string(CPLAB_TEST_DATA_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Writes a config into the temp directory and returns its path.
std::string temp_config(const std::string& name, const json& doc) {
  const fs::path p = fs::temp_directory_path() / ("cplab_test_" + name + ".json");
  std::ofstream(p) << doc.dump();
  return p.string();
}

double complex_re(const json& z) { return z.at(0).get<double>(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("check-cp on the three reference configs") {
    const auto dep = run_cli({"check-cp", "--config", data("depolarizing_d2.json")});
    CHECK(dep.code == 0);
    CHECK(dep.report()["verdict"]["is_cp"] == true);
    CHECK(dep.report()["witness"].is_null());

    const auto bad = run_cli({"check-cp", "--config", data("non_cp_d2.json")});
    CHECK(bad.code == 2);
    const json r = bad.report();
    CHECK(r["verdict"]["is_cp"] == false);
    CHECK(r["verdict"]["min_C_eigenvalue"].get<double>() == doctest::Approx(-1.0));
    REQUIRE(r["witness"].is_object());
    CHECK(r["witness"]["value"].get<double>() < 0.0);
    CHECK(r["witness"]["quadratic_form"].get<double>() == doctest::Approx(-1.0));

    const auto mal = run_cli({"check-cp", "--config", data("malformed_d2.json")});
    CHECK(mal.code == 1);
    const json e = mal.report();
    CHECK(e["error"]["code"] == "ConfigError");
    CHECK(e["error"]["message"].get<std::string>().find("gks.hamiltonian[0]") != std::string::npos);
  }

  TEST_CASE("reports are deterministic") {
    for (const char* cfg : {"depolarizing_d2.json", "non_cp_d2.json"}) {
      const auto a = run_cli({"witness", "--config", data(cfg)});
      const auto b = run_cli({"witness", "--config", data(cfg)});
      CHECK(a.out == b.out);
      CHECK(a.code == b.code);
    }
  }

  TEST_CASE("witness subcommand") {
    const auto bad = run_cli({"witness", "--config", data("non_cp_d2.json")});
    CHECK(bad.code == 2);
    const json r = bad.report();
    CHECK(r["witness"]["value"].get<double>() < 0.0);
    REQUIRE(r["scan"]["first_negative_time"].is_number());
    CHECK(r["scan"]["first_negative_time"].get<double>() <= 1e-2);

    const auto ok = run_cli({"witness", "--config", data("depolarizing_d2.json")});
    CHECK(ok.code == 0);
    CHECK(ok.report()["no_negative_direction"] == true);
    CHECK(ok.report()["scan"]["first_negative_time"].is_null());
  }

  TEST_CASE("witness with the explicit-W fixture") {
    const auto res = run_cli({"witness", "--config", data("bell_fixture_d2.json"), "--explicit-w", "--singlet-phi"});
    CHECK(res.code == 2);
    const json f = res.report()["fixture"];
    REQUIRE(f.is_object());
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(complex_re(f["Phi"][0][1]) == doctest::Approx(r));
    CHECK(complex_re(f["Phi"][1][0]) == doctest::Approx(-r));
    const double s = std::sqrt(2.0);
    CHECK(complex_re(f["Psi_dagger"][0][0]) == doctest::Approx(-3.0 * s));
    CHECK(complex_re(f["Psi_dagger"][0][1]) == doctest::Approx(s));
    CHECK(complex_re(f["Psi_dagger"][1][1]) == doctest::Approx(2.0 * s));
    CHECK(f["transpose_sign"] == -1);
  }

  TEST_CASE("convert") {
    const auto l = run_cli({"convert", "--config", data("sigma_minus_lindblad.json")});
    CHECK(l.code == 0);
    const json c = l.report()["converted"]["gks"]["coeff"];
    CHECK(complex_re(c[0][0]) == doctest::Approx(0.5));
    CHECK(c[0][1][1].get<double>() == doctest::Approx(0.5));
    CHECK(c[1][0][1].get<double>() == doctest::Approx(-0.5));
    CHECK(complex_re(c[2][2]) == doctest::Approx(0.0));
    CHECK(l.report()["round_trip_max_deviation"].get<double>() <= 1e-12);

    CHECK(run_cli({"convert", "--config", data("non_cp_d2.json")}).code == 2);

    const auto empty = run_cli({"convert", "--config", temp_config("empty_jumps", {{"dim", 2}, {"lindblad", {{"jump_operators", json::array()}}}})});
    CHECK(empty.code == 0);
    for (const auto& row : empty.report()["converted"]["gks"]["coeff"])
      for (const auto& z : row) CHECK(complex_re(z) == 0.0);

    const auto dep = run_cli({"convert", "--config", data("depolarizing_d2.json")});
    CHECK(dep.code == 0);
    CHECK(dep.report()["converted"]["lindblad"]["jump_operators"].size() == 3);
  }

  TEST_CASE("evolve") {
    const auto echo = run_cli({"evolve", "--config", data("depolarizing_d2.json"), "--preset", "meson-d2", "--time", "0"});
    CHECK(echo.code == 0);
    const json s = echo.report()["evolved_state"];
    REQUIRE(s.size() == 4);
    CHECK(complex_re(s[1][1]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(complex_re(s[1][2]) == doctest::Approx(-0.5).epsilon(1e-12));

    const auto later = run_cli({"evolve", "--config", data("depolarizing_d2.json"), "--preset", "meson-d2", "--time", "0.5"});
    CHECK(later.code == 0);
    CHECK(later.report()["positive"] == true);
    CHECK(complex_re(later.report()["trace"]) == doctest::Approx(1.0).epsilon(1e-12));

    const auto neg = run_cli({"evolve", "--config", data("non_cp_d2.json"), "--witness-state", "--time", "1e-3"});
    CHECK(neg.code == 2);
    CHECK(neg.report()["min_eigenvalue"].get<double>() < 0.0);
  }

  TEST_CASE("scan with preset and grid flag") {
    const auto res = run_cli({"scan", "--config", data("non_cp_d2.json"), "--preset", "meson-d2", "--grid", "1e-4:1:10:log"});
    CHECK(res.code == 2);
    const json sc = res.report()["scan"];
    CHECK(sc["times"].size() == 10);
    CHECK(sc["first_negative_time"].is_number());
  }

  TEST_CASE("grid flag parsing") {
    const auto g = cli::parse_grid_flag("0:1:3:lin");
    REQUIRE(g.size() == 3);
    CHECK(g[1] == doctest::Approx(0.5));
    CHECK(cli::parse_grid_flag("1e-3:1:4:log")[1] == doctest::Approx(1e-2));
    CHECK_THROWS_AS(cli::parse_grid_flag("0:1:3"), Error);
    CHECK_THROWS_AS(cli::parse_grid_flag("a:1:3:log"), Error);
    CHECK_THROWS_AS(cli::parse_grid_flag("0:1:3:cubic"), Error);
    CHECK(run_cli({"scan", "--config", data("non_cp_d2.json"), "--grid", "1:0:5:lin"}).code == 1);
  }

  TEST_CASE("config validation names the field") {
    auto message_for = [](const json& doc) {
      try {
        cli::parse_config(doc);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ConfigError);
        return std::string(e.what());
      }
      return std::string("no error");
    };
    CHECK(message_for({{"dim", 2}}).find("gks") != std::string::npos);
    CHECK(message_for({{"dim", 2}, {"gks", {{"coeff", json::array()}}}, {"lindblad", json::object()}}) != "no error");
    CHECK(message_for({{"dim", 2}, {"gks", {{"coeff", {{1, 0}, {0, 1}}}}}}).find("gks.coeff") != std::string::npos);
    CHECK(message_for({{"dim", 2}, {"gks", {{"coeff", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}}, {"colour", 1}})
              .find("colour") != std::string::npos);
    CHECK_THROWS_AS(cli::parse_config_text("{\"dim\": 2,"), Error);
  }

  TEST_CASE("usage errors exit 1") {
    CHECK(run_cli({}).code == 1);
    CHECK(run_cli({"check-cp"}).code == 1);
    CHECK(run_cli({"frobnicate", "--config", data("depolarizing_d2.json")}).code == 1);
    CHECK(run_cli({"check-cp", "--config", "/nonexistent/config.json"}).code == 1);
    CHECK(run_cli({"check-cp", "--config", data("depolarizing_d2.json"), "--preset", "nope"}).code == 1);
  }

  TEST_CASE("tolerance precedence: flag, config, environment") {
    const std::string cfg = data("depolarizing_d2.json");
    ::setenv("CPLAB_TOL", "1e-7", 1);
    CHECK(run_cli({"check-cp", "--config", cfg}).report()["tolerance"].get<double>() == 1e-7);
    CHECK(run_cli({"check-cp", "--config", cfg, "--tol", "1e-6"}).report()["tolerance"].get<double>() == 1e-6);
    const std::string with_tol = temp_config(
        "with_tol", {{"dim", 2}, {"gks", {{"coeff", {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}}, {"tolerance", 1e-8}});
    CHECK(run_cli({"check-cp", "--config", with_tol}).report()["tolerance"].get<double>() == 1e-8);
    ::unsetenv("CPLAB_TOL");
    CHECK(run_cli({"check-cp", "--config", cfg}).report()["tolerance"].get<double>() == 1e-9);
  }

  TEST_CASE("output flag writes the report to a file") {
    const fs::path p = fs::temp_directory_path() / "cplab_test_report.json";
    const auto res = run_cli({"check-cp", "--config", data("depolarizing_d2.json"), "--output", p.string()});
    CHECK(res.code == 0);
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(json::parse(ss.str())["verdict"]["is_cp"] == true);
  }
}
