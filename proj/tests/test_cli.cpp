#include "doctest.h"
#include "support.hpp"

#include "scc/cli.hpp"
#include "scc/families.hpp"
#include "scc/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace scc;
using io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("scc_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST_CASE("shortest round-trip doubles") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int t = 0; t < 1000; ++t) {
    const double v = u(rng) * std::pow(10.0, t % 13 - 6);
    const std::string s = io::format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(io::format_double(0.5) == "0.5");
  CHECK(io::format_double(1.0) == "1");
}

TEST_CASE("configuration json round trip is exact") {
  std::mt19937_64 rng(72);
  for (int t = 0; t < 20; ++t) {
    const Configuration c = test::random_configuration(rng, 1 + t % 4, 3 + t % 4);
    const MassVector m(test::random_masses(rng, c.size()));
    const std::string text = io::to_json(c, m).dump();
    const Json j = io::parse_json(text);
    const Configuration back = io::configuration_from_json(j);
    CHECK(back.dim() == c.dim());
    CHECK(test::max_abs(back.points() - c.points()) == 0.0);
    const auto mb = io::masses_from_json(j);
    REQUIRE(mb.has_value());
    CHECK(mb->values() == m.values());
  }
}

TEST_CASE("json errors carry line and column") {
  try {
    io::parse_json("{\n  \"dim\": 1,\n  \"points\": [[1, 0],, ]\n}");
    FAIL("expected a parse error");
  } catch (const std::exception& e) {
    const std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
  CHECK_THROWS(io::configuration_from_json(Json{{"dim", 1}}));
  CHECK_THROWS(io::configuration_from_json(Json{{"dim", 1}, {"points", {{1, 0, 0}, {0, 1, 0}}}}));
}

TEST_CASE("family piped into verify") {
  const Run fam = run({"family", "tetra", "--c", "0.3333333333"});
  REQUIRE(fam.code == 0);
  const Run ver = run({"verify", "-"}, fam.out);
  CHECK(ver.code == 0);
  const Json r = Json::parse(ver.out);
  CHECK(r["verdict"].get<bool>());
  CHECK(r["max_norm"].get<double>() < 1e-9);
  CHECK(r.contains("gradient_norms"));
  CHECK(r.contains("theta"));
  CHECK(r["tol"].get<double>() == 1e-9);
}

TEST_CASE("every family kind round-trips through verify") {
  const std::vector<std::vector<std::string>> kinds = {
      {"family", "odd-polygon", "--k", "3"},
      {"family", "complementary", "--k1", "1", "--k2", "2", "--m", "2", "--m-bar", "0.5"},
      {"family", "acute-triangle", "--alpha", "2.1", "--beta", "1.9"},
      {"family", "tetra", "--c", "0.7"},
      {"family", "tetra", "--second-root"},
      {"family", "pentatope", "--c", "0.4"},
      {"family", "pentatope", "--second-root"},
      {"family", "simplex", "--n", "5"},
  };
  for (const auto& args : kinds) {
    CAPTURE(args[1]);
    const Run fam = run(args);
    REQUIRE(fam.code == 0);
    CHECK(Json::parse(fam.out).contains("family"));
    CHECK(run({"verify", "-"}, fam.out).code == 0);
  }
}

TEST_CASE("verify of a non-critical configuration exits 1") {
  // near-square rhombus, no antipodal pair
  const std::string rhombus = temp_file(
      "rhombus.json",
      io::to_json(Configuration::from_directions(
                      (Eigen::MatrixXd(2, 4) << 1, -0.05, -1, 0.06, 0, 1, 0.02, -1).finished()))
          .dump());
  const Run r = run({"verify", rhombus});
  CHECK(r.code == 1);
  CHECK_FALSE(Json::parse(r.out)["verdict"].get<bool>());
  CHECK(Json::parse(r.out)["max_norm"].get<double>() > 1e-3);

  const std::string off_sphere = temp_file("off.json", R"({"dim": 1, "points": [[1, 0], [0, 1.5], [-1, 0.1]]})");
  const Run bad = run({"verify", off_sphere});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unit") != std::string::npos);
}

TEST_CASE("usage and input errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"verify", "/nonexistent/file.json"}).code == 2);
  const Run malformed = run({"verify", "-"}, "{\"dim\": 1,\n \"points\": [}");
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line 2") != std::string::npos);
  const Run domain = run({"family", "acute-triangle", "--alpha", "1", "--beta", "1"});
  CHECK(domain.code == 2);
  CHECK(domain.err.find("pi < alpha + beta") != std::string::npos);
  CHECK(run({"family", "tetra"}).code == 2);
  CHECK(run({"search", "--n", "2", "--masses", "1,x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("criterion and masses commands") {
  const Run fam = run({"family", "tetra", "--c", "0.6"});
  const Run crit = run({"criterion", "-"}, fam.out);
  CHECK(crit.code == 0);
  const Json r = Json::parse(crit.out);
  CHECK(r["verdict"].get<bool>());
  CHECK(r["s_residuals"].size() == 2);
  CHECK(r["m_residuals"].size() == 3);

  const Run table = run({"criterion", "-", "--table"}, fam.out);
  CHECK(table.code == 0);
  CHECK(table.out.find("verdict = special central configuration") != std::string::npos);

  const Run wrong = run({"criterion", "-", "--masses", "1,1,1,1"}, fam.out);
  CHECK(wrong.code == 1);

  const Run masses = run({"masses", "-"}, fam.out);
  CHECK(masses.code == 0);
  const Json mj = Json::parse(masses.out);
  const Json expected = Json::parse(fam.out)["masses"];
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(test::relative(mj["masses"][i].get<double>(), expected[i].get<double>()) < 1e-9);
  }
  CHECK(run({"masses", "-", "--best-anchor"}, fam.out).code == 0);

  const Run six = run({"family", "complementary"});
  CHECK(run({"criterion", "-"}, six.out).code == 2);
}

TEST_CASE("sweep output") {
  const Run csv = run({"sweep", "tetra", "--samples", "5", "--csv"});
  CHECK(csv.code == 0);
  std::istringstream lines(csv.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto comma = line.find(',');
    REQUIRE(comma != std::string::npos);
    const double c = std::stod(line.substr(0, comma));
    const double f = std::stod(line.substr(comma + 1));
    CHECK(f == doctest::Approx(families::tetra_mass_ratio(c)).epsilon(1e-15));
  }
  CHECK(rows == 5);
  const Run j = run({"sweep", "pentatope", "--samples", "3"});
  CHECK(Json::parse(j.out).size() == 3);
  CHECK(run({"sweep", "cube", "--samples", "3"}).code == 2);
}

TEST_CASE("search command is deterministic") {
  const std::vector<std::string> args = {"search", "--n", "1", "--masses", "1,1,1", "--trials", "30", "--seed", "5"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const Json classes = Json::parse(a.out);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].contains("fingerprint"));
  CHECK(classes[0]["count"].get<int>() >= 1);
  CHECK(a.err.find("class") != std::string::npos);

  const std::string mass_file = temp_file("masses.json", "[1, 1, 1]");
  CHECK(run({"search", "--n", "1", "--masses", "@" + mass_file, "--trials", "30", "--seed", "5"}).out == a.out);
}

TEST_CASE("simulate and hemisphere commands") {
  const Run fam = run({"family", "simplex", "--n", "4"});
  const std::string trace = (std::filesystem::temp_directory_path() / "scc_test_trace.csv").string();
  const Run sim = run({"simulate", "-", "--dt", "0.01", "--t-final", "1", "--trace", trace}, fam.out);
  CHECK(sim.code == 0);
  const Json report = Json::parse(sim.out);
  CHECK(report["max_position_drift"].get<double>() < 1e-8);
  std::ifstream tf(trace);
  int rows = 0;
  std::string line;
  while (std::getline(tf, line)) ++rows;
  CHECK(rows == 101);

  const Run moved = run({"simulate", "-", "--masses", "2,1,1,1", "--dt", "0.001", "--t-final", "1"}, fam.out);
  CHECK(Json::parse(moved.out)["max_position_drift"].get<double>() > 1e-3);

  const Run hemi = run({"hemisphere", "-"}, fam.out);
  CHECK(hemi.code == 0);
  CHECK_FALSE(Json::parse(hemi.out)["in_closed_hemisphere"].get<bool>());
  const Run arc = run({"hemisphere", "-"}, R"({"dim": 1, "points": [[1, 0], [0, 1], [0.6, 0.8]]})");
  const Json aj = Json::parse(arc.out);
  CHECK(aj["in_closed_hemisphere"].get<bool>());
  CHECK(aj["witness"].size() == 2);
}
