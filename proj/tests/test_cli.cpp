#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infogeom/cli.hpp"
#include "infogeom/io.hpp"

using namespace infogeom;
namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"infogeom"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(int(argv.size()), argv.data());
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "infogeom_cli_test";
    fs::create_directories(path);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_states(const std::string& path, const Mat& rho, const Mat& sigma) {
  std::ostringstream ss;
  ss << "{\"rho\": " << write_matrix_json(rho)
     << ", \"sigma\": " << write_matrix_json(sigma) << "}";
  write_file_atomic(path, ss.str());
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

Mat classical2(double p) {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = p;
  m(1, 1) = 1.0 - p;
  return m;
}

}  // namespace

TEST_CASE("garden asserts cleanly and reports unit normalization") {
  TempDir tmp;
  std::string out = tmp.file("garden.csv");
  CHECK(run({"garden", "--assert", "--out", out}) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() > 5);
  bool saw_norm = false;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    REQUIRE(cells.size() == 8);
    CHECK(std::stod(cells[1]) == doctest::Approx(1.0).epsilon(1e-12));  // f(1)
    if (cells[7] != "-") {
      CHECK(std::stod(cells[7]) == doctest::Approx(1.0).epsilon(1e-9));
      saw_norm = true;
    }
  }
  CHECK(saw_norm);
}

TEST_CASE("metric on the classical pair") {
  TempDir tmp;
  std::string states = tmp.file("states.json");
  write_states(states, classical2(0.5), classical2(0.75));
  std::string out = tmp.file("metric.json");
  CHECK(run({"metric", "--states", states, "--f", "bures", "--f", "kmb", "--f",
             "wy", "--out", out}) == 0);
  std::string text = slurp_file(out);
  auto j = nlohmann::json::parse(text);
  CHECK(j["divergences"]["relative_entropy"].get<double>() ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-6));
  // pi = 1/2 with a commuting perturbation: every monotone reports 0.04
  write_states(states, classical2(0.5), classical2(0.6));
  CHECK(run({"metric", "--states", states, "--f", "bures", "--f", "kmb", "--f",
             "harmonic", "--out", out}) == 0);
  j = nlohmann::json::parse(slurp_file(out));
  for (const std::string& name : {"bures", "kmb", "harmonic"})
    CHECK(j["monotones"][name]["fisher_information"].get<double>() ==
          doctest::Approx(0.04).epsilon(1e-10));
}

TEST_CASE("metric error paths use the documented exit codes") {
  TempDir tmp;
  std::string bad = tmp.file("bad.json");
  write_file_atomic(bad, "{\"rho\": 3}");
  CHECK(run({"metric", "--states", bad}) == 2);

  std::string lowrank = tmp.file("lowrank.json");
  write_states(lowrank, classical2(1.0), classical2(0.5));
  CHECK(run({"metric", "--states", lowrank, "--f", "bures"}) == 3);
}

TEST_CASE("evolve presets") {
  TempDir tmp;
  std::string out = tmp.file("markov.csv");
  CHECK(run({"evolve", "--preset", "depolarizing:markov", "--f", "bures", "--T",
             "2", "--dt", "0.001", "--out", out}) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() == 2002);  // header + 2001 samples
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    double f = std::stod(rows[r][1]);
    CHECK(f < prev);
    prev = f;
  }

  // byte-identical reruns
  std::string out2 = tmp.file("markov2.csv");
  CHECK(run({"evolve", "--preset", "depolarizing:markov", "--f", "bures", "--T",
             "2", "--dt", "0.001", "--out", out2}) == 0);
  CHECK(slurp_file(out) == slurp_file(out2));

  // T = 0 gives a single row
  std::string single = tmp.file("single.csv");
  CHECK(run({"evolve", "--preset", "amplitude-damping", "--f", "bures", "--T", "0",
             "--dt", "0.001", "--out", single}) == 0);
  CHECK(read_csv(single).size() == 2);

  // a measure-less monotone is refused unless the fallback is requested
  CHECK(run({"evolve", "--preset", "depolarizing:markov", "--f", "variance",
             "--T", "1", "--out", tmp.file("var.csv")}) == 4);
  CHECK(run({"evolve", "--preset", "depolarizing:markov", "--f", "variance",
             "--T", "1", "--fallback-fd", "--out", tmp.file("var.csv")}) == 0);
}

TEST_CASE("markov verdicts for the presets") {
  TempDir tmp;
  std::string out = tmp.file("markov.json");
  CHECK(run({"markov", "--preset", "depolarizing:markov", "--T", "5", "--dt",
             "0.001", "--out", out}) == 0);
  auto j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["verdict"] == "MARKOVIAN");

  CHECK(run({"markov", "--preset", "depolarizing:nonmarkov", "--T", "4", "--dt",
             "0.001", "--out", out}) == 0);
  j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["verdict"] == "NON-MARKOVIAN");
  CHECK(j["fisher_prime_sign_changes"].get<int>() == 5);
}

TEST_CASE("classical counterexample preset") {
  TempDir tmp;
  std::string out = tmp.file("classical.json");
  CHECK(run({"markov", "--preset", "classical-counterexample", "--out", out}) == 0);
  auto j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["verdict"] == "NON-MARKOVIAN");
  CHECK(j["worst_traceless_trace_distance_derivative"].get<double>() <= 0.0);
  CHECK(j["embedded_witness_derivative"].get<double>() > 0.0);
}

TEST_CASE("recover emits a retrodiction series") {
  TempDir tmp;
  std::string out = tmp.file("recover.csv");
  CHECK(run({"recover", "--preset", "depolarizing:markov", "--fprime", "harmonic",
             "--f", "bures", "--T", "1", "--dt", "0.05", "--out", out}) == 0);
  auto rows = read_csv(out);
  REQUIRE(rows.size() > 10);
  double prev = -1;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    double retrieval = std::stod(rows[r][2]);
    CHECK(retrieval >= prev - 1e-12);
    prev = retrieval;
    CHECK(rows[r][3] == "0");  // no expansion under the Markov preset
  }
}

TEST_CASE("dbalance presets") {
  TempDir tmp;
  std::string out = tmp.file("db.json");
  CHECK(run({"dbalance", "--preset", "fisher-only", "--out", out}) == 0);
  auto j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["fisher"] == "PASS");
  CHECK(j["alicki"] == "FAIL");
  CHECK(j["modular_commutator_norm"].get<double>() > 1e-3);
  CHECK(j["resynthesis_residual"].get<double>() < 1e-8);
}

TEST_CASE("geodesic distances") {
  TempDir tmp;
  std::string states = tmp.file("states.json");
  Mat rho = classical2(0.6);
  write_states(states, rho, rho);
  std::string out = tmp.file("geo.json");
  CHECK(run({"geodesic", "--states", states, "--out", out}) == 0);
  auto j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["bures_distance"].get<double>() < 1e-5);
  CHECK(j["wy_distance"].get<double>() < 1e-5);
  CHECK(j["fidelity"].get<double>() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("estimate reports chernoff data") {
  TempDir tmp;
  std::string states = tmp.file("states.json");
  write_states(states, classical2(0.5), classical2(0.7));
  std::string out = tmp.file("est.json");
  CHECK(run({"estimate", "--states", states, "--f", "bures", "--out", out}) == 0);
  auto j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["chernoff_xi"].get<double>() > 0);
  CHECK(j["chernoff_s_star"].get<double>() >= 0);
  CHECK(j["cramer_rao_bound"]["bures"].get<double>() > 0);
}

TEST_CASE("format selection") {
  TempDir tmp;
  std::string out = tmp.file("garden.json");
  CHECK(run({"garden", "--format", "json", "--out", out}) == 0);
  auto j = nlohmann::json::parse(slurp_file(out));
  CHECK(j["monotones"].size() > 5);
  // trajectory commands are CSV-only
  CHECK(run({"evolve", "--preset", "depolarizing:markov", "--T", "0.1",
             "--format", "json", "--out", tmp.file("x.csv")}) == 2);
}

TEST_CASE("scheduled generator rates interpolate linearly") {
  TempDir tmp;
  std::string gen = tmp.file("sched.json");
  // single amplitude-damping jump with a rate ramp 1 -> 0 over [0, 1]
  write_file_atomic(gen, R"({
    "H": {"dim": 2, "re": [[0,0],[0,0]], "im": [[0,0],[0,0]]},
    "jumps": [{"dim": 2, "re": [[0,1],[0,0]], "im": [[0,0],[0,0]]}],
    "schedule": [[0.0, 1.0], [1.0, 0.0]]
  })");
  Lindbladian lind = read_generator_json(slurp_file(gen));
  CHECK(lind.time_dependent());
  CHECK(lind.rates(0.0)(0) == doctest::Approx(1.0));
  CHECK(lind.rates(0.25)(0) == doctest::Approx(0.75));
  CHECK(lind.rates(2.0)(0) == doctest::Approx(0.0));  // clamped past the end
  std::string out = tmp.file("sched.csv");
  CHECK(run({"evolve", "--generator", gen, "--f", "bures", "--T", "0.5", "--dt",
             "0.001", "--out", out}) == 0);
  CHECK(read_csv(out).size() == 502);
}

TEST_CASE("generator files round-trip through evolve") {
  TempDir tmp;
  Mat a = Mat::Zero(2, 2);
  a(0, 1) = 1.0;
  RVec r(1);
  r << 0.9;
  Lindbladian lind(Mat::Zero(2, 2), {a}, r);
  std::string gen = tmp.file("gen.json");
  write_file_atomic(gen, write_generator_json(lind));
  std::string out = tmp.file("traj.csv");
  CHECK(run({"evolve", "--generator", gen, "--f", "kmb", "--T", "0.5", "--dt",
             "0.001", "--out", out}) == 0);
  auto rows = read_csv(out);
  CHECK(rows.size() == 502);
}
