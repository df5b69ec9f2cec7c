#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "gme/json_io.hpp"
#include "gme/statesim.hpp"

using namespace gme;
namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* env = std::getenv("GMECERT_BIN");
  REQUIRE_MESSAGE(env != nullptr, "GMECERT_BIN must point at the built CLI");
  return env;
}

int run(const std::string& args) {
  std::string cmd = binary() + " " + args + " > /dev/null 2> /dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("gmecert_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("graph gen") {
  TempDir tmp;
  std::string out = tmp.file("g.json");
  CHECK(run("graph gen --family chain --n 5 -o " + out) == 0);
  Graph g = graph_from_json(Json::parse(slurp(out)));
  CHECK(g == make_chain(5));

  CHECK(run("graph gen --family lattice2d --nx 3 --ny 2 -o " + out) == 0);
  CHECK(graph_from_json(Json::parse(slurp(out))) == make_lattice2d(3, 2));

  CHECK(run("graph gen --family nosuch --n 4 -o " + out) == 2);
}

TEST_CASE("simulate produces uniform white-noise records") {
  TempDir tmp;
  std::string spec = tmp.file("spec.json");
  std::string rec = tmp.file("rec.json");
  write_file(spec, R"({"graph": {"family": "ring", "params": {"n": 4}},
                       "noise": {"white": 0.2}})");
  CHECK(run("simulate --spec " + spec + " -o " + rec) == 0);
  MeasurementRecord r = record_from_json(Json::parse(slurp(rec)));
  for (const auto& [v, t] : r.vertex_terms) CHECK(t.value == doctest::Approx(0.8));
  for (const auto& [e, t] : r.edge_terms) CHECK(t.value == doctest::Approx(0.8));
}

TEST_CASE("simulate with shots is byte-deterministic under a seed") {
  TempDir tmp;
  std::string spec = tmp.file("spec.json");
  write_file(spec, R"({"graph": {"family": "ring", "params": {"n": 4}},
                       "noise": {"white": 0.1}, "shots": 10000})");
  std::string a = tmp.file("a.json"), b = tmp.file("b.json");
  CHECK(run("simulate --spec " + spec + " --seed 7 -o " + a) == 0);
  CHECK(run("simulate --spec " + spec + " --seed 7 -o " + b) == 0);
  CHECK(slurp(a) == slurp(b));
  std::string c = tmp.file("c.json");
  CHECK(run("simulate --spec " + spec + " --seed 8 -o " + c) == 0);
  CHECK(slurp(a) != slurp(c));

  // and the certification step adds no nondeterminism of its own
  std::string r1 = tmp.file("r1.json"), r2 = tmp.file("r2.json");
  CHECK(run("certify --record " + a + " -o " + r1) == 0);
  CHECK(run("certify --record " + a + " -o " + r2) == 0);
  CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("certify end to end, with and without SDP") {
  TempDir tmp;
  std::string spec = tmp.file("spec.json");
  std::string rec = tmp.file("rec.json");
  std::string rep = tmp.file("rep.json");
  write_file(spec, R"({"graph": {"family": "ring", "params": {"n": 6}},
                       "noise": {"white": 0.1}})");
  REQUIRE(run("simulate --spec " + spec + " -o " + rec) == 0);

  CHECK(run("certify --record " + rec + " -o " + rep) == 0);
  Json report = Json::parse(slurp(rep));
  CHECK(report.at("certified_k").get<int>() == 2);
  CHECK(report.at("gme").get<bool>() == true);

  // strip the edge terms, let the SDP restore them
  Json stripped = Json::parse(slurp(rec));
  stripped["edge_terms"] = Json::array();
  std::string rec2 = tmp.file("rec2.json");
  write_file(rec2, stripped.dump(2));
  CHECK(run("certify --record " + rec2 + " --sdp -o " + rep) == 0);
  Json report2 = Json::parse(slurp(rep));
  CHECK(report2.at("certified_k").get<int>() == 2);
  CHECK(report2.at("edge_provenance").at("sdp_lower_bound").get<int>() == 6);
}

TEST_CASE("sdp-bound emits an augmented record") {
  TempDir tmp;
  std::string rec = tmp.file("rec.json");
  write_file(rec, R"({"graph": {"family": "ring", "params": {"n": 6}},
                      "vertex_terms": [{"v":1,"value":0.9,"sigma":0.01},
                                       {"v":2,"value":0.9,"sigma":0.01},
                                       {"v":3,"value":0.9,"sigma":0.01},
                                       {"v":4,"value":0.9,"sigma":0.01},
                                       {"v":5,"value":0.9,"sigma":0.01},
                                       {"v":6,"value":0.9,"sigma":0.01}],
                      "edge_terms": []})");
  std::string out = tmp.file("aug.json");
  CHECK(run("sdp-bound --record " + rec + " -o " + out) == 0);
  MeasurementRecord aug = record_from_json(Json::parse(slurp(out)));
  CHECK(aug.edge_terms.size() == 6);
  for (const auto& [e, t] : aug.edge_terms) {
    CHECK(t.provenance == Provenance::SdpLowerBound);
    // sigmas feed the constraint relaxation: worst case 2(c - eps) - 1
    CHECK(t.value == doctest::Approx(2 * (0.9 - 0.01) - 1).epsilon(1e-4));
    CHECK(t.gradients.size() == 2);
  }
}

TEST_CASE("inconclusive certification exits 4") {
  TempDir tmp;
  std::string spec = tmp.file("spec.json");
  std::string rec = tmp.file("rec.json");
  write_file(spec, R"({"graph": {"family": "ring", "params": {"n": 4}},
                       "noise": {"white": 1.0}})");
  REQUIRE(run("simulate --spec " + spec + " -o " + rec) == 0);
  CHECK(run("certify --record " + rec + " -o " + tmp.file("rep.json")) == 4);
}

TEST_CASE("fixed gamma 0 with the loose bound recovers the plain vertex witness") {
  TempDir tmp;
  std::string spec = tmp.file("spec.json");
  std::string rec = tmp.file("rec.json");
  std::string rep = tmp.file("rep.json");
  write_file(spec, R"({"graph": {"family": "chain", "params": {"n": 5}},
                       "noise": {"white": 0.1}})");
  REQUIRE(run("simulate --spec " + spec + " -o " + rec) == 0);
  CHECK(run("certify --record " + rec + " --gamma 0 --loose -o " + rep) == 0);
  Json report = Json::parse(slurp(rep));
  // W(0) = 4.5 against the gamma-0 loose ceiling n - 1 = 4
  CHECK(report.at("results")[0].at("fixed_margin").get<double>() == doctest::Approx(0.5));
  CHECK(report.at("certified_k").get<int>() == 2);
}

TEST_CASE("threshold tables") {
  TempDir tmp;
  std::string g = tmp.file("g.json");
  std::string out = tmp.file("t.json");

  REQUIRE(run("graph gen --family chain --n 5 -o " + g) == 0);
  CHECK(run("threshold --graph " + g + " -o " + out) == 0);
  Json t = Json::parse(slurp(out));
  REQUIRE(t.at("rows").size() == 4);
  CHECK(t.at("rows")[0].at("tight").get<std::string>() == "2/9");
  CHECK(t.at("rows")[1].at("tight").get<std::string>() == "1/3");
  CHECK(t.at("rows")[2].at("tight").get<std::string>() == "4/9");
  CHECK(t.at("rows")[3].at("tight").get<std::string>() == "5/9");

  REQUIRE(run("graph gen --family lattice2d --nx 3 --ny 2 -o " + g) == 0);
  CHECK(run("threshold --graph " + g + " --k-max 2 -o " + out) == 0);
  CHECK(Json::parse(slurp(out)).at("rows")[0].at("tight").get<std::string>() == "3/13");

  REQUIRE(run("graph gen --family tree --degree 3 --depth 2 -o " + g) == 0);
  CHECK(run("threshold --graph " + g + " --k-max 4 -o " + out) == 0);
  CHECK(Json::parse(slurp(out)).at("rows")[2].at("tight").get<std::string>() == "4/19");
}

TEST_CASE("parse failures exit 2") {
  TempDir tmp;
  std::string bad = tmp.file("bad.json");
  write_file(bad, "{ not json");
  CHECK(run("certify --record " + bad + " -o " + tmp.file("rep.json")) == 2);
  CHECK(run("threshold --graph " + tmp.file("missing.json")) == 2);
}

TEST_CASE("a sidecar graph fills a record that lacks one") {
  TempDir tmp;
  std::string g = tmp.file("g.json");
  REQUIRE(run("graph gen --family chain --n 3 -o " + g) == 0);
  std::string rec = tmp.file("rec.json");
  write_file(rec, R"({"vertex_terms": [{"v":1,"value":0.95,"sigma":0},
                                       {"v":2,"value":0.95,"sigma":0},
                                       {"v":3,"value":0.95,"sigma":0}],
                      "edge_terms": []})");
  std::string rep = tmp.file("rep.json");
  CHECK(run("certify --record " + rec + " --graph " + g + " --sdp -o " + rep) == 0);
  CHECK(Json::parse(slurp(rep)).at("gme").get<bool>() == true);

  // disagreement between sidecar and embedded graph is an error
  std::string other = tmp.file("other.json");
  REQUIRE(run("graph gen --family ring --n 3 -o " + other) == 0);
  Json with_graph = Json::parse(slurp(rec));
  with_graph["graph"] = Json::parse(slurp(g));
  write_file(rec, with_graph.dump());
  CHECK(run("certify --record " + rec + " --graph " + other + " -o " + rep) == 2);
}

TEST_CASE("enumeration cap override via environment") {
  TempDir tmp;
  std::string g = tmp.file("g.json");
  std::string out = tmp.file("t.json");
  REQUIRE(run("graph gen --family chain --n 8 -o " + g) == 0);
  std::string cmd = "GME_ENUM_CAP=10 " + binary() + " threshold --graph " + g + " -o " + out +
                    " > /dev/null 2> /dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);  // falls back to the loose column with a warning
  Json t = Json::parse(slurp(out));
  CHECK(t.at("rows")[0].at("tight").is_null());
  CHECK(t.at("rows")[0].at("loose").get<std::string>() == "2/15");

  // certify under the same cap refuses the tight bound and points at --loose
  std::string spec = tmp.file("spec.json");
  std::string rec = tmp.file("rec.json");
  write_file(spec, R"({"graph": {"family": "chain", "params": {"n": 8}},
                       "noise": {"white": 0.05}})");
  REQUIRE(run("simulate --spec " + spec + " -o " + rec) == 0);
  std::string strict = "GME_ENUM_CAP=10 " + binary() + " certify --record " + rec + " -o " +
                       tmp.file("rep.json") + " > /dev/null 2> /dev/null";
  status = std::system(strict.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 3);
  std::string loose = "GME_ENUM_CAP=10 " + binary() + " certify --loose --record " + rec +
                      " -o " + tmp.file("rep.json") + " > /dev/null 2> /dev/null";
  status = std::system(loose.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
}

TEST_CASE("dicke simulation certifies GME below the critical noise") {
  TempDir tmp;
  std::string spec = tmp.file("spec.json");
  std::string rec = tmp.file("rec.json");
  std::string rep = tmp.file("rep.json");
  write_file(spec, R"({"graph": {"family": "complete", "params": {"n": 3}},
                       "dicke": {"i": 2},
                       "rotations": [0, -0.53, -0.33, 3.141592653589793, -0.53, -0.33,
                                     0, -0.53, -0.33],
                       "noise": {"white": 0.3}})");
  REQUIRE(run("simulate --spec " + spec + " -o " + rec) == 0);
  CHECK(run("certify --record " + rec + " -o " + rep) == 0);
  CHECK(Json::parse(slurp(rep)).at("gme").get<bool>() == true);
}
