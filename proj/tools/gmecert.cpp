// Command-line front end: graph generation, state simulation, SDP edge
// bounding, certification, and white-noise threshold tables, all through the
// JSON schemas in gme/json_io.hpp.
//
// Exit codes: 0 success (certify: criteria violated at some k), 2 parse or
// I/O failure, 3 a dimension/enumeration cap was exceeded, 4 certification
// inconclusive.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gme/criteria.hpp"
#include "gme/json_io.hpp"
#include "gme/reduction.hpp"
#include "gme/sdp.hpp"
#include "gme/statesim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitInconclusive = 4;

gme::Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  gme::Json j;
  in >> j;
  return j;
}

void write_json_file(const std::string& path, const gme::Json& j) {
  if (path == "-" || path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

// Record file with an optional side-loaded graph: the graph argument fills a
// missing "graph" member and must agree with an embedded one.
gme::MeasurementRecord load_record(const std::string& record_path,
                                   const std::string& graph_path) {
  gme::Json j = read_json_file(record_path);
  if (!graph_path.empty()) {
    gme::Graph g = gme::graph_from_json(read_json_file(graph_path));
    if (j.contains("graph")) {
      if (!(gme::graph_from_json(j.at("graph")) == g))
        throw std::runtime_error("--graph disagrees with the graph embedded in the record");
    } else {
      j["graph"] = gme::graph_to_json(g);
    }
  }
  return gme::record_from_json(j);
}

struct GraphGenArgs {
  std::string family;
  int n = 0, nx = 0, ny = 0, degree = 0, depth = -1, r = 0;
  std::string output;
};

int run_graph_gen(const GraphGenArgs& a) {
  std::vector<int> params;
  if (a.family == "lattice2d") params = {a.nx, a.ny};
  else if (a.family == "tree") params = {a.degree, a.depth};
  else if (a.family == "cthulhu") params = {a.r ? a.r : a.n};
  else params = {a.n};
  gme::Graph g = gme::make_family(a.family, params);
  write_json_file(a.output, gme::graph_to_json(g));
  return kExitOk;
}

struct SimulateArgs {
  std::string spec_path;
  std::string output;
  std::uint64_t seed = 0;
  std::int64_t shots_override = -1;
};

int run_simulate(const SimulateArgs& a) {
  gme::StateSpec spec = gme::state_spec_from_json(read_json_file(a.spec_path));
  const gme::Graph& g = spec.graph;

  gme::DensityMatrix rho;
  if (spec.dicke_i) {
    rho = gme::dicke_state(g.n(), *spec.dicke_i);
  } else {
    rho = gme::graph_state(g);
  }
  if (spec.rotations) rho = gme::apply_local_rotations(rho, *spec.rotations);
  if (!spec.channels.empty()) rho = gme::apply_local_channel(rho, spec.channels);
  if (spec.white_noise > 0) rho = gme::add_white_noise(rho, spec.white_noise);

  std::optional<gme::ShotModel> shots;
  if (a.shots_override > 0)
    shots = gme::ShotModel{static_cast<std::uint64_t>(a.shots_override), a.seed};
  else if (spec.shots)
    shots = gme::ShotModel{*spec.shots, a.seed};

  gme::MeasurementRecord rec = gme::measure_record(rho, g, {}, shots);
  write_json_file(a.output, gme::record_to_json(rec));
  return kExitOk;
}

struct SdpBoundArgs {
  std::string record_path, graph_path, output;
  int psd_cap = 64;
};

int run_sdp_bound(const SdpBoundArgs& a) {
  gme::MeasurementRecord rec = load_record(a.record_path, a.graph_path);
  gme::EdgeBoundOptions opts;
  opts.psd_cap = a.psd_cap;
  gme::MeasurementRecord bounded = gme::bound_unmeasured_edges(rec.graph, rec, opts);
  write_json_file(a.output, gme::record_to_json(bounded));
  return kExitOk;
}

struct CertifyArgs {
  std::string record_path, graph_path, output;
  std::string gamma;
  bool loose = false;
  bool with_sdp = false;
  bool early_exit = false;
  int k_max = 0;
  int psd_cap = 64;
};

int run_certify(const CertifyArgs& a) {
  gme::MeasurementRecord rec = load_record(a.record_path, a.graph_path);
  if (a.with_sdp) {
    gme::EdgeBoundOptions opts;
    opts.psd_cap = a.psd_cap;
    rec = gme::bound_unmeasured_edges(rec.graph, rec, opts);
  }
  gme::CertifyOptions opt;
  opt.kind = a.loose ? gme::BoundKind::Loose : gme::BoundKind::Tight;
  opt.scan_all = !a.early_exit;
  opt.loose_fallback = false;  // over-cap graphs exit 3 with guidance to --loose
  opt.k_max = a.k_max;
  if (!a.gamma.empty()) opt.fixed_gamma = gme::Rational::parse(a.gamma);

  gme::CertificationReport report = gme::certify(rec, opt);
  gme::Json j = gme::report_to_json(report, rec.graph);
  write_json_file(a.output, j);

  if (report.smallest_violated_k) {
    std::cout << "certified: " << (report.gme ? "GME" : "") << " smallest violated k = "
              << *report.smallest_violated_k << "\n";
    return kExitOk;
  }
  std::cout << "inconclusive: no k in range violated its bound\n";
  return kExitInconclusive;
}

struct ThresholdArgs {
  std::string graph_path, output;
  bool loose_only = false;
  int k_max = 0;
};

int run_threshold(const ThresholdArgs& a) {
  gme::Graph g = gme::graph_from_json(read_json_file(a.graph_path));
  int k_hi = a.k_max > 0 ? std::min(a.k_max, g.n()) : g.n();

  gme::Json rows = gme::Json::array();
  std::cout << "k\ttight\t\tloose\t\tgamma*\n";
  for (int k = 2; k <= k_hi; ++k) {
    gme::Json row;
    row["k"] = k;
    auto loose = gme::white_noise_threshold(g, k, gme::BoundKind::Loose);
    std::string tight_str = "-";
    if (!a.loose_only) {
      try {
        auto tight = gme::white_noise_threshold(g, k, gme::BoundKind::Tight);
        row["tight"] = tight.p_max.str();
        row["tight_value"] = tight.p_max.to_double();
        row["gamma_star"] = tight.gamma_star.str();
        tight_str = tight.p_max.str() + " (" + std::to_string(tight.p_max.to_double()) + ")";
      } catch (const gme::EnumerationCapExceeded&) {
        std::cerr << "warning: k=" << k
                  << ": partition enumeration over cap, tight column skipped\n";
        row["tight"] = nullptr;
      }
    }
    row["loose"] = loose.p_max.str();
    row["loose_value"] = loose.p_max.to_double();
    rows.push_back(row);
    std::cout << k << "\t" << tight_str << "\t" << loose.p_max.str() << " ("
              << loose.p_max.to_double() << ")\t"
              << (row.contains("gamma_star") ? row["gamma_star"].get<std::string>() : "-")
              << "\n";
  }
  if (!a.output.empty()) {
    gme::Json j;
    j["schema"] = "thresholds/1";
    j["graph"] = gme::graph_to_json(g);
    j["rows"] = rows;
    write_json_file(a.output, j);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify genuine multipartite entanglement of states near graph states "
               "from stabilizer measurements"};
  app.require_subcommand(1);

  GraphGenArgs ga;
  CLI::App* graph = app.add_subcommand("graph", "graph utilities");
  graph->require_subcommand(1);
  CLI::App* gen = graph->add_subcommand("gen", "generate a named graph family");
  gen->add_option("--family", ga.family,
                  "chain|ring|star|complete|lattice2d|tree|cthulhu")->required();
  gen->add_option("--n", ga.n, "vertex count (chain/ring/star/complete)");
  gen->add_option("--nx", ga.nx, "lattice2d columns");
  gen->add_option("--ny", ga.ny, "lattice2d rows");
  gen->add_option("--degree", ga.degree, "tree root degree");
  gen->add_option("--depth", ga.depth, "tree depth");
  gen->add_option("--r", ga.r, "cthulhu parameter");
  gen->add_option("--output,-o", ga.output, "output file ('-' = stdout)");

  SimulateArgs sa;
  CLI::App* sim = app.add_subcommand("simulate", "simulate a state and write its record");
  sim->add_option("--spec", sa.spec_path, "state spec JSON")->required();
  sim->add_option("--output,-o", sa.output, "record output file")->required();
  sim->add_option("--seed", sa.seed, "shot-sampling seed");
  sim->add_option("--shots", sa.shots_override, "override the spec's shot count");

  SdpBoundArgs ba;
  CLI::App* sdp = app.add_subcommand("sdp-bound",
                                     "lower-bound unmeasured edge terms by dual SDP");
  sdp->add_option("--record", ba.record_path, "record JSON")->required();
  sdp->add_option("--graph", ba.graph_path, "graph JSON (optional cross-check)");
  sdp->add_option("--output,-o", ba.output, "augmented record output")->required();
  sdp->add_option("--sdp-cap", ba.psd_cap, "largest physical SDP block (default 64)");

  CertifyArgs ca;
  CLI::App* cert = app.add_subcommand("certify", "evaluate the criteria for k = 2..k_max");
  cert->add_option("--record", ca.record_path, "record JSON")->required();
  cert->add_option("--graph", ca.graph_path, "graph JSON (optional cross-check)");
  cert->add_option("--gamma", ca.gamma, "fix gamma instead of optimizing (e.g. 1/2 or 0.5)");
  cert->add_flag("--loose", ca.loose, "use the loose bound");
  cert->add_flag("--sdp", ca.with_sdp, "SDP-bound absent edge terms first");
  cert->add_flag("--early-exit", ca.early_exit, "stop scanning at the first violated k");
  cert->add_option("--k-max", ca.k_max, "largest k to scan (default n)");
  cert->add_option("--sdp-cap", ca.psd_cap, "largest physical SDP block (default 64)");
  cert->add_option("--output,-o", ca.output, "report output file ('-' = stdout)");

  ThresholdArgs ta;
  CLI::App* thr = app.add_subcommand("threshold", "white-noise thresholds per k");
  thr->add_option("--graph", ta.graph_path, "graph JSON")->required();
  thr->add_flag("--loose", ta.loose_only, "loose bound only");
  thr->add_option("--k-max", ta.k_max, "largest k (default n)");
  thr->add_option("--output,-o", ta.output, "optional JSON output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_graph_gen(ga);
    if (sim->parsed()) return run_simulate(sa);
    if (sdp->parsed()) return run_sdp_bound(ba);
    if (cert->parsed()) return run_certify(ca);
    if (thr->parsed()) return run_threshold(ta);
  } catch (const gme::EnumerationCapExceeded& e) {
    std::cerr << "error: " << e.what() << " (rerun with --loose)\n";
    return kExitCap;
  } catch (const gme::DimensionCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitParse;
}
