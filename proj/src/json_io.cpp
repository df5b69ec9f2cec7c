#include "gme/json_io.hpp"

#include <stdexcept>

namespace gme {

namespace {

std::vector<int> params_from_json(const Json& j, const std::string& family) {
  // Families take their parameters in constructor order; accept both the
  // canonical names and a bare list.
  if (j.is_array()) return j.get<std::vector<int>>();
  auto get = [&](const char* key) { return j.at(key).get<int>(); };
  if (family == "lattice2d") return {get("nx"), get("ny")};
  if (family == "tree") return {get("degree"), get("depth")};
  if (family == "cthulhu") return {j.contains("r") ? get("r") : get("n")};
  return {get("n")};
}

Json matrix_to_json(const Eigen::MatrixXcd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Json graph_to_json(const Graph& g) {
  Json j;
  j["schema"] = "graph/1";
  j["n"] = g.n();
  Json edges = Json::array();
  for (auto [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
  j["edges"] = edges;
  return j;
}

Graph graph_from_json(const Json& j) {
  if (j.contains("family")) {
    std::string family = j.at("family").get<std::string>();
    std::vector<int> params =
        j.contains("params") ? params_from_json(j.at("params"), family) : std::vector<int>{};
    return make_family(family, params);
  }
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: each edge must be a pair");
    edges.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  return Graph(n, edges);
}

StateSpec state_spec_from_json(const Json& j) {
  StateSpec spec;
  spec.graph = graph_from_json(j.at("graph"));
  if (j.contains("noise")) {
    const Json& noise = j.at("noise");
    if (noise.contains("white")) spec.white_noise = noise.at("white").get<double>();
    if (noise.contains("channels"))
      for (const auto& c : noise.at("channels")) {
        ChannelSpec cs;
        std::string type = c.at("type").get<std::string>();
        if (type == "dephasing") cs.type = ChannelSpec::Type::Dephasing;
        else if (type == "depolarizing") cs.type = ChannelSpec::Type::Depolarizing;
        else if (type == "amplitude_damping") cs.type = ChannelSpec::Type::AmplitudeDamping;
        else throw std::invalid_argument("state spec: unknown channel type '" + type + "'");
        cs.qubit = c.at("qubit").get<int>();
        cs.param = c.at("param").get<double>();
        spec.channels.push_back(cs);
      }
  }
  if (j.contains("rotations") && !j.at("rotations").empty()) {
    LocalRotationSchedule sched;
    sched.angles = j.at("rotations").get<std::vector<double>>();
    spec.rotations = sched;
  }
  if (j.contains("dicke")) spec.dicke_i = j.at("dicke").at("i").get<int>();
  if (j.contains("shots") && !j.at("shots").is_null())
    spec.shots = j.at("shots").get<std::uint64_t>();
  return spec;
}

Json record_to_json(const MeasurementRecord& rec) {
  Json j;
  j["schema"] = "record/1";
  j["graph"] = graph_to_json(rec.graph);
  Json vterms = Json::array();
  for (const auto& [v, t] : rec.vertex_terms) {
    Json e;
    e["v"] = v;
    e["value"] = t.value;
    e["sigma"] = t.sigma;
    vterms.push_back(e);
  }
  j["vertex_terms"] = vterms;
  Json eterms = Json::array();
  for (const auto& [edge, t] : rec.edge_terms) {
    Json e;
    e["e"] = Json::array({edge.first, edge.second});
    e["value"] = t.value;
    e["sigma"] = t.sigma;
    e["provenance"] = provenance_name(t.provenance);
    if (!t.gradients.empty()) {
      Json gs = Json::array();
      for (auto [v, g] : t.gradients) {
        Json ge;
        ge["v"] = v;
        ge["g"] = g;
        gs.push_back(ge);
      }
      e["gradients"] = gs;
    }
    if (!t.note.empty()) e["note"] = t.note;
    eterms.push_back(e);
  }
  j["edge_terms"] = eterms;
  if (rec.covariance) {
    Json cov = Json::array();
    for (Eigen::Index r = 0; r < rec.covariance->rows(); ++r) {
      Json row = Json::array();
      for (Eigen::Index c = 0; c < rec.covariance->cols(); ++c)
        row.push_back((*rec.covariance)(r, c));
      cov.push_back(row);
    }
    j["covariance"] = cov;
  }
  return j;
}

MeasurementRecord record_from_json(const Json& j) {
  MeasurementRecord rec(graph_from_json(j.at("graph")));
  for (const auto& e : j.at("vertex_terms")) {
    VertexTerm t;
    t.value = e.at("value").get<double>();
    if (e.contains("sigma")) t.sigma = e.at("sigma").get<double>();
    t.provenance = Provenance::Measured;
    rec.vertex_terms[e.at("v").get<int>()] = t;
  }
  if (j.contains("edge_terms"))
    for (const auto& e : j.at("edge_terms")) {
      EdgeTerm t;
      t.value = e.at("value").get<double>();
      if (e.contains("sigma")) t.sigma = e.at("sigma").get<double>();
      t.provenance = e.contains("provenance")
                         ? provenance_from_name(e.at("provenance").get<std::string>())
                         : Provenance::Measured;
      if (e.contains("gradients"))
        for (const auto& ge : e.at("gradients"))
          t.gradients.push_back({ge.at("v").get<int>(), ge.at("g").get<double>()});
      if (e.contains("note")) t.note = e.at("note").get<std::string>();
      auto pair = e.at("e");
      int a = pair[0].get<int>(), b = pair[1].get<int>();
      if (a > b) std::swap(a, b);
      rec.edge_terms[{a, b}] = t;
    }
  if (j.contains("covariance") && !j.at("covariance").is_null()) {
    const auto& cov = j.at("covariance");
    const auto m = static_cast<Eigen::Index>(cov.size());
    Eigen::MatrixXd c(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
      if (static_cast<Eigen::Index>(cov[r].size()) != m)
        throw std::invalid_argument("record json: covariance must be square");
      for (Eigen::Index k = 0; k < m; ++k) c(r, k) = cov[r][k].get<double>();
    }
    rec.covariance = c;
  }
  rec.validate();
  return rec;
}

Json report_to_json(const CertificationReport& report, const Graph& g) {
  Json j;
  j["schema"] = "report/1";
  j["graph"] = graph_to_json(g);
  j["bound_kind"] = report.bound_kind == BoundKind::Tight ? "tight" : "loose";
  Json rows = Json::array();
  for (const auto& r : report.per_k) {
    Json row;
    row["k"] = r.k;
    row["gamma_star"] = r.gamma_star.str();
    row["gamma_star_value"] = r.gamma_star.to_double();
    row["witness"] = r.witness;
    row["bound"] = r.bound.str();
    row["bound_value"] = r.bound.to_double();
    row["margin"] = r.margin;
    if (r.margin_sigmas) row["margin_sigmas"] = *r.margin_sigmas;
    row["violated"] = r.violated;
    if (r.used_loose) row["used_loose"] = true;
    if (r.fixed_gamma) {
      row["fixed_gamma"] = r.fixed_gamma->str();
      row["fixed_margin"] = *r.fixed_margin;
    }
    rows.push_back(row);
  }
  j["results"] = rows;
  if (report.smallest_violated_k) {
    j["smallest_violated_k"] = *report.smallest_violated_k;
    j["certified_k"] = *report.smallest_violated_k;
  } else {
    j["smallest_violated_k"] = nullptr;
    j["certified_k"] = nullptr;
  }
  j["gme"] = report.gme;
  j["edge_provenance"] = report.edge_provenance_counts;
  j["flags"] = report.flags;
  return j;
}

Json problem_to_json(const SdpProblem& p) {
  Json j;
  j["schema"] = "sdp_problem/1";
  j["N"] = p.N;
  j["d"] = p.d;
  Json targets = Json::array();
  for (const auto& a : p.targets) targets.push_back(matrix_to_json(a));
  j["targets"] = targets;
  Json cons = Json::array();
  for (int c = 0; c < p.J(); ++c) {
    Json e;
    e["op"] = matrix_to_json(p.constraint_ops[c]);
    e["b"] = p.b[c];
    e["eps"] = p.eps[c];
    cons.push_back(e);
  }
  j["constraints"] = cons;
  j["qubit_subset"] = p.qubit_subset;
  return j;
}

Json certificate_to_json(const DualCertificate& c) {
  Json j;
  j["schema"] = "sdp_certificate/1";
  j["z"] = c.z;
  j["y"] = std::vector<double>(c.y.data(), c.y.data() + c.y.size());
  j["beta"] = c.beta;
  j["matrix_slack"] = c.matrix_slack;
  j["scalar_slack"] = c.scalar_slack;
  j["gap_estimate"] = c.gap_estimate;
  j["iterations"] = c.iterations;
  j["converged"] = c.converged;
  return j;
}

}  // namespace gme
