#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "gme/criteria.hpp"
#include "gme/graph.hpp"
#include "gme/record.hpp"
#include "gme/sdp.hpp"
#include "gme/statesim.hpp"

namespace gme {

/// Ordered JSON keeps emitted files byte-stable for identical inputs.
using Json = nlohmann::ordered_json;

/// { "n": int, "edges": [[i,j],...] } with 1-based vertices, or the family
/// shorthand { "family": "ring", "params": {"n": 6} }.
Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

/// State specification consumed by `simulate`:
/// { "graph": ..., "noise": {"white": p, "channels": [...]},
///   "rotations": [theta...], "dicke": {"i": int}?, "shots": int? }.
/// With "dicke" present the simulated state is the rotated Dicke state
/// |D_n^(i)> instead of the graph state; the graph still names the measured
/// stabilizers.
struct StateSpec {
  Graph graph;
  double white_noise = 0.0;
  std::vector<ChannelSpec> channels;
  std::optional<LocalRotationSchedule> rotations;
  std::optional<int> dicke_i;
  std::optional<std::uint64_t> shots;
};

StateSpec state_spec_from_json(const Json& j);

Json record_to_json(const MeasurementRecord& rec);
MeasurementRecord record_from_json(const Json& j);

Json report_to_json(const CertificationReport& report, const Graph& g);

/// Audit forms of an SDP instance and its certificate.
Json problem_to_json(const SdpProblem& p);
Json certificate_to_json(const DualCertificate& c);

}  // namespace gme
