#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gme/graph.hpp"

namespace gme {

enum class Provenance { Measured, SdpLowerBound, Absent };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& s);

struct VertexTerm {
  double value = 0.0;
  double sigma = 0.0;
  Provenance provenance = Provenance::Measured;
};

struct EdgeTerm {
  double value = 0.0;
  double sigma = 0.0;
  Provenance provenance = Provenance::Absent;
  /// For SDP-bounded terms: d(bound)/d(b_v) per constraining vertex v.
  std::vector<std::pair<int, double>> gradients;
  std::string note;
};

/// Stabilizer expectation values for one target graph: one term per vertex
/// generator and one per edge product, each with an uncertainty and a
/// provenance. Optionally a covariance matrix over the measured terms,
/// ordered vertices-ascending then edges-ascending.
struct MeasurementRecord {
  Graph graph;
  std::map<int, VertexTerm> vertex_terms;
  std::map<std::pair<int, int>, EdgeTerm> edge_terms;
  std::optional<Eigen::MatrixXd> covariance;

  MeasurementRecord() = default;
  explicit MeasurementRecord(Graph g) : graph(std::move(g)) {}

  /// True when every vertex generator has a measured value.
  bool vertex_terms_complete() const;

  /// Keys of the measured terms in covariance order: vertices first (as
  /// (v, 0) with 0 marking a vertex), then edges.
  std::vector<std::pair<int, int>> measured_term_order() const;

  /// Explicit covariance when present (dimension-checked), else the diagonal
  /// built from the per-term sigmas.
  Eigen::MatrixXd effective_covariance() const;

  bool has_uncertainty_data() const;

  /// Checks value ranges and covariance shape/symmetry; throws on violation.
  void validate() const;
};

}  // namespace gme
