#include "gme/record.hpp"

#include <cmath>
#include <stdexcept>

namespace gme {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Measured: return "measured";
    case Provenance::SdpLowerBound: return "sdp_lower_bound";
    default: return "absent";
  }
}

Provenance provenance_from_name(const std::string& s) {
  if (s == "measured") return Provenance::Measured;
  if (s == "sdp_lower_bound") return Provenance::SdpLowerBound;
  if (s == "absent") return Provenance::Absent;
  throw std::invalid_argument("unknown provenance '" + s + "'");
}

bool MeasurementRecord::vertex_terms_complete() const {
  for (int v = 1; v <= graph.n(); ++v) {
    auto it = vertex_terms.find(v);
    if (it == vertex_terms.end() || it->second.provenance != Provenance::Measured) return false;
  }
  return true;
}

std::vector<std::pair<int, int>> MeasurementRecord::measured_term_order() const {
  std::vector<std::pair<int, int>> order;
  for (const auto& [v, t] : vertex_terms)
    if (t.provenance == Provenance::Measured) order.push_back({v, 0});
  for (const auto& [e, t] : edge_terms)
    if (t.provenance == Provenance::Measured) order.push_back(e);
  return order;
}

Eigen::MatrixXd MeasurementRecord::effective_covariance() const {
  auto order = measured_term_order();
  const auto m = static_cast<Eigen::Index>(order.size());
  if (covariance) {
    if (covariance->rows() != m || covariance->cols() != m)
      throw std::invalid_argument("covariance dimension does not match the measured terms");
    return *covariance;
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
  Eigen::Index i = 0;
  for (const auto& key : order) {
    double s = key.second == 0 ? vertex_terms.at(key.first).sigma : edge_terms.at(key).sigma;
    cov(i, i) = s * s;
    ++i;
  }
  return cov;
}

bool MeasurementRecord::has_uncertainty_data() const {
  if (covariance) return true;
  for (const auto& [v, t] : vertex_terms)
    if (t.sigma > 0) return true;
  for (const auto& [e, t] : edge_terms)
    if (t.sigma > 0) return true;
  return false;
}

void MeasurementRecord::validate() const {
  for (const auto& [v, t] : vertex_terms) {
    if (v < 1 || v > graph.n()) throw std::invalid_argument("record: vertex term out of range");
    if (t.provenance == Provenance::Measured && std::abs(t.value) > 1.0 + 1e-9)
      throw std::invalid_argument("record: measured vertex value outside [-1,1]");
    if (t.sigma < 0) throw std::invalid_argument("record: negative sigma");
  }
  for (const auto& [e, t] : edge_terms) {
    if (!graph.has_edge(e.first, e.second))
      throw std::invalid_argument("record: edge term for a non-edge");
    if (t.provenance == Provenance::Measured && std::abs(t.value) > 1.0 + 1e-9)
      throw std::invalid_argument("record: measured edge value outside [-1,1]");
    if (t.provenance == Provenance::SdpLowerBound && (t.value < -1e-9 || t.value > 1.0 + 1e-9))
      throw std::invalid_argument("record: SDP edge bound outside [0,1]");
    if (t.sigma < 0) throw std::invalid_argument("record: negative sigma");
  }
  if (covariance) {
    const auto m = static_cast<Eigen::Index>(measured_term_order().size());
    if (covariance->rows() != m || covariance->cols() != m)
      throw std::invalid_argument("record: covariance dimension mismatch");
    if (!covariance->isApprox(covariance->transpose(), 1e-9))
      throw std::invalid_argument("record: covariance not symmetric");
  }
}

}  // namespace gme
