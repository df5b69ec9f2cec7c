#include "gme/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gme/matching.hpp"

namespace gme {

namespace {

double edge_contribution(const EdgeTerm& t) {
  switch (t.provenance) {
    case Provenance::Measured: return std::abs(t.value);
    case Provenance::SdpLowerBound: return std::clamp(t.value, 0.0, 1.0);
    default: return 0.0;
  }
}

Rational loose_bound(const Graph& g, int k, const Rational& gamma) {
  return Rational(g.n()) + gamma * Rational(g.edge_count() - k + 1) - Rational(1);
}

}  // namespace

double witness_value(const MeasurementRecord& rec, double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw std::invalid_argument("witness_value: gamma must lie in [0,1]");
  double w = 0.0;
  for (int v = 1; v <= rec.graph.n(); ++v) {
    auto it = rec.vertex_terms.find(v);
    if (it == rec.vertex_terms.end())
      throw std::invalid_argument("witness_value: vertex term " + std::to_string(v) +
                                  " is missing");
    w += std::abs(it->second.value);
  }
  for (auto [i, j] : rec.graph.edges()) {
    auto it = rec.edge_terms.find({i, j});
    if (it != rec.edge_terms.end()) w += gamma * edge_contribution(it->second);
  }
  return w;
}

Rational ksep_bound(const Graph& g, int k, const Rational& gamma, BoundKind kind,
                    std::uint64_t cap) {
  if (k < 2 || k > g.n()) throw std::invalid_argument("ksep_bound: need 2 <= k <= n");
  if (gamma < Rational(0) || Rational(1) < gamma)
    throw std::invalid_argument("ksep_bound: gamma must lie in [0,1]");
  if (kind == BoundKind::Loose) return loose_bound(g, k, gamma);
  Rational r = reduction_term(g, k, gamma, cap);
  return Rational(g.n()) + gamma * Rational(g.edge_count()) - r;
}

Rational fixed_partition_bound(const Graph& g, const std::vector<int>& labels,
                               const Rational& gamma) {
  if (gamma < Rational(0) || Rational(1) < gamma)
    throw std::invalid_argument("fixed_partition_bound: gamma must lie in [0,1]");
  std::set<int> blocks(labels.begin(), labels.end());
  if (blocks.size() < 2)
    throw std::invalid_argument("fixed_partition_bound: labeling must use at least two blocks");
  CutSubgraph cut = cut_subgraph(g, labels);
  int mcm = max_matching_size(g.n(), cut.edges);
  return Rational(g.n()) +
         gamma * Rational(g.edge_count() - static_cast<int>(cut.vertices.size())) -
         (Rational(1) - gamma) * Rational(mcm);
}

GammaOpt optimal_gamma(const Graph& g, int k, const MeasurementRecord& rec, BoundKind kind,
                       std::uint64_t cap) {
  // The witness is affine in gamma and the bound piecewise linear, so the
  // margin is maximized at a profile breakpoint or an endpoint.
  std::vector<Rational> candidates;
  ParetoCutProfile profile;
  if (kind == BoundKind::Tight) {
    profile = collect_profile(g, k, cap);
    candidates = profile.candidate_gammas();
  } else {
    candidates = {Rational(0), Rational(1)};
  }

  GammaOpt best;
  bool first = true;
  for (const auto& gamma : candidates) {
    Rational bound = (kind == BoundKind::Tight)
                         ? Rational(g.n()) + gamma * Rational(g.edge_count()) -
                               profile.evaluate(gamma)
                         : loose_bound(g, k, gamma);
    double w = witness_value(rec, gamma.to_double());
    double margin = w - bound.to_double();
    if (first || margin > best.margin + 1e-15) {
      best = GammaOpt{gamma, w, bound, margin};
      first = false;
    }
  }
  return best;
}

WhiteNoiseThreshold white_noise_threshold(const Graph& g, int k, BoundKind kind,
                                          std::uint64_t cap) {
  if (k < 2 || k > g.n())
    throw std::invalid_argument("white_noise_threshold: need 2 <= k <= n");
  std::vector<Rational> candidates;
  ParetoCutProfile profile;
  if (kind == BoundKind::Tight) {
    profile = collect_profile(g, k, cap);
    candidates = profile.candidate_gammas();
  } else {
    candidates = {Rational(0), Rational(1)};
  }
  WhiteNoiseThreshold best{Rational(-1), Rational(0)};
  for (const auto& gamma : candidates) {
    Rational num = (kind == BoundKind::Tight) ? profile.evaluate(gamma)
                                              : Rational(1) + gamma * Rational(k - 1);
    Rational p = num / (Rational(g.n()) + gamma * Rational(g.edge_count()));
    if (best.p_max < p) best = WhiteNoiseThreshold{p, gamma};
  }
  return best;
}

UncertaintyResult propagate_uncertainty(const MeasurementRecord& rec, double gamma,
                                        double zero_tol) {
  auto order = rec.measured_term_order();
  Eigen::MatrixXd cov = rec.effective_covariance();
  Eigen::VectorXd deriv = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(order.size()));

  std::map<std::pair<int, int>, Eigen::Index> index;
  for (std::size_t i = 0; i < order.size(); ++i)
    index[order[i]] = static_cast<Eigen::Index>(i);

  UncertaintyResult out;
  auto signed_unit = [&](double value) {
    if (std::abs(value) < zero_tol) {
      out.conservative = true;  // |x| has no derivative at 0; use magnitude 1
      return 1.0;
    }
    return value > 0 ? 1.0 : -1.0;
  };

  for (const auto& [v, t] : rec.vertex_terms) {
    if (t.provenance != Provenance::Measured) continue;
    deriv(index.at({v, 0})) += signed_unit(t.value);
  }
  for (const auto& [e, t] : rec.edge_terms) {
    if (t.provenance == Provenance::Measured) {
      deriv(index.at(e)) += gamma * signed_unit(t.value);
    } else if (t.provenance == Provenance::SdpLowerBound) {
      // The bound is a function of the measured vertex values; chain rule
      // through the stored dual gradients.
      for (const auto& [v, grad] : t.gradients) {
        auto it = index.find({v, 0});
        if (it == index.end())
          throw std::invalid_argument("propagate_uncertainty: SDP gradient references an "
                                      "unmeasured vertex term");
        deriv(it->second) += gamma * grad;
      }
    }
  }
  double var = deriv.dot(cov * deriv);
  out.sigma = std::sqrt(std::max(0.0, var));
  return out;
}

CertificationReport certify(const MeasurementRecord& rec, const CertifyOptions& opt) {
  rec.validate();
  const Graph& g = rec.graph;
  CertificationReport report;
  report.bound_kind = opt.kind;

  for (auto [i, j] : g.edges()) {
    auto it = rec.edge_terms.find({i, j});
    Provenance p = it == rec.edge_terms.end() ? Provenance::Absent : it->second.provenance;
    report.edge_provenance_counts[provenance_name(p)] += 1;
  }

  const bool with_sigma = rec.has_uncertainty_data();
  const int k_max = opt.k_max > 0 ? std::min(opt.k_max, g.n()) : g.n();
  for (int k = 2; k <= k_max; ++k) {
    KResult row;
    row.k = k;
    BoundKind kind = opt.kind;
    GammaOpt go;
    try {
      go = optimal_gamma(g, k, rec, kind, opt.cap);
    } catch (const EnumerationCapExceeded&) {
      if (!opt.loose_fallback) throw;
      kind = BoundKind::Loose;
      row.used_loose = true;
      report.flags.push_back("k=" + std::to_string(k) +
                             ": partition enumeration over cap; loose bound used");
      go = optimal_gamma(g, k, rec, kind, opt.cap);
    }
    row.gamma_star = go.gamma_star;
    row.witness = go.witness;
    row.bound = go.bound;
    row.margin = go.margin;

    double decision_margin = go.margin;
    Rational decision_gamma = go.gamma_star;
    if (opt.fixed_gamma) {
      const Rational& fg = *opt.fixed_gamma;
      Rational fb = (kind == BoundKind::Tight) ? ksep_bound(g, k, fg, kind, opt.cap)
                                               : loose_bound(g, k, fg);
      double fw = witness_value(rec, fg.to_double());
      row.fixed_gamma = fg;
      row.fixed_margin = fw - fb.to_double();
      decision_margin = *row.fixed_margin;
      decision_gamma = fg;
    }

    if (with_sigma) {
      auto unc = propagate_uncertainty(rec, decision_gamma.to_double());
      if (unc.conservative)
        report.flags.push_back("k=" + std::to_string(k) +
                               ": near-zero expectation; conservative derivative applied");
      if (unc.sigma > 0) row.margin_sigmas = decision_margin / unc.sigma;
    }

    row.violated = decision_margin > 0;
    report.per_k.push_back(row);
    if (row.violated && !report.smallest_violated_k) {
      report.smallest_violated_k = k;
      if (!opt.scan_all) break;
    }
  }
  report.gme = report.smallest_violated_k && *report.smallest_violated_k == 2;
  return report;
}

}  // namespace gme
