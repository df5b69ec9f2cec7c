#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gme/rational.hpp"
#include "gme/record.hpp"
#include "gme/reduction.hpp"

namespace gme {

enum class BoundKind { Tight, Loose };

/// W_G^gamma: sum of |<S_i>| over vertices plus gamma times the edge-term
/// contributions. Measured edges contribute |value|; SDP-bounded edges their
/// lower bound; absent edges zero. Throws if any vertex term is missing.
double witness_value(const MeasurementRecord& rec, double gamma);

/// k-separability ceiling. Tight: n + gamma|E| - R_k^gamma (enumerates
/// k-cuts, may throw EnumerationCapExceeded). Loose: n + gamma(|E|-k+1) - 1.
Rational ksep_bound(const Graph& g, int k, const Rational& gamma, BoundKind kind,
                    std::uint64_t cap = enumeration_cap());

/// Ceiling for states separable across one specific partition:
/// n + gamma(|E| - |cut vertices|) - (1-gamma)|cut matching|.
/// The labeling must use at least two blocks.
Rational fixed_partition_bound(const Graph& g, const std::vector<int>& labels,
                               const Rational& gamma);

struct GammaOpt {
  Rational gamma_star;
  double witness = 0.0;   // at gamma_star
  Rational bound;         // at gamma_star
  double margin = 0.0;    // witness - bound
};

/// Maximizes witness(gamma) - bound(gamma) over gamma in [0,1]. The objective
/// is piecewise linear in gamma, so only the profile breakpoints and the
/// endpoints are evaluated; ties break toward the smaller gamma.
GammaOpt optimal_gamma(const Graph& g, int k, const MeasurementRecord& rec,
                       BoundKind kind = BoundKind::Tight, std::uint64_t cap = enumeration_cap());

struct WhiteNoiseThreshold {
  Rational p_max;
  Rational gamma_star;
};

/// Largest white-noise ratio p for which rho_G(p) still violates the
/// k-separability bound: max over candidate gammas of R_k^gamma/(n+gamma|E|)
/// (tight) or (1+gamma(k-1))/(n+gamma|E|) (loose). Exact rationals.
WhiteNoiseThreshold white_noise_threshold(const Graph& g, int k, BoundKind kind,
                                          std::uint64_t cap = enumeration_cap());

struct UncertaintyResult {
  double sigma = 0.0;
  /// Set when some measured magnitude sat below the zero tolerance and a
  /// conservative unit derivative was substituted.
  bool conservative = false;
};

/// First-order propagation of the record's covariance through the witness:
/// derivative sign(value) per vertex term, gamma*sign per measured edge term,
/// and gamma times the stored dual gradients for SDP-bounded edges.
UncertaintyResult propagate_uncertainty(const MeasurementRecord& rec, double gamma,
                                        double zero_tol = 1e-6);

struct KResult {
  int k = 0;
  Rational gamma_star;
  double witness = 0.0;
  Rational bound;
  double margin = 0.0;
  std::optional<double> margin_sigmas;
  bool violated = false;
  bool used_loose = false;  // tight enumeration hit the cap for this k
  // Populated when a fixed gamma was requested alongside the optimized scan.
  std::optional<Rational> fixed_gamma;
  std::optional<double> fixed_margin;
};

struct CertificationReport {
  BoundKind bound_kind = BoundKind::Tight;
  std::vector<KResult> per_k;
  std::optional<int> smallest_violated_k;
  bool gme = false;
  std::map<std::string, int> edge_provenance_counts;
  std::vector<std::string> flags;
};

struct CertifyOptions {
  BoundKind kind = BoundKind::Tight;
  /// Keep evaluating after the first violated k (full table) or stop early.
  bool scan_all = true;
  /// Swap in the loose bound for any k whose enumeration exceeds the cap
  /// (flagged in the report); when false the cap propagates as an exception.
  bool loose_fallback = true;
  std::optional<Rational> fixed_gamma;
  int k_max = 0;  // 0 = scan up to n
  std::uint64_t cap = enumeration_cap();
};

/// Scans k = 2..k_max ascending and reports the smallest k whose margin is
/// positive; no violation at any k means inconclusive (no smallest_violated_k).
CertificationReport certify(const MeasurementRecord& rec, const CertifyOptions& opt = {});

}  // namespace gme
