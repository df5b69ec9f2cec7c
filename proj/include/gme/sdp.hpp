#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gme/pauli.hpp"
#include "gme/record.hpp"

namespace gme {

/// Linearized lower-bound problem for a sum of absolute expectation values:
///   minimize sum_i |Tr(A_i rho)|  over density matrices rho on C^d
///   subject to |Tr(B_j rho) - b_j| <= eps_j.
/// Stored as the block data of the linearized primal SDP whose PSD variable
/// has dimension N + d (N absolute-value slots above the physical block).
struct SdpProblem {
  int N = 0;  // number of targets / abs slots
  int d = 0;  // physical block dimension
  std::vector<Eigen::MatrixXcd> targets;         // A_i, Hermitian d x d
  std::vector<Eigen::MatrixXcd> constraint_ops;  // B_j, Hermitian d x d
  Eigen::VectorXd b;                             // measured values, length J
  Eigen::VectorXd eps;                           // uncertainties >= 0, length J
  std::vector<int> qubit_subset;  // original 1-based qubits after support reduction

  int J() const { return static_cast<int>(constraint_ops.size()); }
};

/// A feasible point of the dual SDP. Whenever the feasibility slacks are
/// nonpositive (within tolerance), beta lower-bounds the primal optimum by
/// weak duality, independent of how the point was produced.
struct DualCertificate {
  double z = 0.0;
  /// Length 2(J+N), all entries <= 0. Constraint multipliers come first
  /// (y_{2j-1}, y_{2j} for constraint j), then the target pairs.
  Eigen::VectorXd y;
  double beta = 0.0;
  double matrix_slack = 0.0;   // most positive eigenvalue of the dual matrix constraint
  double scalar_slack = 0.0;   // worst violation of sign / pair-sum constraints
  double gap_estimate = 0.0;   // |primal objective - beta| at the final iterate
  int iterations = 0;
  bool converged = false;
};

struct VerifyResult {
  bool sound = false;
  double matrix_slack = 0.0;
  double scalar_slack = 0.0;
  double beta = 0.0;  // objective recomputed from (z, y)
};

struct SupportReduction {
  std::vector<PauliString> ops;  // restricted to `qubits`, in input order
  std::vector<int> qubits;       // ascending original 1-based labels
};

/// Restricts a family of operators to the union of their supports. Optimizing
/// over states of the subset is equivalent to optimizing over full states:
/// any reduced state extends by tensoring with maximally mixed marginals.
SupportReduction support_reduce(const std::vector<PauliString>& ops);

/// Assembles the linearized problem from (already support-reduced) operators.
/// Throws DimensionCapExceeded when 2^(qubit count) exceeds psd_cap.
SdpProblem build_lower_bound_problem(
    const std::vector<PauliString>& targets,
    const std::vector<std::tuple<PauliString, double, double>>& constraints,
    int psd_cap = 64);

/// Primal-dual interior-point solve of the dual problem. The returned
/// certificate is re-checked and, if marginally infeasible, repaired by
/// clipping y and shifting z down until the matrix constraint holds, so beta
/// stays a sound lower bound.
DualCertificate solve_dual(const SdpProblem& problem, double tolerance = 1e-9);

/// Recomputes feasibility and objective of a certificate from scratch; uses
/// no solver state.
VerifyResult verify_dual_certificate(const SdpProblem& problem, const DualCertificate& cert);

struct EdgeBoundOptions {
  int psd_cap = 64;
  double tolerance = 1e-9;
};

/// For every absent edge term of the record: support-reduce {S_i, S_j,
/// S_i S_j}, bound |<S_i S_j>| from below by the dual SDP constrained by the
/// measured <S_i>, <S_j> (eps = their sigmas), verify the certificate, and
/// attach max(0, beta) with provenance sdp_lower_bound plus the dual
/// gradients d(beta)/d(b) for error propagation. Edges whose support exceeds
/// the cap stay absent with a note.
MeasurementRecord bound_unmeasured_edges(const Graph& g, const MeasurementRecord& rec,
                                         const EdgeBoundOptions& opts = {});

}  // namespace gme
