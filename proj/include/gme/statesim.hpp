#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "gme/graph.hpp"
#include "gme/pauli.hpp"
#include "gme/record.hpp"

namespace gme {

/// Dense operations above this many qubits are refused.
inline constexpr int kDenseQubitCap = 12;

/// A dense n-qubit density matrix. Construction does not validate; call
/// validate() to check Hermiticity, unit trace, and positivity.
class DensityMatrix {
public:
  DensityMatrix() : n_(0) {}
  DensityMatrix(int n, Eigen::MatrixXcd m);

  int n() const { return n_; }
  const Eigen::MatrixXcd& mat() const { return m_; }

  void validate(double tol = 1e-10) const;

private:
  int n_;
  Eigen::MatrixXcd m_;
};

Eigen::VectorXcd graph_state_vector(const Graph& g, int cap = kDenseQubitCap);
DensityMatrix graph_state(const Graph& g, int cap = kDenseQubitCap);

/// (p/2^n) I + (1-p) rho.
DensityMatrix add_white_noise(const DensityMatrix& rho, double p);

struct ChannelSpec {
  enum class Type { Dephasing, Depolarizing, AmplitudeDamping };
  Type type;
  int qubit;     // 1-based
  double param;  // in [0,1]
};

/// Applies qubit-local Kraus channels in order; the output is checked to
/// still be a density matrix (a CPTP-violating result throws rather than
/// being repaired).
DensityMatrix apply_local_channel(const DensityMatrix& rho, const std::vector<ChannelSpec>& channels);

/// Equal superposition of all weight-i computational basis states.
Eigen::VectorXcd dicke_state_vector(int n, int i, int cap = kDenseQubitCap);
DensityMatrix dicke_state(int n, int i, int cap = kDenseQubitCap);

/// Per-qubit Rz(a) Ry(b) Rz(c) angles, flattened to length 3n with qubit q
/// owning entries 3q-2, 3q-1, 3q (1-based).
struct LocalRotationSchedule {
  std::vector<double> angles;
};

DensityMatrix apply_local_rotations(const DensityMatrix& rho, const LocalRotationSchedule& sched);

/// rho' = (tensor of the given 2x2 unitaries) rho (.)^dagger; qubits without
/// an entry are untouched.
DensityMatrix apply_single_qubit_unitaries(const DensityMatrix& rho,
                                           const std::vector<std::pair<int, Eigen::Matrix2cd>>& us);
Eigen::VectorXcd apply_single_qubit_unitaries(const Eigen::VectorXcd& psi, int n,
                                              const std::vector<std::pair<int, Eigen::Matrix2cd>>& us);

/// <psi| rho |psi> for a pure target.
double fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& psi);

struct ShotModel {
  std::uint64_t shots;
  std::uint64_t seed;
};

/// Expectation values of all vertex and edge stabilizers of g on rho,
/// conjugated by `gates` when given. With a shot model, each term is
/// estimated from independent +-1 samples and carries the standard error
/// sqrt((1 - est^2)/shots); otherwise values are exact with sigma 0.
MeasurementRecord measure_record(const DensityMatrix& rho, const Graph& g,
                                 const std::vector<SingleQubitClifford>& gates = {},
                                 std::optional<ShotModel> shot_model = std::nullopt);

}  // namespace gme
