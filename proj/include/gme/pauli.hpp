#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gme/graph.hpp"

namespace gme {

class DimensionCapExceeded : public std::runtime_error {
public:
  explicit DimensionCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// An n-qubit Pauli operator in binary-symplectic form:
///   i^phase * tensor_q sigma(x_q, z_q)
/// with sigma(0,0)=I, sigma(1,0)=X, sigma(1,1)=Y, sigma(0,1)=Z, so single
/// X, Y, Z each carry phase exponent 0. Qubits are 1-based; qubit 1 is the
/// leftmost character of the text form and the most significant bit of dense
/// indices.
class PauliString {
public:
  PauliString() : n_(0), phase_(0) {}
  explicit PauliString(int n);

  int n() const { return n_; }
  bool x(int q) const { return bit(xw_, q); }
  bool z(int q) const { return bit(zw_, q); }
  void set_x(int q, bool v) { set_bit(xw_, q, v); }
  void set_z(int q, bool v) { set_bit(zw_, q, v); }

  /// Phase exponent p in i^p, 0..3.
  int phase_exp() const { return phase_; }
  void set_phase_exp(int p) { phase_ = ((p % 4) + 4) % 4; }

  bool is_identity_bits() const;
  bool is_hermitian() const { return phase_ % 2 == 0; }
  int weight() const;
  /// Qubits with nontrivial action, ascending, 1-based.
  std::vector<int> support() const;

  /// Same operator restricted to the given qubits (1-based positions of the
  /// original string become 1..subset.size() in order). Qubits outside the
  /// subset must act as identity.
  PauliString restrict_to(const std::vector<int>& qubits) const;

  /// Text form "XZIYZ" with optional leading "+", "-", "i", or "-i".
  static PauliString parse(const std::string& text);
  std::string str() const;

  friend bool operator==(const PauliString& a, const PauliString& b) {
    return a.n_ == b.n_ && a.phase_ == b.phase_ && a.xw_ == b.xw_ && a.zw_ == b.zw_;
  }

  friend PauliString mul(const PauliString& p, const PauliString& q);
  friend bool commutes(const PauliString& p, const PauliString& q);

private:
  static bool bit(const std::vector<std::uint64_t>& w, int q);
  static void set_bit(std::vector<std::uint64_t>& w, int q, bool v);

  int n_;
  int phase_;
  std::vector<std::uint64_t> xw_, zw_;
};

/// Operator product pq, phase included.
PauliString mul(const PauliString& p, const PauliString& q);

/// True iff the symplectic inner product of p and q is even.
bool commutes(const PauliString& p, const PauliString& q);

/// S_i = X_i tensor Z_{N(i)}; stabilizer generator of |G> at vertex i.
PauliString vertex_stabilizer(const Graph& g, int i);

/// S_i S_j for an edge (i,j): Y on both endpoints, Z on the symmetric
/// difference of the neighborhoods, sign carried exactly.
PauliString edge_stabilizer(const Graph& g, int i, int j);

/// A single-qubit Clifford given by its conjugation action: images of X and Z
/// as signed single-qubit Paulis. Composing and conjugating stays inside the
/// Pauli group.
struct SingleQubitClifford {
  enum class Kind { I, H, S, Sdg, SqrtX, SqrtXdg, X, Y, Z, RotZPlus, RotZMinus, RotXMinus, Composite };

  int qubit = 1;
  // images of X and Z under C^dagger (.) C, canonical bits plus phase in {0,2}
  int img_x_x = 1, img_x_z = 0, img_x_phase = 0;
  int img_z_x = 0, img_z_z = 1, img_z_phase = 0;

  static SingleQubitClifford make(Kind kind, int qubit);
  /// Composite whose conjugation action is this's followed by g's, i.e. the
  /// action of the operator product this*g.
  SingleQubitClifford then(const SingleQubitClifford& g) const;
  /// Unitary as a dense 2x2 (phase convention fixed per kind).
  Eigen::Matrix2cd dense() const;

private:
  Kind kind_ = Kind::I;
};

/// (C_1 C_2 ... C_m)^dagger P (C_1 C_2 ... C_m); the list is the operator
/// product read left to right.
PauliString conjugate(const PauliString& p, const std::vector<SingleQubitClifford>& gates);

/// Exact dense matrix of dimension 2^n; throws DimensionCapExceeded past the
/// cap.
Eigen::MatrixXcd to_dense(const PauliString& p, int dense_cap = 12);

/// Tr(P rho) for Hermitian P; throws on non-Hermitian phase or size mismatch.
double expectation(const PauliString& p, const Eigen::MatrixXcd& rho);

}  // namespace gme
