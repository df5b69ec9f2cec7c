#include "gme/statesim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gme {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

void check_cap(int n, int cap, const char* who) {
  if (n > cap)
    throw DimensionCapExceeded(std::string(who) + ": " + std::to_string(n) +
                               " qubits exceeds dense cap " + std::to_string(cap));
}

// Deterministic, platform-independent generator for shot sampling.
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// In-place left multiplication of a 2x2 on qubit q of each column of m.
void apply_left(Eigen::MatrixXcd& m, int n, int q, const Eigen::Matrix2cd& u) {
  const std::int64_t dim = m.rows();
  const std::int64_t stride = std::int64_t{1} << (n - q);  // qubit 1 = msb
  for (std::int64_t col = 0; col < m.cols(); ++col)
    for (std::int64_t base = 0; base < dim; ++base)
      if ((base & stride) == 0) {
        auto a = m(base, col);
        auto b = m(base | stride, col);
        m(base, col) = u(0, 0) * a + u(0, 1) * b;
        m(base | stride, col) = u(1, 0) * a + u(1, 1) * b;
      }
}

void apply_vec(Eigen::VectorXcd& v, int n, int q, const Eigen::Matrix2cd& u) {
  const std::int64_t dim = v.size();
  const std::int64_t stride = std::int64_t{1} << (n - q);
  for (std::int64_t base = 0; base < dim; ++base)
    if ((base & stride) == 0) {
      auto a = v(base);
      auto b = v(base | stride);
      v(base) = u(0, 0) * a + u(0, 1) * b;
      v(base | stride) = u(1, 0) * a + u(1, 1) * b;
    }
}

// rho -> U_q rho U_q^dagger
void conjugate_qubit(Eigen::MatrixXcd& rho, int n, int q, const Eigen::Matrix2cd& u) {
  apply_left(rho, n, q, u);
  rho.adjointInPlace();
  apply_left(rho, n, q, u);
  rho.adjointInPlace();
}

std::vector<Eigen::Matrix2cd> kraus_ops(const ChannelSpec& c) {
  if (c.param < 0.0 || c.param > 1.0)
    throw std::invalid_argument("channel parameter must lie in [0,1]");
  const double p = c.param;
  std::vector<Eigen::Matrix2cd> ks;
  Eigen::Matrix2cd k;
  switch (c.type) {
    case ChannelSpec::Type::Dephasing:
      k << std::sqrt(1 - p), 0, 0, std::sqrt(1 - p); ks.push_back(k);
      k << std::sqrt(p), 0, 0, 0; ks.push_back(k);
      k << 0, 0, 0, std::sqrt(p); ks.push_back(k);
      break;
    case ChannelSpec::Type::Depolarizing:
      k << std::sqrt(1 - 0.75 * p), 0, 0, std::sqrt(1 - 0.75 * p); ks.push_back(k);
      k << 0, std::sqrt(p / 4), std::sqrt(p / 4), 0; ks.push_back(k);
      k << 0, -kImag * std::sqrt(p / 4), kImag * std::sqrt(p / 4), 0; ks.push_back(k);
      k << std::sqrt(p / 4), 0, 0, -std::sqrt(p / 4); ks.push_back(k);
      break;
    case ChannelSpec::Type::AmplitudeDamping:
      k << 1, 0, 0, std::sqrt(1 - p); ks.push_back(k);
      k << 0, std::sqrt(p), 0, 0; ks.push_back(k);
      break;
  }
  return ks;
}

}  // namespace

DensityMatrix::DensityMatrix(int n, Eigen::MatrixXcd m) : n_(n), m_(std::move(m)) {
  if (n < 1) throw std::invalid_argument("DensityMatrix: qubit count must be positive");
  const auto dim = Eigen::Index{1} << n;
  if (m_.rows() != dim || m_.cols() != dim)
    throw std::invalid_argument("DensityMatrix: matrix dimension is not 2^n");
}

void DensityMatrix::validate(double tol) const {
  if (!m_.isApprox(m_.adjoint(), tol) && (m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::runtime_error("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
    throw std::runtime_error("DensityMatrix: trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::runtime_error("DensityMatrix: negative eigenvalue beyond tolerance");
}

Eigen::VectorXcd graph_state_vector(const Graph& g, int cap) {
  check_cap(g.n(), cap, "graph_state");
  const int n = g.n();
  const std::int64_t dim = std::int64_t{1} << n;
  Eigen::VectorXcd psi(dim);
  const double amp = std::pow(2.0, -0.5 * n);
  for (std::int64_t b = 0; b < dim; ++b) {
    int cz = 0;
    for (auto [i, j] : g.edges()) {
      bool bi = (b >> (n - i)) & 1;
      bool bj = (b >> (n - j)) & 1;
      cz ^= (bi && bj);
    }
    psi(b) = cz ? -amp : amp;
  }
  return psi;
}

DensityMatrix graph_state(const Graph& g, int cap) {
  Eigen::VectorXcd psi = graph_state_vector(g, cap);
  return DensityMatrix(g.n(), psi * psi.adjoint());
}

DensityMatrix add_white_noise(const DensityMatrix& rho, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("add_white_noise: p must lie in [0,1]");
  const auto dim = rho.mat().rows();
  Eigen::MatrixXcd m = (1.0 - p) * rho.mat();
  m += (p / static_cast<double>(dim)) * Eigen::MatrixXcd::Identity(dim, dim);
  return DensityMatrix(rho.n(), std::move(m));
}

DensityMatrix apply_local_channel(const DensityMatrix& rho, const std::vector<ChannelSpec>& channels) {
  Eigen::MatrixXcd m = rho.mat();
  const int n = rho.n();
  for (const auto& c : channels) {
    if (c.qubit < 1 || c.qubit > n)
      throw std::invalid_argument("apply_local_channel: qubit out of range");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(m.rows(), m.cols());
    for (const auto& k : kraus_ops(c)) {
      Eigen::MatrixXcd term = m;
      conjugate_qubit(term, n, c.qubit, k);
      acc += term;
    }
    m = std::move(acc);
  }
  DensityMatrix out(n, std::move(m));
  out.validate();
  return out;
}

Eigen::VectorXcd dicke_state_vector(int n, int i, int cap) {
  check_cap(n, cap, "dicke_state");
  if (n < 1) throw std::invalid_argument("dicke_state: n must be positive");
  if (i < 0 || i > n) throw std::invalid_argument("dicke_state: need 0 <= i <= n");
  const std::int64_t dim = std::int64_t{1} << n;
  double count = 0;
  for (std::int64_t b = 0; b < dim; ++b)
    if (std::popcount(static_cast<std::uint64_t>(b)) == i) count += 1;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  const double amp = 1.0 / std::sqrt(count);
  for (std::int64_t b = 0; b < dim; ++b)
    if (std::popcount(static_cast<std::uint64_t>(b)) == i) psi(b) = amp;
  return psi;
}

DensityMatrix dicke_state(int n, int i, int cap) {
  Eigen::VectorXcd psi = dicke_state_vector(n, i, cap);
  return DensityMatrix(n, psi * psi.adjoint());
}

DensityMatrix apply_local_rotations(const DensityMatrix& rho, const LocalRotationSchedule& sched) {
  const int n = rho.n();
  if (static_cast<int>(sched.angles.size()) != 3 * n)
    throw std::invalid_argument("apply_local_rotations: schedule length must be 3n");
  for (double a : sched.angles)
    if (std::abs(a) > M_PI + 1e-9)
      throw std::invalid_argument("apply_local_rotations: angle outside [-pi, pi]");
  auto rz = [](double t) {
    Eigen::Matrix2cd m;
    m << std::exp(-kImag * (t / 2)), 0, 0, std::exp(kImag * (t / 2));
    return m;
  };
  auto ry = [](double t) {
    Eigen::Matrix2cd m;
    m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
    return m;
  };
  std::vector<std::pair<int, Eigen::Matrix2cd>> us;
  for (int q = 1; q <= n; ++q) {
    const double a = sched.angles[3 * (q - 1)];
    const double b = sched.angles[3 * (q - 1) + 1];
    const double c = sched.angles[3 * (q - 1) + 2];
    us.push_back({q, rz(a) * ry(b) * rz(c)});
  }
  return apply_single_qubit_unitaries(rho, us);
}

DensityMatrix apply_single_qubit_unitaries(const DensityMatrix& rho,
                                           const std::vector<std::pair<int, Eigen::Matrix2cd>>& us) {
  Eigen::MatrixXcd m = rho.mat();
  for (const auto& [q, u] : us) {
    if (q < 1 || q > rho.n())
      throw std::invalid_argument("apply_single_qubit_unitaries: qubit out of range");
    conjugate_qubit(m, rho.n(), q, u);
  }
  return DensityMatrix(rho.n(), std::move(m));
}

Eigen::VectorXcd apply_single_qubit_unitaries(const Eigen::VectorXcd& psi, int n,
                                              const std::vector<std::pair<int, Eigen::Matrix2cd>>& us) {
  Eigen::VectorXcd v = psi;
  for (const auto& [q, u] : us) {
    if (q < 1 || q > n)
      throw std::invalid_argument("apply_single_qubit_unitaries: qubit out of range");
    apply_vec(v, n, q, u);
  }
  return v;
}

double fidelity(const DensityMatrix& rho, const Eigen::VectorXcd& psi) {
  if (psi.size() != rho.mat().rows())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return (psi.adjoint() * rho.mat() * psi)(0, 0).real();
}

MeasurementRecord measure_record(const DensityMatrix& rho, const Graph& g,
                                 const std::vector<SingleQubitClifford>& gates,
                                 std::optional<ShotModel> shot_model) {
  if (rho.mat().rows() != (Eigen::Index{1} << g.n()))
    throw std::invalid_argument("measure_record: state and graph dimensions differ");
  MeasurementRecord rec(g);
  SplitMix64 rng{shot_model ? shot_model->seed : 0};

  auto estimate = [&](const PauliString& op) {
    double exact = expectation(conjugate(op, gates), rho.mat());
    if (!shot_model) return std::pair<double, double>{exact, 0.0};
    const double p_plus = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
    std::uint64_t plus = 0;
    for (std::uint64_t s = 0; s < shot_model->shots; ++s)
      if (rng.uniform() < p_plus) ++plus;
    const double est =
        2.0 * static_cast<double>(plus) / static_cast<double>(shot_model->shots) - 1.0;
    const double sigma = std::sqrt(std::max(0.0, 1.0 - est * est) /
                                   static_cast<double>(shot_model->shots));
    return std::pair<double, double>{est, sigma};
  };

  for (int v = 1; v <= g.n(); ++v) {
    auto [val, sig] = estimate(vertex_stabilizer(g, v));
    rec.vertex_terms[v] = VertexTerm{val, sig, Provenance::Measured};
  }
  for (auto [i, j] : g.edges()) {
    auto [val, sig] = estimate(edge_stabilizer(g, i, j));
    rec.edge_terms[{i, j}] = EdgeTerm{val, sig, Provenance::Measured, {}, ""};
  }
  return rec;
}

}  // namespace gme
