#include "gme/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace gme {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

std::complex<double> ipow(int p) {
  switch (((p % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Canonical single-qubit product: sigma(x1,z1) * sigma(x2,z2) =
// i^g * sigma(x1^x2, z1^z2), with g derived from sigma(x,z) = i^{xz} X^x Z^z.
int mul1q_phase(int x1, int z1, int x2, int z2) {
  int x3 = x1 ^ x2, z3 = z1 ^ z2;
  return ((x1 & z1) + (x2 & z2) - (x3 & z3) + 2 * (z1 & x2)) & 3;
}

struct Pauli1q {
  int x = 0, z = 0, phase = 0;  // i^phase * sigma(x,z)
};

Pauli1q mul1q(const Pauli1q& a, const Pauli1q& b) {
  Pauli1q r;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  r.phase = (a.phase + b.phase + mul1q_phase(a.x, a.z, b.x, b.z)) & 3;
  return r;
}

}  // namespace

PauliString::PauliString(int n) : n_(n), phase_(0) {
  if (n < 1) throw std::invalid_argument("PauliString: qubit count must be positive");
  std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  xw_.assign(words, 0);
  zw_.assign(words, 0);
}

bool PauliString::bit(const std::vector<std::uint64_t>& w, int q) {
  return (w[(q - 1) / 64] >> ((q - 1) % 64)) & 1u;
}

void PauliString::set_bit(std::vector<std::uint64_t>& w, int q, bool v) {
  std::uint64_t mask = std::uint64_t{1} << ((q - 1) % 64);
  if (v)
    w[(q - 1) / 64] |= mask;
  else
    w[(q - 1) / 64] &= ~mask;
}

bool PauliString::is_identity_bits() const {
  for (std::size_t i = 0; i < xw_.size(); ++i)
    if (xw_[i] | zw_[i]) return false;
  return true;
}

int PauliString::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < xw_.size(); ++i) w += std::popcount(xw_[i] | zw_[i]);
  return w;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (int q = 1; q <= n_; ++q)
    if (x(q) || z(q)) s.push_back(q);
  return s;
}

PauliString PauliString::restrict_to(const std::vector<int>& qubits) const {
  for (int q = 1; q <= n_; ++q)
    if ((x(q) || z(q)) && std::find(qubits.begin(), qubits.end(), q) == qubits.end())
      throw std::invalid_argument("restrict_to: operator acts outside the qubit subset");
  PauliString r(static_cast<int>(qubits.size()));
  r.phase_ = phase_;
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    r.set_x(static_cast<int>(i) + 1, x(qubits[i]));
    r.set_z(static_cast<int>(i) + 1, z(qubits[i]));
  }
  return r;
}

PauliString PauliString::parse(const std::string& text) {
  std::size_t pos = 0;
  int phase = 0;
  if (text.compare(0, 2, "-i") == 0) { phase = 3; pos = 2; }
  else if (text.compare(0, 1, "-") == 0) { phase = 2; pos = 1; }
  else if (text.compare(0, 1, "i") == 0) { phase = 1; pos = 1; }
  else if (text.compare(0, 1, "+") == 0) { pos = 1; }
  std::string body = text.substr(pos);
  if (body.empty()) throw std::invalid_argument("PauliString::parse: empty operator");
  PauliString p(static_cast<int>(body.size()));
  p.phase_ = phase;
  for (std::size_t i = 0; i < body.size(); ++i) {
    int q = static_cast<int>(i) + 1;
    switch (body[i]) {
      case 'I': break;
      case 'X': p.set_x(q, true); break;
      case 'Y': p.set_x(q, true); p.set_z(q, true); break;
      case 'Z': p.set_z(q, true); break;
      default:
        throw std::invalid_argument(std::string("PauliString::parse: bad character '") +
                                    body[i] + "'");
    }
  }
  return p;
}

std::string PauliString::str() const {
  static const char* prefixes[] = {"", "i", "-", "-i"};
  std::string s = prefixes[phase_];
  for (int q = 1; q <= n_; ++q) {
    if (x(q) && z(q)) s += 'Y';
    else if (x(q)) s += 'X';
    else if (z(q)) s += 'Z';
    else s += 'I';
  }
  return s;
}

PauliString mul(const PauliString& p, const PauliString& q) {
  if (p.n_ != q.n_) throw std::invalid_argument("mul: qubit counts differ");
  PauliString r(p.n_);
  long long g = p.phase_ + q.phase_;
  for (std::size_t i = 0; i < p.xw_.size(); ++i) {
    std::uint64_t x1 = p.xw_[i], z1 = p.zw_[i], x2 = q.xw_[i], z2 = q.zw_[i];
    std::uint64_t x3 = x1 ^ x2, z3 = z1 ^ z2;
    g += std::popcount(x1 & z1) + std::popcount(x2 & z2) - std::popcount(x3 & z3) +
         2 * std::popcount(z1 & x2);
    r.xw_[i] = x3;
    r.zw_[i] = z3;
  }
  r.phase_ = static_cast<int>(((g % 4) + 4) % 4);
  return r;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n() != q.n()) throw std::invalid_argument("commutes: qubit counts differ");
  int acc = 0;
  for (int qb = 1; qb <= p.n(); ++qb)
    acc += (p.x(qb) & q.z(qb)) ^ (p.z(qb) & q.x(qb));
  return acc % 2 == 0;
}

PauliString vertex_stabilizer(const Graph& g, int i) {
  PauliString s(g.n());
  s.set_x(i, true);
  for (int j : g.neighbors(i)) s.set_z(j, true);
  return s;
}

PauliString edge_stabilizer(const Graph& g, int i, int j) {
  if (!g.has_edge(i, j))
    throw std::invalid_argument("edge_stabilizer: (" + std::to_string(i) + "," +
                                std::to_string(j) + ") is not an edge");
  return mul(vertex_stabilizer(g, i), vertex_stabilizer(g, j));
}

SingleQubitClifford SingleQubitClifford::make(Kind kind, int qubit) {
  SingleQubitClifford c;
  c.qubit = qubit;
  c.kind_ = kind;
  auto set = [&](int xx, int xz, int xp, int zx, int zz, int zp) {
    c.img_x_x = xx; c.img_x_z = xz; c.img_x_phase = xp;
    c.img_z_x = zx; c.img_z_z = zz; c.img_z_phase = zp;
  };
  switch (kind) {
    case Kind::I: set(1, 0, 0, 0, 1, 0); break;
    case Kind::H: set(0, 1, 0, 1, 0, 0); break;                  // X<->Z
    case Kind::S: case Kind::RotZMinus: set(1, 1, 2, 0, 1, 0); break;   // X -> -Y
    case Kind::Sdg: case Kind::RotZPlus: set(1, 1, 0, 0, 1, 0); break;  // X -> Y
    case Kind::SqrtX: case Kind::RotXMinus: set(1, 0, 0, 1, 1, 0); break;  // Z -> Y
    case Kind::SqrtXdg: set(1, 0, 0, 1, 1, 2); break;            // Z -> -Y
    case Kind::X: set(1, 0, 0, 0, 1, 2); break;
    case Kind::Y: set(1, 0, 2, 0, 1, 2); break;
    case Kind::Z: set(1, 0, 2, 0, 1, 0); break;
    case Kind::Composite:
      throw std::invalid_argument("SingleQubitClifford::make: build composites via then()");
  }
  return c;
}

SingleQubitClifford SingleQubitClifford::then(const SingleQubitClifford& g) const {
  if (g.qubit != qubit) throw std::invalid_argument("SingleQubitClifford::then: qubit mismatch");
  // Conjugation by this first, then by g: the action of the product this*g.
  auto push = [&](int px, int pz, int pphase) {
    // sigma(1,1) = i X Z, hence the extra quarter turn when both bits are set.
    Pauli1q acc{0, 0, (px & pz) ? (pphase + 1) & 3 : pphase};
    if (px) acc = mul1q(acc, Pauli1q{g.img_x_x, g.img_x_z, g.img_x_phase});
    if (pz) acc = mul1q(acc, Pauli1q{g.img_z_x, g.img_z_z, g.img_z_phase});
    return acc;
  };
  SingleQubitClifford out;
  out.qubit = qubit;
  out.kind_ = Kind::Composite;
  Pauli1q ix = push(img_x_x, img_x_z, img_x_phase);
  Pauli1q iz = push(img_z_x, img_z_z, img_z_phase);
  out.img_x_x = ix.x; out.img_x_z = ix.z; out.img_x_phase = ix.phase;
  out.img_z_x = iz.x; out.img_z_z = iz.z; out.img_z_phase = iz.phase;
  return out;
}

Eigen::Matrix2cd SingleQubitClifford::dense() const {
  using M = Eigen::Matrix2cd;
  const double s = 1.0 / std::sqrt(2.0);
  M m;
  switch (kind_) {
    case Kind::I: m << 1, 0, 0, 1; break;
    case Kind::H: m << s, s, s, -s; break;
    case Kind::S: m << 1, 0, 0, kImag; break;
    case Kind::Sdg: m << 1, 0, 0, -kImag; break;
    case Kind::SqrtX: m << std::complex<double>(0.5, 0.5), std::complex<double>(0.5, -0.5),
                           std::complex<double>(0.5, -0.5), std::complex<double>(0.5, 0.5);
      break;
    case Kind::SqrtXdg: m << std::complex<double>(0.5, -0.5), std::complex<double>(0.5, 0.5),
                             std::complex<double>(0.5, 0.5), std::complex<double>(0.5, -0.5);
      break;
    case Kind::X: m << 0, 1, 1, 0; break;
    case Kind::Y: m << 0, -kImag, kImag, 0; break;
    case Kind::Z: m << 1, 0, 0, -1; break;
    case Kind::RotZPlus:  // e^{+i pi/4 Z}
      m << std::exp(kImag * (M_PI / 4)), 0, 0, std::exp(-kImag * (M_PI / 4));
      break;
    case Kind::RotZMinus:  // e^{-i pi/4 Z}
      m << std::exp(-kImag * (M_PI / 4)), 0, 0, std::exp(kImag * (M_PI / 4));
      break;
    case Kind::RotXMinus:  // e^{-i pi/4 X}
      m << s, -kImag * s, -kImag * s, s;
      break;
    case Kind::Composite:
      throw std::logic_error("SingleQubitClifford::dense: composite gates have no fixed matrix");
  }
  return m;
}

PauliString conjugate(const PauliString& p, const std::vector<SingleQubitClifford>& gates) {
  PauliString r = p;
  // (C1 C2 ... Cm)^dagger P (C1 ... Cm) = Cm^dagger (... (C1^dagger P C1) ...) Cm,
  // so apply P <- C^dagger P C in list order.
  for (const auto& g : gates) {
    if (g.qubit < 1 || g.qubit > r.n())
      throw std::out_of_range("conjugate: gate qubit index out of range");
    int px = r.x(g.qubit), pz = r.z(g.qubit);
    if (!px && !pz) continue;
    Pauli1q acc{0, 0, (px & pz) ? 1 : 0};  // sigma(1,1) = i X Z
    if (px) acc = mul1q(acc, Pauli1q{g.img_x_x, g.img_x_z, g.img_x_phase});
    if (pz) acc = mul1q(acc, Pauli1q{g.img_z_x, g.img_z_z, g.img_z_phase});
    r.set_x(g.qubit, acc.x);
    r.set_z(g.qubit, acc.z);
    r.set_phase_exp(r.phase_exp() + acc.phase);
  }
  return r;
}

Eigen::MatrixXcd to_dense(const PauliString& p, int dense_cap) {
  if (p.n() > dense_cap)
    throw DimensionCapExceeded("to_dense: " + std::to_string(p.n()) +
                               " qubits exceeds dense cap " + std::to_string(dense_cap));
  int n = p.n();
  std::size_t dim = std::size_t{1} << n;
  // Qubit 1 is the most significant dense bit.
  std::uint64_t xmask = 0, zmask = 0;
  int ys = 0;
  for (int q = 1; q <= n; ++q) {
    std::uint64_t bit = std::uint64_t{1} << (n - q);
    if (p.x(q)) xmask |= bit;
    if (p.z(q)) zmask |= bit;
    if (p.x(q) && p.z(q)) ++ys;
  }
  std::complex<double> lead = ipow(p.phase_exp() + ys);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    double sign = (std::popcount(zmask & c) % 2 == 0) ? 1.0 : -1.0;
    m(c ^ xmask, c) = lead * sign;
  }
  return m;
}

double expectation(const PauliString& p, const Eigen::MatrixXcd& rho) {
  if (!p.is_hermitian())
    throw std::invalid_argument("expectation: operator is not Hermitian");
  int n = p.n();
  if (rho.rows() != (1LL << n) || rho.cols() != rho.rows())
    throw std::invalid_argument("expectation: dimension mismatch");
  std::uint64_t xmask = 0, zmask = 0;
  int ys = 0;
  for (int q = 1; q <= n; ++q) {
    std::uint64_t bit = std::uint64_t{1} << (n - q);
    if (p.x(q)) xmask |= bit;
    if (p.z(q)) zmask |= bit;
    if (p.x(q) && p.z(q)) ++ys;
  }
  std::complex<double> lead = ipow(p.phase_exp() + ys);
  std::complex<double> acc = 0;
  std::size_t dim = std::size_t{1} << n;
  for (std::size_t d = 0; d < dim; ++d) {
    double sign = (std::popcount(zmask & d) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * rho(d, d ^ xmask);
  }
  return (lead * acc).real();
}

}  // namespace gme
