#include "gme/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace gme {

namespace {

// Hermitian H -> real symmetric [[Re, -Im], [Im, Re]] / 2. The half makes
// <embed(A), embed(X)> = Tr(A X) for Hermitian pairs, so objective values and
// dual multipliers carry over unchanged.
Eigen::MatrixXd embed_half(const Eigen::MatrixXcd& h) {
  const auto n = h.rows();
  Eigen::MatrixXd e(2 * n, 2 * n);
  e.topLeftCorner(n, n) = h.real();
  e.bottomRightCorner(n, n) = h.real();
  e.topRightCorner(n, n) = -h.imag();
  e.bottomLeftCorner(n, n) = h.imag();
  e = 0.5 * (e + e.transpose()).eval() * 0.5;  // symmetrize, apply the 1/2
  return e;
}

// Cholesky with a small diagonal bump retry; iterates ride close to the cone
// boundary near convergence and plain LLT can fail there on roundoff.
Eigen::LLT<Eigen::MatrixXd> safe_llt(Eigen::MatrixXd m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  double bump = 1e-12 * (1.0 + m.trace() / static_cast<double>(m.rows()));
  for (int t = 0; t < 3 && llt.info() != Eigen::Success; ++t) {
    m += bump * Eigen::MatrixXd::Identity(m.rows(), m.cols());
    llt.compute(m);
    bump *= 100;
  }
  return llt;
}

// Dense standard-form cone program
//   min <C,X> s.t. <F_r,X> + x_{slack_r} = rhs_r, X psd, x >= 0
// solved by an infeasible primal-dual path-following method with
// Nesterov-Todd scaling and a Mehrotra predictor-corrector step.
class ConeIpm {
public:
  struct Outcome {
    Eigen::VectorXd y;
    double pobj = 0.0;
    double dobj = 0.0;
    bool converged = false;
    int iterations = 0;
  };

  ConeIpm(Eigen::MatrixXd C, std::vector<Eigen::MatrixXd> F, std::vector<int> slack,
          Eigen::VectorXd rhs)
      : C_(std::move(C)), F_(std::move(F)), slack_(std::move(slack)), rhs_(std::move(rhs)) {
    D_ = static_cast<int>(C_.rows());
    m_ = static_cast<int>(F_.size());
    l_ = 0;
    for (int r = 0; r < m_; ++r) l_ = std::max(l_, slack_[r] + 1);
  }

  Outcome solve(double tol, int max_iters) {
    using Eigen::MatrixXd;
    using Eigen::VectorXd;

    const double tau_p = 1.0 + rhs_.cwiseAbs().maxCoeff();
    const double tau_d = 1.0 + C_.cwiseAbs().maxCoeff();
    MatrixXd X = tau_p * MatrixXd::Identity(D_, D_);
    MatrixXd S = tau_d * MatrixXd::Identity(D_, D_);
    VectorXd x = VectorXd::Constant(l_, tau_p);
    VectorXd s = VectorXd::Constant(l_, tau_d);
    VectorXd y = VectorXd::Zero(m_);

    Outcome out;
    const double bnorm = 1.0 + rhs_.cwiseAbs().maxCoeff();
    const double cnorm = 1.0 + C_.cwiseAbs().maxCoeff();

    for (int iter = 0; iter < max_iters; ++iter) {
      out.iterations = iter;
      // residuals
      VectorXd rp(m_);
      for (int r = 0; r < m_; ++r) {
        double v = rhs_[r] - (F_[r].cwiseProduct(X)).sum();
        if (slack_[r] >= 0) v -= x[slack_[r]];
        rp[r] = v;
      }
      MatrixXd Rd = C_ - S;
      for (int r = 0; r < m_; ++r) Rd -= y[r] * F_[r];
      VectorXd rd_lp = VectorXd::Zero(l_);
      for (int r = 0; r < m_; ++r)
        if (slack_[r] >= 0) rd_lp[slack_[r]] = -s[slack_[r]] - y[r];

      const double gap = (X.cwiseProduct(S)).sum() + x.dot(s);
      const double mu = gap / (D_ + l_);
      out.pobj = (C_.cwiseProduct(X)).sum();
      out.dobj = rhs_.dot(y);
      out.y = y;

      const double pinf = rp.cwiseAbs().maxCoeff() / bnorm;
      double dinf = Rd.cwiseAbs().maxCoeff();
      if (l_ > 0) dinf = std::max(dinf, rd_lp.cwiseAbs().maxCoeff());
      dinf /= cnorm;
      const double relgap = gap / (1.0 + std::abs(out.pobj) + std::abs(out.dobj));
      if (pinf < tol && dinf < tol && relgap < tol) {
        out.converged = true;
        return out;
      }

      // Nesterov-Todd scaling point: R^-1 X R^-T = R^T S R = diag(lam).
      Eigen::LLT<MatrixXd> lltX = safe_llt(X), lltS = safe_llt(S);
      if (lltX.info() != Eigen::Success || lltS.info() != Eigen::Success) return out;
      MatrixXd Lx = lltX.matrixL();
      MatrixXd Ls = lltS.matrixL();
      Eigen::JacobiSVD<MatrixXd> svd(Ls.transpose() * Lx,
                                     Eigen::ComputeFullU | Eigen::ComputeFullV);
      VectorXd lam = svd.singularValues();
      if (lam.minCoeff() <= 0) return out;
      VectorXd lam_isqrt = lam.cwiseSqrt().cwiseInverse();
      MatrixXd R = Lx * svd.matrixV() * lam_isqrt.asDiagonal();
      MatrixXd Rinv = lam_isqrt.asDiagonal() * svd.matrixU().transpose() * Ls.transpose();

      VectorXd w = VectorXd::Ones(l_), lam_lp = VectorXd::Ones(l_);
      for (int k = 0; k < l_; ++k) {
        w[k] = std::sqrt(x[k] / s[k]);
        lam_lp[k] = std::sqrt(x[k] * s[k]);
      }

      // Schur complement M = Gram of the scaled rows (+ w^2 on slack rows)
      std::vector<MatrixXd> G(m_);
      for (int r = 0; r < m_; ++r) G[r] = R.transpose() * F_[r] * R;
      MatrixXd M(m_, m_);
      for (int r = 0; r < m_; ++r)
        for (int q = r; q < m_; ++q) {
          double v = (G[r].cwiseProduct(G[q])).sum();
          if (r == q && slack_[r] >= 0) v += w[slack_[r]] * w[slack_[r]];
          M(r, q) = v;
          M(q, r) = v;
        }
      M += 1e-14 * M.diagonal().maxCoeff() * MatrixXd::Identity(m_, m_);
      Eigen::LDLT<MatrixXd> ldlt(M);
      if (ldlt.info() != Eigen::Success) return out;

      MatrixXd RdS = R.transpose() * Rd * R;

      struct Direction {
        VectorXd dy, dx, ds;
        MatrixXd dX, dS;
        MatrixXd sdX, sdS;  // NT-scaled copies, reused by the corrector
        VectorXd sdx, sds;
      };
      auto solve_direction = [&](const MatrixXd& Gt, const VectorXd& glp) {
        Direction dir;
        VectorXd rhs_vec(m_);
        for (int r = 0; r < m_; ++r) {
          double v = rp[r] - (G[r].cwiseProduct(Gt)).sum() + (G[r].cwiseProduct(RdS)).sum();
          if (slack_[r] >= 0) {
            int k = slack_[r];
            v -= w[k] * glp[k] - w[k] * w[k] * rd_lp[k];
          }
          rhs_vec[r] = v;
        }
        dir.dy = ldlt.solve(rhs_vec);
        dir.dS = Rd;
        for (int r = 0; r < m_; ++r) dir.dS -= dir.dy[r] * F_[r];
        dir.sdS = R.transpose() * dir.dS * R;
        dir.sdX = Gt - dir.sdS;
        dir.dX = R * dir.sdX * R.transpose();
        dir.dX = 0.5 * (dir.dX + dir.dX.transpose()).eval();
        dir.ds = VectorXd::Zero(l_);
        dir.dx = VectorXd::Zero(l_);
        dir.sdx = VectorXd::Zero(l_);
        dir.sds = VectorXd::Zero(l_);
        for (int r = 0; r < m_; ++r)
          if (slack_[r] >= 0) {
            int k = slack_[r];
            dir.ds[k] = rd_lp[k] - dir.dy[r];
            dir.dx[k] = w[k] * glp[k] - w[k] * w[k] * dir.ds[k];
            dir.sdx[k] = dir.dx[k] / w[k];
            dir.sds[k] = w[k] * dir.ds[k];
          }
        return dir;
      };

      // Predictor
      MatrixXd Gt_aff = (-lam).asDiagonal();
      VectorXd glp_aff = -lam_lp;
      Direction aff = solve_direction(Gt_aff, glp_aff);
      double ap = std::min(1.0, 0.99 * max_step(X, aff.dX, x, aff.dx));
      double ad = std::min(1.0, 0.99 * max_step(S, aff.dS, s, aff.ds));
      double mu_aff = ((X + ap * aff.dX).cwiseProduct(S + ad * aff.dS)).sum() +
                      (x + ap * aff.dx).dot(s + ad * aff.ds);
      mu_aff /= (D_ + l_);
      double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-8, 1.0);

      // Corrector with the Mehrotra second-order term
      MatrixXd corrM = 0.5 * (aff.sdX * aff.sdS + aff.sdS * aff.sdX.transpose());
      corrM = 0.5 * (corrM + corrM.transpose()).eval();
      MatrixXd Gt(D_, D_);
      for (int i = 0; i < D_; ++i)
        for (int j = 0; j < D_; ++j) {
          double target = (i == j) ? lam[i] * lam[j] - sigma * mu : 0.0;
          Gt(i, j) = -2.0 * (target + corrM(i, j)) / (lam[i] + lam[j]);
        }
      VectorXd glp(l_);
      for (int k = 0; k < l_; ++k)
        glp[k] = -(lam_lp[k] * lam_lp[k] - sigma * mu + aff.sdx[k] * aff.sds[k]) / lam_lp[k];
      Direction dir = solve_direction(Gt, glp);

      ap = std::min(1.0, 0.98 * max_step(X, dir.dX, x, dir.dx));
      ad = std::min(1.0, 0.98 * max_step(S, dir.dS, s, dir.ds));
      X += ap * dir.dX;
      x += ap * dir.dx;
      S += ad * dir.dS;
      s += ad * dir.ds;
      y += ad * dir.dy;
    }
    return out;
  }

private:
  // Largest alpha with X + alpha dX psd and x + alpha dx >= 0.
  static double max_step(const Eigen::MatrixXd& X, const Eigen::MatrixXd& dX,
                         const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
    double alpha = 1e30;
    Eigen::LLT<Eigen::MatrixXd> llt = safe_llt(X);
    if (llt.info() != Eigen::Success) return 0.0;
    Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd T = L.triangularView<Eigen::Lower>().solve(dX);
    T = L.triangularView<Eigen::Lower>().solve(T.transpose()).transpose();
    T = 0.5 * (T + T.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    if (lo < 0) alpha = std::min(alpha, -1.0 / lo);
    for (int k = 0; k < x.size(); ++k)
      if (dx[k] < 0) alpha = std::min(alpha, -x[k] / dx[k]);
    return alpha;
  }

  Eigen::MatrixXd C_;
  std::vector<Eigen::MatrixXd> F_;
  std::vector<int> slack_;
  Eigen::VectorXd rhs_;
  int D_, m_, l_;
};

// Dual matrix constraint z I + sum_j (y_{2j-1}-y_{2j}) B_j
//                            + sum_i (y_{2(J+i)-1}-y_{2(J+i)}) A_i.
Eigen::MatrixXcd dual_matrix(const SdpProblem& p, double z, const Eigen::VectorXd& y) {
  Eigen::MatrixXcd m = z * Eigen::MatrixXcd::Identity(p.d, p.d);
  for (int j = 0; j < p.J(); ++j) m += (y[2 * j] - y[2 * j + 1]) * p.constraint_ops[j];
  for (int i = 0; i < p.N; ++i)
    m += (y[2 * (p.J() + i)] - y[2 * (p.J() + i) + 1]) * p.targets[i];
  return m;
}

double dual_objective(const SdpProblem& p, double z, const Eigen::VectorXd& y) {
  double beta = z;
  for (int j = 0; j < p.J(); ++j)
    beta += (p.b[j] + p.eps[j]) * y[2 * j] + (-p.b[j] + p.eps[j]) * y[2 * j + 1];
  return beta;
}

double max_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

}  // namespace

SupportReduction support_reduce(const std::vector<PauliString>& ops) {
  if (ops.empty()) throw std::invalid_argument("support_reduce: empty operator list");
  std::set<int> qubits;
  for (const auto& op : ops) {
    if (op.n() != ops.front().n())
      throw std::invalid_argument("support_reduce: operators act on different qubit counts");
    for (int q : op.support()) qubits.insert(q);
  }
  SupportReduction out;
  out.qubits.assign(qubits.begin(), qubits.end());
  if (out.qubits.empty()) return out;  // identity-only family; flagged by the empty subset
  for (const auto& op : ops) out.ops.push_back(op.restrict_to(out.qubits));
  return out;
}

SdpProblem build_lower_bound_problem(
    const std::vector<PauliString>& targets,
    const std::vector<std::tuple<PauliString, double, double>>& constraints, int psd_cap) {
  if (targets.empty())
    throw std::invalid_argument("build_lower_bound_problem: no target operators");
  const int nq = targets.front().n();
  const int d = 1 << nq;
  if (d > psd_cap)
    throw DimensionCapExceeded("build_lower_bound_problem: physical block " + std::to_string(d) +
                               " exceeds cap " + std::to_string(psd_cap));
  SdpProblem p;
  p.N = static_cast<int>(targets.size());
  p.d = d;
  for (const auto& t : targets) {
    if (t.n() != nq)
      throw std::invalid_argument("build_lower_bound_problem: mixed qubit counts");
    if (!t.is_hermitian())
      throw std::invalid_argument("build_lower_bound_problem: non-Hermitian target");
    p.targets.push_back(to_dense(t, nq));
  }
  p.b.resize(static_cast<Eigen::Index>(constraints.size()));
  p.eps.resize(p.b.size());
  Eigen::Index j = 0;
  for (const auto& [op, b, eps] : constraints) {
    if (op.n() != nq)
      throw std::invalid_argument("build_lower_bound_problem: mixed qubit counts");
    if (!op.is_hermitian())
      throw std::invalid_argument("build_lower_bound_problem: non-Hermitian constraint");
    if (eps < 0) throw std::invalid_argument("build_lower_bound_problem: negative epsilon");
    p.constraint_ops.push_back(to_dense(op, nq));
    p.b[j] = b;
    p.eps[j] = eps;
    ++j;
  }
  return p;
}

DualCertificate solve_dual(const SdpProblem& p, double tolerance) {
  const int N = p.N, J = p.J(), d = p.d;
  const int dim_c = N + d;  // complex block: abs slots above the physical block

  // Assemble the linearized primal in standard form. Row order matches the
  // dual vector layout: constraint pairs, then target pairs, then the trace.
  auto block = [&](const Eigen::MatrixXcd& nblock, const Eigen::MatrixXcd& dblock) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_c, dim_c);
    m.topLeftCorner(N, N) = nblock;
    m.bottomRightCorner(d, d) = dblock;
    return m;
  };
  const Eigen::MatrixXcd zero_n = Eigen::MatrixXcd::Zero(N, N);
  const Eigen::MatrixXcd zero_d = Eigen::MatrixXcd::Zero(d, d);
  const Eigen::MatrixXcd id_d = Eigen::MatrixXcd::Identity(d, d);

  std::vector<Eigen::MatrixXd> F;
  std::vector<int> slack;
  std::vector<double> rhs;
  int next_slack = 0;
  for (int j = 0; j < J; ++j) {
    F.push_back(embed_half(block(zero_n, p.constraint_ops[j])));
    slack.push_back(next_slack++);
    rhs.push_back(p.b[j] + p.eps[j]);
    F.push_back(embed_half(block(zero_n, -p.constraint_ops[j])));
    slack.push_back(next_slack++);
    rhs.push_back(-p.b[j] + p.eps[j]);
  }
  for (int i = 0; i < N; ++i) {
    Eigen::MatrixXcd ii = Eigen::MatrixXcd::Zero(N, N);
    ii(i, i) = -1.0;
    F.push_back(embed_half(block(ii, p.targets[i])));
    slack.push_back(next_slack++);
    rhs.push_back(0.0);
    F.push_back(embed_half(block(ii, -p.targets[i])));
    slack.push_back(next_slack++);
    rhs.push_back(0.0);
  }
  F.push_back(embed_half(block(zero_n, id_d)));
  slack.push_back(-1);
  rhs.push_back(1.0);

  Eigen::MatrixXcd obj_n = Eigen::MatrixXcd::Identity(N, N);
  Eigen::MatrixXd C = embed_half(block(obj_n, zero_d));

  ConeIpm ipm(C, std::move(F), std::move(slack),
              Eigen::Map<Eigen::VectorXd>(rhs.data(), static_cast<Eigen::Index>(rhs.size())));
  auto res = ipm.solve(std::min(tolerance, 1e-9), 200);

  DualCertificate cert;
  cert.iterations = res.iterations;
  cert.converged = res.converged;
  cert.y = res.y.head(2 * (J + N));
  cert.z = res.y[2 * (J + N)];

  // Repair: clip signs, restore the pair-sum constraints, then shift z until
  // the matrix constraint is satisfied. Each step only decreases beta, so the
  // repaired point is a sound bound.
  for (Eigen::Index i = 0; i < cert.y.size(); ++i) cert.y[i] = std::min(cert.y[i], 0.0);
  for (int i = 0; i < N; ++i) {
    double sum = cert.y[2 * (J + i)] + cert.y[2 * (J + i) + 1];
    if (sum < -1.0) {
      double t = -1.0 / sum;
      cert.y[2 * (J + i)] *= t;
      cert.y[2 * (J + i) + 1] *= t;
    }
  }
  double lam_max = max_eigenvalue(dual_matrix(p, cert.z, cert.y));
  if (lam_max > -1e-12) cert.z -= lam_max + 1e-12;

  cert.beta = dual_objective(p, cert.z, cert.y);
  cert.matrix_slack = max_eigenvalue(dual_matrix(p, cert.z, cert.y));
  cert.scalar_slack = 0.0;
  for (Eigen::Index i = 0; i < cert.y.size(); ++i)
    cert.scalar_slack = std::max(cert.scalar_slack, cert.y[i]);
  for (int i = 0; i < N; ++i)
    cert.scalar_slack = std::max(
        cert.scalar_slack, -1.0 - (cert.y[2 * (J + i)] + cert.y[2 * (J + i) + 1]));
  cert.gap_estimate = std::abs(res.pobj - cert.beta);
  return cert;
}

VerifyResult verify_dual_certificate(const SdpProblem& p, const DualCertificate& cert) {
  VerifyResult out;
  if (cert.y.size() != 2 * (p.J() + p.N))
    throw std::invalid_argument("verify_dual_certificate: dual vector length mismatch");
  out.matrix_slack = max_eigenvalue(dual_matrix(p, cert.z, cert.y));
  out.scalar_slack = 0.0;
  for (Eigen::Index i = 0; i < cert.y.size(); ++i)
    out.scalar_slack = std::max(out.scalar_slack, cert.y[i]);
  for (int i = 0; i < p.N; ++i)
    out.scalar_slack = std::max(
        out.scalar_slack, -1.0 - (cert.y[2 * (p.J() + i)] + cert.y[2 * (p.J() + i) + 1]));
  out.beta = dual_objective(p, cert.z, cert.y);
  out.sound = out.matrix_slack <= 1e-9 && out.scalar_slack <= 1e-9;
  return out;
}

MeasurementRecord bound_unmeasured_edges(const Graph& g, const MeasurementRecord& rec,
                                         const EdgeBoundOptions& opts) {
  MeasurementRecord out = rec;
  for (auto [i, j] : g.edges()) {
    auto it = out.edge_terms.find({i, j});
    if (it != out.edge_terms.end() && it->second.provenance != Provenance::Absent) continue;

    auto vi = rec.vertex_terms.find(i);
    auto vj = rec.vertex_terms.find(j);
    if (vi == rec.vertex_terms.end() || vj == rec.vertex_terms.end())
      throw std::invalid_argument("bound_unmeasured_edges: vertex terms for edge (" +
                                  std::to_string(i) + "," + std::to_string(j) + ") missing");

    PauliString si = vertex_stabilizer(g, i);
    PauliString sj = vertex_stabilizer(g, j);
    PauliString sij = edge_stabilizer(g, i, j);
    SupportReduction red = support_reduce({si, sj, sij});
    EdgeTerm term;
    if ((1 << red.qubits.size()) > opts.psd_cap) {
      term.provenance = Provenance::Absent;
      term.note = "support of " + std::to_string(red.qubits.size()) +
                  " qubits exceeds the SDP cap; term contributes 0";
      out.edge_terms[{i, j}] = term;
      continue;
    }
    SdpProblem prob = build_lower_bound_problem(
        {red.ops[2]}, {{red.ops[0], vi->second.value, vi->second.sigma},
                       {red.ops[1], vj->second.value, vj->second.sigma}},
        opts.psd_cap);
    prob.qubit_subset = red.qubits;
    DualCertificate cert = solve_dual(prob, opts.tolerance);
    VerifyResult check = verify_dual_certificate(prob, cert);
    if (!check.sound) {
      term.provenance = Provenance::Absent;
      term.note = "dual certificate failed verification; term contributes 0";
      out.edge_terms[{i, j}] = term;
      continue;
    }
    term.provenance = Provenance::SdpLowerBound;
    term.value = std::max(0.0, cert.beta);
    term.sigma = 0.0;
    if (cert.beta > 0) {
      term.gradients.push_back({i, cert.y[0] - cert.y[1]});
      term.gradients.push_back({j, cert.y[2] - cert.y[3]});
    } else {
      term.gradients.push_back({i, 0.0});
      term.gradients.push_back({j, 0.0});
    }
    out.edge_terms[{i, j}] = term;
  }
  return out;
}

}  // namespace gme
