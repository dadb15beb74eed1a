#include "flagram/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "flagram/error.hpp"

namespace flagram {

void SolverConfig::validate() const {
  if (max_iterations < 1) throw validation_error("max_iterations must be positive");
  if (!(duality_gap_tolerance > 0) || !(feasibility_tolerance > 0)) throw validation_error("tolerances must be positive");
  if (!(step_fraction > 0 && step_fraction < 1)) throw validation_error("step_fraction must lie in (0, 1)");
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Entry {
  int block;
  int p;
  int q;
  double v;
};

// Block-diagonal symmetric matrix: dense blocks plus one diagonal block.
struct BlockMatrix {
  std::vector<MatrixXd> dense;
  VectorXd diag;

  BlockMatrix& operator+=(const BlockMatrix& o) {
    for (std::size_t t = 0; t < dense.size(); ++t) dense[t] += o.dense[t];
    diag += o.diag;
    return *this;
  }
};

BlockMatrix scaled_identity(const std::vector<int>& dims, int lp, double s) {
  BlockMatrix b;
  for (int d : dims) b.dense.push_back(MatrixXd::Identity(d, d) * s);
  b.diag = VectorXd::Constant(lp, s);
  return b;
}

BlockMatrix zeros(const std::vector<int>& dims, int lp) { return scaled_identity(dims, lp, 0.0); }

double inner(const BlockMatrix& a, const BlockMatrix& b) {
  double s = a.diag.dot(b.diag);
  for (std::size_t t = 0; t < a.dense.size(); ++t) s += (a.dense[t].array() * b.dense[t].array()).sum();
  return s;
}

double norm(const BlockMatrix& a) { return std::sqrt(inner(a, a)); }

class Operator {
 public:
  explicit Operator(const SdpProblem& sdp) : m_(sdp.constraint_count()), dims_(sdp.block_dims) {
    rows_.resize(static_cast<std::size_t>(m_));
    touching_.resize(dims_.size());
    for (int i = 0; i < m_; ++i) {
      for (const BlockEntry& e : sdp.constraints[static_cast<std::size_t>(i)]) {
        const double v = e.value.get_d();
        rows_[static_cast<std::size_t>(i)].push_back({e.block, e.i, e.j, v});
        if (e.i != e.j) rows_[static_cast<std::size_t>(i)].push_back({e.block, e.j, e.i, v});
        auto& touch = touching_[static_cast<std::size_t>(e.block)];
        if (touch.empty() || touch.back() != i) touch.push_back(i);
      }
    }
  }

  int m() const { return m_; }
  int lp() const { return m_ + 1; }
  const std::vector<int>& dims() const { return dims_; }

  VectorXd apply(const BlockMatrix& x) const {
    VectorXd out(m_);
    for (int i = 0; i < m_; ++i) {
      double s = x.diag(i) + x.diag(m_);
      for (const Entry& e : rows_[static_cast<std::size_t>(i)]) s += e.v * x.dense[static_cast<std::size_t>(e.block)](e.q, e.p);
      out(i) = s;
    }
    return out;
  }

  BlockMatrix adjoint(const VectorXd& y) const {
    BlockMatrix out = zeros(dims_, lp());
    for (int i = 0; i < m_; ++i) {
      for (const Entry& e : rows_[static_cast<std::size_t>(i)]) out.dense[static_cast<std::size_t>(e.block)](e.p, e.q) += y(i) * e.v;
      out.diag(i) += y(i);
      out.diag(m_) += y(i);
    }
    return out;
  }

  double row_norm(int i) const {
    double s = 2.0;
    for (const Entry& e : rows_[static_cast<std::size_t>(i)]) s += e.v * e.v;
    return std::sqrt(s);
  }

  // O_ij = tr(A_i X A_j Z^{-1}).
  MatrixXd schur(const BlockMatrix& x, const BlockMatrix& zinv) const {
    MatrixXd o = MatrixXd::Zero(m_, m_);
    for (std::size_t t = 0; t < dims_.size(); ++t) {
      const int d = dims_[t];
      const auto& touch = touching_[t];
      for (int i : touch) {
        MatrixXd azinv = MatrixXd::Zero(d, d);
        for (const Entry& e : rows_[static_cast<std::size_t>(i)]) {
          if (e.block == static_cast<int>(t)) azinv.row(e.p) += e.v * zinv.dense[t].row(e.q);
        }
        const MatrixXd g = x.dense[t] * azinv;
        for (int j : touch) {
          if (j < i) continue;
          double s = 0;
          for (const Entry& e : rows_[static_cast<std::size_t>(j)]) {
            if (e.block == static_cast<int>(t)) s += e.v * g(e.q, e.p);
          }
          o(i, j) += s;
        }
      }
    }
    const double tail = x.diag(m_) * zinv.diag(m_);
    for (int i = 0; i < m_; ++i) {
      for (int j = i; j < m_; ++j) {
        o(i, j) += tail + (i == j ? x.diag(i) * zinv.diag(i) : 0.0);
        o(j, i) = o(i, j);
      }
    }
    return o;
  }

 private:
  int m_;
  std::vector<int> dims_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<int>> touching_;
};

bool invert(const BlockMatrix& z, BlockMatrix& out) {
  out.dense.resize(z.dense.size());
  for (std::size_t t = 0; t < z.dense.size(); ++t) {
    Eigen::LLT<MatrixXd> llt(z.dense[t]);
    if (llt.info() != Eigen::Success) return false;
    out.dense[t] = llt.solve(MatrixXd::Identity(z.dense[t].rows(), z.dense[t].cols()));
    out.dense[t] = 0.5 * (out.dense[t] + out.dense[t].transpose()).eval();
  }
  if ((z.diag.array() <= 0).any()) return false;
  out.diag = z.diag.cwiseInverse();
  return true;
}

// Largest step a keeping x + a*dx PSD (infinity when unbounded).
double max_step(const BlockMatrix& x, const BlockMatrix& dx) {
  double step = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < x.dense.size(); ++t) {
    if (x.dense[t].rows() == 0) continue;
    Eigen::LLT<MatrixXd> llt(x.dense[t]);
    if (llt.info() != Eigen::Success) return 0.0;
    const MatrixXd l = llt.matrixL();
    MatrixXd w = l.triangularView<Eigen::Lower>().solve(dx.dense[t]);
    w = l.triangularView<Eigen::Lower>().solve(w.transpose()).transpose();
    w = 0.5 * (w + w.transpose()).eval();
    const double lo = Eigen::SelfAdjointEigenSolver<MatrixXd>(w, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    if (lo < 0) step = std::min(step, -1.0 / lo);
  }
  for (int k = 0; k < x.diag.size(); ++k) {
    if (dx.diag(k) < 0) step = std::min(step, -x.diag(k) / dx.diag(k));
  }
  return step;
}

struct Direction {
  BlockMatrix dx;
  VectorXd dy;
  BlockMatrix dz;
};

}  // namespace

FloatSolution solve(const SdpProblem& sdp, const SolverConfig& cfg) {
  cfg.validate();
  if (sdp.total_dimension() > cfg.max_dimension) {
    throw resource_error("SDP has total block dimension " + std::to_string(sdp.total_dimension()) +
                         " above the internal solver cap of " + std::to_string(cfg.max_dimension) +
                         "; use `flagram export` with an external solver");
  }
  if (sdp.constraint_count() > cfg.max_constraints) {
    throw resource_error("SDP has " + std::to_string(sdp.constraint_count()) + " constraints, above the internal solver cap of " +
                         std::to_string(cfg.max_constraints) + "; use `flagram export` with an external solver");
  }

  const Operator op(sdp);
  const int m = op.m();
  const int lp = op.lp();
  const auto& dims = op.dims();
  int total = lp;
  for (int d : dims) total += d;

  VectorXd a(m);
  for (int i = 0; i < m; ++i) a(i) = sdp.objective[static_cast<std::size_t>(i)].get_d();
  BlockMatrix c = zeros(dims, lp);
  c.diag(m) = 1.0;

  double alpha = 0, max_row = 0;
  for (int i = 0; i < m; ++i) {
    const double r = op.row_norm(i);
    max_row = std::max(max_row, r);
    alpha = std::max(alpha, (1.0 + std::abs(a(i))) / (1.0 + r));
  }
  alpha *= total;
  const double beta = (1.0 + std::max(max_row, 1.0)) / std::sqrt(static_cast<double>(total));
  BlockMatrix x = scaled_identity(dims, lp, 10 * alpha);
  BlockMatrix z = scaled_identity(dims, lp, 10 * beta);
  VectorXd y = VectorXd::Zero(m);

  FloatSolution sol;
  sol.status = "max_iterations";
  const double a_scale = 1.0 + a.norm();
  const double c_scale = 1.0 + norm(c);

  auto residual_d = [&](const VectorXd& yy, const BlockMatrix& zz) {
    BlockMatrix r = op.adjoint(yy);
    for (std::size_t t = 0; t < dims.size(); ++t) r.dense[t] -= c.dense[t] + zz.dense[t];
    r.diag -= c.diag + zz.diag;
    return r;
  };

  int iter = 0;
  for (; iter < cfg.max_iterations; ++iter) {
    const VectorXd rp = a - op.apply(x);
    const BlockMatrix rd = residual_d(y, z);
    const double gap = inner(x, z);
    sol.gap_history.push_back(gap);
    const double pobj = x.diag(m);
    const double dobj = a.dot(y);
    const double rel_gap = std::max(gap, std::abs(pobj - dobj)) / (1.0 + std::abs(pobj) + std::abs(dobj));
    const double pinf = rp.norm() / a_scale;
    const double dinf = norm(rd) / c_scale;
    if (cfg.verbose) std::fprintf(stderr, "iter %3d gap %.3e pobj %.6f dobj %.6f pinf %.2e dinf %.2e\n", iter, gap, pobj, dobj, pinf, dinf);
    if (rel_gap <= cfg.duality_gap_tolerance && pinf <= cfg.feasibility_tolerance && dinf <= cfg.feasibility_tolerance) {
      sol.status = "optimal";
      break;
    }
    if (!std::isfinite(gap) || x.diag.cwiseAbs().maxCoeff() > 1e12 || y.cwiseAbs().maxCoeff() > 1e12) {
      throw Error(ErrorKind::certification, "interior point iterates diverged; the SDP may be infeasible or unbounded");
    }

    BlockMatrix zinv;
    if (!invert(z, zinv)) {
      sol.status = "stalled";
      break;
    }
    const MatrixXd schur = op.schur(x, zinv);
    Eigen::LDLT<MatrixXd> factor(schur);
    if (factor.info() != Eigen::Success) {
      sol.status = "stalled";
      break;
    }
    const double mu = gap / total;

    // rhs = A(sigma*mu*Z^{-1} - K - X R_d Z^{-1}) - a, with K the corrector term.
    auto direction = [&](double sigma_mu, const BlockMatrix* k) {
      BlockMatrix base = zeros(dims, lp);
      for (std::size_t t = 0; t < dims.size(); ++t) {
        base.dense[t] = sigma_mu * zinv.dense[t] - x.dense[t] * rd.dense[t] * zinv.dense[t];
        if (k) base.dense[t] -= k->dense[t];
      }
      base.diag = sigma_mu * zinv.diag - (x.diag.array() * rd.diag.array() * zinv.diag.array()).matrix();
      if (k) base.diag -= k->diag;
      Direction dir;
      dir.dy = factor.solve(VectorXd(op.apply(base) - a));
      dir.dz = op.adjoint(dir.dy);
      dir.dz += rd;
      dir.dx = zeros(dims, lp);
      for (std::size_t t = 0; t < dims.size(); ++t) {
        MatrixXd d = sigma_mu * zinv.dense[t] - x.dense[t] - x.dense[t] * dir.dz.dense[t] * zinv.dense[t];
        if (k) d -= k->dense[t];
        dir.dx.dense[t] = 0.5 * (d + d.transpose());
      }
      dir.dx.diag = sigma_mu * zinv.diag - x.diag - (x.diag.array() * dir.dz.diag.array() * zinv.diag.array()).matrix();
      if (k) dir.dx.diag -= k->diag;
      return dir;
    };

    const Direction pred = direction(0.0, nullptr);
    const double ap = std::min(1.0, max_step(x, pred.dx));
    const double ad = std::min(1.0, max_step(z, pred.dz));
    BlockMatrix xa = x, za = z;
    for (std::size_t t = 0; t < dims.size(); ++t) {
      xa.dense[t] += ap * pred.dx.dense[t];
      za.dense[t] += ad * pred.dz.dense[t];
    }
    xa.diag += ap * pred.dx.diag;
    za.diag += ad * pred.dz.diag;
    const double mu_aff = inner(xa, za) / total;
    const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

    BlockMatrix k = zeros(dims, lp);
    for (std::size_t t = 0; t < dims.size(); ++t) k.dense[t] = pred.dx.dense[t] * pred.dz.dense[t] * zinv.dense[t];
    k.diag = (pred.dx.diag.array() * pred.dz.diag.array() * zinv.diag.array()).matrix();
    const Direction corr = direction(sigma * mu, &k);

    BlockMatrix xn, zn;
    VectorXd yn;
    double step_p = 0, step_d = 0;
    // Shrinks the steps until <X, Z> does not grow.
    auto try_step = [&](const Direction& dir, bool common, int tries) {
      step_p = std::min(1.0, cfg.step_fraction * max_step(x, dir.dx));
      step_d = std::min(1.0, cfg.step_fraction * max_step(z, dir.dz));
      if (common) step_p = step_d = std::min(step_p, step_d);
      for (int t = 0; t < tries; ++t) {
        xn = x;
        zn = z;
        for (std::size_t b = 0; b < dims.size(); ++b) {
          xn.dense[b] += step_p * dir.dx.dense[b];
          zn.dense[b] += step_d * dir.dz.dense[b];
        }
        xn.diag += step_p * dir.dx.diag;
        zn.diag += step_d * dir.dz.diag;
        yn = y + step_d * dir.dy;
        if (inner(xn, zn) <= gap) return true;
        step_p *= 0.5;
        step_d *= 0.5;
      }
      return false;
    };
    bool accepted = try_step(corr, false, 8);
    if (!accepted) accepted = try_step(direction(std::max(sigma, 0.3) * mu, nullptr), true, 60);
    if (cfg.verbose) std::fprintf(stderr, "         steps %.3e %.3e sigma %.3e accepted %d\n", step_p, step_d, sigma, accepted);
    if (!accepted || (step_p < 1e-12 && step_d < 1e-12)) {
      sol.status = "stalled";
      break;
    }
    x = std::move(xn);
    z = std::move(zn);
    y = std::move(yn);
  }

  sol.iterations = iter;
  sol.lambda = x.diag(m);
  sol.matrices = x.dense;
  sol.slack.assign(x.diag.data(), x.diag.data() + m);
  sol.y.assign(y.data(), y.data() + m);
  return sol;
}

}  // namespace flagram
