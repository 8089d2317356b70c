#include "qsdpnal/phase1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qsdpnal/krylov.hpp"

namespace qsdpnal {

namespace {

constexpr double kGoldenRatio = 1.6180339887498949;

Eigen::Map<const Vector> flat(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

}  // namespace

void validate(const Phase1Config& c) {
  if (!(c.tau > 0.0 && c.tau < kGoldenRatio))
    fail(ErrorCode::InvalidConfig, "phase1: tau must lie in (0, 1.618...)");
  if (!(c.sigma > 0.0))
    fail(ErrorCode::InvalidConfig, "phase1: sigma must be positive");
  if (c.max_iters < 0)
    fail(ErrorCode::InvalidConfig, "phase1: max_iters must be nonnegative");
  if (!(c.eps0 > 0.0))
    fail(ErrorCode::InvalidConfig, "phase1: eps0 must be positive");
}

WBlockResult solve_W_block(const StandardizedProblem& sp, const Matrix& r,
                           double sigma, double tol, int maxit,
                           const Vector& warm) {
  require(tol > 0.0 && sigma > 0.0, ErrorCode::InvalidInput,
          "solve_W_block: tol and sigma must be positive");
  const Index n = sp.n;
  const double tol_eff = tol / std::max(1.0, sp.q_norm);
  WBlockResult out;

  if (sp.ls_mode()) {
    const ConstraintMap& b = sp.ls->B;
    const Vector rhs = b.apply(r);
    const Vector inv_diag =
        (1.0 + sigma * b.row_norms().array().square()).inverse().matrix();
    LinearOp op = [&](const Vector& x, Vector& y) {
      y = x + sigma * b.apply(b.adjoint(x));
    };
    const Vector x0 = warm.size() == rhs.size() ? warm : Vector();
    KrylovResult kr = cg_solve(op, rhs, tol_eff, maxit, x0, inv_diag);
    out.u = kr.x;
    out.QW = b.adjoint(out.u);
    out.WQW = out.u.squaredNorm();
    out.residual = kr.residual_norm;
    out.iterations = kr.iterations;
    out.converged = kr.converged;
    return out;
  }

  const QOperator& q = sp.Q;
  if (q.kind() == QOperator::Kind::Zero) {
    out.W = r;
    out.QW = Matrix::Zero(n, n);
    out.WQW = 0.0;
    return out;
  }
  if (q.is_entrywise()) {
    const Matrix w = q.diagonal();
    out.W = r.array() / (1.0 + sigma * w.array());
    out.QW = w.cwiseProduct(out.W);
    out.WQW = inner(out.W, out.QW);
    return out;
  }

  const Vector inv_diag =
      flat(Matrix((1.0 + sigma * q.diagonal().array().max(0.0)).inverse()));
  LinearOp op = [&](const Vector& x, Vector& y) {
    const Eigen::Map<const Matrix> xm(x.data(), n, n);
    const Matrix qx = q.apply(xm);
    y = x + sigma * flat(qx);
  };
  const Vector x0 = warm.size() == n * n ? warm : Vector();
  KrylovResult kr = cg_solve(op, flat(r), tol_eff, maxit, x0, inv_diag);
  out.W = Eigen::Map<const Matrix>(kr.x.data(), n, n);
  out.W = 0.5 * (out.W + out.W.transpose());
  out.QW = q.apply(out.W);
  out.WQW = inner(out.W, out.QW);
  out.residual = kr.residual_norm;
  out.iterations = kr.iterations;
  out.converged = kr.converged;
  return out;
}

Matrix update_Z(const StandardizedProblem& sp, const Matrix& rt,
                double sigma) {
  if (sp.K.kind() == PolyhedralSet::Kind::WholeSpace)
    return Matrix::Zero(rt.rows(), rt.cols());
  return (box_project(rt, sp.K) - rt) / sigma;
}

ConeElement update_S(const ConeElement& m) { return project_cone(m); }

YBlockResult solve_y_block(const StandardizedProblem& sp,
                           const AatSolver& aat, const Vector& rhs,
                           double sigma, double eps_k) {
  YBlockResult out;
  if (sp.m() == 0) {
    out.y = Vector();
    return out;
  }
  const Vector r = rhs / sigma;
  AatSolver::Result res = aat.solve(r, eps_k / sigma);
  out.y = res.y;
  out.residual = sigma * res.residual;
  if (aat.singular() && !res.converged && out.residual > eps_k)
    fail(ErrorCode::Phase1Stalled,
         "phase1: y-block solve did not reach the inexactness bound");
  return out;
}

Phase1Result phase1_run(const StandardizedProblem& sp,
                        const Phase1Config& config, Iterate start,
                        const IterateMonitor& monitor,
                        const AatSolver* aat_in) {
  validate(config);
  AatSolver local;
  if (!aat_in) local = AatSolver(sp.A);
  const AatSolver& aat = aat_in ? *aat_in : local;

  Phase1Result res;
  Iterate& it = res.it;
  it = std::move(start);
  refresh_quadratic(sp, it);
  double sigma = config.sigma;
  const bool whole = sp.K.kind() == PolyhedralSet::Kind::WholeSpace;
  const double tau = config.tau;

  res.kkt = monitor(it);
  res.sigma = sigma;
  if (res.kkt.eta_qsdp <= config.target) {
    res.reached_target = true;
    return res;
  }

  ConeElement aty = sp.adjoint_A(it.y);
  for (int k = 1; k <= config.max_iters; ++k) {
    const double eps_k = config.eps0 / std::pow(static_cast<double>(k), 1.5);
    const double eta = std::max(res.kkt.eta_qsdp, 1e-12);

    auto w_step = [&]() {
      const Matrix r = it.X.M + sigma * (it.Z + it.S.M + aty.M - sp.C);
      const double tol = std::min(eps_k, 1e-2 * eta) * (1.0 + r.norm());
      const Vector warm = sp.ls_mode() ? it.u : flat(it.W);
      WBlockResult wb =
          solve_W_block(sp, r, sigma, tol, config.w_maxit, warm);
      if (sp.ls_mode())
        it.u = std::move(wb.u);
      else
        it.W = std::move(wb.W);
      it.QW = std::move(wb.QW);
      it.WQW = wb.WQW;
    };
    auto y_step = [&]() {
      ConeElement t = it.X;
      t.M += sigma * (it.Z - it.QW + it.S.M - sp.C);
      t.v += sigma * it.S.v;
      const Vector rhs = sp.b - sp.apply_A(t);
      const double tol = std::min(eps_k, 1e-2 * eta * (1.0 + rhs.norm()));
      it.y = solve_y_block(sp, aat, rhs, sigma, tol).y;
      aty = sp.adjoint_A(it.y);
    };

    try {
    w_step();
    if (!whole) {
      const Matrix rt = sigma * (it.S.M + aty.M - it.QW - sp.C) + it.X.M;
      it.Z = update_Z(sp, rt, sigma);
      w_step();
    }
    y_step();
    {
      ConeElement m;
      m.M = it.QW - it.Z + sp.C - aty.M - it.X.M / sigma;
      m.v = -aty.v - it.X.v / sigma;
      it.S = update_S(m);
    }
    y_step();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Phase1Stalled) throw;
      res.stalled = true;
      res.kkt = monitor(it);
      break;
    }

    ConeElement rd = aty;
    rd.M += it.Z - it.QW + it.S.M - sp.C;
    rd.v += it.S.v;
    it.X += (tau * sigma) * rd;

    res.iterations = k;
    res.kkt = monitor(it);
    if (config.record_history) res.history.push_back({k, sigma, res.kkt, 0});
    if (config.verbose_every > 0 && k % config.verbose_every == 0)
      std::fprintf(stderr,
                   "phase1 %5d sigma %.2e eta %.2e P %.2e D %.2e Z %.2e "
                   "S %.2e %.2e I %.2e %.2e %.2e W %.2e\n",
                   k, sigma, res.kkt.eta_qsdp, res.kkt.etaP, res.kkt.etaD,
                   res.kkt.etaZ, res.kkt.etaS1, res.kkt.etaS2, res.kkt.etaI1,
                   res.kkt.etaI2, res.kkt.etaI3, res.kkt.etaW);
    if (res.kkt.eta_qsdp <= config.target) {
      res.reached_target = true;
      break;
    }
    if (config.tune_sigma && k % config.sigma_every == 0)
      sigma = sigma_update(sigma, res.kkt.etaD,
                           multiplier_residual(res.kkt),
                           config.sigma_rule);
  }
  res.sigma = sigma;
  return res;
}

}  // namespace qsdpnal
