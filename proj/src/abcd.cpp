#include "qsdpnal/abcd.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "qsdpnal/phase1.hpp"

namespace qsdpnal {

void validate(const AbcdConfig& c) {
  if (!(c.eta > 0.0)) fail(ErrorCode::InvalidConfig, "abcd: eta must be > 0");
  if (!(c.eps0 > 0.0) || c.max_iters <= 0 || !(c.tol_floor >= 0.0))
    fail(ErrorCode::InvalidConfig, "abcd: eps0 and max_iters must be > 0");
  validate(c.sncg);
}

MomentumStep momentum_update(double t) {
  require(t >= 1.0, ErrorCode::InvalidInput, "momentum_update: t must be >= 1");
  MomentumStep s;
  s.t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
  s.beta = (t - 1.0) / s.t_next;
  return s;
}

Extrapolated extrapolate(const Iterate& cur, const Iterate& prev,
                         double beta) {
  Extrapolated e;
  e.W = cur.W + beta * (cur.W - prev.W);
  e.u = cur.u + beta * (cur.u - prev.u);
  e.QW = cur.QW + beta * (cur.QW - prev.QW);
  e.S = cur.S + beta * (cur.S - prev.S);
  e.y = cur.y + beta * (cur.y - prev.y);
  return e;
}

AbcdResult abcd_solve(const StandardizedProblem& sp, const ConeElement& xhat,
                      double sigma, const Iterate& start,
                      const AbcdConfig& config, const AbcdAccept& accept) {
  require(sp.K.kind() != PolyhedralSet::Kind::WholeSpace,
          ErrorCode::InvalidInput,
          "abcd_solve: K is the whole space; use sncg_solve directly");
  validate(config);

  AbcdResult res;
  Iterate cur = start;
  cur.X = xhat;
  Iterate prev = cur;
  // Extrapolated point (W~, S~, y~); QW~ extrapolates linearly with W~.
  Matrix qw_t = cur.QW;
  ConeElement s_t = cur.S;
  Vector y_t = cur.y;
  double t = 1.0;

  for (int l = 1; l <= config.max_iters; ++l) {
    const ConeElement aty = sp.adjoint_A(y_t);
    const Matrix rt = sigma * (s_t.M + aty.M - qw_t - sp.C) + xhat.M;
    const Matrix z = update_Z(sp, rt, sigma);

    const InnerSubproblem sub =
        make_subproblem(sp, sigma, xhat, z, config.eta, y_t);
    const double eps_l = config.eps0 / std::pow(static_cast<double>(l), 1.5);
    const double tol =
        std::max(eps_l / (t * (1.0 + sigma)), config.tol_floor);
    SncgResult r = sncg_solve(sub, inner_point(cur), config.sncg, tol);
    res.sncg_iters += r.iters;
    res.iters = l;

    Iterate next;
    next.Z = z;
    next.W = std::move(r.point.W);
    next.u = std::move(r.point.u);
    next.QW = std::move(r.point.QW);
    next.WQW = r.point.WQW;
    next.y = std::move(r.point.y);
    next.S = std::move(r.S);
    next.X = xhat;

    if (config.verbose)
      std::fprintf(stderr, "  abcd %3d sncg %2d kry %4d grad %.2e tol %.2e%s\n", l,
                   r.iters, r.krylov_iters, r.grad_norm, tol,
                   r.stalled ? " stalled" : "");
    prev = std::move(cur);
    cur = std::move(next);
    if (accept && accept(cur)) {
      res.accepted = true;
      break;
    }
    if (r.stalled && r.iters == 0) {
      res.stalled = true;
      break;
    }
    // Later sweeps only tighten the SNCG tolerance until it hits the floor.
    if (r.iters == 0 && tol <= config.tol_floor &&
        (cur.Z - prev.Z).norm() <= 1e-14 * (1.0 + cur.Z.norm())) {
      res.stationary = true;
      break;
    }

    const MomentumStep ms = momentum_update(t);
    t = ms.t_next;
    Extrapolated e = extrapolate(cur, prev, ms.beta);
    qw_t = std::move(e.QW);
    s_t = std::move(e.S);
    y_t = std::move(e.y);
  }
  res.it = std::move(cur);
  return res;
}

}  // namespace qsdpnal
