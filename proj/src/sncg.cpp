#include "qsdpnal/sncg.hpp"

#include <algorithm>
#include <cmath>

#include "qsdpnal/krylov.hpp"

namespace qsdpnal {

namespace {

constexpr double kPhiRound = 1e-13;

Eigen::Map<const Vector> flat(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

bool ls_mode(const InnerSubproblem& sub) { return sub.sp->ls_mode(); }

Vector prox_part(const InnerSubproblem& sub, const Vector& y) {
  if (sub.eta > 0.0 && sub.y_anchor.size() == y.size())
    return y - sub.y_anchor;
  return Vector::Zero(y.size());
}

Direction fallback_direction(const InnerSubproblem& sub, const InnerPoint& pt,
                             const PhiState& st) {
  Direction d;
  const StandardizedProblem& sp = *sub.sp;
  if (ls_mode(sub)) {
    d.du = -st.gu;
    d.QdW = sp.adjoint_B(d.du);
  } else {
    // Shadow of -grad_W: Q(d.dW) = -gW.
    d.dW = sub.sigma * st.PiS.M - pt.W;
    d.QdW = sp.apply_Q(d.dW);
  }
  d.dy = -st.gy;
  return d;
}

}  // namespace

void validate(const SncgConfig& c) {
  auto in_open = [](double v, double lo, double hi) { return v > lo && v < hi; };
  if (!in_open(c.mu, 0.0, 0.5) || !in_open(c.eta_bar, 0.0, 1.0) ||
      !(c.tau_exp > 0.0 && c.tau_exp <= 1.0) || !in_open(c.tau1, 0.0, 1.0) ||
      !in_open(c.tau2, 0.0, 1.0) || !in_open(c.delta_bt, 0.0, 1.0) ||
      c.max_iters < 0 || c.krylov_maxit <= 0 || c.max_backtracks <= 0)
    fail(ErrorCode::InvalidConfig, "sncg: parameter out of range");
}

InnerSubproblem make_subproblem(const StandardizedProblem& sp, double sigma,
                                const ConeElement& x, const Matrix& z_fixed,
                                double eta, const Vector& y_anchor) {
  require(sigma > 0.0 && eta >= 0.0, ErrorCode::InvalidInput,
          "make_subproblem: sigma must be positive and eta nonnegative");
  InnerSubproblem sub;
  sub.sp = &sp;
  sub.sigma = sigma;
  sub.Chat.M = sp.C - x.M / sigma;
  if (z_fixed.size() > 0) sub.Chat.M -= z_fixed;
  sub.Chat.v = -x.v / sigma;
  sub.eta = eta;
  sub.y_anchor = y_anchor;
  return sub;
}

InnerPoint inner_point(const Iterate& it) {
  return {it.W, it.u, it.QW, it.WQW, it.y};
}

ConeElement eval_S_of(const InnerSubproblem& sub, const InnerPoint& pt) {
  ConeElement s = sub.sp->adjoint_A(pt.y);
  s.M -= pt.QW + sub.Chat.M;
  s.v -= sub.Chat.v;
  return s;
}

PhiState eval_state(const InnerSubproblem& sub, const InnerPoint& pt,
                    bool with_gradient) {
  const StandardizedProblem& sp = *sub.sp;
  const double sigma = sub.sigma;
  PhiState st;
  st.Sw = eval_S_of(sub, pt);
  st.proj = psd_project(st.Sw.M);
  st.PiS = {st.proj.proj, st.Sw.v.cwiseMax(0.0)};
  const Vector dy = prox_part(sub, pt.y);
  st.phi = 0.5 * pt.WQW - sp.b.dot(pt.y) +
           0.5 * sigma * (st.PiS.M.squaredNorm() + st.PiS.v.squaredNorm()) +
           0.5 * sub.eta * dy.squaredNorm();
  if (with_gradient) add_gradient(sub, pt, st);
  return st;
}

void add_gradient(const InnerSubproblem& sub, const InnerPoint& pt,
                  PhiState& st) {
  const StandardizedProblem& sp = *sub.sp;
  const double sigma = sub.sigma;
  const Vector dy = prox_part(sub, pt.y);
  st.gy = sigma * sp.apply_A(st.PiS) - sp.b + sub.eta * dy;
  double g2 = st.gy.squaredNorm();
  if (sp.ls_mode()) {
    st.gu = pt.u - sigma * sp.apply_B(st.PiS.M);
    g2 += st.gu.squaredNorm();
  } else {
    st.gW = pt.QW - sigma * sp.apply_Q(st.PiS.M);
    g2 += st.gW.squaredNorm();
  }
  st.grad_norm = std::sqrt(g2);
}

double eval_phi(const InnerSubproblem& sub, const InnerPoint& pt) {
  return eval_state(sub, pt, false).phi;
}

ConeElement jacobian_apply(const PhiState& st, const ConeElement& h) {
  ConeElement out;
  out.M = proj_jacobian_apply(st.proj.jac, h.M);
  out.v = (st.Sw.v.array() > 0.0).select(h.v, 0.0);
  return out;
}

void newton_system_apply(const InnerSubproblem& sub, const PhiState& st,
                         double varrho, const Matrix& qdw, const Matrix& dw,
                         const Vector& dy, Matrix& rw, Vector& ry) {
  const StandardizedProblem& sp = *sub.sp;
  ConeElement h = sp.adjoint_A(dy);
  h *= -1.0;
  h.M += qdw;
  const ConeElement uh = jacobian_apply(st, h);
  rw = dw + sub.sigma * uh.M;
  ry = -sub.sigma * sp.apply_A(uh) + (varrho + sub.eta) * dy;
}

double directional_derivative(const InnerSubproblem& sub,
                              const InnerPoint& pt, const PhiState& st,
                              const Direction& d) {
  double g = st.gy.dot(d.dy);
  if (ls_mode(sub))
    g += st.gu.dot(d.du);
  else
    g += inner(pt.W - sub.sigma * st.PiS.M, d.QdW);
  return g;
}

Direction newton_step(const InnerSubproblem& sub, const InnerPoint& pt,
                      const PhiState& st, double varrho, double tol,
                      const SncgConfig& cfg, NewtonStats* stats) {
  const StandardizedProblem& sp = *sub.sp;
  const Index n = sp.n;
  const Index m = sp.m();
  const double sigma = sub.sigma;
  NewtonStats local;
  NewtonStats& ns = stats ? *stats : local;
  ns = NewtonStats();
  Direction d;
  bool usable = false;

  if (sp.ls_mode()) {
    const ConstraintMap& b = sp.ls->B;
    const Index s = b.rows();
    LinearOp op = [&](const Vector& x, Vector& out) {
      const Vector du = x.head(s);
      const Vector dy = x.tail(m);
      ConeElement h = sp.adjoint_A(dy);
      h *= -1.0;
      h.M += b.adjoint(du);
      const ConeElement uh = jacobian_apply(st, h);
      out.resize(s + m);
      out.head(s) = du + sigma * b.apply(uh.M);
      out.tail(m) = -sigma * sp.apply_A(uh) + (varrho + sub.eta) * dy;
    };
    Vector rhs(s + m);
    rhs << -st.gu, -st.gy;
    KrylovResult kr;
    try {
      kr = cg_solve(op, rhs, tol, cfg.krylov_maxit);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IndefiniteOperator) throw;
      kr.converged = false;
    }
    ns.krylov_iters = kr.iterations;
    ns.residual = kr.residual_norm;
    ns.converged = kr.converged;
    usable = kr.converged;
    if (usable) {
      d.du = kr.x.head(s);
      d.dy = kr.x.tail(m);
      d.QdW = b.adjoint(d.du);
    }
  } else {
    const Index nn = n * n;
    LinearOp op = [&](const Vector& x, Vector& out) {
      const Matrix dw = Eigen::Map<const Matrix>(x.data(), n, n);
      const Vector dy = x.tail(m);
      const Matrix qdw = sp.apply_Q(dw);
      Matrix rw;
      Vector ry;
      newton_system_apply(sub, st, varrho, qdw, dw, dy, rw, ry);
      out.resize(nn + m);
      out.head(nn) = flat(rw);
      out.tail(m) = ry;
    };
    Vector rhs(nn + m);
    rhs.head(nn) = flat(Matrix(sigma * st.PiS.M - pt.W));
    rhs.tail(m) = -st.gy;
    const double tol_eff = tol / std::max(1.0, sp.q_norm);
    KrylovResult kr = krylov_nonsym_solve(op, rhs, tol_eff, cfg.krylov_maxit);
    ns.krylov_iters = kr.iterations;
    ns.residual = kr.residual_norm;
    ns.converged = kr.converged;
    // An unconverged solve still returns its best iterate; keep it when it
    // improved on the zero direction and passes the descent test below.
    usable = kr.converged || kr.residual_norm < rhs.norm();
    if (usable) {
      d.dW = Eigen::Map<const Matrix>(kr.x.data(), n, n);
      d.dW = 0.5 * (d.dW + d.dW.transpose());
      d.dy = kr.x.tail(m);
      d.QdW = sp.apply_Q(d.dW);
    }
  }

  if (!usable || !(directional_derivative(sub, pt, st, d) < 0.0)) {
    ns.fallback = true;
    return fallback_direction(sub, pt, st);
  }
  return d;
}

InnerPoint step_point(const InnerPoint& pt, const Direction& d, double t) {
  InnerPoint q;
  q.y = pt.y + t * d.dy;
  q.QW = pt.QW + t * d.QdW;
  if (d.du.size() > 0) {
    q.u = pt.u + t * d.du;
    q.WQW = q.u.squaredNorm();
  } else {
    q.W = pt.W + t * d.dW;
    q.WQW = pt.WQW + 2.0 * t * inner(pt.QW, d.dW) + t * t * inner(d.dW, d.QdW);
  }
  return q;
}

LineSearchResult armijo_linesearch(const InnerSubproblem& sub,
                                   const InnerPoint& pt, const PhiState& st,
                                   const Direction& d, const SncgConfig& cfg) {
  const double gd = directional_derivative(sub, pt, st, d);
  require(gd < 0.0, ErrorCode::InvalidInput,
          "armijo_linesearch: direction is not a descent direction");
  const bool ls = d.du.size() > 0;
  const double qw_dw = ls ? 0.0 : inner(pt.QW, d.dW);
  const double dw_qdw = ls ? 0.0 : inner(d.dW, d.QdW);

  LineSearchResult out;
  double t = 1.0;
  for (int m = 0; m <= cfg.max_backtracks; ++m) {
    InnerPoint q;
    q.y = pt.y + t * d.dy;
    q.QW = pt.QW + t * d.QdW;
    if (ls) {
      q.u = pt.u + t * d.du;
      q.WQW = q.u.squaredNorm();
    } else {
      q.W = pt.W + t * d.dW;
      q.WQW = pt.WQW + 2.0 * t * qw_dw + t * t * dw_qdw;
    }
    PhiState qs = eval_state(sub, q, false);
    bool accept = qs.phi <= st.phi + cfg.mu * t * gd;
    // Below the rounding level of phi the value test is noise; a smaller
    // gradient decides instead.
    if (!accept && -t * gd <= kPhiRound * (1.0 + std::abs(st.phi))) {
      add_gradient(sub, q, qs);
      accept = qs.grad_norm < st.grad_norm;
    }
    if (accept) {
      out.step = t;
      out.backtracks = m;
      out.point = std::move(q);
      out.state = std::move(qs);
      return out;
    }
    t *= cfg.delta_bt;
  }
  fail(ErrorCode::LineSearchFailure, "armijo_linesearch: too many backtracks");
}

SncgResult sncg_solve(const InnerSubproblem& sub, InnerPoint start,
                      const SncgConfig& cfg, double stop_tol,
                      const SncgAccept& accept) {
  validate(cfg);
  SncgResult res;
  InnerPoint pt = std::move(start);
  PhiState st = eval_state(sub, pt);

  for (int j = 0;; ++j) {
    res.grad_history.push_back(st.grad_norm);
    if (st.grad_norm <= stop_tol || (accept && accept(pt, st))) {
      res.converged = true;
      break;
    }
    if (j >= cfg.max_iters) break;

    const double g = st.grad_norm;
    const double varrho = cfg.tau1 * std::min(cfg.tau2, g);
    const double tol = std::min(cfg.eta_bar, std::pow(g, 1.0 + cfg.tau_exp));
    NewtonStats ns;
    Direction d = newton_step(sub, pt, st, varrho, tol, cfg, &ns);
    res.krylov_iters += ns.krylov_iters;

    LineSearchResult lsr;
    bool ok = false;
    try {
      lsr = armijo_linesearch(sub, pt, st, d, cfg);
      ok = true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LineSearchFailure &&
          e.code() != ErrorCode::InvalidInput)
        throw;
    }
    if (!ok && !ns.fallback) {
      d = fallback_direction(sub, pt, st);
      try {
        lsr = armijo_linesearch(sub, pt, st, d, cfg);
        ok = true;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::LineSearchFailure &&
            e.code() != ErrorCode::InvalidInput)
          throw;
      }
    }
    if (!ok) {
      res.stalled = true;
      break;
    }
    pt = std::move(lsr.point);
    st = std::move(lsr.state);
    add_gradient(sub, pt, st);
    ++res.iters;
  }

  res.grad_norm = st.grad_norm;
  res.S = st.PiS - st.Sw;
  res.point = std::move(pt);
  res.state = std::move(st);
  return res;
}

}  // namespace qsdpnal
