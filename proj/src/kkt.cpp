#include "qsdpnal/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qsdpnal {

void refresh_caches(const QsdpProblem& p, Solution& sol) {
  if (p.ls) {
    require(sol.xi.size() == p.ls->B.rows(), ErrorCode::InvalidInput,
            "solution: xi length mismatch");
    const Vector u = p.ls->d - sol.xi;
    sol.QW = p.ls->B.adjoint(u);
    sol.WQW = u.squaredNorm();
  } else {
    require(sol.W.rows() == p.n && sol.W.cols() == p.n,
            ErrorCode::InvalidInput, "solution: W order mismatch");
    sol.QW = p.Q.apply(sol.W);
    sol.WQW = inner(sol.W, sol.QW);
  }
}

Solution zero_solution(const QsdpProblem& p) {
  Solution s;
  const Matrix z = Matrix::Zero(p.n, p.n);
  s.X = s.Z = s.S = z;
  if (p.ls) {
    s.xi = p.ls->d;  // corresponds to B W = 0
  } else {
    s.W = z;
  }
  s.s = Vector::Zero(p.mI());
  s.x = Vector::Zero(p.mI());
  s.yE = Vector::Zero(p.mE());
  s.yI = Vector::Zero(p.mI());
  refresh_caches(p, s);
  return s;
}

KktEvaluator::KktEvaluator(const QsdpProblem& p) : p_(&p) {
  p.validate();
  q_norm_ = estimate_q_norm(p.effective_Q());
}

KktReport KktEvaluator::evaluate(const Solution& sol) const {
  const QsdpProblem& p = *p_;
  const Index n = p.n;
  require(sol.X.rows() == n && sol.Z.rows() == n && sol.S.rows() == n &&
              sol.QW.rows() == n,
          ErrorCode::InvalidInput, "kkt: matrix order mismatch");
  require(sol.yE.size() == p.mE() && sol.yI.size() == p.mI(),
          ErrorCode::InvalidInput, "kkt: multiplier length mismatch");

  KktReport r;
  const double nx = sol.X.norm();
  const double nz = sol.Z.norm();
  const double ns = sol.S.norm();

  Matrix c = p.C;
  if (p.ls) c -= p.ls->B.adjoint(p.ls->d);

  const Vector re = p.bE - p.AE.apply(sol.X);
  r.etaP = p.mE() > 0 ? re.norm() / (1.0 + p.bE.norm()) : 0.0;

  Matrix rd = sol.Z - sol.QW + sol.S - c;
  if (p.mE() > 0) rd += p.AE.adjoint(sol.yE);
  if (p.mI() > 0) rd += p.AI.adjoint(sol.yI);
  r.etaD = rd.norm() / (1.0 + c.norm());

  r.etaZ = (sol.X - box_project(sol.X - sol.Z, p.K)).norm() / (1.0 + nx + nz);
  r.etaS1 = std::abs(inner(sol.S, sol.X)) / (1.0 + ns + nx);
  r.etaS2 = (sol.X - project_psd(sol.X)).norm() / (1.0 + nx);

  if (p.mI() > 0) {
    const Vector ri = p.bI - p.AI.apply(sol.X);
    r.etaI1 = ri.cwiseMin(0.0).norm() / (1.0 + p.bI.norm());
    r.etaI2 = sol.yI.cwiseMax(0.0).norm() / (1.0 + sol.yI.norm());
    r.etaI3 = std::abs(ri.dot(sol.yI)) / (1.0 + sol.yI.norm() + ri.norm());
  }

  const Matrix qx = p.apply_Q(sol.X);
  r.etaW = (sol.QW - qx).norm() / (1.0 + q_norm_);

  r.eta_qsdp = std::max({r.etaP, r.etaD, r.etaZ, r.etaS1, r.etaS2, r.etaI1,
                         r.etaI2, r.etaI3, r.etaW});

  r.objP = p.objective(sol.X);
  const double support = support_function(-sol.Z, p.K);
  double objd = -0.5 * sol.WQW;
  if (p.mE() > 0) objd += p.bE.dot(sol.yE);
  if (p.mI() > 0) objd += p.bI.dot(sol.yI);
  if (p.ls) objd += 0.5 * p.ls->d.squaredNorm();
  if (std::isinf(support)) {
    r.dual_infinite = true;
    r.objD = -std::numeric_limits<double>::infinity();
    r.eta_gap = std::numeric_limits<double>::infinity();
  } else {
    r.objD = objd - support;
    r.eta_gap = (r.objP - r.objD) / (1.0 + std::abs(r.objP) + std::abs(r.objD));
  }
  return r;
}

KktReport kkt_residuals(const QsdpProblem& p, const Solution& sol) {
  return KktEvaluator(p).evaluate(sol);
}

}  // namespace qsdpnal
