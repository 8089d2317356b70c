#include "qsdpnal/iterate.hpp"

#include <cmath>

namespace qsdpnal {

Iterate Iterate::zero(const StandardizedProblem& sp) {
  Iterate it;
  const Matrix z = Matrix::Zero(sp.n, sp.n);
  it.Z = z;
  if (sp.ls_mode())
    it.u = Vector::Zero(sp.ls->B.rows());
  else
    it.W = z;
  it.QW = z;
  it.WQW = 0.0;
  it.S = ConeElement::zero(sp.n, sp.mI);
  it.X = ConeElement::zero(sp.n, sp.mI);
  it.y = Vector::Zero(sp.m());
  return it;
}

void refresh_quadratic(const StandardizedProblem& sp, Iterate& it) {
  if (sp.ls_mode()) {
    it.QW = sp.adjoint_B(it.u);
    it.WQW = it.u.squaredNorm();
  } else {
    it.QW = sp.apply_Q(it.W);
    it.WQW = inner(it.W, it.QW);
  }
}

ConeElement dual_residual(const StandardizedProblem& sp, const Iterate& it) {
  ConeElement r = sp.adjoint_A(it.y);
  r.M += it.Z - it.QW + it.S.M - sp.C;
  r.v += it.S.v;
  return r;
}

Solution to_solution(const StandardizedProblem& sp, const Iterate& it) {
  const QsdpProblem& p = *sp.original;
  const double bs = sp.b_scale;
  const double cs = sp.c_scale;
  Solution sol;
  sol.X = bs * it.X.M;
  sol.x = bs * it.X.v;
  sol.Z = cs * it.Z;
  sol.S = cs * it.S.M;
  sol.s = cs * it.S.v;
  sol.yE = cs * it.y.head(sp.mE);
  sol.yI = cs * it.y.tail(sp.mI);
  if (p.ls) {
    sol.xi = p.ls->d - std::sqrt(bs * cs) * it.u;
  } else {
    sol.W = bs * it.W;
  }
  refresh_caches(p, sol);
  return sol;
}

Iterate from_solution(const StandardizedProblem& sp, const Solution& sol) {
  const QsdpProblem& p = *sp.original;
  const double bs = sp.b_scale;
  const double cs = sp.c_scale;
  require(sol.X.rows() == sp.n && sol.x.size() == sp.mI &&
              sol.yE.size() == sp.mE && sol.yI.size() == sp.mI,
          ErrorCode::InvalidInput, "from_solution: dimension mismatch");
  Iterate it;
  it.X = {sol.X / bs, sol.x / bs};
  it.Z = sol.Z / cs;
  it.S = {sol.S / cs, sol.s / cs};
  it.y.resize(sp.m());
  it.y << sol.yE / cs, sol.yI / cs;
  if (p.ls)
    it.u = (p.ls->d - sol.xi) / std::sqrt(bs * cs);
  else
    it.W = sol.W / bs;
  refresh_quadratic(sp, it);
  return it;
}

}  // namespace qsdpnal
