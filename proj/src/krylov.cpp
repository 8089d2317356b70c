#include "qsdpnal/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qsdpnal {

KrylovResult cg_solve(const LinearOp& op, const Vector& rhs, double tol,
                      int maxit, const Vector& x0, const Vector& inv_diag) {
  require(tol >= 0.0, ErrorCode::InvalidInput, "cg_solve: negative tolerance");
  const Index dim = rhs.size();
  const bool precond = inv_diag.size() == dim && dim > 0;
  KrylovResult res;
  res.x = x0.size() == dim ? x0 : Vector::Zero(dim);

  Vector r = rhs;
  Vector ap(dim);
  if (x0.size() == dim && x0.squaredNorm() > 0.0) {
    op(res.x, ap);
    r -= ap;
  }
  double rnorm = r.norm();
  res.residual_norm = rnorm;
  if (rnorm <= tol) {
    res.converged = true;
    return res;
  }

  Vector best_x = res.x;
  double best_r = rnorm;
  Vector z = precond ? Vector(inv_diag.cwiseProduct(r)) : r;
  Vector p = z;
  double rz = r.dot(z);
  double curvature_scale = 0.0;

  for (int it = 1; it <= maxit; ++it) {
    op(p, ap);
    const double pap = p.dot(ap);
    const double pp = p.squaredNorm();
    if (pp == 0.0) {
      res.breakdown = true;
      break;
    }
    curvature_scale = std::max(curvature_scale, std::abs(pap) / pp);
    if (pap < -1e-10 * pp * std::max(curvature_scale, 1.0))
      fail(ErrorCode::IndefiniteOperator, "cg_solve: negative curvature");
    if (pap <= 1e-300) {
      res.breakdown = true;
      break;
    }
    const double alpha = rz / pap;
    res.x += alpha * p;
    r -= alpha * ap;
    rnorm = r.norm();
    res.iterations = it;
    if (rnorm < best_r) {
      best_r = rnorm;
      best_x = res.x;
    }
    if (rnorm <= tol) {
      res.converged = true;
      res.residual_norm = rnorm;
      return res;
    }
    if (precond)
      z = inv_diag.cwiseProduct(r);
    else
      z = r;
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
  }
  res.x = best_x;
  res.residual_norm = best_r;
  res.converged = best_r <= tol;
  return res;
}

namespace {

struct BicgOutcome {
  bool breakdown = false;
};

// One BiCGSTAB run from res.x; updates res in place.
BicgOutcome bicgstab_pass(const LinearOp& op, const Vector& rhs, double tol,
                          int maxit, KrylovResult& res, Vector& best_x,
                          double& best_r) {
  const Index dim = rhs.size();
  Vector tmp(dim);
  op(res.x, tmp);
  Vector r = rhs - tmp;
  double rnorm = r.norm();
  if (rnorm < best_r) {
    best_r = rnorm;
    best_x = res.x;
  }
  if (rnorm <= tol) return {};
  const Vector r_hat = r;
  double rho = 1.0, alpha = 1.0, omega = 1.0;
  Vector v = Vector::Zero(dim);
  Vector p = Vector::Zero(dim);
  Vector s(dim), t(dim);
  const double eps = 1e-300;
  while (res.iterations < maxit) {
    const double rho_new = r_hat.dot(r);
    if (std::abs(rho_new) <= 1e-30 * r_hat.norm() * r.norm() + eps)
      return {true};
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    p = r + beta * (p - omega * v);
    op(p, v);
    const double rv = r_hat.dot(v);
    if (std::abs(rv) <= eps) return {true};
    alpha = rho / rv;
    s = r - alpha * v;
    ++res.iterations;
    if (s.norm() <= tol) {
      res.x += alpha * p;
      rnorm = s.norm();
      if (rnorm < best_r) {
        best_r = rnorm;
        best_x = res.x;
      }
      return {};
    }
    op(s, t);
    const double tt = t.squaredNorm();
    if (tt <= eps) return {true};
    omega = t.dot(s) / tt;
    res.x += alpha * p + omega * s;
    r = s - omega * t;
    rnorm = r.norm();
    if (rnorm < best_r) {
      best_r = rnorm;
      best_x = res.x;
    }
    if (rnorm <= tol) return {};
    if (std::abs(omega) <= eps) return {true};
  }
  return {};
}

}  // namespace

KrylovResult krylov_nonsym_solve(const LinearOp& op, const Vector& rhs,
                                 double tol, int maxit, const Vector& x0) {
  require(tol >= 0.0, ErrorCode::InvalidInput,
          "krylov_nonsym_solve: negative tolerance");
  const Index dim = rhs.size();
  KrylovResult res;
  res.x = x0.size() == dim ? x0 : Vector::Zero(dim);
  Vector best_x = res.x;
  double best_r = std::numeric_limits<double>::infinity();

  BicgOutcome out = bicgstab_pass(op, rhs, tol, maxit, res, best_x, best_r);
  if (out.breakdown && best_r > tol) {
    res.breakdown = true;
    res.x = best_x;
    bicgstab_pass(op, rhs, tol, maxit, res, best_x, best_r);
  }
  res.x = best_x;
  res.residual_norm = best_r;
  res.converged = best_r <= tol;
  return res;
}

double spectral_norm_estimate(const LinearOp& op, Index dim, int iters,
                              std::uint64_t seed) {
  require(iters > 0, ErrorCode::InvalidInput,
          "spectral_norm_estimate: iters must be positive");
  if (dim == 0) return 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x(dim);
  for (Index i = 0; i < dim; ++i) x(i) = gauss(rng);
  x.normalize();
  Vector y(dim);
  double est = 0.0;
  for (int it = 0; it < iters; ++it) {
    op(x, y);
    const double ny = y.norm();
    // ||op x|| with ||x|| = 1 never exceeds the operator norm.
    est = std::max(est, ny);
    if (ny == 0.0) break;
    x = y / ny;
  }
  return est;
}

}  // namespace qsdpnal
