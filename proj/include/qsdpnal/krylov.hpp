#pragma once

#include <cstdint>
#include <functional>

#include "qsdpnal/linalg.hpp"

namespace qsdpnal {

/// y = op(x). Operators act on flat vectors; callers pack matrices.
using LinearOp = std::function<void(const Vector& x, Vector& y)>;

struct KrylovResult {
  Vector x;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool breakdown = false;
};

/// Conjugate gradients for a self-adjoint PSD operator. Stops when
/// ||op(x) - rhs|| <= tol. `inv_diag`, when non-empty, is a Jacobi
/// preconditioner (elementwise inverse of the diagonal).
KrylovResult cg_solve(const LinearOp& op, const Vector& rhs, double tol,
                      int maxit, const Vector& x0 = Vector(),
                      const Vector& inv_diag = Vector());

/// BiCGSTAB for a general linear operator. On breakdown it restarts once
/// from the current iterate.
KrylovResult krylov_nonsym_solve(const LinearOp& op, const Vector& rhs,
                                 double tol, int maxit,
                                 const Vector& x0 = Vector());

/// Power-method estimate of the largest eigenvalue magnitude of a
/// self-adjoint operator on R^dim. Deterministic for a given seed.
double spectral_norm_estimate(const LinearOp& op, Index dim, int iters,
                              std::uint64_t seed = 7);

}  // namespace qsdpnal
