#pragma once

#include <functional>

#include "qsdpnal/iterate.hpp"

namespace qsdpnal {

struct SncgConfig {
  double mu = 1e-4;       // Armijo slope
  double eta_bar = 0.5;
  double tau_exp = 0.5;   // forcing exponent: eta_j = min(eta_bar, |g|^(1+tau))
  double tau1 = 1e-2;
  double tau2 = 1e-1;
  double delta_bt = 0.5;  // backtracking ratio
  int max_iters = 50;
  int krylov_maxit = 500;
  int max_backtracks = 60;
};

void validate(const SncgConfig& c);

/// Inner problem min_{W,y} phi(W,y) with
/// phi = 1/2<W,QW> - <b,y> + sigma/2 ||Pi(A*y - QW - Chat)||^2
///       + eta/2 ||y - y_anchor||^2.
struct InnerSubproblem {
  const StandardizedProblem* sp = nullptr;
  double sigma = 1.0;
  ConeElement Chat;  // C - X/sigma - Z
  double eta = 0.0;
  Vector y_anchor;
};

InnerSubproblem make_subproblem(const StandardizedProblem& sp, double sigma,
                                const ConeElement& x, const Matrix& z_fixed,
                                double eta = 0.0,
                                const Vector& y_anchor = Vector());

/// (W, y) with cached Q W and <W, QW>. In least-squares mode u = B W
/// replaces W.
struct InnerPoint {
  Matrix W;
  Vector u;
  Matrix QW;
  double WQW = 0.0;
  Vector y;
};

InnerPoint inner_point(const Iterate& it);

/// A*y - QW - Chat.
ConeElement eval_S_of(const InnerSubproblem& sub, const InnerPoint& pt);

/// Everything derived from one projection of S(W, y).
struct PhiState {
  ConeElement Sw;
  PsdProjection proj;  // of Sw.M
  ConeElement PiS;     // (proj.proj, max(Sw.v, 0))
  double phi = 0.0;
  // Gradient: gW = Q(W - sigma Pi) (or gu = u - sigma B Pi), gy.
  Matrix gW;
  Vector gu;
  Vector gy;
  double grad_norm = 0.0;
};

double eval_phi(const InnerSubproblem& sub, const InnerPoint& pt);
PhiState eval_state(const InnerSubproblem& sub, const InnerPoint& pt,
                    bool with_gradient = true);
/// Fills the gradient fields of a state built without them.
void add_gradient(const InnerSubproblem& sub, const InnerPoint& pt,
                  PhiState& st);

/// Newton direction. dW is a shadow (general Q) and du is used in
/// least-squares mode.
struct Direction {
  Matrix dW;
  Vector du;
  Matrix QdW;
  Vector dy;
};

/// Applies hat-V + varrho (0, .): (rW, ry) with
/// rW = dW + sigma [U(Q dW - A* dy)]_mat,
/// ry = -sigma A U(Q dW - A* dy) + (varrho + eta) dy.
/// `qdw` must equal Q(dW).
void newton_system_apply(const InnerSubproblem& sub, const PhiState& st,
                         double varrho, const Matrix& qdw, const Matrix& dw,
                         const Vector& dy, Matrix& rw, Vector& ry);

/// Applies U on S^n x R^mI: (U0(H), 1[v > 0] o h).
ConeElement jacobian_apply(const PhiState& st, const ConeElement& h);

struct NewtonStats {
  int krylov_iters = 0;
  double residual = 0.0;
  bool converged = true;
  bool fallback = false;
};

/// Approximately solves the regularized Newton system with residual of the
/// symmetric system at most tol. Falls back to a scaled steepest descent
/// direction when the Krylov solve fails or does not produce descent.
Direction newton_step(const InnerSubproblem& sub, const InnerPoint& pt,
                      const PhiState& st, double varrho, double tol,
                      const SncgConfig& cfg, NewtonStats* stats = nullptr);

/// <grad phi, d> using caches only.
double directional_derivative(const InnerSubproblem& sub,
                              const InnerPoint& pt, const PhiState& st,
                              const Direction& d);

/// pt + t d with caches updated without applying Q.
InnerPoint step_point(const InnerPoint& pt, const Direction& d, double t);

struct LineSearchResult {
  double step = 0.0;
  int backtracks = 0;
  InnerPoint point;
  PhiState state;
};

/// First t = delta^m with phi(pt + t d) <= phi(pt) + mu t <grad, d>. When
/// |t <grad, d>| is below the rounding level of phi, a trial point with a
/// smaller gradient norm is accepted instead.
/// Throws InvalidInput when d is not a descent direction and
/// LineSearchFailure after cfg.max_backtracks reductions.
LineSearchResult armijo_linesearch(const InnerSubproblem& sub,
                                   const InnerPoint& pt, const PhiState& st,
                                   const Direction& d, const SncgConfig& cfg);

struct SncgResult {
  InnerPoint point;
  PhiState state;
  ConeElement S;  // Pi(-S(W, y))
  double grad_norm = 0.0;
  int iters = 0;
  int krylov_iters = 0;
  bool converged = false;
  bool stalled = false;
  std::vector<double> grad_history;
};

/// Optional early-exit test evaluated at every iterate (after the gradient).
using SncgAccept = std::function<bool(const InnerPoint&, const PhiState&)>;

SncgResult sncg_solve(const InnerSubproblem& sub, InnerPoint start,
                      const SncgConfig& cfg, double stop_tol,
                      const SncgAccept& accept = nullptr);

}  // namespace qsdpnal
