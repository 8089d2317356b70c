#pragma once

#include <vector>

#include "qsdpnal/iterate.hpp"
#include "qsdpnal/tuning.hpp"

namespace qsdpnal {

struct Phase1Config {
  double sigma = 1.0;
  double tau = 1.618;
  double eps0 = 1.0;  // inexactness schedule eps_k = eps0 / k^1.5
  int max_iters = 1000;
  double target = 1e-4;
  int w_maxit = 500;
  bool tune_sigma = true;
  int sigma_every = 20;
  SigmaRule sigma_rule;
  bool record_history = true;
  int verbose_every = 0;  // progress line on stderr every N iterations
};

/// Throws InvalidConfig unless 0 < tau < (1 + sqrt 5) / 2 and sigma > 0.
void validate(const Phase1Config& c);

struct WBlockResult {
  Matrix W;  // empty in least-squares mode
  Vector u;  // least-squares mode only
  Matrix QW;
  double WQW = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = true;
};

/// Solves (I + sigma Q) W = R (or (I + sigma B B*) u = B R) to residual
/// tol / max(1, ||Q||). `warm` is an optional starting W or u.
WBlockResult solve_W_block(const StandardizedProblem& sp, const Matrix& r,
                           double sigma, double tol, int maxit = 500,
                           const Vector& warm = Vector());

/// Z = (Pi_K(Rt) - Rt) / sigma.
Matrix update_Z(const StandardizedProblem& sp, const Matrix& rt, double sigma);

/// Projection onto S^n_+ x R^mI_+.
ConeElement update_S(const ConeElement& m);

struct YBlockResult {
  Vector y;
  double residual = 0.0;  // ||rhs - sigma A A* y||
};

/// Solves sigma A A* y = rhs; throws Phase1Stalled if the residual exceeds
/// eps_k.
YBlockResult solve_y_block(const StandardizedProblem& sp,
                           const AatSolver& aat, const Vector& rhs,
                           double sigma, double eps_k);

struct Phase1Result {
  Iterate it;
  int iterations = 0;
  double sigma = 1.0;
  bool reached_target = false;
  bool stalled = false;  // y-block inexactness bound not met
  KktReport kkt;
  std::vector<IterRecord> history;
};

/// Runs the sweep W^ -> Z -> W -> y^ -> S -> y, X += tau sigma R_d until
/// the KKT residual reported by `monitor` is at most config.target.
Phase1Result phase1_run(const StandardizedProblem& sp,
                        const Phase1Config& config, Iterate start,
                        const IterateMonitor& monitor,
                        const AatSolver* aat = nullptr);

}  // namespace qsdpnal
