#pragma once

#include <functional>
#include <vector>

#include "qsdpnal/kkt.hpp"
#include "qsdpnal/problem.hpp"

namespace qsdpnal {

/// Primal-dual point of a StandardizedProblem (scaled units).
struct Iterate {
  Matrix Z;
  Matrix W;   // shadow of W; unused in least-squares mode
  Vector u;   // u = B W in least-squares mode
  Matrix QW;  // Q W (B* u in least-squares mode)
  double WQW = 0.0;
  ConeElement S;  // (S, s)
  Vector y;       // (y_E, y_I)
  ConeElement X;  // (X, x)

  static Iterate zero(const StandardizedProblem& sp);
};

/// Recomputes QW and WQW from W (or u).
void refresh_quadratic(const StandardizedProblem& sp, Iterate& it);

/// (Z - QW + S + A*y - C, s + D y_I).
ConeElement dual_residual(const StandardizedProblem& sp, const Iterate& it);

/// Maps a standardized iterate back to the units of the original problem.
Solution to_solution(const StandardizedProblem& sp, const Iterate& it);
/// Inverse of to_solution for warm starts.
Iterate from_solution(const StandardizedProblem& sp, const Solution& sol);

/// KKT residuals of the original problem evaluated at a standardized iterate.
class IterateMonitor {
 public:
  explicit IterateMonitor(const StandardizedProblem& sp)
      : sp_(&sp), eval_(*sp.original) {}
  KktReport operator()(const Iterate& it) const {
    return eval_.evaluate(to_solution(*sp_, it));
  }
  const KktEvaluator& evaluator() const { return eval_; }

 private:
  const StandardizedProblem* sp_;
  KktEvaluator eval_;
};

/// One row of a run history.
struct IterRecord {
  int iter = 0;
  double sigma = 0.0;
  KktReport kkt;
  int inner_iters = 0;
};

}  // namespace qsdpnal
