#pragma once

#include "qsdpnal/problem.hpp"

namespace qsdpnal {

/// Primal-dual point in the units of the original problem.
struct Solution {
  Matrix X;
  Matrix Z;
  Matrix W;   // shadow W (general Q)
  Vector xi;  // least-squares dual, xi = d - B W (least-squares mode)
  Matrix S;
  Vector s;   // slack dual of the inequalities
  Vector x;   // slack primal, A_I X + D x = b_I
  Vector yE;
  Vector yI;
  // Derived from W or xi by refresh_caches.
  Matrix QW;
  double WQW = 0.0;
};

/// Recomputes QW and <W,QW> from W (or from xi in least-squares mode).
void refresh_caches(const QsdpProblem& p, Solution& sol);

/// Zero point of matching dimensions.
Solution zero_solution(const QsdpProblem& p);

struct KktReport {
  double etaP = 0, etaD = 0, etaZ = 0, etaS1 = 0, etaS2 = 0;
  double etaI1 = 0, etaI2 = 0, etaI3 = 0, etaW = 0;
  double eta_qsdp = 0;
  double eta_gap = 0;
  double objP = 0;
  double objD = 0;
  bool dual_infinite = false;  // support value of -Z is +infinity
};

/// Caches ||Q|| for repeated evaluations on one problem.
class KktEvaluator {
 public:
  explicit KktEvaluator(const QsdpProblem& p);
  KktReport evaluate(const Solution& sol) const;
  double q_norm() const { return q_norm_; }

 private:
  const QsdpProblem* p_;
  double q_norm_ = 0.0;
};

KktReport kkt_residuals(const QsdpProblem& p, const Solution& sol);

/// Largest residual that measures the primal variable X: everything except
/// eta_D, which tracks the dual equality, and eta_I2, which tracks y_I.
inline double multiplier_residual(const KktReport& r) {
  double m = r.etaP;
  for (double e : {r.etaZ, r.etaS1, r.etaS2, r.etaI1, r.etaI3, r.etaW})
    m = e > m ? e : m;
  return m;
}

inline bool certify(const KktReport& r, double tol) {
  return r.eta_qsdp <= tol;
}

}  // namespace qsdpnal
