#pragma once

#include <optional>
#include <vector>

#include "qsdpnal/abcd.hpp"
#include "qsdpnal/iterate.hpp"
#include "qsdpnal/sncg.hpp"
#include "qsdpnal/tuning.hpp"

namespace qsdpnal {

/// ||b - A X|| + ||X - Pi_cone(X)|| + ||X - Pi_K(X)||.
double gamma_residual(const StandardizedProblem& sp, const ConeElement& x);

struct FkValue {
  double value = 0.0;
  ConeElement grad;
};

/// f_k(X) = -1/2<X,QX> - <C,X> - ||X - Xk||^2 / (2 sigma) and its gradient.
FkValue eval_fk(const StandardizedProblem& sp, const ConeElement& x,
                const ConeElement& xk, double sigma);

/// Augmented Lagrangian Psi_k(Z, W, S, y) at multiplier Xk (S assumed in
/// the cone). Returns +infinity when the support value of -Z is infinite.
double eval_psi(const StandardizedProblem& sp, const Iterate& cand,
                const ConeElement& xk, double sigma);

enum class Criterion { A, B, Neither };

struct CriterionEvidence {
  double psi_value = 0.0;
  double f_value = 0.0;
  double gamma_value = 0.0;
  double grad_fk_norm = 0.0;
  double x_norm = 0.0;   // ||X^{k+1}||
  double dx_norm = 0.0;  // ||X^{k+1} - X^k||
  double alpha_k = 1.0;
  double beta_k = 1.0;
  double eps_k = 0.0;
  double delta_k = 0.0;
  double sigma = 0.0;
  bool holds_A = false;
  bool holds_B = false;
  Criterion which = Criterion::Neither;
};

CriterionEvidence check_criteria(const StandardizedProblem& sp,
                                 const Iterate& cand, const ConeElement& xk,
                                 const ConeElement& xnext, double eps_k,
                                 double delta_k, double sigma);

struct AlmConfig {
  double sigma0 = 1.0;
  SigmaRule sigma_rule;  // growth, cap and floor for the penalty
  bool tune_sigma = true;
  double eps_c = 1.0;    // eps_k = eps_c / k^1.5
  double delta_c = 1.0;  // delta_k = delta_c / k^1.5
  // Multiplies eps_c and delta_c by the KKT residual at entry, so the
  // schedules start at the accuracy Phase I delivered.
  bool relative_schedule = false;
  // Lower bound eps_k, delta_k >= sqrt(2 sigma gap_floor (1 + |f_k(X^k)|)),
  // which keeps the gap test above rounding level.
  double gap_floor = 1e-12;
  double target = 1e-6;
  int max_outer = 200;
  int restart_window = 10;
  double restart_ratio = 0.9;
  bool allow_restart = true;
  int b_patience = 3;  // extra inner iterations spent trying for (B)
  SncgConfig sncg;
  AbcdConfig abcd;
  bool record_evidence = false;
  int verbose = 0;  // 1: outer lines on stderr, 2: also inner lines
};

/// Everything needed to re-check an accepted step after the fact.
struct EvidenceRecord {
  int k = 0;
  ConeElement xk;
  ConeElement xnext;
  Iterate candidate;
  CriterionEvidence evidence;
};

struct OuterRecord {
  int k = 0;
  double sigma = 0.0;
  KktReport kkt;
  int inner_iters = 0;  // SNCG (or ABCD) iterations
  int sncg_iters = 0;
  bool accepted = false;
  bool a_only = false;  // accepted on (A) without (B)
  CriterionEvidence evidence;
};

struct AlmResult {
  Iterate it;
  int outer_iters = 0;
  int k_next = 1;  // global outer counter for the eps/delta schedules
  double sigma = 1.0;
  bool converged = false;
  bool restart_requested = false;
  KktReport kkt;
  std::vector<OuterRecord> history;
  std::vector<EvidenceRecord> evidence;
};

/// Phase II loop. `k_start` continues the schedules across restarts.
AlmResult alm_run(const StandardizedProblem& sp, const AlmConfig& config,
                  Iterate start, const IterateMonitor& monitor,
                  int k_start = 1);

}  // namespace qsdpnal
