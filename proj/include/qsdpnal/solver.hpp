#pragma once

#include <string>
#include <vector>

#include "qsdpnal/alm.hpp"
#include "qsdpnal/phase1.hpp"

namespace qsdpnal {

struct SolverConfig {
  double tol = 1e-6;
  bool phase1_only = false;
  int phase1_only_iters = 20000;  // budget when Phase II is skipped
  Phase1Config phase1;            // target 1e-4, at most 1000 iterations
  AlmConfig alm;
  int max_restarts = 5;
  int restart_phase1_iters = 200;
  int max_total_outer = 300;
  bool record_history = true;
  bool scale = true;
};

/// Throws InvalidConfig for out-of-range settings.
void validate(const SolverConfig& c);

struct SolveReport {
  std::string method;  // "two-phase" or "phase1"
  int phase1_iters = 0;
  int outer_iters = 0;
  int restarts = 0;
  std::vector<int> inner_iters;  // SNCG iterations per outer step
  int a_only_steps = 0;
  int unaccepted_steps = 0;
  KktReport kkt;
  double seconds = 0.0;
  double phase1_seconds = 0.0;
  bool converged = false;
  double sigma = 0.0;  // final penalty parameter
  SolverConfig config;
  std::vector<IterRecord> phase1_history;
  std::vector<OuterRecord> outer_history;
  std::vector<EvidenceRecord> evidence;  // when config.alm.record_evidence
  Solution solution;
};

/// Standardizes and scales the problem, runs Phase I to config.phase1.target
/// and then Phase II with restarts until eta_qsdp <= config.tol.
SolveReport qsdpnal_solve(const QsdpProblem& problem,
                          const SolverConfig& config = {});

/// Same, also returning the scaled standardized problem the evidence
/// records refer to.
SolveReport qsdpnal_solve(const QsdpProblem& problem,
                          const SolverConfig& config,
                          StandardizedProblem* scaled_out);

}  // namespace qsdpnal
