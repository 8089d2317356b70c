#include "qsdpnal/solver.hpp"

#include <algorithm>
#include <chrono>

namespace qsdpnal {

void validate(const SolverConfig& c) {
  if (!(c.tol > 0.0)) fail(ErrorCode::InvalidConfig, "solver: tol must be > 0");
  if (c.phase1_only_iters <= 0 || c.max_restarts < 0 ||
      c.restart_phase1_iters < 0 || c.max_total_outer < 0)
    fail(ErrorCode::InvalidConfig, "solver: invalid iteration budget");
  validate(c.phase1);
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void append_phase1(SolveReport& rep, const Phase1Result& r) {
  rep.phase1_iters += r.iterations;
  rep.phase1_history.insert(rep.phase1_history.end(), r.history.begin(),
                            r.history.end());
}

}  // namespace

SolveReport qsdpnal_solve(const QsdpProblem& problem,
                          const SolverConfig& config) {
  return qsdpnal_solve(problem, config, nullptr);
}

SolveReport qsdpnal_solve(const QsdpProblem& problem,
                          const SolverConfig& config,
                          StandardizedProblem* scaled_out) {
  validate(config);
  const auto t0 = Clock::now();
  SolveReport rep;
  rep.config = config;
  rep.method = config.phase1_only ? "phase1" : "two-phase";

  StandardizedProblem sp =
      standardize_inequalities(problem, default_slack_scaling(problem));
  if (config.scale) sp = scale_data(sp);
  const IterateMonitor monitor(sp);
  const AatSolver aat(sp.A);

  Phase1Config p1 = config.phase1;
  p1.record_history = config.record_history;
  if (config.phase1_only) {
    p1.target = config.tol;
    p1.max_iters = config.phase1_only_iters;
  } else {
    p1.target = std::max(p1.target, config.tol);
  }
  Phase1Result r1 = phase1_run(sp, p1, Iterate::zero(sp), monitor, &aat);
  append_phase1(rep, r1);
  rep.phase1_seconds = since(t0);
  Iterate it = std::move(r1.it);
  double sigma = r1.sigma;
  rep.kkt = r1.kkt;

  if (!config.phase1_only && rep.kkt.eta_qsdp > config.tol) {
    AlmConfig ac = config.alm;
    ac.target = config.tol;
    ac.sigma_rule.sigma_min =
        std::min(ac.sigma_rule.sigma_min, 1e-3 * config.alm.sigma0);
    ac.sigma_rule.sigma_max = std::max(ac.sigma_rule.sigma_max, sigma);
    int k = 1;
    while (rep.outer_iters < config.max_total_outer) {
      ac.sigma0 = sigma;
      ac.max_outer = config.max_total_outer - rep.outer_iters;
      ac.allow_restart = rep.restarts < config.max_restarts;
      AlmResult r2 = alm_run(sp, ac, std::move(it), monitor, k);
      rep.outer_iters += r2.outer_iters;
      for (const OuterRecord& o : r2.history) {
        rep.inner_iters.push_back(o.sncg_iters);
        if (!o.accepted) ++rep.unaccepted_steps;
        if (o.a_only) ++rep.a_only_steps;
      }
      if (config.record_history)
        rep.outer_history.insert(rep.outer_history.end(), r2.history.begin(),
                                 r2.history.end());
      rep.evidence.insert(rep.evidence.end(),
                          std::make_move_iterator(r2.evidence.begin()),
                          std::make_move_iterator(r2.evidence.end()));
      it = std::move(r2.it);
      sigma = r2.sigma;
      k = r2.k_next;
      rep.kkt = r2.kkt;
      if (r2.converged || !r2.restart_requested) break;

      // Restart: a short Phase I run from the current point, then Phase II.
      ++rep.restarts;
      if (config.restart_phase1_iters > 0) {
        Phase1Config rp = p1;
        rp.sigma = sigma;
        rp.max_iters = config.restart_phase1_iters;
        rp.target = std::max(config.tol, 0.1 * rep.kkt.eta_qsdp);
        Phase1Result rr = phase1_run(sp, rp, std::move(it), monitor, &aat);
        append_phase1(rep, rr);
        it = std::move(rr.it);
        sigma = rr.sigma;
        rep.kkt = rr.kkt;
        if (rep.kkt.eta_qsdp <= config.tol) break;
      }
    }
  }

  rep.sigma = sigma;
  rep.converged = rep.kkt.eta_qsdp <= config.tol;
  rep.solution = to_solution(sp, it);
  rep.seconds = since(t0);
  if (scaled_out) *scaled_out = std::move(sp);
  return rep;
}

}  // namespace qsdpnal
