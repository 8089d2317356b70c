#include "qsdpnal/alm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qsdpnal {

double sigma_update(double sigma, double etaP, double etaD,
                    const SigmaRule& rule) {
  if (etaP > rule.ratio * etaD)
    return std::min(sigma * rule.growth, rule.sigma_max);
  if (etaD > rule.ratio * etaP)
    return std::max(sigma / rule.growth, rule.sigma_min);
  return sigma;
}

double gamma_residual(const StandardizedProblem& sp, const ConeElement& x) {
  const double feas = (sp.b - sp.apply_A(x)).norm();
  const double cone = norm(x - project_cone(x));
  const double box = (x.M - box_project(x.M, sp.K)).norm();
  return feas + cone + box;
}

FkValue eval_fk(const StandardizedProblem& sp, const ConeElement& x,
                const ConeElement& xk, double sigma) {
  require(sigma > 0.0, ErrorCode::InvalidInput, "eval_fk: sigma must be > 0");
  const Matrix qx = sp.apply_Q(x.M);
  const ConeElement diff = x - xk;
  FkValue f;
  f.value = -0.5 * inner(x.M, qx) - inner(sp.C, x.M) -
            inner(diff, diff) / (2.0 * sigma);
  f.grad.M = -qx - sp.C - diff.M / sigma;
  f.grad.v = -diff.v / sigma;
  return f;
}

double eval_psi(const StandardizedProblem& sp, const Iterate& cand,
                const ConeElement& xk, double sigma) {
  const double supp = support_function(-cand.Z, sp.K);
  if (!std::isfinite(supp)) return std::numeric_limits<double>::infinity();
  const ConeElement rd = dual_residual(sp, cand);
  return supp + 0.5 * cand.WQW - sp.b.dot(cand.y) + inner(rd, xk) +
         0.5 * sigma * inner(rd, rd);
}

CriterionEvidence check_criteria(const StandardizedProblem& sp,
                                 const Iterate& cand, const ConeElement& xk,
                                 const ConeElement& xnext, double eps_k,
                                 double delta_k, double sigma) {
  CriterionEvidence ev;
  ev.eps_k = eps_k;
  ev.delta_k = delta_k;
  ev.sigma = sigma;
  ev.psi_value = eval_psi(sp, cand, xk, sigma);
  const FkValue f = eval_fk(sp, xnext, xk, sigma);
  ev.f_value = f.value;
  ev.gamma_value = gamma_residual(sp, xnext);
  ev.grad_fk_norm = norm(f.grad);
  ev.x_norm = norm(xnext);
  ev.dx_norm = norm(xnext - xk);

  const double s2 = std::sqrt(2.0 * sigma);
  const double base = std::min(1.0, std::sqrt(sigma));
  ev.alpha_k = base;
  ev.beta_k = base;
  if (ev.grad_fk_norm > 0.0) {
    ev.alpha_k = std::min(base, eps_k / (s2 * ev.grad_fk_norm));
    ev.beta_k = std::min(base, delta_k * ev.dx_norm / (s2 * ev.grad_fk_norm));
  }

  if (std::isfinite(ev.psi_value)) {
    const double gap = ev.psi_value - ev.f_value;
    const double lhs = (1.0 + ev.x_norm) * ev.gamma_value;
    const double db = delta_k * ev.dx_norm;
    ev.holds_A = gap <= eps_k * eps_k / (2.0 * sigma) &&
                 lhs <= ev.alpha_k * eps_k / s2;
    ev.holds_B = gap <= db * db / (2.0 * sigma) && lhs <= ev.beta_k * db / s2;
  }
  if (ev.holds_A)
    ev.which = Criterion::A;
  else if (ev.holds_B)
    ev.which = Criterion::B;
  return ev;
}

namespace {

void validate(const AlmConfig& c) {
  if (!(c.sigma0 > 0.0) || !(c.eps_c > 0.0) || !(c.delta_c > 0.0) ||
      !(c.target > 0.0) || !(c.gap_floor >= 0.0))
    fail(ErrorCode::InvalidConfig,
         "alm: sigma0, eps_c, delta_c and target must be > 0");
  if (!(c.sigma_rule.growth > 1.0) || !(c.sigma_rule.sigma_max >= c.sigma0))
    fail(ErrorCode::InvalidConfig, "alm: need growth > 1, sigma_max >= sigma0");
  if (c.max_outer < 0 || c.restart_window <= 0 || c.b_patience < 0)
    fail(ErrorCode::InvalidConfig, "alm: invalid iteration limits");
  validate(c.sncg);
  validate(c.abcd);
}

Iterate candidate_from(const InnerPoint& pt, const PhiState& st,
                       const Matrix& z, const ConeElement& x) {
  Iterate c;
  c.Z = z;
  c.W = pt.W;
  c.u = pt.u;
  c.QW = pt.QW;
  c.WQW = pt.WQW;
  c.y = pt.y;
  c.S = st.PiS - st.Sw;
  c.X = x;
  return c;
}

// Acceptance bookkeeping shared by the SNCG and ABCD callbacks.
struct Acceptor {
  const StandardizedProblem* sp;
  const ConeElement* xk;
  double eps, delta, sigma;
  int patience;
  bool trace = false;
  int a_streak = 0;
  bool a_only = false;
  CriterionEvidence last;

  bool operator()(const Iterate& cand) {
    const ConeElement xnext = *xk + sigma * dual_residual(*sp, cand);
    last = check_criteria(*sp, cand, *xk, xnext, eps, delta, sigma);
    if (trace)
      std::fprintf(stderr,
                   "    gap %.2e (A %.2e) lhs %.2e (A %.2e) gamma %.2e %c%c\n",
                   last.psi_value - last.f_value, eps * eps / (2 * sigma),
                   (1 + last.x_norm) * last.gamma_value,
                   last.alpha_k * eps / std::sqrt(2 * sigma), last.gamma_value,
                   last.holds_A ? 'A' : '-', last.holds_B ? 'B' : '-');
    if (last.holds_A && last.holds_B) return true;
    if (last.holds_A && ++a_streak > patience) {
      a_only = true;
      return true;
    }
    if (!last.holds_A) a_streak = 0;
    return false;
  }
};

}  // namespace

AlmResult alm_run(const StandardizedProblem& sp, const AlmConfig& config,
                  Iterate start, const IterateMonitor& monitor, int k_start) {
  validate(config);
  require(k_start >= 1, ErrorCode::InvalidInput, "alm_run: k_start must be >= 1");
  AlmResult res;
  res.it = std::move(start);
  res.sigma = config.sigma0;
  res.k_next = k_start;
  res.kkt = monitor(res.it);
  if (res.kkt.eta_qsdp <= config.target) {
    res.converged = true;
    return res;
  }

  const bool whole = sp.K.kind() == PolyhedralSet::Kind::WholeSpace;
  const bool can_restart =
      config.allow_restart && (sp.mI > 0 || !whole);
  std::vector<double> etas{res.kkt.eta_qsdp};
  const double rel = config.relative_schedule
                         ? std::max(res.kkt.eta_qsdp, config.target)
                         : 1.0;
  const double eps_c = config.eps_c * rel;
  const double delta_c = config.delta_c * rel;

  for (int step = 0; step < config.max_outer; ++step) {
    const int k = res.k_next;
    const double kp = std::pow(static_cast<double>(k), 1.5);
    const double sigma = res.sigma;
    const ConeElement xk = res.it.X;
    const double floor =
        std::sqrt(2.0 * sigma * config.gap_floor *
                  (1.0 + std::abs(eval_fk(sp, xk, xk, sigma).value)));
    Acceptor acc{&sp, &xk, std::max(eps_c / kp, floor),
                 std::max(delta_c / kp, floor), sigma, config.b_patience,
                 config.verbose >= 2, 0, false, {}};

    OuterRecord rec;
    rec.k = k;
    rec.sigma = sigma;
    Iterate cand;
    bool stalled = false;
    if (whole) {
      const Matrix z0 = Matrix::Zero(sp.n, sp.n);
      const InnerSubproblem sub = make_subproblem(sp, sigma, xk, z0);
      SncgResult r = sncg_solve(
          sub, inner_point(res.it), config.sncg, 0.0,
          [&](const InnerPoint& pt, const PhiState& st) {
            return acc(candidate_from(pt, st, z0, xk));
          });
      cand = candidate_from(r.point, r.state, z0, xk);
      rec.inner_iters = r.iters;
      rec.sncg_iters = r.iters;
      stalled = r.stalled;
    } else {
      AbcdConfig ab = config.abcd;
      ab.verbose = ab.verbose || config.verbose >= 2;
      ab.eps0 = std::min(ab.eps0, acc.eps);
      AbcdResult r = abcd_solve(sp, xk, sigma, res.it, ab,
                                [&](const Iterate& c) { return acc(c); });
      cand = std::move(r.it);
      rec.inner_iters = r.iters;
      rec.sncg_iters = r.sncg_iters;
      stalled = r.stalled;
    }

    // The last callback evaluation always corresponds to the final point.
    rec.evidence = acc.last;
    rec.accepted = acc.last.holds_A;
    rec.a_only = rec.accepted && (acc.a_only || !acc.last.holds_B);

    const ConeElement rd = dual_residual(sp, cand);
    cand.X = xk + sigma * rd;
    if (config.record_evidence && rec.accepted) {
      EvidenceRecord er;
      er.k = k;
      er.xk = xk;
      er.xnext = cand.X;
      er.candidate = cand;
      er.candidate.X = xk;
      er.evidence = acc.last;
      res.evidence.push_back(std::move(er));
    }
    res.it = std::move(cand);
    res.k_next = k + 1;
    ++res.outer_iters;

    res.kkt = monitor(res.it);
    rec.kkt = res.kkt;
    res.history.push_back(rec);
    if (config.verbose)
      std::fprintf(stderr,
                   "alm %4d sigma %.2e inner %3d sncg %4d %c%c eta %.2e "
                   "P %.2e D %.2e gap %.2e\n",
                   k, sigma, rec.inner_iters, rec.sncg_iters,
                   rec.accepted ? 'A' : '-', acc.last.holds_B ? 'B' : '-',
                   res.kkt.eta_qsdp, res.kkt.etaP, res.kkt.etaD,
                   res.kkt.eta_gap);
    etas.push_back(res.kkt.eta_qsdp);
    if (res.kkt.eta_qsdp <= config.target) {
      res.converged = true;
      break;
    }
    if (config.tune_sigma)
      res.sigma = sigma_update(sigma, res.kkt.etaD, res.kkt.etaP,
                           config.sigma_rule);

    if (can_restart) {
      const std::size_t w = static_cast<std::size_t>(config.restart_window);
      const bool slow = etas.size() > w &&
                        etas.back() > config.restart_ratio *
                                          etas[etas.size() - 1 - w];
      if (slow || (stalled && !rec.accepted)) {
        res.restart_requested = true;
        break;
      }
    }
  }
  return res;
}

}  // namespace qsdpnal
